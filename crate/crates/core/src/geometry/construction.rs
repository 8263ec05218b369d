//! Parallelians and the triangles hidden inside the shape hemisphere.
//!
//! The big equilateral triangle has unit-norm vertices; the little one is
//! its medial triangle, inscribed in the radius-1/2 equator. A shape with
//! squared sides `(a², b², c²)` sits at barycentric point `(a², b², c²)` of
//! the big triangle, which is `(1−2a², 1−2b², 1−2c²)` in the little one.

use crate::conversions::SquaredSides;
use crate::linalg::{dist3, dot3, sub3, Mat2x3, Vec2, Vec3};

/// Both triangles' vertex matrices (columns are vertices).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BarycentricFrames {
    pub big: Mat2x3,
    pub little: Mat2x3,
}

pub fn barycentric_frames() -> BarycentricFrames {
    let h = 3f64.sqrt() / 2.0;
    let big = Mat2x3([[h, -h, 0.0], [0.5, 0.5, -1.0]]);
    BarycentricFrames {
        big,
        little: big.scale(-0.5),
    }
}

/// `(1−2a², 1−2b², 1−2c²)`.
pub fn little_coords(s: &SquaredSides) -> Vec3 {
    s.as_array().map(|x| 1.0 - 2.0 * x)
}

/// The three parallelians through the shape point, one row per side.
/// `big[i]` and `little[i]` hold the two endpoints of parallelian `i` in the
/// two barycentric systems; the segment is parallel to side `i` of both
/// equilateral triangles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParallelianEndpoints {
    pub big: [[Vec3; 2]; 3],
    pub little: [[Vec3; 2]; 3],
}

impl ParallelianEndpoints {
    /// Endpoints in the plane, computed from the big-frame coordinates.
    pub fn cartesian(&self) -> [[Vec2; 2]; 3] {
        let f = barycentric_frames();
        self.big.map(|pair| pair.map(|p| f.big.mul_vec(p)))
    }

    /// Endpoints in the plane, computed from the little-frame coordinates.
    pub fn cartesian_from_little(&self) -> [[Vec2; 2]; 3] {
        let f = barycentric_frames();
        self.little.map(|pair| pair.map(|p| f.little.mul_vec(p)))
    }

    /// Lengths of the three segments; parallelian `i` has length `√3·sᵢ²`.
    pub fn lengths(&self) -> Vec3 {
        self.cartesian()
            .map(|[p, q]| (p[0] - q[0]).hypot(p[1] - q[1]))
    }
}

pub fn parallelian_endpoints(s: &SquaredSides) -> ParallelianEndpoints {
    let SquaredSides { a2, b2, c2 } = *s;
    ParallelianEndpoints {
        big: [
            [[a2, 0.5, 0.5 - a2], [a2, 0.5 - a2, 0.5]],
            [[0.5, b2, 0.5 - b2], [0.5 - b2, b2, 0.5]],
            [[0.5, 0.5 - c2, c2], [0.5 - c2, 0.5, c2]],
        ],
        little: [
            [
                [1.0 - 2.0 * a2, 0.0, 2.0 * a2],
                [1.0 - 2.0 * a2, 2.0 * a2, 0.0],
            ],
            [
                [0.0, 1.0 - 2.0 * b2, 2.0 * b2],
                [2.0 * b2, 1.0 - 2.0 * b2, 0.0],
            ],
            [
                [0.0, 2.0 * c2, 1.0 - 2.0 * c2],
                [2.0 * c2, 0.0, 1.0 - 2.0 * c2],
            ],
        ],
    }
}

/// Triangle with apex `S` and base one of the parallelians through `P`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimilarTriangle {
    /// `[S, X, Y]` with `X`, `Y` the parallelian endpoints.
    pub vertices: [Vec3; 3],
    /// `|SY|, |SX|, |XY|`.
    pub lengths: Vec3,
    /// Ratio of `lengths` to the shape's side lengths, `√3` times side `i`.
    pub scale: f64,
    /// Largest relative deviation of the sorted lengths from `scale·(a, b, c)` sorted.
    pub ratio_residual: f64,
    /// Distance from `P` to the foot of the perpendicular dropped from `S` onto `XY`.
    pub altitude_residual: f64,
}

/// Below this area the construction is reported as collapsed.
pub const DEGENERATE_AREA: f64 = 1e-12;

/// Scale from side lengths `(a, b, c)` to the constructed triangle on
/// parallelian `i` is `SIMILARITY_SCALE · sᵢ` with `sᵢ` the unsquared side.
pub const SIMILARITY_SCALE: f64 = 1.732_050_807_568_877_2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstructionResult {
    /// Hemisphere point above `P`.
    pub s: Vec3,
    /// Shape point in the equatorial plane (z = 0).
    pub p: Vec3,
    pub parallelians: ParallelianEndpoints,
    /// One triangle per parallelian; index 2 is the triangle on the
    /// horizontal parallelian, `SXY` with `XY = √3·c²`.
    pub triangles: [SimilarTriangle; 3],
    /// Zero-area shape: `S` lies on the equator and every triangle collapses.
    pub degenerate: bool,
}

impl ConstructionResult {
    /// `|SP|`, equal to `√12·K`.
    pub fn height(&self) -> f64 {
        dist3(self.s, self.p)
    }

    /// The horizontal-parallelian triangle `SXY`.
    pub fn sxy(&self) -> &SimilarTriangle {
        &self.triangles[2]
    }
}

fn lift(v: Vec2) -> Vec3 {
    [v[0], v[1], 0.0]
}

fn foot_residual(s: Vec3, x: Vec3, y: Vec3, p: Vec3) -> f64 {
    let d = sub3(y, x);
    let dd = dot3(d, d);
    if dd == 0.0 {
        return dist3(x, p);
    }
    let t = dot3(sub3(s, x), d) / dd;
    let foot = [x[0] + t * d[0], x[1] + t * d[1], x[2] + t * d[2]];
    dist3(foot, p)
}

fn ratio_residual(lengths: Vec3, sides: Vec3, scale: f64) -> f64 {
    let mut got = lengths;
    let mut want = sides.map(|x| x * scale);
    got.sort_by(f64::total_cmp);
    want.sort_by(f64::total_cmp);
    let top = want[2].max(f64::MIN_POSITIVE);
    got.iter()
        .zip(want)
        .map(|(g, w)| (g - w).abs() / top)
        .fold(0.0, f64::max)
}

/// Builds `P`, `S`, the parallelians and the three similar triangles.
pub fn construct_in_hemisphere(s: &SquaredSides) -> ConstructionResult {
    let frames = barycentric_frames();
    let p = lift(frames.big.mul_vec(s.as_array()));
    let rho = p[0].hypot(p[1]).min(0.5);
    let height = ((0.5 - rho) * (0.5 + rho)).max(0.0).sqrt();
    let apex = [p[0], p[1], height];
    let parallelians = parallelian_endpoints(s);
    let ends = parallelians.cartesian();
    let sides = s.lengths();

    let triangles: [SimilarTriangle; 3] = std::array::from_fn(|i| {
        let x = lift(ends[i][0]);
        let y = lift(ends[i][1]);
        let lengths = [dist3(apex, y), dist3(apex, x), dist3(x, y)];
        let scale = SIMILARITY_SCALE * sides[i];
        SimilarTriangle {
            vertices: [apex, x, y],
            lengths,
            scale,
            ratio_residual: ratio_residual(lengths, sides, scale),
            altitude_residual: foot_residual(apex, x, y, p),
        }
    });

    ConstructionResult {
        s: apex,
        p,
        parallelians,
        triangles,
        degenerate: crate::conversions::sides_area(s) < DEGENERATE_AREA
            || sides.iter().any(|&x| x == 0.0),
    }
}

/// The three triangles sharing altitude `SP`.
pub fn three_similar_triangles(s: &SquaredSides) -> [SimilarTriangle; 3] {
    construct_in_hemisphere(s).triangles
}

/// Cosine of the angle between two plane vectors, in absolute value.
#[cfg(test)]
fn abs_cos(u: Vec2, v: Vec2) -> f64 {
    (u[0] * v[0] + u[1] * v[1]).abs() / (u[0].hypot(u[1]) * v[0].hypot(v[1]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conversions::{disk_to_sides, DiskPoint};
    use crate::geometry::area;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn sides(a: f64, b: f64, c: f64) -> SquaredSides {
        SquaredSides::normalized(a, b, c).unwrap()
    }

    fn random_sides(rng: &mut ChaCha8Rng) -> SquaredSides {
        let d = DiskPoint::new(rng.random_range(0.0..0.499), rng.random_range(0.0..6.3)).unwrap();
        disk_to_sides(&d).unwrap()
    }

    #[test]
    fn frame_invariants() {
        let f = barycentric_frames();
        for n in f.big.column_norms_sq() {
            assert!((n - 1.0).abs() < 1e-15);
        }
        for n in f.little.column_norms_sq() {
            assert!((n - 0.25).abs() < 1e-15);
        }
        // big is the Helmert frame scaled by √6/2 with rows swapped
        let d = crate::frame::helmert3().scale(6f64.sqrt() / 2.0);
        assert!((f.big.0[0][0] - d.0[0][0]).abs() < 1e-15);
        assert!((f.big.0[1][2] - d.0[1][2]).abs() < 1e-15);
    }

    #[test]
    fn little_coordinates() {
        let t = 1.0 / 3.0;
        let lc = little_coords(&sides(t, t, t));
        assert!(lc.iter().all(|x| (x - t).abs() < 1e-15));
        assert_eq!(little_coords(&sides(0.5, 0.25, 0.25)), [0.0, 0.5, 0.5]);
        assert_eq!(little_coords(&sides(0.5, 0.5, 0.0)), [0.0, 0.0, 1.0]);
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        let f = barycentric_frames();
        for _ in 0..1000 {
            let s = random_sides(&mut rng);
            let a = f.big.mul_vec(s.as_array());
            let b = f.little.mul_vec(little_coords(&s));
            assert!((a[0] - b[0]).abs() < 1e-12 && (a[1] - b[1]).abs() < 1e-12);
        }
    }

    #[test]
    fn parallelian_table_right_isosceles() {
        let e = parallelian_endpoints(&sides(0.5, 0.25, 0.25));
        assert_eq!(e.big[0], [[0.5, 0.5, 0.0], [0.5, 0.0, 0.5]]);
    }

    #[test]
    fn parallelians_frames_agree_and_are_parallel() {
        let f = barycentric_frames();
        let mut rng = ChaCha8Rng::seed_from_u64(52);
        for _ in 0..1000 {
            let s = random_sides(&mut rng);
            let e = parallelian_endpoints(&s);
            let big = e.cartesian();
            let little = e.cartesian_from_little();
            let p = f.big.mul_vec(s.as_array());
            for i in 0..3 {
                for j in 0..2 {
                    assert!((big[i][j][0] - little[i][j][0]).abs() < 1e-12);
                    assert!((big[i][j][1] - little[i][j][1]).abs() < 1e-12);
                }
                // little side i joins the two vertices other than i
                let (u, v) = ((i + 1) % 3, (i + 2) % 3);
                let side = [
                    f.little.0[0][u] - f.little.0[0][v],
                    f.little.0[1][u] - f.little.0[1][v],
                ];
                let seg = [big[i][0][0] - big[i][1][0], big[i][0][1] - big[i][1][1]];
                assert!((abs_cos(side, seg) - 1.0).abs() < 1e-12);
                // P is on the segment's line
                let to_p = [p[0] - big[i][1][0], p[1] - big[i][1][1]];
                assert!((seg[0] * to_p[1] - seg[1] * to_p[0]).abs() < 1e-12);
            }
            let sq = s.as_array();
            for (len, s2) in e.lengths().iter().zip(sq) {
                assert!((len - 3f64.sqrt() * s2).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn pieces_through_p() {
        // |XP| = √3(½ − a²), |YP| = √3(½ − b²) on the horizontal parallelian
        let s = sides(9.0, 16.0, 25.0);
        let c = construct_in_hemisphere(&s);
        let [_, x, y] = c.sxy().vertices;
        let w = 3f64.sqrt();
        assert!((dist3(x, c.p) - w * (0.5 - s.a2)).abs() < 1e-12);
        assert!((dist3(y, c.p) - w * (0.5 - s.b2)).abs() < 1e-12);
    }

    #[test]
    fn equilateral_construction() {
        let c = construct_in_hemisphere(&sides(1.0, 1.0, 1.0));
        assert!((c.height() - 0.5).abs() < 1e-15);
        assert!((c.sxy().lengths[2] - 3f64.sqrt() / 3.0).abs() < 1e-15);
        let l0 = c.triangles[0].lengths;
        for t in &c.triangles {
            for (x, y) in t.lengths.iter().zip(l0) {
                assert!((x - y).abs() < 1e-15);
            }
        }
        assert!(!c.degenerate);
    }

    #[test]
    fn sxy_lengths() {
        let w = 3f64.sqrt();
        for s in [sides(0.5, 0.25, 0.25), sides(9.0, 16.0, 25.0)] {
            let c = construct_in_hemisphere(&s);
            let [a, b, cc] = s.lengths();
            let [sy, sx, xy] = c.sxy().lengths;
            assert!((sy - w * a * cc).abs() < 1e-12);
            assert!((sx - w * b * cc).abs() < 1e-12);
            assert!((xy - w * cc * cc).abs() < 1e-12);
            assert!((c.height() - 12f64.sqrt() * area(&s).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn three_four_five_similarity() {
        let t = three_similar_triangles(&sides(9.0, 16.0, 25.0));
        for tri in &t {
            assert!(tri.ratio_residual < 1e-12);
            assert!(tri.altitude_residual < 1e-12);
            let mut l = tri.lengths;
            l.sort_by(f64::total_cmp);
            assert!((l[0] / l[2] - 0.6).abs() < 1e-12);
            assert!((l[1] / l[2] - 0.8).abs() < 1e-12);
        }
    }

    #[test]
    fn right_isosceles_pair_is_congruent() {
        let t = three_similar_triangles(&sides(0.5, 0.25, 0.25));
        for (x, y) in t[1].lengths.iter().zip(t[2].lengths) {
            assert!((x - y).abs() < 1e-12);
        }
        assert!((t[0].lengths[2] - t[1].lengths[2]).abs() > 0.1);
    }

    #[test]
    fn random_similarity_and_altitude() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for _ in 0..1000 {
            let s = random_sides(&mut rng);
            for tri in three_similar_triangles(&s) {
                assert!(tri.ratio_residual < 1e-9);
                assert!(tri.altitude_residual < 1e-10);
            }
        }
    }

    #[test]
    fn degenerate_is_flagged() {
        let c = construct_in_hemisphere(&sides(0.5, 0.5, 0.0));
        assert!(c.degenerate);
        assert!(c.s[2] < 1e-12);
        let c = construct_in_hemisphere(&SquaredSides::from_lengths(1.0, 2.0, 3.0).unwrap());
        assert!(c.degenerate);
    }

    #[test]
    fn apex_on_hemisphere() {
        let mut rng = ChaCha8Rng::seed_from_u64(54);
        for _ in 0..100 {
            let c = construct_in_hemisphere(&random_sides(&mut rng));
            assert!((crate::linalg::norm3(c.s) - 0.5).abs() < 1e-12);
            assert_eq!(c.p[2], 0.0);
        }
    }
}
