//! Conversions among the four shape coordinates: SVD triple, squared sides,
//! hemisphere point and disk point.
//!
//! Every pair has a direct closed-form route. Angles are reduced to their
//! canonical ranges as soon as a value is built.

mod hopf;
mod roundtrip;
mod svd;

pub use hopf::{
    hopf, hopf_equivariance_check, q3_from_quaternion, q4_apply, q4_from_quaternion,
    shape_to_hemisphere_cartesian, Mat4, UnitQuaternion,
};
pub use roundtrip::{convert, roundtrip_all, Coordinate, Representation, RoundtripReport};
pub use svd::{svd2_full, Svd2, DEGENERACY_GAP};

use crate::error::{Result, ShapeError};
use crate::frame::{ShapeMatrix, INPUT_TOL};
use crate::linalg::{wrap_angle, Mat2, Mat2x3, Vec3};
use std::f64::consts::{FRAC_PI_2, PI, TAU};

const THIRD_TURN: f64 = 2.0 * PI / 3.0;

/// Reduced SVD of a shape matrix with `U` dropped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvdShape {
    pub sigma1: f64,
    pub sigma2: f64,
    pub theta: f64,
}

/// Squared side lengths, normalized to unit sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SquaredSides {
    pub a2: f64,
    pub b2: f64,
    pub c2: f64,
}

/// A point on the radius-1/2 upper hemisphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HemispherePoint {
    pub latitude: f64,
    pub longitude: f64,
}

/// Polar coordinates on the radius-1/2 disk under the hemisphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskPoint {
    pub r: f64,
    pub phi: f64,
}

impl SvdShape {
    pub fn new(sigma1: f64, sigma2: f64, theta: f64) -> Result<Self> {
        if !(sigma1.is_finite() && sigma2.is_finite() && theta.is_finite()) {
            return Err(ShapeError::InvalidArgument(
                "non-finite singular values".into(),
            ));
        }
        if sigma2 < -INPUT_TOL || sigma1 + INPUT_TOL < sigma2 {
            return Err(ShapeError::InvalidArgument(format!(
                "need sigma1 >= sigma2 >= 0, got ({sigma1}, {sigma2})"
            )));
        }
        let norm = sigma1 * sigma1 + sigma2 * sigma2;
        if (norm - 1.0).abs() > INPUT_TOL {
            return Err(ShapeError::NotUnitNorm(norm));
        }
        Ok(SvdShape {
            sigma1,
            sigma2: sigma2.max(0.0),
            theta: wrap_angle(theta, PI),
        })
    }

    /// `Σ·Vᵀ`, the representative shape matrix with `U = I`.
    pub fn to_matrix(&self) -> Mat2 {
        Mat2::diag(self.sigma1, self.sigma2) * Mat2::rotation(self.theta).transpose()
    }

    /// `σ₁² − σ₂²` without cancellation.
    pub fn sigma_gap(&self) -> f64 {
        (self.sigma1 - self.sigma2) * (self.sigma1 + self.sigma2)
    }

    /// Area of the normalized triangle, `σ₁σ₂/√12`.
    pub fn area(&self) -> f64 {
        self.sigma1 * self.sigma2 / 12f64.sqrt()
    }

    /// Hemisphere height `σ₁σ₂`.
    pub fn height(&self) -> f64 {
        self.sigma1 * self.sigma2
    }

    /// Condition number `σ₁/σ₂` (infinite for a degenerate triangle).
    pub fn condition_number(&self) -> f64 {
        self.sigma1 / self.sigma2
    }
}

/// Sum of fourth powers above which squared sides cannot close a triangle.
pub const TRIANGLE_FOURTH_POWER_BOUND: f64 = 0.5;

/// True when three squared lengths with unit sum close a triangle.
pub fn satisfies_triangle_inequality(s: [f64; 3], tol: f64) -> bool {
    fourth_power_sum(s) <= TRIANGLE_FOURTH_POWER_BOUND + tol
}

fn fourth_power_sum(s: [f64; 3]) -> f64 {
    s.iter().map(|x| x * x).sum()
}

impl SquaredSides {
    /// Validates unit sum, nonnegativity and the squared triangle inequality.
    pub fn new(a2: f64, b2: f64, c2: f64) -> Result<Self> {
        let s = [a2, b2, c2];
        if s.iter().any(|x| !x.is_finite()) {
            return Err(ShapeError::InvalidArgument("non-finite side".into()));
        }
        if s.iter().any(|&x| x < -INPUT_TOL) {
            return Err(ShapeError::InvalidArgument(format!(
                "squared sides must be nonnegative, got {s:?}"
            )));
        }
        let sum: f64 = s.iter().sum();
        if (sum - 1.0).abs() > INPUT_TOL {
            return Err(ShapeError::InvalidArgument(format!(
                "squared sides must sum to 1, got {sum}"
            )));
        }
        let q = fourth_power_sum(s);
        if q > TRIANGLE_FOURTH_POWER_BOUND + INPUT_TOL {
            return Err(ShapeError::NotATriangle(q));
        }
        Ok(SquaredSides {
            a2: a2.max(0.0),
            b2: b2.max(0.0),
            c2: c2.max(0.0),
        })
    }

    /// Rescales any nonnegative triple with positive sum, then validates.
    pub fn normalized(a2: f64, b2: f64, c2: f64) -> Result<Self> {
        let sum = a2 + b2 + c2;
        if !(sum > 0.0) || !sum.is_finite() {
            return Err(ShapeError::DegenerateInput(
                "squared sides have no positive sum",
            ));
        }
        SquaredSides::new(a2 / sum, b2 / sum, c2 / sum)
    }

    /// From raw (unsquared) side lengths.
    pub fn from_lengths(a: f64, b: f64, c: f64) -> Result<Self> {
        SquaredSides::normalized(a * a, b * b, c * c)
    }

    pub fn as_array(&self) -> Vec3 {
        [self.a2, self.b2, self.c2]
    }

    /// Side lengths `(a, b, c)` of the unit-sum triangle.
    pub fn lengths(&self) -> Vec3 {
        self.as_array().map(f64::sqrt)
    }

    pub fn fourth_power_sum(&self) -> f64 {
        fourth_power_sum(self.as_array())
    }
}

impl HemispherePoint {
    pub fn new(latitude: f64, longitude: f64) -> Result<Self> {
        if !(latitude.is_finite() && longitude.is_finite()) {
            return Err(ShapeError::InvalidArgument(
                "non-finite hemisphere point".into(),
            ));
        }
        if !(-INPUT_TOL..=FRAC_PI_2 + INPUT_TOL).contains(&latitude) {
            return Err(ShapeError::InvalidArgument(format!(
                "latitude must be in [0, pi/2], got {latitude}"
            )));
        }
        Ok(HemispherePoint {
            latitude: latitude.clamp(0.0, FRAC_PI_2),
            longitude: wrap_angle(longitude, TAU),
        })
    }

    /// Height above the disk, `sin(λ)/2`.
    pub fn height(&self) -> f64 {
        0.5 * self.latitude.sin()
    }

    /// Cartesian point `½(cos λ cos φ, cos λ sin φ, sin λ)`.
    pub fn cartesian(&self) -> Vec3 {
        let (sl, cl) = self.latitude.sin_cos();
        let (sp, cp) = self.longitude.sin_cos();
        [0.5 * cl * cp, 0.5 * cl * sp, 0.5 * sl]
    }

    pub fn from_cartesian(p: Vec3) -> Result<Self> {
        let horiz = p[0].hypot(p[1]);
        if horiz == 0.0 && p[2] == 0.0 {
            return Err(ShapeError::DegenerateInput(
                "origin is not on the hemisphere",
            ));
        }
        HemispherePoint::new(p[2].abs().atan2(horiz), p[1].atan2(p[0]))
    }
}

impl DiskPoint {
    pub fn new(r: f64, phi: f64) -> Result<Self> {
        if !(r.is_finite() && phi.is_finite()) {
            return Err(ShapeError::InvalidArgument("non-finite disk point".into()));
        }
        if r < -INPUT_TOL {
            return Err(ShapeError::InvalidArgument(format!(
                "radius must be >= 0, got {r}"
            )));
        }
        if r > 0.5 + INPUT_TOL {
            return Err(ShapeError::OutsideDisk(r));
        }
        Ok(DiskPoint {
            r: r.clamp(0.0, 0.5),
            phi: wrap_angle(phi, TAU),
        })
    }

    pub fn from_cartesian(x: f64, y: f64) -> Result<Self> {
        DiskPoint::new(x.hypot(y), y.atan2(x))
    }

    pub fn cartesian(&self) -> [f64; 2] {
        let (s, c) = self.phi.sin_cos();
        [self.r * c, self.r * s]
    }

    /// Area of the normalized triangle, `√((1−4r²)/48)`.
    pub fn area(&self) -> f64 {
        ((1.0 - 2.0 * self.r) * (1.0 + 2.0 * self.r) / 48.0)
            .max(0.0)
            .sqrt()
    }
}

/// Reduced SVD of a shape matrix.
pub fn svd2x2(m: &ShapeMatrix) -> SvdShape {
    svd2_full(m.matrix()).shape()
}

pub fn svd_to_hemisphere(s: &SvdShape) -> HemispherePoint {
    // atan2 of (sin λ, cos λ) is the clamped asin(2σ₁σ₂) without the
    // loss of accuracy near the pole.
    let lat = (2.0 * s.sigma1 * s.sigma2).atan2(s.sigma_gap());
    HemispherePoint {
        latitude: lat.clamp(0.0, FRAC_PI_2),
        longitude: wrap_angle(2.0 * s.theta, TAU),
    }
}

pub fn hemisphere_to_svd(h: &HemispherePoint) -> SvdShape {
    let (s2, s1) = (0.5 * h.latitude).sin_cos();
    SvdShape {
        sigma1: s1,
        sigma2: s2,
        theta: wrap_angle(0.5 * h.longitude, PI),
    }
}

pub fn hemisphere_to_disk(h: &HemispherePoint) -> DiskPoint {
    DiskPoint {
        r: (0.5 * h.latitude.cos()).clamp(0.0, 0.5),
        phi: h.longitude,
    }
}

pub fn disk_to_hemisphere(d: &DiskPoint) -> HemispherePoint {
    // acos(2r), written so it stays accurate at both ends
    let sin_lat = ((1.0 - 2.0 * d.r) * (1.0 + 2.0 * d.r)).max(0.0).sqrt();
    HemispherePoint {
        latitude: sin_lat.atan2(2.0 * d.r).clamp(0.0, FRAC_PI_2),
        longitude: d.phi,
    }
}

/// Disk radius as `(σ₁² − σ₂²)/2`.
pub fn svd_to_disk(s: &SvdShape) -> DiskPoint {
    DiskPoint {
        r: (0.5 * s.sigma_gap()).clamp(0.0, 0.5),
        phi: wrap_angle(2.0 * s.theta, TAU),
    }
}

/// Disk radius as `√(1/4 − σ₁²σ₂²)`; analytically the same as [`svd_to_disk`].
pub fn svd_to_disk_via_product(s: &SvdShape) -> DiskPoint {
    let p = s.sigma1 * s.sigma2;
    DiskPoint {
        r: ((0.5 - p) * (0.5 + p)).max(0.0).sqrt().min(0.5),
        phi: wrap_angle(2.0 * s.theta, TAU),
    }
}

pub fn disk_to_svd(d: &DiskPoint) -> SvdShape {
    SvdShape {
        sigma1: (0.5 + d.r).sqrt(),
        sigma2: (0.5 - d.r).max(0.0).sqrt(),
        theta: wrap_angle(0.5 * d.phi, PI),
    }
}

fn sides_from_polar(r2: f64, phi: f64) -> SquaredSides {
    // r2 is 2r
    SquaredSides {
        a2: ((1.0 - r2 * (phi + THIRD_TURN).cos()) / 3.0).max(0.0),
        b2: ((1.0 - r2 * (phi - THIRD_TURN).cos()) / 3.0).max(0.0),
        c2: ((1.0 - r2 * phi.cos()) / 3.0).max(0.0),
    }
}

pub fn disk_to_sides(d: &DiskPoint) -> Result<SquaredSides> {
    if d.r > 0.5 + INPUT_TOL {
        return Err(ShapeError::OutsideDisk(d.r));
    }
    Ok(sides_from_polar(2.0 * d.r.min(0.5), d.phi))
}

/// Barycentric map from squared sides to the disk plane.
pub fn sides_barycentric_frame() -> Mat2x3 {
    let h = 3f64.sqrt() / 2.0;
    Mat2x3([[0.5, 0.5, -1.0], [h, -h, 0.0]])
}

pub fn sides_to_disk(s: &SquaredSides) -> Result<DiskPoint> {
    let q = s.fourth_power_sum();
    if q > TRIANGLE_FOURTH_POWER_BOUND + INPUT_TOL {
        return Err(ShapeError::NotATriangle(q));
    }
    let [x, y] = sides_barycentric_frame().mul_vec(s.as_array());
    Ok(DiskPoint {
        r: x.hypot(y).min(0.5),
        phi: wrap_angle(y.atan2(x), TAU),
    })
}

/// Closed form `a² = (1 − (σ₁²−σ₂²)·cos(2θ + 2π/3))/3` and rotations of it.
pub fn svd_to_sides(s: &SvdShape) -> SquaredSides {
    sides_from_polar(s.sigma_gap(), 2.0 * s.theta)
}

/// The same squared sides read off `diag(ΔᵀMᵀMΔ)` for `M = ΣVᵀ`.
pub fn svd_to_sides_via_matrix(s: &SvdShape) -> SquaredSides {
    let [a2, b2, c2] = ShapeMatrix::normalize(s.to_matrix())
        .map(|m| m.squared_sides_raw())
        .unwrap_or([1.0 / 3.0; 3]);
    SquaredSides { a2, b2, c2 }
}

pub fn sides_to_svd(s: &SquaredSides) -> Result<SvdShape> {
    Ok(disk_to_svd(&sides_to_disk(s)?))
}

pub fn hemisphere_to_sides(h: &HemispherePoint) -> SquaredSides {
    sides_from_polar(h.latitude.cos(), h.longitude)
}

/// Direct route using `Δ·(a²,b²,c²) = (cos λ sin φ, cos λ cos φ)/√6`
/// and `sin λ = √48·K`.
pub fn sides_to_hemisphere(s: &SquaredSides) -> Result<HemispherePoint> {
    let q = s.fourth_power_sum();
    if q > TRIANGLE_FOURTH_POWER_BOUND + INPUT_TOL {
        return Err(ShapeError::NotATriangle(q));
    }
    let [u, v] = crate::frame::helmert3().mul_vec(s.as_array());
    let x = 6f64.sqrt() * v;
    let y = 6f64.sqrt() * u;
    let sin_lat = (3.0 * (1.0 - 2.0 * q)).max(0.0).sqrt();
    Ok(HemispherePoint {
        latitude: sin_lat.atan2(x.hypot(y)).clamp(0.0, FRAC_PI_2),
        longitude: wrap_angle(y.atan2(x), TAU),
    })
}

/// Shape-matrix entry point for the disk, via the SVD.
pub fn matrix_to_disk(m: &ShapeMatrix) -> DiskPoint {
    svd_to_disk(&svd2x2(m))
}

pub fn matrix_to_sides(m: &ShapeMatrix) -> SquaredSides {
    let [a2, b2, c2] = m.squared_sides_raw();
    SquaredSides { a2, b2, c2 }
}

/// Area of the normalized triangle, `¼√(1 − 2(a⁴+b⁴+c⁴))`.
pub fn sides_area(s: &SquaredSides) -> f64 {
    0.25 * (1.0 - 2.0 * s.fourth_power_sum()).max(0.0).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::{center_vertices, shape_from_edges, vertices_to_edges};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_svd(rng: &mut ChaCha8Rng) -> SvdShape {
        let m = Mat2::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        );
        svd2x2(&ShapeMatrix::normalize(m).unwrap())
    }

    fn sides_close(a: &SquaredSides, b: &SquaredSides, tol: f64) -> bool {
        a.as_array()
            .iter()
            .zip(b.as_array())
            .all(|(x, y)| (x - y).abs() < tol)
    }

    #[test]
    fn pole_and_equator() {
        let eq = SvdShape::new(0.5f64.sqrt(), 0.5f64.sqrt(), 0.0).unwrap();
        assert!((svd_to_hemisphere(&eq).latitude - FRAC_PI_2).abs() < 1e-15);
        let flat = SvdShape::new(1.0, 0.0, 0.3).unwrap();
        assert_eq!(svd_to_hemisphere(&flat).latitude, 0.0);
    }

    #[test]
    fn sixty_degree_latitude() {
        let s = SvdShape::new(0.75f64.sqrt(), 0.5, PI / 3.0).unwrap();
        let h = svd_to_hemisphere(&s);
        assert!((h.latitude - PI / 3.0).abs() < 1e-15);
        assert!((h.longitude - 2.0 * PI / 3.0).abs() < 1e-15);
        let d = hemisphere_to_disk(&HemispherePoint::new(PI / 3.0, 0.0).unwrap());
        assert!((d.r - 0.25).abs() < 1e-15);
    }

    #[test]
    fn hemisphere_svd_inverse() {
        let pole = hemisphere_to_svd(&HemispherePoint::new(FRAC_PI_2, 0.0).unwrap());
        assert!((pole.sigma1 - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((pole.sigma2 - 0.5f64.sqrt()).abs() < 1e-15);
        let flat = hemisphere_to_svd(&HemispherePoint::new(0.0, 0.0).unwrap());
        assert_eq!((flat.sigma1, flat.sigma2, flat.theta), (1.0, 0.0, 0.0));

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let h =
                HemispherePoint::new(rng.random_range(0.0..FRAC_PI_2), rng.random_range(0.0..TAU))
                    .unwrap();
            let back = svd_to_hemisphere(&hemisphere_to_svd(&h));
            assert!((back.latitude - h.latitude).abs() < 1e-12);
            assert!((back.longitude - h.longitude).abs() < 1e-12);
        }
    }

    #[test]
    fn disk_hemisphere_inverse() {
        let rim = hemisphere_to_disk(&HemispherePoint::new(0.0, 1.0).unwrap());
        assert_eq!(rim.r, 0.5);
        let centre = hemisphere_to_disk(&HemispherePoint::new(FRAC_PI_2, 1.0).unwrap());
        assert!(centre.r < 1e-16);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..1000 {
            let d = DiskPoint::new(rng.random_range(0.0..0.5), rng.random_range(0.0..TAU)).unwrap();
            let back = hemisphere_to_disk(&disk_to_hemisphere(&d));
            assert!((back.r - d.r).abs() < 1e-12);
            assert_eq!(back.phi, d.phi);
        }
    }

    #[test]
    fn disk_sides_examples() {
        let s = disk_to_sides(&DiskPoint::new(0.0, 0.0).unwrap()).unwrap();
        assert!(sides_close(
            &s,
            &SquaredSides {
                a2: 1.0 / 3.0,
                b2: 1.0 / 3.0,
                c2: 1.0 / 3.0
            },
            1e-15
        ));
        let s = disk_to_sides(&DiskPoint::new(0.5, 0.0).unwrap()).unwrap();
        assert!(sides_close(
            &s,
            &SquaredSides {
                a2: 0.5,
                b2: 0.5,
                c2: 0.0
            },
            1e-15
        ));
        let s = disk_to_sides(&DiskPoint::new(0.25, PI).unwrap()).unwrap();
        assert!((s.c2 - 0.5).abs() < 1e-15);
        assert!(matches!(
            disk_to_sides(&DiskPoint { r: 0.6, phi: 0.0 }),
            Err(ShapeError::OutsideDisk(_))
        ));
        assert!(matches!(
            DiskPoint::new(0.6, 0.0),
            Err(ShapeError::OutsideDisk(_))
        ));
    }

    #[test]
    fn sides_disk_examples() {
        let d =
            sides_to_disk(&SquaredSides::new(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0).unwrap()).unwrap();
        assert!(d.r < 1e-15);
        let d = sides_to_disk(&SquaredSides::new(0.5, 0.25, 0.25).unwrap()).unwrap();
        assert!((d.r - 0.25).abs() < 1e-15);
        // right triangle table: φ with a² = 1/2 lies at cos(φ + 2π/3) = −1/(4r)
        assert!(((d.phi + THIRD_TURN).cos() + 1.0 / (4.0 * d.r)).abs() < 1e-12);
        assert!(matches!(
            SquaredSides::new(0.7, 0.2, 0.1),
            Err(ShapeError::NotATriangle(_))
        ));
        let bad = SquaredSides {
            a2: 0.7,
            b2: 0.2,
            c2: 0.1,
        };
        assert!(matches!(
            sides_to_disk(&bad),
            Err(ShapeError::NotATriangle(_))
        ));
    }

    #[test]
    fn disk_sides_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..1000 {
            let d = DiskPoint::new(rng.random_range(0.0..0.5), rng.random_range(0.0..TAU)).unwrap();
            let s = disk_to_sides(&d).unwrap();
            assert!(s.fourth_power_sum() <= 0.5 + 1e-12);
            let back = sides_to_disk(&s).unwrap();
            let [x0, y0] = d.cartesian();
            let [x1, y1] = back.cartesian();
            assert!((x0 - x1).abs() < 1e-12 && (y0 - y1).abs() < 1e-12);
        }
    }

    #[test]
    fn svd_sides_two_formulas_agree() {
        let eq = SvdShape::new(0.5f64.sqrt(), 0.5f64.sqrt(), 1.0).unwrap();
        let s = svd_to_sides(&eq);
        assert!(sides_close(
            &s,
            &SquaredSides {
                a2: 1.0 / 3.0,
                b2: 1.0 / 3.0,
                c2: 1.0 / 3.0
            },
            1e-15
        ));
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..1000 {
            let s = random_svd(&mut rng);
            assert!(sides_close(
                &svd_to_sides(&s),
                &svd_to_sides_via_matrix(&s),
                1e-12
            ));
        }
    }

    #[test]
    fn worked_example_sides() {
        let raw = Mat2x3([[-2.0, 1.0, 1.0], [-1.0, -1.0, 2.0]]);
        let m = shape_from_edges(&vertices_to_edges(&center_vertices(&raw))).unwrap();
        let s = svd_to_sides(&svd2x2(&m));
        assert!(sides_close(
            &s,
            &SquaredSides {
                a2: 0.5,
                b2: 0.25,
                c2: 0.25
            },
            1e-12
        ));
        assert!(sides_close(&matrix_to_sides(&m), &s, 1e-12));
    }

    #[test]
    fn both_radius_formulas_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let s = random_svd(&mut rng);
            let a = svd_to_disk(&s);
            let b = svd_to_disk_via_product(&s);
            assert!((a.r - b.r).abs() < 1e-8, "{} {}", a.r, b.r);
        }
    }

    #[test]
    fn sides_hemisphere_direct_matches_chain() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..1000 {
            let s = random_svd(&mut rng);
            let sides = svd_to_sides(&s);
            let direct = sides_to_hemisphere(&sides).unwrap().cartesian();
            let chain = svd_to_hemisphere(&s).cartesian();
            for i in 0..3 {
                assert!((direct[i] - chain[i]).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn area_consistency() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..1000 {
            let s = random_svd(&mut rng);
            let k = s.area();
            let sides = svd_to_sides(&s);
            let d = svd_to_disk(&s);
            let h = svd_to_hemisphere(&s);
            assert!((k - sides_area(&sides)).abs() < 1e-10);
            assert!((k - d.area()).abs() < 1e-10);
            assert!((k - h.latitude.sin() / 48f64.sqrt()).abs() < 1e-10);
            if s.sigma2 > 1e-6 {
                let kappa = s.condition_number();
                assert!((h.height() - 1.0 / (kappa + 1.0 / kappa)).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn constructors_reduce_angles() {
        let d = DiskPoint::new(0.1, -0.5).unwrap();
        assert!((d.phi - (TAU - 0.5)).abs() < 1e-15);
        let s = SvdShape::new(1.0, 0.0, PI + 0.25).unwrap();
        assert!((s.theta - 0.25).abs() < 1e-15);
        assert!(SvdShape::new(0.5, 0.9, 0.0).is_err());
        assert!(HemispherePoint::new(2.0, 0.0).is_err());
    }

    #[test]
    fn normalized_sides() {
        let s = SquaredSides::from_lengths(3.0, 4.0, 5.0).unwrap();
        assert!((s.a2 - 9.0 / 50.0).abs() < 1e-15);
        assert!(SquaredSides::normalized(0.0, 0.0, 0.0).is_err());
        assert!(SquaredSides::new(0.5, 0.5, 0.1).is_err());
    }
}
