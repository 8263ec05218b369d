//! Angles, areas and the fixed-area special families of triangles.

mod construction;

pub use construction::{
    barycentric_frames, construct_in_hemisphere, little_coords, parallelian_endpoints,
    three_similar_triangles, BarycentricFrames, ConstructionResult, ParallelianEndpoints,
    SimilarTriangle, SIMILARITY_SCALE,
};

use crate::conversions::{disk_to_sides, sides_area, DiskPoint, SquaredSides};
use crate::error::{Result, ShapeError};
use std::f64::consts::{FRAC_PI_2, PI};

/// Tolerance on a negative Hero radicand before it counts as a violation.
const RADICAND_TOL: f64 = 1e-12;

/// Largest area of a unit-sum triangle (the equilateral one), `1/√48`.
pub fn max_area() -> f64 {
    1.0 / 48f64.sqrt()
}

/// Interior angles in radians; `a` is opposite side `a`, and so on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleAngles {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl TriangleAngles {
    pub fn sum(&self) -> f64 {
        self.a + self.b + self.c
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.a, self.b, self.c]
    }
}

/// Area of a unit-sum triangle, `¼√(1 − 2(a⁴+b⁴+c⁴))`.
pub fn area(s: &SquaredSides) -> Result<f64> {
    let radicand = 1.0 - 2.0 * s.fourth_power_sum();
    if radicand < -RADICAND_TOL {
        return Err(ShapeError::NotATriangle(s.fourth_power_sum()));
    }
    Ok(sides_area(s))
}

/// Hero's formula on raw side lengths:
/// `16K² = (a+b+c)(−a+b+c)(a−b+c)(a+b−c)`.
pub fn area_general(a: f64, b: f64, c: f64) -> Result<f64> {
    if [a, b, c].iter().any(|x| !x.is_finite() || *x < 0.0) {
        return Err(ShapeError::InvalidArgument(format!(
            "side lengths must be finite and nonnegative, got ({a}, {b}, {c})"
        )));
    }
    let p = a + b + c;
    let radicand = p * (-a + b + c) * (a - b + c) * (a + b - c);
    if p > 0.0 && radicand < -RADICAND_TOL * p.powi(4) {
        return Err(ShapeError::NotATriangle(radicand));
    }
    Ok(0.25 * radicand.max(0.0).sqrt())
}

/// Angles from normalized squared sides via `tan A = 4K/(1 − 2a²)`, using a
/// two-argument arctangent so obtuse angles fall in `(π/2, π)`.
///
/// When `area` is `None` it is recomputed from the sides. The collapsed case
/// with one zero side (two coincident vertices) has no unique limit; it is
/// reported as the isosceles limit `(0, π/2, π/2)` with the zero angle
/// opposite the zero side.
pub fn angles_from_sides(s: &SquaredSides, area_hint: Option<f64>) -> TriangleAngles {
    let k = area_hint.unwrap_or_else(|| sides_area(s));
    let sq = s.as_array();
    if k == 0.0 {
        if let Some(zero) = sq.iter().position(|&x| x == 0.0) {
            let mut out = [FRAC_PI_2; 3];
            out[zero] = 0.0;
            return TriangleAngles {
                a: out[0],
                b: out[1],
                c: out[2],
            };
        }
    }
    let [a, b, c] = sq.map(|x| (4.0 * k).atan2(1.0 - 2.0 * x));
    TriangleAngles { a, b, c }
}

/// The circle of triangles with area `k` has radius `½√(1 − 48K²)`.
pub fn radius_for_area(k: f64) -> f64 {
    0.5 * ((1.0 - 48.0 * k * k).max(0.0)).sqrt()
}

/// Families of triangles tabulated by area.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpecialKind {
    /// `c² = 1/2`; needs `K ≤ 1/8`.
    Right,
    /// Apex angle at most 60°, longitude 0.
    IsoscelesSharp,
    /// Apex angle at least 60°, longitude π/3.
    IsoscelesFlat,
    /// Zero-area triangles on the rim, at the given longitude.
    Singular { phi: f64 },
}

impl SpecialKind {
    pub fn name(&self) -> &'static str {
        match self {
            SpecialKind::Right => "right",
            SpecialKind::IsoscelesSharp => "isosceles_sharp",
            SpecialKind::IsoscelesFlat => "isosceles_flat",
            SpecialKind::Singular { .. } => "singular",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecialTriangle {
    pub disk: DiskPoint,
    pub sides: SquaredSides,
}

/// Builds the member of a special family with area `k`.
pub fn special_triangle(kind: SpecialKind, k: f64) -> Result<SpecialTriangle> {
    let bad = |kind: &SpecialKind| ShapeError::InvalidAreaForKind {
        kind: kind.name(),
        area: k,
    };
    if !k.is_finite() || k < 0.0 {
        return Err(bad(&kind));
    }
    match kind {
        SpecialKind::Right => {
            if k > 0.125 {
                return Err(bad(&kind));
            }
            let r = radius_for_area(k);
            let phi = (-1.0 / (4.0 * r)).clamp(-1.0, 1.0).acos();
            // ¼ ± √(1−64K²)/4, small root without cancellation
            let root = (1.0 - 64.0 * k * k).max(0.0).sqrt();
            let small = 16.0 * k * k / (1.0 + root);
            let large = 0.5 - small;
            Ok(SpecialTriangle {
                disk: DiskPoint::new(r, phi)?,
                sides: SquaredSides {
                    a2: large,
                    b2: small,
                    c2: 0.5,
                },
            })
        }
        SpecialKind::IsoscelesSharp | SpecialKind::IsoscelesFlat => {
            if k > max_area() * (1.0 + 1e-12) {
                return Err(bad(&kind));
            }
            let r = radius_for_area(k.min(max_area()));
            // 1 − 2r = 48K²/(1 + √(1−48K²)) keeps the thin side accurate
            let one_minus_2r = 48.0 * k * k / (1.0 + 2.0 * r);
            let sides = if kind == SpecialKind::IsoscelesSharp {
                let pair = (1.0 + r) / 3.0;
                SquaredSides {
                    a2: pair,
                    b2: pair,
                    c2: one_minus_2r / 3.0,
                }
            } else {
                let pair = (1.0 - r) / 3.0;
                SquaredSides {
                    a2: (1.0 + 2.0 * r) / 3.0,
                    b2: pair,
                    c2: pair,
                }
            };
            let phi = if kind == SpecialKind::IsoscelesSharp {
                0.0
            } else {
                PI / 3.0
            };
            Ok(SpecialTriangle {
                disk: DiskPoint::new(r, phi)?,
                sides,
            })
        }
        SpecialKind::Singular { phi } => {
            if k != 0.0 {
                return Err(bad(&kind));
            }
            let disk = DiskPoint::new(0.5, phi)?;
            Ok(SpecialTriangle {
                disk,
                sides: disk_to_sides(&disk)?,
            })
        }
    }
}

/// Actual (unsquared) side lengths of the singular triangle at longitude
/// `phi`, `√(2/3)·|sin(ψ/2)|` for `ψ = φ + 2π/3, φ − 2π/3, φ` in side order.
pub fn singular_side_lengths(phi: f64) -> [f64; 3] {
    let k = (2.0f64 / 3.0).sqrt();
    let third = 2.0 * PI / 3.0;
    [phi + third, phi - third, phi].map(|psi| k * (0.5 * psi).sin().abs())
}
