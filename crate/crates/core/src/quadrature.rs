//! Adaptive Gauss–Kronrod quadrature on intervals, half-lines and triangles.

use crate::error::{Result, ShapeError};
use crate::linalg::Vec2;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

// 15-point Kronrod nodes on [0, 1] half of [−1, 1]; the 7-point Gauss rule
// uses every other node.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Integral estimate with its error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

/// Tolerances and budget for an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            max_intervals: 4000,
        }
    }
}

fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Estimate {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(centre - dx) + f(centre + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Estimate {
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    }
}

struct Piece {
    a: f64,
    b: f64,
    est: Estimate,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.est.error == other.est.error
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.est.error.total_cmp(&other.est.error)
    }
}

/// Globally adaptive integration of `f` over `[a, b]`: the subinterval with
/// the largest error estimate is bisected until the total error is within
/// `max(abs_tol, rel_tol·|value|)`.
pub fn integrate<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    opts: QuadOptions,
) -> Result<Estimate> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(ShapeError::InvalidArgument(
            "integration limits must be finite".into(),
        ));
    }
    if a == b {
        return Ok(Estimate {
            value: 0.0,
            error: 0.0,
        });
    }
    let first = gk15(&mut f, a, b);
    let mut heap = BinaryHeap::new();
    let mut value = first.value;
    let mut error = first.error;
    heap.push(Piece { a, b, est: first });
    while error > opts.abs_tol.max(opts.rel_tol * value.abs()) {
        if heap.len() >= opts.max_intervals {
            return Err(ShapeError::NoConvergence(
                "adaptive quadrature budget exhausted",
            ));
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval can no longer be split in floating point
            heap.push(worst);
            break;
        }
        let left = gk15(&mut f, worst.a, mid);
        let right = gk15(&mut f, mid, worst.b);
        value += left.value + right.value - worst.est.value;
        error += left.error + right.error - worst.est.error;
        heap.push(Piece {
            a: worst.a,
            b: mid,
            est: left,
        });
        heap.push(Piece {
            a: mid,
            b: worst.b,
            est: right,
        });
    }
    // re-sum to shed accumulated rounding in the running totals
    let value = heap.iter().map(|p| p.est.value).sum();
    let error = heap.iter().map(|p| p.est.error).sum();
    Ok(Estimate { value, error })
}

/// `∫_a^∞ f` via `x = a + t/(1−t)`.
pub fn integrate_to_infinity<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    opts: QuadOptions,
) -> Result<Estimate> {
    integrate(
        |t| {
            let u = 1.0 - t;
            let x = a + t / u;
            let fx = f(x);
            if fx == 0.0 {
                0.0
            } else {
                fx / (u * u)
            }
        },
        0.0,
        1.0,
        opts,
    )
}

/// `∫₀¹∫₀¹ u·f(u, w) dw du`: the Duffy square behind [`integrate_triangle`],
/// for callers that place the point themselves.
pub fn integrate_duffy<F: FnMut(f64, f64) -> f64>(mut f: F, opts: QuadOptions) -> Result<Estimate> {
    let inner_opts = QuadOptions {
        abs_tol: opts.abs_tol * 0.1,
        ..opts
    };
    let mut failure = None;
    let outer = integrate(
        |u| match integrate(|w| f(u, w), 0.0, 1.0, inner_opts) {
            Ok(est) => u * est.value,
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        },
        0.0,
        1.0,
        opts,
    )?;
    match failure {
        Some(e) => Err(e),
        None => Ok(outer),
    }
}

/// Integral over the triangle `[v0, v1, v2]` through the Duffy map collapsed
/// at `v0`, so an integrable `1/ρ` singularity at `v0` becomes bounded.
pub fn integrate_triangle<F: FnMut(Vec2) -> f64>(
    mut f: F,
    v: [Vec2; 3],
    opts: QuadOptions,
) -> Result<Estimate> {
    let e1 = [v[1][0] - v[0][0], v[1][1] - v[0][1]];
    let e2 = [v[2][0] - v[0][0], v[2][1] - v[0][1]];
    let jac = (e1[0] * e2[1] - e1[1] * e2[0]).abs();
    let est = integrate_duffy(
        |u, w| {
            let d = [(1.0 - w) * e1[0] + w * e2[0], (1.0 - w) * e1[1] + w * e2[1]];
            f([v[0][0] + u * d[0], v[0][1] + u * d[1]])
        },
        QuadOptions {
            abs_tol: opts.abs_tol / jac.max(f64::MIN_POSITIVE),
            ..opts
        },
    )?;
    Ok(Estimate {
        value: est.value * jac,
        error: est.error * jac,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomials_are_exact() {
        let e = integrate(|x| x.powi(5) - 2.0 * x, 0.0, 2.0, QuadOptions::default()).unwrap();
        assert!((e.value - (64.0 / 6.0 - 4.0)).abs() < 1e-13);
    }

    #[test]
    fn endpoint_singularity() {
        let e = integrate(|x| 1.0 / x.sqrt(), 0.0, 1.0, QuadOptions::default()).unwrap();
        assert!((e.value - 2.0).abs() < 1e-9);
    }

    #[test]
    fn half_line() {
        let e = integrate_to_infinity(|x| (-x).exp(), 0.0, QuadOptions::default()).unwrap();
        assert!((e.value - 1.0).abs() < 1e-12);
        let e =
            integrate_to_infinity(|x| 1.0 / (1.0 + x * x), 0.0, QuadOptions::default()).unwrap();
        assert!((e.value - PI / 2.0).abs() < 1e-10);
    }

    #[test]
    fn triangle_area_and_corner_singularity() {
        let tri = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]];
        let e = integrate_triangle(|_| 1.0, tri, QuadOptions::default()).unwrap();
        assert!((e.value - 0.5).abs() < 1e-13);
        let e = integrate_triangle(|p| p[0] * p[1], tri, QuadOptions::default()).unwrap();
        assert!((e.value - 1.0 / 24.0).abs() < 1e-13);
        // ∫ 1/ρ over the unit right triangle = ∫_0^{π/2} dθ/(cos θ + sin θ) = √2·atanh(1/√2)
        let e =
            integrate_triangle(|p| 1.0 / p[0].hypot(p[1]), tri, QuadOptions::default()).unwrap();
        let want = 2f64.sqrt() * (1.0 / 2f64.sqrt()).atanh();
        assert!((e.value - want).abs() < 1e-9);
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let opts = QuadOptions {
            abs_tol: 0.0,
            rel_tol: 0.0,
            max_intervals: 5,
        };
        assert!(integrate(|x| x.sin() / x, 1e-9, 100.0, opts).is_err());
    }
}
