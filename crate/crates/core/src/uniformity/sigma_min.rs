//! The reciprocal smallest singular value of a uniform square preshape.

use super::PreShape;
use crate::error::{Result, ShapeError};
use crate::quadrature::{integrate, integrate_to_infinity, QuadOptions};
use crate::special::{hyp2f1, ln_gamma};
use std::f64::consts::PI;

fn check_dim(m: usize) -> Result<()> {
    if m < 2 {
        return Err(ShapeError::InvalidArgument(format!("need m >= 2, got {m}")));
    }
    Ok(())
}

/// Density of `x = 1/σ_min(Z)` for a uniformly random unit-norm `m × m`
/// matrix `Z`:
///
/// `2mΓ((m+1)/2)Γ(m²/2) / (√π Γ(m(m+1)/2 − 1)) · x^{1−m²} (x²−m)^{m(m+1)/2−2}
///  · ₂F₁((m−1)/2, m/2+1; (m²+m)/2−1; −(x²−m))`.
///
/// Zero below `√m`, since `σ_min ≤ 1/√m` when `‖Z‖_F = 1`.
pub fn inv_sigma_min_density(x: f64, m: usize) -> Result<f64> {
    check_dim(m)?;
    if x.is_nan() {
        return Err(ShapeError::InvalidArgument("NaN argument".into()));
    }
    let mf = m as f64;
    let u = x * x - mf;
    if u <= 0.0 || x.is_infinite() {
        return Ok(0.0);
    }
    let half_dim = 0.5 * mf * (mf + 1.0);
    let ln_const = (2.0 * mf).ln() + ln_gamma(0.5 * (mf + 1.0)) + ln_gamma(0.5 * mf * mf)
        - 0.5 * PI.ln()
        - ln_gamma(half_dim - 1.0);
    let ln_pow = (1.0 - mf * mf) * x.ln() + (half_dim - 2.0) * u.ln();
    let f = hyp2f1(0.5 * (mf - 1.0), 0.5 * mf + 1.0, half_dim - 1.0, -u)?;
    Ok((ln_const + ln_pow).exp() * f)
}

/// Closed form for `m = 2`: `F(x) = 1 − 2√(x²−1)/x²`.
pub fn inv_sigma_min_cdf_m2(x: f64) -> f64 {
    if !(x * x > 2.0) {
        return 0.0;
    }
    if x.is_infinite() {
        return 1.0;
    }
    1.0 - 2.0 * ((x - 1.0) * (x + 1.0)).sqrt() / (x * x)
}

fn quad_opts() -> QuadOptions {
    QuadOptions {
        abs_tol: 1e-13,
        rel_tol: 1e-11,
        max_intervals: 4000,
    }
}

/// CDF of `1/σ_min` by quadrature of the density (closed form for `m = 2`).
pub fn inv_sigma_min_cdf(x: f64, m: usize) -> Result<f64> {
    check_dim(m)?;
    if m == 2 {
        return Ok(inv_sigma_min_cdf_m2(x));
    }
    let lo = (m as f64).sqrt();
    if !(x > lo) {
        return Ok(0.0);
    }
    let mut err = None;
    let f = |t: f64| {
        inv_sigma_min_density(t, m).unwrap_or_else(|e| {
            err.get_or_insert(e);
            0.0
        })
    };
    let v = integrate(f, lo, x, quad_opts())?.value;
    match err {
        Some(e) => Err(e),
        None => Ok(v.clamp(0.0, 1.0)),
    }
}

/// CDF values at each point of an ascending sequence, integrating the
/// density only between neighbours.
pub fn inv_sigma_min_cdf_sorted(xs: &[f64], m: usize) -> Result<Vec<f64>> {
    check_dim(m)?;
    if m == 2 {
        return Ok(xs.iter().map(|&x| inv_sigma_min_cdf_m2(x)).collect());
    }
    let lo = (m as f64).sqrt();
    let mut acc = 0.0;
    let mut prev = lo;
    let mut out = Vec::with_capacity(xs.len());
    for &x in xs {
        if x > prev {
            let mut err = None;
            let seg = integrate(
                |t| {
                    inv_sigma_min_density(t, m).unwrap_or_else(|e| {
                        err.get_or_insert(e);
                        0.0
                    })
                },
                prev,
                x,
                quad_opts(),
            )?;
            if let Some(e) = err {
                return Err(e);
            }
            acc += seg.value;
            prev = x;
        }
        out.push(acc.clamp(0.0, 1.0));
    }
    Ok(out)
}

/// `∫ density` over `[√m, ∞)`.
pub fn inv_sigma_min_total_mass(m: usize) -> Result<f64> {
    check_dim(m)?;
    let lo = (m as f64).sqrt();
    let mut err = None;
    let v = integrate_to_infinity(
        |t| {
            inv_sigma_min_density(t, m).unwrap_or_else(|e| {
                err.get_or_insert(e);
                0.0
            })
        },
        lo,
        quad_opts(),
    )?;
    match err {
        Some(e) => Err(e),
        None => Ok(v.value),
    }
}

/// Smallest singular value of a preshape.
pub fn sigma_min(z: &PreShape) -> f64 {
    let mat = nalgebra::DMatrix::from_row_slice(z.m(), z.cols(), z.data());
    mat.singular_values().min()
}
