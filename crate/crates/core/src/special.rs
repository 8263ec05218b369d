//! Special functions: log-gamma, regularized incomplete beta and gamma,
//! the χ² tail, the Gauss hypergeometric function and the Kolmogorov tail.

use crate::error::{Result, ShapeError};
use std::f64::consts::PI;

const EPS: f64 = 1e-16;
const TINY: f64 = 1e-300;
const MAX_ITER: usize = 20_000;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln|Γ(x)|` together with the sign of `Γ(x)`. Poles return `(∞, 1)`.
pub fn ln_gamma_signed(x: f64) -> (f64, f64) {
    if x <= 0.0 && x == x.floor() {
        return (f64::INFINITY, 1.0);
    }
    if x < 0.5 {
        // reflection: Γ(x)Γ(1−x) = π / sin(πx)
        let s = (PI * x).sin();
        let (lg, sg) = ln_gamma_signed(1.0 - x);
        return ((PI / s.abs()).ln() - lg, s.signum() * sg);
    }
    let x = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    (
        0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + acc.ln(),
        1.0,
    )
}

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    ln_gamma_signed(x).0
}

/// `Γ(x)` for any real `x` that is not a pole.
pub fn gamma(x: f64) -> f64 {
    let (lg, s) = ln_gamma_signed(x);
    s * lg.exp()
}

/// `ln B(a, b)`.
pub fn ln_beta(a: f64, b: f64) -> f64 {
    ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)
}

// Modified Lentz evaluation of the incomplete-beta continued fraction.
fn beta_cf(a: f64, b: f64, x: f64) -> Result<f64> {
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=MAX_ITER {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < EPS {
            return Ok(h);
        }
    }
    Err(ShapeError::NoConvergence(
        "incomplete beta continued fraction",
    ))
}

fn check_beta_args(x: f64, a: f64, b: f64) -> Result<()> {
    if !(a > 0.0 && b > 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(ShapeError::InvalidArgument(format!(
            "incomplete beta needs a, b > 0, got ({a}, {b})"
        )));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(ShapeError::InvalidArgument(format!(
            "incomplete beta needs x in [0, 1], got {x}"
        )));
    }
    Ok(())
}

// Lower tail on the side where the continued fraction converges quickly.
fn betainc_direct(x: f64, a: f64, b: f64) -> Result<f64> {
    let ln_front = a * x.ln() + b * (1.0 - x).ln() - ln_beta(a, b);
    Ok(ln_front.exp() * beta_cf(a, b, x)? / a)
}

/// Regularized incomplete beta `I_x(a, b)`.
pub fn betainc(x: f64, a: f64, b: f64) -> Result<f64> {
    check_beta_args(x, a, b)?;
    if x == 0.0 || x == 1.0 {
        return Ok(x);
    }
    if x < (a + 1.0) / (a + b + 2.0) {
        betainc_direct(x, a, b)
    } else {
        Ok(1.0 - betainc_direct(1.0 - x, b, a)?)
    }
}

/// Upper tail `1 − I_x(a, b) = I_{1−x}(b, a)`, without cancellation.
pub fn betainc_upper(x: f64, a: f64, b: f64) -> Result<f64> {
    check_beta_args(x, a, b)?;
    if x == 0.0 || x == 1.0 {
        return Ok(1.0 - x);
    }
    if x < (a + 1.0) / (a + b + 2.0) {
        Ok(1.0 - betainc_direct(x, a, b)?)
    } else {
        betainc_direct(1.0 - x, b, a)
    }
}

fn gamma_series(a: f64, x: f64) -> Result<f64> {
    let mut ap = a;
    let mut del = 1.0 / a;
    let mut sum = del;
    for _ in 0..MAX_ITER {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if del.abs() < sum.abs() * EPS {
            return Ok(sum * (-x + a * x.ln() - ln_gamma(a)).exp());
        }
    }
    Err(ShapeError::NoConvergence("incomplete gamma series"))
}

fn gamma_cf(a: f64, x: f64) -> Result<f64> {
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..=MAX_ITER {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < EPS {
            return Ok((-x + a * x.ln() - ln_gamma(a)).exp() * h);
        }
    }
    Err(ShapeError::NoConvergence(
        "incomplete gamma continued fraction",
    ))
}

fn check_gamma_args(a: f64, x: f64) -> Result<()> {
    if !(a > 0.0) || !a.is_finite() || !(x >= 0.0) {
        return Err(ShapeError::InvalidArgument(format!(
            "incomplete gamma needs a > 0 and x >= 0, got ({a}, {x})"
        )));
    }
    Ok(())
}

/// Regularized lower incomplete gamma `P(a, x)`.
pub fn gamma_p(a: f64, x: f64) -> Result<f64> {
    check_gamma_args(a, x)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    if x.is_infinite() {
        return Ok(1.0);
    }
    if x < a + 1.0 {
        gamma_series(a, x)
    } else {
        Ok(1.0 - gamma_cf(a, x)?)
    }
}

/// Regularized upper incomplete gamma `Q(a, x)`.
pub fn gamma_q(a: f64, x: f64) -> Result<f64> {
    check_gamma_args(a, x)?;
    if x == 0.0 {
        return Ok(1.0);
    }
    if x.is_infinite() {
        return Ok(0.0);
    }
    if x < a + 1.0 {
        Ok(1.0 - gamma_series(a, x)?)
    } else {
        gamma_cf(a, x)
    }
}

/// Upper tail of the χ² distribution with `df` degrees of freedom.
pub fn chi2_upper_tail(x: f64, df: f64) -> Result<f64> {
    if !(df > 0.0) || !df.is_finite() || !(x >= 0.0) {
        return Err(ShapeError::InvalidArgument(format!(
            "chi-square tail needs x >= 0 and df > 0, got ({x}, {df})"
        )));
    }
    gamma_q(0.5 * df, 0.5 * x)
}

/// Radius inside which the plain power series is used.
pub const HYP2F1_SERIES_RADIUS: f64 = 0.9;

/// Below this argument the `1/z` connection formula takes over from the
/// Pfaff transformation, whose series argument `z/(z−1)` approaches 1.
pub const HYP2F1_RECIPROCAL_BELOW: f64 = -4.0;

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// Plain Gauss series `Σ (a)ₙ(b)ₙ/(c)ₙ zⁿ/n!`, valid for `|z| < 1`.
pub fn hyp2f1_series(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    if is_nonpositive_integer(c) {
        return Err(ShapeError::InvalidArgument(format!(
            "2F1 undefined for c = {c}"
        )));
    }
    if z.abs() >= 1.0 {
        return Err(ShapeError::InvalidArgument(format!(
            "2F1 series diverges at z = {z}"
        )));
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 0..200_000 {
        let n = n as f64;
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
        sum += term;
        if term == 0.0 || term.abs() <= EPS * sum.abs() {
            return Ok(sum);
        }
    }
    Err(ShapeError::NoConvergence("2F1 power series"))
}

/// Pfaff transformation `(1−z)^(−a) ₂F₁(a, c−b; c; z/(z−1))`, for `z < 1/2`.
pub fn hyp2f1_pfaff(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    if z >= 0.5 {
        return Err(ShapeError::InvalidArgument(format!(
            "Pfaff route needs z < 1/2, got {z}"
        )));
    }
    let w = z / (z - 1.0);
    Ok((1.0 - z).powf(-a) * hyp2f1_series(a, c - b, c, w)?)
}

/// Connection formula in `1/z` for `z < −1`; needs `a − b` not an integer.
pub fn hyp2f1_reciprocal(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    if z >= -1.0 {
        return Err(ShapeError::InvalidArgument(format!(
            "reciprocal route needs z < -1, got {z}"
        )));
    }
    if (a - b) == (a - b).round() {
        return Err(ShapeError::InvalidArgument(
            "reciprocal route needs a - b non-integer".into(),
        ));
    }
    let w = 1.0 / z;
    let mz = -z;
    let term = |p: f64, q: f64| -> Result<f64> {
        // Γ(c)Γ(q−p) / (Γ(q)Γ(c−p)) · (−z)^(−p) · ₂F₁(p, p−c+1; p−q+1; 1/z)
        let (l1, s1) = ln_gamma_signed(c);
        let (l2, s2) = ln_gamma_signed(q - p);
        let (l3, s3) = ln_gamma_signed(q);
        let (l4, s4) = ln_gamma_signed(c - p);
        if l3.is_infinite() || l4.is_infinite() {
            // 1/Γ at a pole is zero
            return Ok(0.0);
        }
        let front = (l1 + l2 - l3 - l4 - p * mz.ln()).exp() * s1 * s2 * s3 * s4;
        Ok(front * hyp2f1_series(p, p - c + 1.0, p - q + 1.0, w)?)
    };
    Ok(term(a, b)? + term(b, a)?)
}

/// Gauss hypergeometric function `₂F₁(a, b; c; z)` for real `z < 1`.
///
/// Uses the power series for `|z| < 0.9` (and for `0.9 ≤ z < 1`), the Pfaff
/// transformation on `[−4, −0.9]`, and the `1/z` connection formula below −4.
pub fn hyp2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    if [a, b, c, z].iter().any(|x| !x.is_finite()) {
        return Err(ShapeError::InvalidArgument(
            "non-finite 2F1 argument".into(),
        ));
    }
    if is_nonpositive_integer(c) {
        return Err(ShapeError::InvalidArgument(format!(
            "2F1 undefined for c = {c}"
        )));
    }
    if z == 0.0 || a == 0.0 || b == 0.0 {
        return Ok(1.0);
    }
    if z >= 1.0 {
        return Err(ShapeError::InvalidArgument(format!(
            "2F1 evaluated on its branch cut z = {z}"
        )));
    }
    if z > -HYP2F1_SERIES_RADIUS {
        return hyp2f1_series(a, b, c, z);
    }
    if z >= HYP2F1_RECIPROCAL_BELOW || (a - b) == (a - b).round() {
        return hyp2f1_pfaff(a, b, c, z);
    }
    hyp2f1_reciprocal(a, b, c, z)
}

/// Survival function of the Kolmogorov distribution, `P(K > λ)`.
pub fn kolmogorov_tail(lambda: f64) -> f64 {
    if lambda <= 0.0 {
        return 1.0;
    }
    if lambda < 1.18 {
        // theta-function form of the CDF, fast for small λ
        let k = (2.0 * PI).sqrt() / lambda;
        let e = -PI * PI / (8.0 * lambda * lambda);
        let mut cdf = 0.0;
        for j in 1..=50 {
            let m = (2 * j - 1) as f64;
            let t = (e * m * m).exp();
            cdf += t;
            if t < 1e-18 {
                break;
            }
        }
        (1.0 - k * cdf).clamp(0.0, 1.0)
    } else {
        let mut sum = 0.0;
        let mut sign = 1.0;
        for j in 1..=100 {
            let j = j as f64;
            let t = (-2.0 * j * j * lambda * lambda).exp();
            sum += sign * t;
            if t < 1e-18 {
                break;
            }
            sign = -sign;
        }
        (2.0 * sum).clamp(0.0, 1.0)
    }
}
