//! Closed-form SVD of a 2×2 matrix.
//!
//! Any 2×2 matrix splits into a conformal part and an anti-conformal part,
//! `M = [[E, −H], [H, E]] + [[F, G], [G, −F]]`. The first is `Q·Rot(a2)`, the
//! second is `R·Refl(a1)`, and that gives `M = Rot(β)·diag(Q+R, Q−R)·Rot(γ)`
//! directly, with no iteration.

use super::SvdShape;
use crate::linalg::{wrap_angle, Mat2};
use std::f64::consts::PI;

/// Below this singular-value gap, `V` is arbitrary and `θ` is pinned to 0.
pub const DEGENERACY_GAP: f64 = 1e-9;

/// Full 2×2 SVD `M = U·diag(σ₁, σ₂)·Vᵀ` with `V` a rotation by `theta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Svd2 {
    pub u: Mat2,
    pub sigma1: f64,
    pub sigma2: f64,
    pub theta: f64,
}

impl Svd2 {
    pub fn v(&self) -> Mat2 {
        Mat2::rotation(self.theta)
    }

    pub fn reconstruct(&self) -> Mat2 {
        self.u * Mat2::diag(self.sigma1, self.sigma2) * self.v().transpose()
    }

    pub fn shape(&self) -> SvdShape {
        SvdShape {
            sigma1: self.sigma1,
            sigma2: self.sigma2,
            theta: self.theta,
        }
    }
}

/// SVD of an arbitrary real 2×2 matrix. `U` may be a reflection; `V` is
/// always a proper rotation with angle in `[0, π)`.
pub fn svd2_full(m: &Mat2) -> Svd2 {
    let [[m00, m01], [m10, m11]] = m.0;
    let e = 0.5 * (m00 + m11);
    let f = 0.5 * (m00 - m11);
    let g = 0.5 * (m10 + m01);
    let h = 0.5 * (m10 - m01);
    let q = e.hypot(h);
    let r = f.hypot(g);
    let sigma1 = q + r;
    let sigma2 = (q - r).abs();

    if sigma1 - sigma2 < DEGENERACY_GAP {
        // M is a scaled orthogonal matrix (or zero); any V works.
        let u = if sigma1 > 0.0 {
            m.scale(1.0 / sigma1)
        } else {
            Mat2::IDENTITY
        };
        return Svd2 {
            u,
            sigma1,
            sigma2,
            theta: 0.0,
        };
    }

    let a1 = g.atan2(f);
    let a2 = h.atan2(e);
    let beta = 0.5 * (a2 + a1);
    let gamma = 0.5 * (a2 - a1);

    // M = Rot(β)·diag(Q+R, Q−R)·Rot(γ), so V = Rot(−γ).
    let mut u = Mat2::rotation(beta);
    if q < r {
        u = u * Mat2::diag(1.0, -1.0);
    }
    let raw_theta = -gamma;
    let theta = wrap_angle(raw_theta, PI);
    // V(θ+π) = −V(θ); push the sign into U.
    let shifts = ((raw_theta - theta) / PI).round() as i64;
    if shifts.rem_euclid(2) == 1 {
        u = -u;
    }
    Svd2 {
        u,
        sigma1,
        sigma2,
        theta,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_unit(rng: &mut ChaCha8Rng) -> Mat2 {
        let m = Mat2::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        );
        m.scale(1.0 / m.frobenius_sq().sqrt())
    }

    #[test]
    fn scaled_identity_pins_theta() {
        let s = svd2_full(&Mat2::IDENTITY.scale(1.0 / 2f64.sqrt()));
        assert!((s.sigma1 - 1.0 / 2f64.sqrt()).abs() < 1e-15);
        assert!((s.sigma2 - 1.0 / 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(s.theta, 0.0);
    }

    #[test]
    fn rank_one_diagonal() {
        let s = svd2_full(&Mat2::diag(1.0, 0.0));
        assert_eq!((s.sigma1, s.sigma2, s.theta), (1.0, 0.0, 0.0));
        assert!(s.reconstruct().max_abs_diff(&Mat2::diag(1.0, 0.0)) < 1e-15);
    }

    #[test]
    fn random_reconstruction() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let m = random_unit(&mut rng);
            let s = svd2_full(&m);
            assert!(s.reconstruct().max_abs_diff(&m) < 1e-12);
            assert!(s.sigma1 >= s.sigma2 && s.sigma2 >= 0.0 && s.sigma1 <= 1.0 + 1e-15);
            assert!((s.sigma1 * s.sigma1 + s.sigma2 * s.sigma2 - 1.0).abs() < 1e-12);
            assert!((0.0..PI).contains(&s.theta));
            let utu = s.u.transpose() * s.u;
            assert!(utu.max_abs_diff(&Mat2::IDENTITY) < 1e-12);
        }
    }

    #[test]
    fn reflections_and_negative_determinants() {
        for m in [
            Mat2::new(0.0, 1.0, 1.0, 0.0),
            Mat2::new(-0.6, 0.0, 0.0, 0.8),
            Mat2::new(0.0, -0.3, 0.0, 0.4),
        ] {
            let s = svd2_full(&m);
            assert!(s.reconstruct().max_abs_diff(&m) < 1e-12, "{m:?}");
        }
    }
}
