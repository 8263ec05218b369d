//! The Hopf map on unit-norm 2×2 matrices and the quaternion rotations
//! that intertwine it.

use crate::error::{Result, ShapeError};
use crate::frame::ShapeMatrix;
use crate::linalg::{mat3_mul_vec, norm3, sub3, Mat2, Mat3, Vec3};

pub type Mat4 = [[f64; 4]; 4];

/// `(M11²+M21²) − (M12²+M22²), 2(M11M12+M21M22), 2(M11M22−M21M12)`.
///
/// Columns of `M` are treated as a pair of plane vectors; the output is a
/// point on the unit sphere whenever `‖M‖_F = 1`.
pub fn hopf(m: &Mat2) -> Vec3 {
    let [[m11, m12], [m21, m22]] = m.0;
    [
        (m11 * m11 + m21 * m21) - (m12 * m12 + m22 * m22),
        2.0 * (m11 * m12 + m21 * m22),
        2.0 * (m11 * m22 - m21 * m12),
    ]
}

/// Point on the radius-1/2 upper hemisphere: `½·hopf(M)` folded to `z ≥ 0`.
pub fn shape_to_hemisphere_cartesian(m: &ShapeMatrix) -> Vec3 {
    let [x, y, z] = hopf(m.matrix());
    [0.5 * x, 0.5 * y, 0.5 * z.abs()]
}

/// Unit quaternion `(α, β, γ, δ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitQuaternion {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
}

impl UnitQuaternion {
    pub const IDENTITY: UnitQuaternion = UnitQuaternion {
        alpha: 1.0,
        beta: 0.0,
        gamma: 0.0,
        delta: 0.0,
    };

    pub fn new(alpha: f64, beta: f64, gamma: f64, delta: f64) -> Result<Self> {
        let n = alpha * alpha + beta * beta + gamma * gamma + delta * delta;
        if !n.is_finite() || (n - 1.0).abs() > crate::frame::INPUT_TOL {
            return Err(ShapeError::InvalidQuaternion(n));
        }
        Ok(UnitQuaternion {
            alpha,
            beta,
            gamma,
            delta,
        })
    }

    /// Scales any nonzero 4-vector to unit length.
    pub fn normalize(v: [f64; 4]) -> Result<Self> {
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !(n > 0.0) || !n.is_finite() {
            return Err(ShapeError::InvalidQuaternion(n * n));
        }
        Ok(UnitQuaternion {
            alpha: v[0] / n,
            beta: v[1] / n,
            gamma: v[2] / n,
            delta: v[3] / n,
        })
    }
}

/// The 3×3 rotation about axis `(β, γ, δ)` by angle `2·acos(α)`.
pub fn q3_from_quaternion(q: &UnitQuaternion) -> Mat3 {
    let UnitQuaternion {
        alpha: a,
        beta: b,
        gamma: c,
        delta: d,
    } = *q;
    [
        [
            a * a + b * b - c * c - d * d,
            2.0 * (a * d + b * c),
            2.0 * (b * d - a * c),
        ],
        [
            -2.0 * (a * d - b * c),
            a * a - b * b + c * c - d * d,
            2.0 * (a * b + c * d),
        ],
        [
            2.0 * (a * c + b * d),
            -2.0 * (a * b - c * d),
            a * a - b * b - c * c + d * d,
        ],
    ]
}

/// The companion 4×4 rotation acting on column-flattened 2×2 matrices.
pub fn q4_from_quaternion(q: &UnitQuaternion) -> Mat4 {
    let UnitQuaternion {
        alpha: a,
        beta: b,
        gamma: c,
        delta: d,
    } = *q;
    [[a, -b, d, -c], [b, a, c, d], [-d, -c, a, b], [c, -d, -b, a]]
}

/// Flattens `M` by columns, applies `Q₄`, and reshapes.
pub fn q4_apply(q4: &Mat4, m: &Mat2) -> Mat2 {
    let v = m.flatten_columns();
    let w: [f64; 4] = std::array::from_fn(|i| (0..4).map(|j| q4[i][j] * v[j]).sum());
    Mat2::from_columns_flat(w)
}

/// `‖Hopf(Q₄M) − Q₃·Hopf(M)‖`.
pub fn hopf_equivariance_check(q: &UnitQuaternion, m: &Mat2) -> f64 {
    let lhs = hopf(&q4_apply(&q4_from_quaternion(q), m));
    let rhs = mat3_mul_vec(&q3_from_quaternion(q), hopf(m));
    norm3(sub3(lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conversions::{svd2x2, svd_to_hemisphere};
    use crate::linalg::{mat3_det, mat3_mul, mat3_transpose};
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

    fn random_quaternion(rng: &mut ChaCha8Rng) -> UnitQuaternion {
        UnitQuaternion::normalize(std::array::from_fn(|_| rng.random_range(-1.0..1.0))).unwrap()
    }

    #[test]
    fn hopf_fixed_points() {
        assert_eq!(hopf(&Mat2::diag(1.0, 0.0)), [1.0, 0.0, 0.0]);
        let h = hopf(&Mat2::IDENTITY.scale(0.5f64.sqrt()));
        assert!(h[0].abs() < 1e-15 && h[1].abs() < 1e-15 && (h[2] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn hopf_lands_on_sphere_with_det_sign() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..1000 {
            let m = random_unit(&mut rng);
            let h = hopf(&m);
            assert!((norm3(h) - 1.0).abs() < 1e-12);
            assert_eq!(h[2] > 0.0, m.det() > 0.0);
        }
    }

    #[test]
    fn hemisphere_cartesian_matches_svd_route() {
        let pole = shape_to_hemisphere_cartesian(
            &ShapeMatrix::new(Mat2::IDENTITY.scale(0.5f64.sqrt())).unwrap(),
        );
        assert!((pole[2] - 0.5).abs() < 1e-15);
        assert_eq!(
            shape_to_hemisphere_cartesian(&ShapeMatrix::new(Mat2::diag(1.0, 0.0)).unwrap()),
            [0.5, 0.0, 0.0]
        );
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..1000 {
            let m = ShapeMatrix::new(random_unit(&mut rng)).unwrap();
            let a = shape_to_hemisphere_cartesian(&m);
            let b = svd_to_hemisphere(&svd2x2(&m)).cartesian();
            assert!(norm3(sub3(a, b)) < 1e-12, "{a:?} {b:?}");
        }
    }

    #[test]
    fn identity_quaternion() {
        let q3 = q3_from_quaternion(&UnitQuaternion::IDENTITY);
        assert_eq!(q3, [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);
        let q4 = q4_from_quaternion(&UnitQuaternion::IDENTITY);
        for (i, row) in q4.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                assert_eq!(x, if i == j { 1.0 } else { 0.0 });
            }
        }
        let m = Mat2::new(0.1, 0.7, -0.5, 0.5);
        assert_eq!(hopf_equivariance_check(&UnitQuaternion::IDENTITY, &m), 0.0);
    }

    #[test]
    fn x_axis_rotation() {
        let psi: f64 = 0.37;
        let q = UnitQuaternion::new(psi.cos(), psi.sin(), 0.0, 0.0).unwrap();
        let q3 = q3_from_quaternion(&q);
        // fixed axis
        let axis = mat3_mul_vec(&q3, [1.0, 0.0, 0.0]);
        assert!(norm3(sub3(axis, [1.0, 0.0, 0.0])) < 1e-15);
        // trace = 1 + 2cos(angle)
        let trace = q3[0][0] + q3[1][1] + q3[2][2];
        assert!(((trace - 1.0) / 2.0 - (2.0 * psi).cos()).abs() < 1e-15);
        assert!((q3[1][2] - (2.0 * psi).sin()).abs() < 1e-15);
    }

    #[test]
    fn random_rotations_are_proper() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..100 {
            let q = random_quaternion(&mut rng);
            let q3 = q3_from_quaternion(&q);
            let g = mat3_mul(&mat3_transpose(&q3), &q3);
            for (i, row) in g.iter().enumerate() {
                for (j, &x) in row.iter().enumerate() {
                    assert!((x - if i == j { 1.0 } else { 0.0 }).abs() < 1e-12);
                }
            }
            assert!((mat3_det(&q3) - 1.0).abs() < 1e-12);
            let axis = [q.beta, q.gamma, q.delta];
            assert!(norm3(sub3(mat3_mul_vec(&q3, axis), axis)) < 1e-12);

            let q4 = q4_from_quaternion(&q);
            for i in 0..4 {
                for j in 0..4 {
                    let dot: f64 = (0..4).map(|k| q4[k][i] * q4[k][j]).sum();
                    assert!((dot - if i == j { 1.0 } else { 0.0 }).abs() < 1e-12);
                }
            }
            let flat: Vec<f64> = q4.iter().flatten().copied().collect();
            let det = nalgebra::Matrix4::from_row_slice(&flat).determinant();
            assert!((det - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn equivariance_holds() {
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        let mut worst: f64 = 0.0;
        for _ in 0..1000 {
            let q = random_quaternion(&mut rng);
            let m = random_unit(&mut rng);
            worst = worst.max(hopf_equivariance_check(&q, &m));
        }
        assert!(worst < 1e-12, "{worst}");
    }

    #[test]
    fn quaternion_validation() {
        assert!(matches!(
            UnitQuaternion::new(1.0, 1.0, 0.0, 0.0),
            Err(ShapeError::InvalidQuaternion(_))
        ));
        assert!(UnitQuaternion::normalize([0.0; 4]).is_err());
    }
}
