//! Fixed-size row-major matrices used throughout the crate.
//!
//! Everything in triangle space is 2×2, 2×3 or 3×3, so these are plain
//! value types with closed-form arithmetic rather than a dense-matrix crate.

use std::ops::{Add, Mul, Neg, Sub};

pub type Vec2 = [f64; 2];
pub type Vec3 = [f64; 3];
pub type Mat3 = [[f64; 3]; 3];

/// A 2×2 real matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Mat2(pub [[f64; 2]; 2]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([[1.0, 0.0], [0.0, 1.0]]);

    pub fn new(m11: f64, m12: f64, m21: f64, m22: f64) -> Self {
        Mat2([[m11, m12], [m21, m22]])
    }

    pub fn diag(d1: f64, d2: f64) -> Self {
        Mat2([[d1, 0.0], [0.0, d2]])
    }

    /// Counter-clockwise rotation by `angle`.
    pub fn rotation(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Mat2([[c, -s], [s, c]])
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[i][j]
    }

    pub fn transpose(&self) -> Self {
        let m = &self.0;
        Mat2([[m[0][0], m[1][0]], [m[0][1], m[1][1]]])
    }

    pub fn det(&self) -> f64 {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn frobenius_sq(&self) -> f64 {
        self.0.iter().flatten().map(|x| x * x).sum()
    }

    pub fn scale(&self, s: f64) -> Self {
        let m = &self.0;
        Mat2([[s * m[0][0], s * m[0][1]], [s * m[1][0], s * m[1][1]]])
    }

    pub fn mul_vec(&self, v: Vec2) -> Vec2 {
        let m = &self.0;
        [
            m[0][0] * v[0] + m[0][1] * v[1],
            m[1][0] * v[0] + m[1][1] * v[1],
        ]
    }

    /// Column-major flattening `(M11, M21, M12, M22)`.
    pub fn flatten_columns(&self) -> [f64; 4] {
        let m = &self.0;
        [m[0][0], m[1][0], m[0][1], m[1][1]]
    }

    pub fn from_columns_flat(v: [f64; 4]) -> Self {
        Mat2([[v[0], v[2]], [v[1], v[3]]])
    }

    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        self.0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn mul_2x3(&self, rhs: &Mat2x3) -> Mat2x3 {
        let mut out = [[0.0; 3]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = self.0[i][0] * rhs.0[0][j] + self.0[i][1] * rhs.0[1][j];
            }
        }
        Mat2x3(out)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let a = &self.0;
        let b = &rhs.0;
        Mat2([
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ])
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &rhs.0);
        Mat2([
            [a[0][0] + b[0][0], a[0][1] + b[0][1]],
            [a[1][0] + b[1][0], a[1][1] + b[1][1]],
        ])
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        self + (-rhs)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.scale(-1.0)
    }
}

/// A 2×3 real matrix, row-major. Columns are points or edge vectors in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Mat2x3(pub [[f64; 3]; 2]);

impl Mat2x3 {
    pub fn from_columns(c: [Vec2; 3]) -> Self {
        Mat2x3([[c[0][0], c[1][0], c[2][0]], [c[0][1], c[1][1], c[2][1]]])
    }

    pub fn column(&self, j: usize) -> Vec2 {
        [self.0[0][j], self.0[1][j]]
    }

    pub fn column_sum(&self) -> Vec2 {
        [self.0[0].iter().sum(), self.0[1].iter().sum()]
    }

    /// Squared Euclidean lengths of the three columns.
    pub fn column_norms_sq(&self) -> Vec3 {
        std::array::from_fn(|j| self.0[0][j] * self.0[0][j] + self.0[1][j] * self.0[1][j])
    }

    pub fn frobenius_sq(&self) -> f64 {
        self.0.iter().flatten().map(|x| x * x).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().fold(0.0, |acc, x| acc.max(x.abs()))
    }

    pub fn max_abs_diff(&self, other: &Mat2x3) -> f64 {
        self.0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn scale(&self, s: f64) -> Self {
        Mat2x3(self.0.map(|row| row.map(|x| s * x)))
    }

    pub fn mul_3x3(&self, rhs: &Mat3) -> Mat2x3 {
        let mut out = [[0.0; 3]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..3).map(|k| self.0[i][k] * rhs[k][j]).sum();
            }
        }
        Mat2x3(out)
    }

    /// `self · otherᵀ`, a 2×2 matrix.
    pub fn mul_transpose(&self, other: &Mat2x3) -> Mat2 {
        let mut out = [[0.0; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..3).map(|k| self.0[i][k] * other.0[j][k]).sum();
            }
        }
        Mat2(out)
    }

    pub fn mul_vec(&self, v: Vec3) -> Vec2 {
        [
            self.0[0][0] * v[0] + self.0[0][1] * v[1] + self.0[0][2] * v[2],
            self.0[1][0] * v[0] + self.0[1][1] * v[1] + self.0[1][2] * v[2],
        ]
    }
}

pub fn mat3_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..3).map(|k| a[i][k] * b[k][j]).sum()))
}

pub fn mat3_transpose(a: &Mat3) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i]))
}

pub fn mat3_mul_vec(a: &Mat3, v: Vec3) -> Vec3 {
    std::array::from_fn(|i| a[i][0] * v[0] + a[i][1] * v[1] + a[i][2] * v[2])
}

pub fn mat3_det(a: &Mat3) -> f64 {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

pub fn norm2(v: Vec2) -> f64 {
    v[0].hypot(v[1])
}

pub fn norm3(v: Vec3) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

pub fn sub3(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn dot3(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn dist3(a: Vec3, b: Vec3) -> f64 {
    norm3(sub3(a, b))
}

/// Reduce an angle to `[0, period)`.
pub fn wrap_angle(angle: f64, period: f64) -> f64 {
    let r = angle.rem_euclid(period);
    // rem_euclid can return `period` itself for tiny negative inputs
    if r >= period {
        0.0
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_composes() {
        let r = Mat2::rotation(0.3) * Mat2::rotation(0.4);
        assert!(r.max_abs_diff(&Mat2::rotation(0.7)) < 1e-15);
        assert!((Mat2::rotation(1.1).det() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn column_flattening_roundtrips() {
        let m = Mat2::new(1.0, 2.0, 3.0, 4.0);
        assert_eq!(m.flatten_columns(), [1.0, 3.0, 2.0, 4.0]);
        assert_eq!(Mat2::from_columns_flat(m.flatten_columns()), m);
    }

    #[test]
    fn wrap_angle_handles_negative_zero_edge() {
        let two_pi = 2.0 * std::f64::consts::PI;
        assert_eq!(wrap_angle(-1e-300, two_pi), 0.0);
        assert!((wrap_angle(-0.5, two_pi) - (two_pi - 0.5)).abs() < 1e-15);
        assert!((wrap_angle(7.0, two_pi) - (7.0 - two_pi)).abs() < 1e-15);
    }

    #[test]
    fn mat3_det_of_permutation() {
        let p = [[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]];
        assert_eq!(mat3_det(&p), -1.0);
    }
}
