//! Angle space: the simplex of angles divided by π, the uniform-angle model
//! and the density that uniform shapes induce on it.

use super::exponential;
use crate::conversions::SquaredSides;
use crate::error::{Result, ShapeError};
use crate::frame::{helmert3, INPUT_TOL};
use crate::geometry::angles_from_sides;
use crate::quadrature::{integrate_duffy, QuadOptions};
use rand::Rng;
use std::f64::consts::PI;

/// Triangle angles divided by π, so they sum to 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexAngles {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl SimplexAngles {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        let v = [alpha, beta, gamma];
        if v.iter().any(|x| !x.is_finite() || *x < -INPUT_TOL) {
            return Err(ShapeError::InvalidArgument(format!(
                "angles must be nonnegative, got {v:?}"
            )));
        }
        let sum: f64 = v.iter().sum();
        if (sum - 1.0).abs() > INPUT_TOL {
            return Err(ShapeError::InvalidArgument(format!(
                "angles must sum to 1, got {sum}"
            )));
        }
        Ok(SimplexAngles {
            alpha: alpha.max(0.0),
            beta: beta.max(0.0),
            gamma: gamma.max(0.0),
        })
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.alpha, self.beta, self.gamma]
    }

    pub fn max(&self) -> f64 {
        self.alpha.max(self.beta).max(self.gamma)
    }
}

/// Angles of a shape, in units of π.
pub fn angles_of(s: &SquaredSides) -> SimplexAngles {
    let t = angles_from_sides(s, None);
    let sum = t.sum();
    SimplexAngles {
        alpha: t.a / sum,
        beta: t.b / sum,
        gamma: t.c / sum,
    }
}

/// Squared sides from angles by the law of sines, `sin²(πα)/σ`.
pub fn sides_of(a: &SimplexAngles) -> SquaredSides {
    let [x, y, z] = a.as_array().map(|v| (PI * v).sin().powi(2));
    let t = x + y + z;
    SquaredSides {
        a2: x / t,
        b2: y / t,
        c2: z / t,
    }
}

/// Three exponentials divided by their sum: uniform on the angle simplex.
pub fn sample_uniform_angles<R: Rng + ?Sized>(rng: &mut R) -> SimplexAngles {
    let e = [exponential(rng), exponential(rng), exponential(rng)];
    let t: f64 = e.iter().sum();
    SimplexAngles {
        alpha: e[0] / t,
        beta: e[1] / t,
        gamma: e[2] / t,
    }
}

/// Density of the angles of a uniformly random shape, relative to the
/// uniform density on the angle simplex (so a uniform law would give 1).
///
/// With `s = sin²(πα)/σ` the squared sides and `p = sin(2πα)`, the map from
/// angles to squared sides has derivative `π·J`, `J = diag(p)/σ − s·pᵀ/σ`.
/// Squared sides map linearly onto the disk with area factor 3/2 relative to
/// the Helmert coordinates, and the uniform hemisphere projects to the disk
/// with density `1/(π·height)`. The height is `√3·sin A sin B sin C/σ`.
///
/// Points on the boundary of the simplex (a zero angle) return infinity.
/// The angles are sorted first and the trigonometry of the largest one is
/// taken from the sum of the other two, which keeps the value exactly
/// symmetric and accurate next to the corners.
pub fn angle_density(a: &SimplexAngles) -> f64 {
    let mut x = a.as_array();
    x.sort_by(f64::total_cmp);
    if x[0] <= 0.0 {
        return f64::INFINITY;
    }
    let rest = x[0] + x[1];
    let sin = [(PI * x[0]).sin(), (PI * x[1]).sin(), (PI * rest).sin()];
    let p = [
        (2.0 * PI * x[0]).sin(),
        (2.0 * PI * x[1]).sin(),
        -(2.0 * PI * rest).sin(),
    ];
    let sin2 = sin.map(|v| v * v);
    let sigma: f64 = sin2.iter().sum();
    let s = sin2.map(|v| v / sigma);
    let mut j = [[0.0; 3]; 3];
    for r in 0..3 {
        for c in 0..3 {
            j[r][c] = if r == c { p[r] / sigma } else { 0.0 } - s[r] * p[c] / sigma;
        }
    }
    let d = helmert3();
    let reduced = d.mul_3x3(&j).mul_transpose(&d);
    let height = 3f64.sqrt() * sin[0] * sin[1] * sin[2] / sigma;
    let disk_density = 1.0 / (PI * height);
    0.75 * 3f64.sqrt() * PI * PI * reduced.det().abs() * disk_density
}

/// Number of bins when each simplex side is cut into `per_side` pieces.
pub fn angle_bin_count(per_side: usize) -> usize {
    per_side * per_side
}

/// Bin of a point on the simplex grid with `per_side` cuts per side.
///
/// Upward cells (`⌊nα⌋+⌊nβ⌋+⌊nγ⌋ = n−1`) come first, row by row in `α`,
/// then the downward cells.
pub fn angle_bin(a: &SimplexAngles, per_side: usize) -> usize {
    let n = per_side;
    let cell = |v: f64| ((v * n as f64).floor() as usize).min(n - 1);
    let (i, j, k) = (cell(a.alpha), cell(a.beta), cell(a.gamma));
    let up = n * (n + 1) / 2;
    if i + j + k + 1 >= n {
        // upward; sums of n only arise on the grid lines themselves
        let (i, j) = if i + j > n - 1 {
            (i, n - 1 - i)
        } else {
            (i, j)
        };
        i * n - i * (i.saturating_sub(1)) / 2 + j
    } else {
        let j = j.min(n - 2 - i);
        up + i * (n - 1) - i * (i.saturating_sub(1)) / 2 + j
    }
}

/// Corners of bin `index`, each as `(α, β, γ)`.
pub fn angle_bin_vertices(index: usize, per_side: usize) -> Result<[[f64; 3]; 3]> {
    let n = per_side;
    if n == 0 || index >= angle_bin_count(n) {
        return Err(ShapeError::InvalidArgument(format!(
            "no bin {index} on a {n}-grid"
        )));
    }
    let up = n * (n + 1) / 2;
    let h = 1.0 / n as f64;
    let pt = |i: usize, j: usize, k: usize| [i as f64 * h, j as f64 * h, k as f64 * h];
    let (mut rest, down) = if index < up {
        (index, false)
    } else {
        (index - up, true)
    };
    let row_len = |i: usize| if down { n - 1 - i } else { n - i };
    let mut i = 0;
    while rest >= row_len(i) {
        rest -= row_len(i);
        i += 1;
    }
    let j = rest;
    Ok(if down {
        let k = n - 2 - i - j;
        [
            pt(i + 1, j + 1, k),
            pt(i + 1, j, k + 1),
            pt(i, j + 1, k + 1),
        ]
    } else {
        let k = n - 1 - i - j;
        [pt(i + 1, j, k), pt(i, j + 1, k), pt(i, j, k + 1)]
    })
}

/// Probability of each bin under the uniform-shape angle law.
///
/// Each cell is integrated in `(α, β)` with the collapsed corner placed at
/// the vertex nearest a simplex corner, where the density is least smooth.
pub fn angle_bin_probabilities(per_side: usize) -> Result<Vec<f64>> {
    (0..angle_bin_count(per_side))
        .map(|b| angle_bin_probability(b, per_side))
        .collect()
}

/// Probability of a single bin; see [`angle_bin_probabilities`].
pub fn angle_bin_probability(index: usize, per_side: usize) -> Result<f64> {
    let mut v = angle_bin_vertices(index, per_side)?;
    let largest = |t: &[f64; 3]| t.iter().cloned().fold(0.0, f64::max);
    let corner = (0..3)
        .max_by(|&p, &q| largest(&v[p]).total_cmp(&largest(&v[q])))
        .unwrap_or(0);
    v.swap(0, corner);
    let e1: [f64; 3] = std::array::from_fn(|i| v[1][i] - v[0][i]);
    let e2: [f64; 3] = std::array::from_fn(|i| v[2][i] - v[0][i]);
    // (α, β)-area of the cell times the uniform density 2 on that triangle
    let scale = 2.0 * (e1[0] * e2[1] - e1[1] * e2[0]).abs();
    let opts = QuadOptions {
        abs_tol: 1e-11,
        rel_tol: 1e-9,
        max_intervals: 4000,
    };
    let est = integrate_duffy(
        |u, w| {
            let x: [f64; 3] =
                std::array::from_fn(|i| v[0][i] + u * ((1.0 - w) * e1[i] + w * e2[i]));
            if x.iter().any(|&c| c <= 0.0) {
                return 0.0;
            }
            angle_density(&SimplexAngles {
                alpha: x[0],
                beta: x[1],
                gamma: x[2],
            })
        },
        opts,
    )?;
    Ok(scale * est.value)
}
