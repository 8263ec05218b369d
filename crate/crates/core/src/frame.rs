//! Reference frames and matrix views of a triangle.
//!
//! A triangle is carried either by its centered vertex matrix `T` (2×3,
//! columns are vertices) or its edge matrix `E` (2×3, columns are edge
//! vectors summing to zero). Multiplying by the transposed Helmert matrix
//! `Δ₃ᵀ` turns either one into a 2×2 shape matrix `M`; the edge view is the
//! default everywhere else in the crate.

use crate::error::{Result, ShapeError};
use crate::linalg::{Mat2, Mat2x3, Mat3};

/// Tolerance used when validating caller-supplied inputs.
pub const INPUT_TOL: f64 = 1e-9;

const SQRT2: f64 = std::f64::consts::SQRT_2;

/// `Δ₃`, the 2×3 Helmert matrix: orthonormal rows perpendicular to (1,1,1).
pub fn helmert3() -> Mat2x3 {
    let s6 = 6f64.sqrt();
    Mat2x3([
        [1.0 / SQRT2, -1.0 / SQRT2, 0.0],
        [1.0 / s6, 1.0 / s6, -2.0 / s6],
    ])
}

/// Cyclic difference matrix taking centered vertices to edges: `E = T·D`.
pub const VERTEX_TO_EDGE: Mat3 = [[1.0, -1.0, 0.0], [0.0, 1.0, -1.0], [-1.0, 0.0, 1.0]];

/// Pseudoinverse partner of [`VERTEX_TO_EDGE`], up to the factor 1/3: `T = E·D⁺/3`.
pub const EDGE_TO_VERTEX: Mat3 = [[1.0, 0.0, -1.0], [-1.0, 1.0, 0.0], [0.0, -1.0, 1.0]];

/// The generalized Helmert matrix `Δₙ`, an (n−1)×n matrix with orthonormal
/// rows orthogonal to the all-ones vector. Row `j` (1-based) is
/// `(1, …, 1, −j, 0, …, 0) / √(j(j+1))`.
#[derive(Debug, Clone, PartialEq)]
pub struct HelmertFrame {
    n: usize,
    rows: Vec<Vec<f64>>,
}

/// Builds `Δₙ` for `n ≥ 2`.
pub fn helmert(n: usize) -> Result<HelmertFrame> {
    if n < 2 {
        return Err(ShapeError::InvalidArgument(format!(
            "helmert needs n >= 2, got {n}"
        )));
    }
    let rows = (1..n)
        .map(|j| {
            let scale = 1.0 / ((j * (j + 1)) as f64).sqrt();
            (0..n)
                .map(|col| match col.cmp(&j) {
                    std::cmp::Ordering::Less => scale,
                    std::cmp::Ordering::Equal => -(j as f64) * scale,
                    std::cmp::Ordering::Greater => 0.0,
                })
                .collect()
        })
        .collect();
    Ok(HelmertFrame { n, rows })
}

impl HelmertFrame {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.rows[i][j]
    }

    /// `ΔΔᵀ`, which is `I_{n−1}`.
    pub fn row_gram(&self) -> Vec<Vec<f64>> {
        self.rows
            .iter()
            .map(|ri| self.rows.iter().map(|rj| dot(ri, rj)).collect())
            .collect()
    }

    /// `ΔᵀΔ`, which is the projector `Iₙ − Jₙ/n`.
    pub fn column_gram(&self) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| self.rows.iter().map(|r| r[i] * r[j]).sum())
                    .collect()
            })
            .collect()
    }

    /// Fixed-size copy; only valid for `n = 3`.
    pub fn as_mat2x3(&self) -> Option<Mat2x3> {
        (self.n == 3).then(|| {
            Mat2x3([
                [self.rows[0][0], self.rows[0][1], self.rows[0][2]],
                [self.rows[1][0], self.rows[1][1], self.rows[1][2]],
            ])
        })
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Centered vertex matrix: columns are vertices, column sum zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VertexMatrix(Mat2x3);

/// Edge matrix: columns are edge vectors of a closed triangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeMatrix(Mat2x3);

impl VertexMatrix {
    pub fn matrix(&self) -> &Mat2x3 {
        &self.0
    }
}

impl EdgeMatrix {
    /// Validates that the columns close up (sum to zero).
    pub fn new(e: Mat2x3) -> Result<Self> {
        let sum = e.column_sum();
        let residual = sum[0].abs().max(sum[1].abs());
        if residual > INPUT_TOL * e.max_abs().max(1.0) {
            return Err(ShapeError::InvalidEdgeMatrix(residual));
        }
        Ok(EdgeMatrix(e))
    }

    pub fn matrix(&self) -> &Mat2x3 {
        &self.0
    }

    /// Squared edge lengths, the diagonal of `EᵀE`.
    pub fn squared_lengths(&self) -> [f64; 3] {
        self.0.column_norms_sq()
    }
}

/// Translates the centroid of the three vertices to the origin.
pub fn center_vertices(raw: &Mat2x3) -> VertexMatrix {
    let mut t = *raw;
    for row in t.0.iter_mut() {
        let mean = row.iter().sum::<f64>() / 3.0;
        row.iter_mut().for_each(|x| *x -= mean);
    }
    VertexMatrix(t)
}

pub fn vertices_to_edges(t: &VertexMatrix) -> EdgeMatrix {
    EdgeMatrix(t.0.mul_3x3(&VERTEX_TO_EDGE))
}

pub fn edges_to_vertices(e: &EdgeMatrix) -> VertexMatrix {
    VertexMatrix(e.0.mul_3x3(&EDGE_TO_VERTEX).scale(1.0 / 3.0))
}

/// `Mᵥ = TΔᵀ` before normalization.
pub fn vertex_view(t: &VertexMatrix) -> Mat2 {
    t.0.mul_transpose(&helmert3())
}

/// `Mₑ = EΔᵀ` before normalization.
pub fn edge_view(e: &EdgeMatrix) -> Mat2 {
    e.0.mul_transpose(&helmert3())
}

/// The fixed matrix relating the two views: `Mᵥ = Mₑ · R`.
pub fn edge_to_vertex_view() -> Mat2 {
    let k = 3f64.sqrt() / 6.0;
    Mat2::new(0.5, k, -k, 0.5)
}

/// A 2×2 matrix with unit Frobenius norm; the canonical shape carrier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShapeMatrix(Mat2);

impl ShapeMatrix {
    /// Accepts a matrix whose squared entries already sum to 1.
    pub fn new(m: Mat2) -> Result<Self> {
        let f = m.frobenius_sq();
        if (f - 1.0).abs() > INPUT_TOL {
            return Err(ShapeError::NotUnitNorm(f));
        }
        Ok(ShapeMatrix(m))
    }

    /// Scales any nonzero matrix to unit Frobenius norm.
    pub fn normalize(m: Mat2) -> Result<Self> {
        let f = m.frobenius_sq();
        if f == 0.0 || !f.is_finite() {
            return Err(ShapeError::DegenerateInput("zero or non-finite matrix"));
        }
        Ok(ShapeMatrix(m.scale(1.0 / f.sqrt())))
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    /// Edges of the triangle, `E = MΔ`.
    pub fn edges(&self) -> EdgeMatrix {
        EdgeMatrix(self.0.mul_2x3(&helmert3()))
    }

    /// Squared side lengths `diag(ΔᵀMᵀMΔ)`; they sum to 1.
    pub fn squared_sides_raw(&self) -> [f64; 3] {
        self.edges().squared_lengths()
    }
}

pub fn shape_from_vertices(t: &VertexMatrix) -> Result<ShapeMatrix> {
    if t.0.frobenius_sq() == 0.0 {
        return Err(ShapeError::DegenerateInput("all vertices coincide"));
    }
    ShapeMatrix::normalize(vertex_view(t))
}

pub fn shape_from_edges(e: &EdgeMatrix) -> Result<ShapeMatrix> {
    if e.0.frobenius_sq() == 0.0 {
        return Err(ShapeError::DegenerateInput("all edges are zero"));
    }
    ShapeMatrix::normalize(edge_view(e))
}
