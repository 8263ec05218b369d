//! Tests of whether a set of shapes is uniformly distributed.

pub mod gof;
pub mod sigma_min;

pub use gof::{
    chi_square_gof, distance_correlation, histogram, ks_statistic, ks_test, ks_two_sample,
};
pub use sigma_min::{
    inv_sigma_min_cdf, inv_sigma_min_cdf_m2, inv_sigma_min_cdf_sorted, inv_sigma_min_density,
    inv_sigma_min_total_mass, sigma_min,
};

use crate::conversions::{svd2x2, svd_to_hemisphere};
use crate::error::{Result, ShapeError};
use crate::frame::{ShapeMatrix, INPUT_TOL};
use crate::linalg::Mat2;
use crate::random::{sample_many, sample_ndim_shape, RngSeed};
use crate::special::chi2_upper_tail;
use std::f64::consts::TAU;
use std::fmt;

/// Draws in the simulated null used for non-square `1/σ_min` tests.
pub const SIMULATED_NULL_DRAWS: usize = 100_000;

/// An `m × (k−1)` matrix with unit Frobenius norm, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PreShape {
    m: usize,
    k: usize,
    data: Vec<f64>,
}

impl PreShape {
    pub fn new(m: usize, k: usize, data: Vec<f64>) -> Result<Self> {
        if m < 1 || k < 2 {
            return Err(ShapeError::InvalidArgument(format!(
                "need m >= 1 and k >= 2, got m={m}, k={k}"
            )));
        }
        if data.len() != m * (k - 1) {
            return Err(ShapeError::InvalidSampleSet(format!(
                "expected {} entries for m={m}, k={k}, got {}",
                m * (k - 1),
                data.len()
            )));
        }
        let n2: f64 = data.iter().map(|x| x * x).sum();
        if !n2.is_finite() || (n2 - 1.0).abs() > INPUT_TOL {
            return Err(ShapeError::NotUnitNorm(n2));
        }
        Ok(PreShape { m, k, data })
    }

    /// Scales any nonzero matrix to unit norm.
    pub fn normalize(m: usize, k: usize, mut data: Vec<f64>) -> Result<Self> {
        let n = data.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !(n > 0.0) || !n.is_finite() {
            return Err(ShapeError::DegenerateInput("preshape has zero norm"));
        }
        data.iter_mut().for_each(|x| *x /= n);
        PreShape::new(m, k, data)
    }

    pub fn from_shape_matrix(s: &ShapeMatrix) -> Self {
        let [[a, b], [c, d]] = s.matrix().0;
        PreShape {
            m: 2,
            k: 3,
            data: vec![a, b, c, d],
        }
    }

    pub fn to_shape_matrix(&self) -> Result<ShapeMatrix> {
        if (self.m, self.k) != (2, 3) {
            return Err(ShapeError::InvalidArgument(
                "only 2×2 preshapes are planar triangles".into(),
            ));
        }
        let d = &self.data;
        ShapeMatrix::new(Mat2::new(d[0], d[1], d[2], d[3]))
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn cols(&self) -> usize {
        self.k - 1
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.cols() + col]
    }

    pub fn frobenius_sq(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum()
    }

    /// `ZᵀZ`, row-major `(k−1) × (k−1)`.
    pub fn gram(&self) -> Vec<f64> {
        let c = self.cols();
        let mut g = vec![0.0; c * c];
        for r in 0..self.m {
            let row = &self.data[r * c..(r + 1) * c];
            for i in 0..c {
                for j in 0..c {
                    g[i * c + j] += row[i] * row[j];
                }
            }
        }
        g
    }

    /// `Q·Z` for a row-major `m × m` matrix `Q` (renormalized).
    pub fn left_multiply(&self, q: &[f64]) -> Result<Self> {
        if q.len() != self.m * self.m {
            return Err(ShapeError::InvalidArgument(
                "left factor must be m × m".into(),
            ));
        }
        let c = self.cols();
        let mut out = vec![0.0; self.m * c];
        for i in 0..self.m {
            for l in 0..self.m {
                let f = q[i * self.m + l];
                for j in 0..c {
                    out[i * c + j] += f * self.get(l, j);
                }
            }
        }
        PreShape::normalize(self.m, self.k, out)
    }
}

/// The law a statistic is referred to.
#[derive(Debug, Clone, PartialEq)]
pub enum Reference {
    ChiSquare {
        df: f64,
    },
    Kolmogorov,
    /// Two-sample comparison against `draws` simulated null values.
    SimulatedNull {
        draws: usize,
    },
}

impl fmt::Display for Reference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reference::ChiSquare { df } => write!(f, "chi2({df})"),
            Reference::Kolmogorov => write!(f, "kolmogorov"),
            Reference::SimulatedNull { draws } => write!(f, "simulated-null({draws})"),
        }
    }
}

/// Outcome of a single test.
#[derive(Debug, Clone, PartialEq)]
pub struct TestReport {
    pub name: String,
    pub statistic: f64,
    pub reference: Reference,
    pub p_value: f64,
    /// Number of samples the statistic was computed from.
    pub count: usize,
}

impl TestReport {
    pub fn rejects(&self, alpha: f64) -> bool {
        self.p_value < alpha
    }

    fn named(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }
}

/// Degrees of freedom of the null law of the statistic in [`chikuse_jupp`]:
/// the dimension `(k−2)(k+1)/2` of traceless symmetric `(k−1) × (k−1)`
/// matrices.
pub fn chikuse_jupp_df(k: usize) -> f64 {
    ((k - 2) * (k + 1)) as f64 / 2.0
}

fn check_same_dims(samples: &[PreShape]) -> Result<(usize, usize)> {
    let first = samples.first().ok_or(ShapeError::EmptySet)?;
    let dims = (first.m, first.k);
    if let Some(bad) = samples.iter().find(|z| (z.m, z.k) != dims) {
        return Err(ShapeError::InvalidSampleSet(format!(
            "mixed dimensions {dims:?} and {:?}",
            (bad.m, bad.k)
        )));
    }
    Ok(dims)
}

/// Second-moment uniformity statistic
/// `S = ((k−1)(m(k−1)+2)/2)·t·tr((M̄ − I/(k−1))²)` with `M̄` the mean of
/// `ZᵢᵀZᵢ`, referred to a chi-square law with [`chikuse_jupp_df`] degrees
/// of freedom.
pub fn chikuse_jupp(samples: &[PreShape]) -> Result<TestReport> {
    let (m, k) = check_same_dims(samples)?;
    let c = k - 1;
    let t = samples.len() as f64;
    let mut mean = vec![0.0; c * c];
    for z in samples {
        for (acc, g) in mean.iter_mut().zip(z.gram()) {
            *acc += g / t;
        }
    }
    for i in 0..c {
        mean[i * c + i] -= 1.0 / c as f64;
    }
    // the deviation is symmetric, so tr(D²) is its squared Frobenius norm
    let trace: f64 = mean.iter().map(|x| x * x).sum();
    let s = (c * (m * c + 2)) as f64 / 2.0 * t * trace;
    let df = chikuse_jupp_df(k);
    let p_value = if df == 0.0 {
        1.0
    } else {
        chi2_upper_tail(s, df)?
    };
    Ok(TestReport {
        name: "chikuse-jupp".into(),
        statistic: s,
        reference: Reference::ChiSquare { df },
        p_value,
        count: samples.len(),
    })
}

/// `1/σ_min` test: exact law for square preshapes, otherwise a two-sample
/// comparison with a seeded simulated null.
pub fn sigma_min_test(samples: &[PreShape], null_seed: RngSeed) -> Result<TestReport> {
    let (m, k) = check_same_dims(samples)?;
    if m.min(k - 1) < 2 {
        return Err(ShapeError::InvalidArgument(
            "σ_min test needs at least a 2 × 2 preshape".into(),
        ));
    }
    let mut xs: Vec<f64> = samples.iter().map(|z| 1.0 / sigma_min(z)).collect();
    if m == k - 1 {
        xs.sort_by(f64::total_cmp);
        let f = inv_sigma_min_cdf_sorted(&xs, m)?;
        let d = gof::ks_statistic_sorted_cdf(&f)?;
        return Ok(gof::ks_report("sigma-min", d, xs.len()));
    }
    let null = sample_many(SIMULATED_NULL_DRAWS, null_seed, None, |r| {
        1.0 / sigma_min(&sample_ndim_shape(m, k, r).expect("dimensions checked"))
    })?;
    let mut r = ks_two_sample(&xs, &null)?.named("sigma-min");
    r.reference = Reference::SimulatedNull {
        draws: SIMULATED_NULL_DRAWS,
    };
    Ok(r)
}

/// All sub-tests run on one sample set.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub reports: Vec<TestReport>,
}

impl SuiteReport {
    /// Rejects when any sub-test falls below `alpha / (number of tests)`.
    pub fn rejects(&self, alpha: f64) -> bool {
        let n = self.reports.len().max(1) as f64;
        self.reports.iter().any(|r| r.rejects(alpha / n))
    }

    pub fn min_p_value(&self) -> f64 {
        self.reports.iter().map(|r| r.p_value).fold(1.0, f64::min)
    }
}

/// Which sub-tests to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TestSelection {
    ChikuseJupp,
    SigmaMin,
    Hemisphere,
    All,
}

/// Height and longitude KS tests for planar triangles (`m = 2`, `k = 3`).
pub fn hemisphere_tests(samples: &[PreShape]) -> Result<Vec<TestReport>> {
    let (m, k) = check_same_dims(samples)?;
    if (m, k) != (2, 3) {
        return Err(ShapeError::InvalidArgument(
            "hemisphere tests need m = 2, k = 3".into(),
        ));
    }
    let mut heights = Vec::with_capacity(samples.len());
    let mut longitudes = Vec::with_capacity(samples.len());
    for z in samples {
        let h = svd_to_hemisphere(&svd2x2(&z.to_shape_matrix()?));
        heights.push(h.height());
        longitudes.push(h.longitude);
    }
    Ok(vec![
        ks_test(&heights, |x| (2.0 * x).clamp(0.0, 1.0))?.named("hemisphere-height"),
        ks_test(&longitudes, |x| (x / TAU).clamp(0.0, 1.0))?.named("hemisphere-longitude"),
    ])
}

/// Runs the selected tests that apply to the sample dimensions.
pub fn run_tests(
    samples: &[PreShape],
    which: TestSelection,
    null_seed: RngSeed,
) -> Result<SuiteReport> {
    let (m, k) = check_same_dims(samples)?;
    let mut reports = Vec::new();
    let all = which == TestSelection::All;
    if all || which == TestSelection::ChikuseJupp {
        reports.push(chikuse_jupp(samples)?);
    }
    let sigma_applies = m.min(k - 1) >= 2;
    if which == TestSelection::SigmaMin || (all && sigma_applies) {
        reports.push(sigma_min_test(samples, null_seed)?);
    }
    if which == TestSelection::Hemisphere || (all && (m, k) == (2, 3)) {
        reports.extend(hemisphere_tests(samples)?);
    }
    Ok(SuiteReport { reports })
}

/// Chikuse–Jupp, the `1/σ_min` test when `Z` is at least 2 × 2, and the
/// hemisphere marginals for planar triangles.
pub fn uniformity_suite(samples: &[PreShape]) -> Result<SuiteReport> {
    run_tests(samples, TestSelection::All, RngSeed::new(0x5eed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{sample_gaussian_shape, RngSeed};

    fn gaussian_preshapes(m: usize, k: usize, n: usize, seed: u64) -> Vec<PreShape> {
        sample_many(n, RngSeed::new(seed), None, |r| {
            sample_ndim_shape(m, k, r).unwrap()
        })
        .unwrap()
    }

    #[test]
    fn preshape_validation() {
        assert!(matches!(
            PreShape::new(2, 3, vec![1.0, 0.0, 0.0]),
            Err(ShapeError::InvalidSampleSet(_))
        ));
        assert!(matches!(
            PreShape::new(2, 3, vec![1.0, 1.0, 0.0, 0.0]),
            Err(ShapeError::NotUnitNorm(_))
        ));
        assert!(PreShape::new(0, 3, vec![]).is_err());
        assert!(PreShape::normalize(2, 3, vec![0.0; 4]).is_err());
        let z = PreShape::normalize(2, 3, vec![3.0, 0.0, 0.0, 4.0]).unwrap();
        for (g, w) in z.gram().iter().zip([0.36, 0.0, 0.0, 0.64]) {
            assert!((g - w).abs() < 1e-15);
        }
    }

    #[test]
    fn zero_point() {
        let eq = PreShape::new(2, 3, vec![0.5f64.sqrt(), 0.0, 0.0, 0.5f64.sqrt()]).unwrap();
        let r = chikuse_jupp(&[eq.clone(), eq.clone(), eq]).unwrap();
        assert!(r.statistic.abs() < 1e-14);
        assert!((r.p_value - 1.0).abs() < 1e-12);
        // k = 2: ZᵀZ is the scalar 1
        let zs = gaussian_preshapes(3, 2, 50, 61);
        let r = chikuse_jupp(&zs).unwrap();
        assert!(r.statistic.abs() < 1e-12);
        assert_eq!(r.p_value, 1.0);
    }

    #[test]
    fn errors() {
        assert!(matches!(chikuse_jupp(&[]), Err(ShapeError::EmptySet)));
        let a = gaussian_preshapes(2, 3, 1, 62);
        let b = gaussian_preshapes(3, 3, 1, 63);
        assert!(matches!(
            chikuse_jupp(&[a[0].clone(), b[0].clone()]),
            Err(ShapeError::InvalidSampleSet(_))
        ));
    }

    #[test]
    fn rotation_invariance() {
        let zs = gaussian_preshapes(3, 4, 200, 64);
        let (c, s) = (0.3f64.cos(), 0.3f64.sin());
        let q = [c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0];
        let rot: Vec<_> = zs.iter().map(|z| z.left_multiply(&q).unwrap()).collect();
        let a = chikuse_jupp(&zs).unwrap().statistic;
        let b = chikuse_jupp(&rot).unwrap().statistic;
        assert!((a - b).abs() < 1e-12 * a.max(1.0));
    }

    #[test]
    fn null_mean_matches_df() {
        for (m, k, reps) in [(2, 3, 300), (3, 4, 150)] {
            let df = chikuse_jupp_df(k);
            let mean = (0..reps)
                .map(|rep| {
                    let zs = sample_many(1000, RngSeed::new(65).with_stream(rep), Some(1), |r| {
                        sample_ndim_shape(m, k, r).unwrap()
                    })
                    .unwrap();
                    chikuse_jupp(&zs).unwrap().statistic
                })
                .sum::<f64>()
                / reps as f64;
            assert!((mean - df).abs() < 0.1 * df, "m={m} k={k}: {mean} vs {df}");
        }
    }

    #[test]
    fn suite_on_null_and_alternatives() {
        let zs = gaussian_preshapes(2, 3, 10_000, 66);
        let r = uniformity_suite(&zs).unwrap();
        assert_eq!(r.reports.len(), 4);
        assert!(!r.rejects(0.01), "{r:?}");

        // all mass at one non-equilateral shape: second moments unbalanced
        let right = PreShape::normalize(2, 3, vec![1.0, 0.0, 0.0, 0.2]).unwrap();
        let r = run_tests(
            &vec![right; 1000],
            TestSelection::ChikuseJupp,
            RngSeed::new(0),
        )
        .unwrap();
        assert!(r.reports[0].p_value < 1e-6);

        // the equilateral point mass balances ZᵀZ exactly, so only the
        // distributional tests see it
        let eq = PreShape::new(2, 3, vec![0.5f64.sqrt(), 0.0, 0.0, 0.5f64.sqrt()]).unwrap();
        let r = uniformity_suite(&vec![eq; 1000]).unwrap();
        assert!(r.reports[0].p_value > 0.99);
        assert!(r.min_p_value() < 1e-6);
        assert!(r.rejects(0.01));
    }

    #[test]
    fn suite_dimension_handling() {
        let single = gaussian_preshapes(2, 3, 1, 67);
        let r = uniformity_suite(&single).unwrap();
        assert!(r.reports.iter().all(|t| (0.0..=1.0).contains(&t.p_value)));

        let line = gaussian_preshapes(1, 4, 100, 68);
        assert_eq!(uniformity_suite(&line).unwrap().reports.len(), 1);

        let cube = gaussian_preshapes(3, 4, 500, 69);
        let r = uniformity_suite(&cube).unwrap();
        assert_eq!(r.reports.len(), 2);
        assert!(matches!(r.reports[1].reference, Reference::Kolmogorov));
    }

    #[test]
    fn non_square_uses_simulated_null() {
        let zs = gaussian_preshapes(3, 3, 2000, 70);
        let r = sigma_min_test(&zs, RngSeed::new(71)).unwrap();
        assert_eq!(
            r.reference,
            Reference::SimulatedNull {
                draws: SIMULATED_NULL_DRAWS
            }
        );
        assert!(r.p_value > 1e-3);
    }

    #[test]
    fn shape_matrix_roundtrip() {
        let m = sample_gaussian_shape(&mut RngSeed::new(72).rng());
        let z = PreShape::from_shape_matrix(&m);
        assert_eq!(z.to_shape_matrix().unwrap(), m);
    }
}
