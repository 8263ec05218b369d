//! Goodness-of-fit and dependence statistics.

use super::{Reference, TestReport};
use crate::error::{Result, ShapeError};
use crate::special::{chi2_upper_tail, kolmogorov_tail};

fn stephens(n_eff: f64, d: f64) -> f64 {
    let r = n_eff.sqrt();
    (r + 0.12 + 0.11 / r) * d
}

fn finite_sorted(samples: &[f64]) -> Result<Vec<f64>> {
    if samples.is_empty() {
        return Err(ShapeError::EmptySet);
    }
    if samples.iter().any(|x| x.is_nan()) {
        return Err(ShapeError::InvalidSampleSet("NaN in sample".into()));
    }
    let mut xs = samples.to_vec();
    xs.sort_by(f64::total_cmp);
    Ok(xs)
}

/// Kolmogorov–Smirnov distance between the sample and `cdf`.
pub fn ks_statistic(samples: &[f64], cdf: impl Fn(f64) -> f64) -> Result<f64> {
    let xs = finite_sorted(samples)?;
    ks_statistic_sorted_cdf(&xs.iter().map(|&x| cdf(x)).collect::<Vec<_>>())
}

/// KS distance from CDF values already evaluated at the sorted sample.
pub(crate) fn ks_statistic_sorted_cdf(f: &[f64]) -> Result<f64> {
    if f.is_empty() {
        return Err(ShapeError::EmptySet);
    }
    let n = f.len() as f64;
    Ok(f.iter()
        .enumerate()
        .map(|(i, &v)| (v - i as f64 / n).max((i + 1) as f64 / n - v))
        .fold(0.0, f64::max))
}

pub(crate) fn ks_report(name: &str, d: f64, n: usize) -> TestReport {
    TestReport {
        name: name.to_string(),
        statistic: d,
        reference: Reference::Kolmogorov,
        p_value: kolmogorov_tail(stephens(n as f64, d)).clamp(0.0, 1.0),
        count: n,
    }
}

/// One-sample KS test with the asymptotic Kolmogorov p-value
/// (Stephens' small-sample scaling of the statistic).
pub fn ks_test(samples: &[f64], cdf: impl Fn(f64) -> f64) -> Result<TestReport> {
    let d = ks_statistic(samples, cdf)?;
    Ok(ks_report("ks", d, samples.len()))
}

/// Two-sample KS test.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<TestReport> {
    let xs = finite_sorted(a)?;
    let ys = finite_sorted(b)?;
    let (n, m) = (xs.len(), ys.len());
    let (mut i, mut j, mut d) = (0, 0, 0.0f64);
    while i < n && j < m {
        let v = xs[i].min(ys[j]);
        while i < n && xs[i] <= v {
            i += 1;
        }
        while j < m && ys[j] <= v {
            j += 1;
        }
        d = d.max((i as f64 / n as f64 - j as f64 / m as f64).abs());
    }
    let ne = (n * m) as f64 / (n + m) as f64;
    Ok(TestReport {
        name: "ks-two-sample".into(),
        statistic: d,
        reference: Reference::Kolmogorov,
        p_value: kolmogorov_tail(stephens(ne, d)).clamp(0.0, 1.0),
        count: n,
    })
}

/// Pearson chi-square of observed counts against expected counts, with
/// `bins − 1 − fitted` degrees of freedom.
pub fn chi_square_gof(observed: &[f64], expected: &[f64], fitted: usize) -> Result<TestReport> {
    if observed.len() != expected.len() {
        return Err(ShapeError::InvalidArgument(
            "observed and expected differ in length".into(),
        ));
    }
    if observed.len() < fitted + 2 {
        return Err(ShapeError::InvalidArgument("too few bins".into()));
    }
    if expected.iter().any(|&e| !(e > 0.0)) {
        return Err(ShapeError::InvalidArgument(
            "expected counts must be positive".into(),
        ));
    }
    let stat: f64 = observed
        .iter()
        .zip(expected)
        .map(|(o, e)| (o - e) * (o - e) / e)
        .sum();
    let df = (observed.len() - 1 - fitted) as f64;
    Ok(TestReport {
        name: "chi-square".into(),
        statistic: stat,
        reference: Reference::ChiSquare { df },
        p_value: chi2_upper_tail(stat, df)?,
        count: observed.iter().sum::<f64>() as usize,
    })
}

/// Bins `samples` on `edges` (`edges.len() − 1` half-open bins, the last
/// one closed). Values outside are dropped.
pub fn histogram(samples: &[f64], edges: &[f64]) -> Vec<f64> {
    let nb = edges.len().saturating_sub(1);
    let mut counts = vec![0.0; nb];
    if nb == 0 {
        return counts;
    }
    for &x in samples {
        if x < edges[0] || x > edges[nb] || x.is_nan() {
            continue;
        }
        let b = edges
            .partition_point(|&e| e <= x)
            .saturating_sub(1)
            .min(nb - 1);
        counts[b] += 1.0;
    }
    counts
}

struct Fenwick {
    tree: Vec<[f64; 4]>,
}

impl Fenwick {
    fn new(n: usize) -> Self {
        Fenwick {
            tree: vec![[0.0; 4]; n + 1],
        }
    }

    fn add(&mut self, pos: usize, v: [f64; 4]) {
        let mut i = pos + 1;
        while i < self.tree.len() {
            for k in 0..4 {
                self.tree[i][k] += v[k];
            }
            i += i & i.wrapping_neg();
        }
    }

    /// Sums over positions `< pos`.
    fn prefix(&self, pos: usize) -> [f64; 4] {
        let mut acc = [0.0; 4];
        let mut i = pos;
        while i > 0 {
            for k in 0..4 {
                acc[k] += self.tree[i][k];
            }
            i &= i - 1;
        }
        acc
    }
}

/// `Σᵢ |xᵢ − xⱼ|` for every `i`.
fn abs_row_sums(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| x[a].total_cmp(&x[b]));
    let total: f64 = x.iter().sum();
    let mut below = 0.0;
    let mut out = vec![0.0; n];
    for (rank, &i) in order.iter().enumerate() {
        // rank values at or below, n − rank above
        out[i] = x[i] * (2.0 * rank as f64 - n as f64) + total - 2.0 * below;
        below += x[i];
    }
    out
}

/// `Σᵢⱼ |xᵢ − xⱼ|·|yᵢ − yⱼ|` by counting concordant pairs in `O(n log n)`.
fn abs_cross_sum(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len();
    let mut by_y: Vec<usize> = (0..n).collect();
    by_y.sort_by(|&a, &b| y[a].total_cmp(&y[b]));
    let mut y_rank = vec![0; n];
    for (r, &i) in by_y.iter().enumerate() {
        y_rank[i] = r;
    }
    let mut by_x: Vec<usize> = (0..n).collect();
    by_x.sort_by(|&a, &b| x[a].total_cmp(&x[b]));
    let mut tree = Fenwick::new(n);
    let mut concordant = 0.0;
    for &i in &by_x {
        let [cnt, sx, sy, sxy] = tree.prefix(y_rank[i]);
        concordant += cnt * x[i] * y[i] - x[i] * sy - y[i] * sx + sxy;
        tree.add(y_rank[i], [1.0, x[i], y[i], x[i] * y[i]]);
    }
    let nf = n as f64;
    let sx: f64 = x.iter().sum();
    let sy: f64 = y.iter().sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    let all = 2.0 * nf * sxy - 2.0 * sx * sy;
    4.0 * concordant - all
}

fn dcov2(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let a = abs_row_sums(x);
    let b = abs_row_sums(y);
    let cross = abs_cross_sum(x, y);
    let ab: f64 = a.iter().zip(&b).map(|(p, q)| p * q).sum();
    let sa: f64 = a.iter().sum();
    let sb: f64 = b.iter().sum();
    cross / (n * n) - 2.0 * ab / (n * n * n) + sa * sb / (n * n * n * n)
}

fn centred(x: &[f64]) -> Vec<f64> {
    let mean = x.iter().sum::<f64>() / x.len() as f64;
    x.iter().map(|v| v - mean).collect()
}

/// Sample distance correlation of two scalar series, `O(n log n)`.
pub fn distance_correlation(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(ShapeError::InvalidArgument(
            "series differ in length".into(),
        ));
    }
    if x.is_empty() {
        return Err(ShapeError::EmptySet);
    }
    let (x, y) = (centred(x), centred(y));
    let vx = dcov2(&x, &x);
    let vy = dcov2(&y, &y);
    if !(vx > 0.0 && vy > 0.0) {
        return Ok(0.0);
    }
    Ok((dcov2(&x, &y).max(0.0) / (vx * vy).sqrt()).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{sample_many, RngSeed};
    use rand::Rng;

    fn dcor_naive(x: &[f64], y: &[f64]) -> f64 {
        let n = x.len();
        let centre = |v: &[f64]| {
            let d: Vec<Vec<f64>> = (0..n)
                .map(|i| (0..n).map(|j| (v[i] - v[j]).abs()).collect())
                .collect();
            let row: Vec<f64> = d.iter().map(|r| r.iter().sum::<f64>() / n as f64).collect();
            let all = row.iter().sum::<f64>() / n as f64;
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| d[i][j] - row[i] - row[j] + all)
                        .collect::<Vec<_>>()
                })
                .collect::<Vec<_>>()
        };
        let (a, b) = (centre(x), centre(y));
        let dot = |p: &Vec<Vec<f64>>, q: &Vec<Vec<f64>>| {
            p.iter()
                .flatten()
                .zip(q.iter().flatten())
                .map(|(u, v)| u * v)
                .sum::<f64>()
        };
        (dot(&a, &b) / (dot(&a, &a) * dot(&b, &b)).sqrt()).sqrt()
    }

    #[test]
    fn dcor_matches_quadratic_definition() {
        let mut rng = RngSeed::new(41).rng();
        for n in [2, 3, 10, 57, 200] {
            let x: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
            let y: Vec<f64> = x
                .iter()
                .map(|v| (v * 7.0).sin() + 0.3 * rng.random::<f64>())
                .collect();
            let fast = distance_correlation(&x, &y).unwrap();
            let slow = dcor_naive(&x, &y);
            assert!((fast - slow).abs() < 1e-10, "n={n}: {fast} {slow}");
        }
        // ties
        let x = [1.0, 1.0, 2.0, 2.0, 3.0, 0.5];
        let y = [0.0, 1.0, 0.0, 1.0, 1.0, 1.0];
        assert!((distance_correlation(&x, &y).unwrap() - dcor_naive(&x, &y)).abs() < 1e-12);
    }

    #[test]
    fn dcor_extremes() {
        let x: Vec<f64> = (0..100).map(|i| i as f64).collect();
        assert!((distance_correlation(&x, &x).unwrap() - 1.0).abs() < 1e-12);
        let c = vec![1.0; 100];
        assert_eq!(distance_correlation(&x, &c).unwrap(), 0.0);
        let pairs = sample_many(100_000, RngSeed::new(42), None, |r| {
            (r.random::<f64>(), r.random::<f64>())
        })
        .unwrap();
        let (a, b): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
        assert!(distance_correlation(&a, &b).unwrap() < 0.02);
    }

    #[test]
    fn ks_at_quantiles_is_small() {
        let n = 1000;
        let xs: Vec<f64> = (1..=n).map(|i| i as f64 / (n + 1) as f64).collect();
        let r = ks_test(&xs, |x| x).unwrap();
        assert!(r.statistic <= 1.0 / n as f64 + 1e-12);
        assert!(r.p_value > 0.99);
        assert!(matches!(ks_test(&[], |x| x), Err(ShapeError::EmptySet)));
    }

    #[test]
    fn ks_null_calibration() {
        // rejection rate at α = 0.05 over 400 uniform samples of size 500
        let rejects = (0..400u64)
            .filter(|&rep| {
                let xs = sample_many(500, RngSeed::new(43).with_stream(rep), Some(1), |r| {
                    r.random::<f64>()
                })
                .unwrap();
                ks_test(&xs, |x| x).unwrap().p_value < 0.05
            })
            .count();
        // binomial(400, 0.05): mean 20, sd 4.4
        assert!((7..=34).contains(&rejects), "{rejects}");
    }

    #[test]
    fn two_sample_ks() {
        let a = sample_many(5000, RngSeed::new(44), None, |r| r.random::<f64>()).unwrap();
        let b = sample_many(7000, RngSeed::new(45), None, |r| r.random::<f64>()).unwrap();
        assert!(ks_two_sample(&a, &b).unwrap().p_value > 0.01);
        let c: Vec<f64> = b.iter().map(|x| x * x).collect();
        assert!(ks_two_sample(&a, &c).unwrap().p_value < 1e-6);
        let r = ks_two_sample(&[1.0, 2.0], &[1.0, 2.0]).unwrap();
        assert_eq!(r.statistic, 0.0);
    }

    #[test]
    fn chi_square_basics() {
        let r = chi_square_gof(&[10.0, 10.0, 10.0], &[10.0, 10.0, 10.0], 0).unwrap();
        assert_eq!(r.statistic, 0.0);
        assert!((r.p_value - 1.0).abs() < 1e-15);
        assert!(chi_square_gof(&[1.0], &[1.0], 0).is_err());
        assert!(chi_square_gof(&[1.0, 2.0], &[1.0, 0.0], 0).is_err());
    }

    #[test]
    fn histogram_edges() {
        let c = histogram(&[0.0, 0.5, 0.99, 1.0, 1.5, -0.1], &[0.0, 0.5, 1.0]);
        assert_eq!(c, vec![1.0, 3.0]);
    }
}
