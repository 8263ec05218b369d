//! Random triangle models, classification and the exact probabilities they
//! are checked against.
//!
//! All sampling goes through [`RngSeed`]: a ChaCha8 generator seeded from a
//! 64-bit seed and placed on an explicit stream. Bulk drivers split work into
//! fixed chunks of [`CHUNK`] samples, chunk `c` drawing from stream
//! `(stream << 32) | c`, so the output never depends on the worker count.
//!
//! Normals come from the Marsaglia polar method, exponentials from
//! `−ln(1 − U)`.

pub mod angles;

pub use angles::{
    angle_bin, angle_bin_count, angle_bin_probabilities, angle_bin_probability, angle_bin_vertices,
    angle_density, angles_of, sample_uniform_angles, sides_of, SimplexAngles,
};

use crate::conversions::{
    matrix_to_sides, sides_barycentric_frame, DiskPoint, HemispherePoint, SquaredSides,
};
use crate::error::{Result, ShapeError};
use crate::frame::ShapeMatrix;
use crate::linalg::{wrap_angle, Mat2};
use crate::special::{betainc, betainc_upper};
use crate::uniformity::PreShape;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::f64::consts::{PI, TAU};

/// Samples per deterministic work unit.
pub const CHUNK: usize = 1 << 16;

/// Tolerance on `|max side² − 1/2|` for calling a triangle right.
pub const RIGHT_ANGLE_TOL: f64 = 1e-9;

/// A seed plus a stream id; equal pairs give bit-identical sequences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RngSeed {
    pub seed: u64,
    pub stream: u64,
}

impl RngSeed {
    pub fn new(seed: u64) -> Self {
        RngSeed { seed, stream: 0 }
    }

    pub fn with_stream(self, stream: u64) -> Self {
        RngSeed { stream, ..self }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }

    /// Generator for work unit `chunk` of a bulk run.
    pub fn chunk_rng(&self, chunk: usize) -> ChaCha8Rng {
        self.with_stream((self.stream << 32) | chunk as u64).rng()
    }
}

/// A pair of independent standard normals by the polar method.
pub fn normal_pair<R: Rng + ?Sized>(rng: &mut R) -> (f64, f64) {
    loop {
        let u = 2.0 * rng.random::<f64>() - 1.0;
        let v = 2.0 * rng.random::<f64>() - 1.0;
        let s = u * u + v * v;
        if s > 0.0 && s < 1.0 {
            let f = (-2.0 * s.ln() / s).sqrt();
            return (u * f, v * f);
        }
    }
}

/// Fills `out` with independent standard normals.
pub fn fill_normals<R: Rng + ?Sized>(rng: &mut R, out: &mut [f64]) {
    let mut pairs = out.chunks_exact_mut(2);
    for pair in &mut pairs {
        let (x, y) = normal_pair(rng);
        pair[0] = x;
        pair[1] = y;
    }
    if let [last] = pairs.into_remainder() {
        *last = normal_pair(rng).0;
    }
}

/// Unit-mean exponential deviate.
pub fn exponential<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    -(1.0 - rng.random::<f64>()).ln()
}

/// Four independent normals arranged 2×2 and scaled to unit norm.
pub fn sample_gaussian_shape<R: Rng + ?Sized>(rng: &mut R) -> ShapeMatrix {
    loop {
        let mut x = [0.0; 4];
        fill_normals(rng, &mut x);
        if let Ok(m) = ShapeMatrix::normalize(Mat2::new(x[0], x[1], x[2], x[3])) {
            return m;
        }
    }
}

/// Uniform point on the hemisphere: height uniform on `[0, 1/2]`, longitude
/// uniform on `[0, 2π)`.
pub fn sample_uniform_hemisphere<R: Rng + ?Sized>(rng: &mut R) -> HemispherePoint {
    let height = 0.5 * rng.random::<f64>();
    let longitude = TAU * rng.random::<f64>();
    HemispherePoint {
        latitude: (2.0 * height).asin(),
        longitude,
    }
}

/// `m × (k−1)` independent normals scaled to unit Frobenius norm.
pub fn sample_ndim_shape<R: Rng + ?Sized>(m: usize, k: usize, rng: &mut R) -> Result<PreShape> {
    if m < 1 || k < 2 {
        return Err(ShapeError::InvalidArgument(format!(
            "need m >= 1 and k >= 2, got m={m}, k={k}"
        )));
    }
    let mut data = vec![0.0; m * (k - 1)];
    loop {
        fill_normals(rng, &mut data);
        let norm = data.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 0.0 {
            data.iter_mut().for_each(|x| *x /= norm);
            return PreShape::new(m, k, data);
        }
    }
}

/// Squared sides of the triangle whose vertices are the columns of
/// `Z·Δ₃` for an `m × 2` preshape `Z`.
pub fn preshape_triangle_sides(z: &PreShape) -> Result<[f64; 3]> {
    if z.k() != 3 {
        return Err(ShapeError::InvalidArgument(format!(
            "triangle needs k = 3, got {}",
            z.k()
        )));
    }
    let d = crate::frame::helmert3();
    let mut s = [0.0; 3];
    for row in 0..z.m() {
        let (x, y) = (z.get(row, 0), z.get(row, 1));
        let v: [f64; 3] = std::array::from_fn(|j| x * d.0[0][j] + y * d.0[1][j]);
        s[0] += (v[1] - v[2]).powi(2);
        s[1] += (v[2] - v[0]).powi(2);
        s[2] += (v[0] - v[1]).powi(2);
    }
    let total: f64 = s.iter().sum();
    Ok(s.map(|x| x / total))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TriangleClass {
    Acute,
    Right,
    Obtuse,
}

impl TriangleClass {
    pub fn name(&self) -> &'static str {
        match self {
            TriangleClass::Acute => "acute",
            TriangleClass::Right => "right",
            TriangleClass::Obtuse => "obtuse",
        }
    }

    /// Class from the largest normalized squared side.
    pub fn from_max_side(max: f64) -> Self {
        if (max - 0.5).abs() <= RIGHT_ANGLE_TOL {
            TriangleClass::Right
        } else if max > 0.5 {
            TriangleClass::Obtuse
        } else {
            TriangleClass::Acute
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassifiedShape {
    pub sides: SquaredSides,
    pub class: TriangleClass,
    pub disk: DiskPoint,
}

/// Acute, right or obtuse by comparing the largest squared side with 1/2.
pub fn classify(s: &SquaredSides) -> ClassifiedShape {
    let max = s.a2.max(s.b2).max(s.c2);
    let [x, y] = sides_barycentric_frame().mul_vec(s.as_array());
    ClassifiedShape {
        sides: *s,
        class: TriangleClass::from_max_side(max),
        disk: DiskPoint {
            r: x.hypot(y).min(0.5),
            phi: wrap_angle(y.atan2(x), TAU),
        },
    }
}

/// A Monte Carlo proportion with its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub hits: u64,
    pub trials: u64,
    pub fraction: f64,
    pub std_error: f64,
}

impl McEstimate {
    pub fn new(hits: u64, trials: u64) -> Self {
        let p = hits as f64 / trials as f64;
        McEstimate {
            hits,
            trials,
            fraction: p,
            std_error: (p * (1.0 - p) / trials as f64).sqrt(),
        }
    }

    /// Distance from `target` in units of the standard error computed at
    /// `target` (so an exact hit of a 0/1 target is not divided by zero).
    pub fn z_score(&self, target: f64) -> f64 {
        let se = (target * (1.0 - target) / self.trials as f64).sqrt();
        (self.fraction - target) / se
    }
}

fn in_pool<T: Send>(workers: Option<usize>, job: impl FnOnce() -> T + Send) -> Result<T> {
    match workers {
        None => Ok(job()),
        Some(0) => Err(ShapeError::InvalidArgument(
            "worker count must be positive".into(),
        )),
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map(|pool| pool.install(job))
            .map_err(|e| ShapeError::InvalidArgument(format!("thread pool: {e}"))),
    }
}

fn chunk_bounds(n: usize) -> impl IndexedParallelIterator<Item = (usize, usize)> {
    (0..n.div_ceil(CHUNK))
        .into_par_iter()
        .map(move |c| (c, CHUNK.min(n - c * CHUNK)))
}

/// Draws `n` values, chunked over deterministic streams and run on up to
/// `workers` threads (all available when `None`).
pub fn sample_many<T, F>(n: usize, seed: RngSeed, workers: Option<usize>, draw: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng) -> T + Sync + Send,
{
    in_pool(workers, || {
        chunk_bounds(n)
            .flat_map_iter(|(c, len)| {
                let mut rng = seed.chunk_rng(c);
                (0..len).map(|_| draw(&mut rng)).collect::<Vec<_>>()
            })
            .collect()
    })
}

/// Streams `n` draws to `sink` one chunk at a time, in chunk order, with
/// the same values as [`sample_many`]. Chunks are generated a batch at a
/// time in parallel, so memory stays bounded for very long runs.
pub fn sample_batched<T, F, G, E>(
    n: usize,
    seed: RngSeed,
    workers: Option<usize>,
    draw: F,
    mut sink: G,
) -> std::result::Result<(), E>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng) -> T + Sync + Send,
    G: FnMut(Vec<T>) -> std::result::Result<(), E> + Send,
    E: From<ShapeError> + Send,
{
    let chunks = n.div_ceil(CHUNK);
    let mut job = |threads: usize| -> std::result::Result<(), E> {
        let batch = 4 * threads.max(1);
        let mut start = 0;
        while start < chunks {
            let end = chunks.min(start + batch);
            let parts: Vec<Vec<T>> = (start..end)
                .into_par_iter()
                .map(|c| {
                    let mut rng = seed.chunk_rng(c);
                    (0..CHUNK.min(n - c * CHUNK))
                        .map(|_| draw(&mut rng))
                        .collect()
                })
                .collect();
            for part in parts {
                sink(part)?;
            }
            start = end;
        }
        Ok(())
    };
    match workers {
        None => job(rayon::current_num_threads()),
        Some(w) => in_pool(Some(w), || job(w))?,
    }
}

/// Counts draws for which `hit` is true, with the same chunking as
/// [`sample_many`] but without materializing samples.
pub fn count_hits<F>(n: usize, seed: RngSeed, workers: Option<usize>, hit: F) -> Result<McEstimate>
where
    F: Fn(&mut ChaCha8Rng) -> bool + Sync + Send,
{
    if n == 0 {
        return Err(ShapeError::InvalidArgument(
            "need at least one sample".into(),
        ));
    }
    let hits = in_pool(workers, || {
        chunk_bounds(n)
            .map(|(c, len)| {
                let mut rng = seed.chunk_rng(c);
                (0..len).filter(|_| hit(&mut rng)).count() as u64
            })
            .sum::<u64>()
    })?;
    Ok(McEstimate::new(hits, n as u64))
}

/// Fraction of Gaussian triangles that are acute; right triangles (a
/// measure-zero event) count as acute.
pub fn acute_probability_mc(
    n_samples: usize,
    seed: RngSeed,
    workers: Option<usize>,
) -> Result<McEstimate> {
    count_hits(n_samples, seed, workers, |rng| {
        let s = matrix_to_sides(&sample_gaussian_shape(rng));
        s.a2.max(s.b2).max(s.c2) <= 0.5
    })
}

/// Fraction of obtuse triangles among Gaussian triangles in `Rⁿ`.
pub fn obtuse_probability_mc(
    n: usize,
    n_samples: usize,
    seed: RngSeed,
    workers: Option<usize>,
) -> Result<McEstimate> {
    if n < 2 {
        return Err(ShapeError::InvalidArgument(format!(
            "dimension must be >= 2, got {n}"
        )));
    }
    count_hits(n_samples, seed, workers, |rng| {
        let z = sample_ndim_shape(n, 3, rng).expect("dimensions checked");
        let s = preshape_triangle_sides(&z).expect("k = 3");
        s.iter().cloned().fold(0.0, f64::max) > 0.5
    })
}

/// Fraction of uniform-angle triangles with an obtuse angle.
pub fn uniform_angles_obtuse_mc(
    n_samples: usize,
    seed: RngSeed,
    workers: Option<usize>,
) -> Result<McEstimate> {
    count_hits(n_samples, seed, workers, |rng| {
        sample_uniform_angles(rng).max() > 0.5
    })
}

/// `P(obtuse)` for a triangle with independent standard normal vertices in
/// `Rⁿ`: `3·(1 − I(3/4; n/2, n/2))`.
pub fn obtuse_probability_ndim(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(ShapeError::InvalidArgument(format!(
            "dimension must be >= 2, got {n}"
        )));
    }
    let h = 0.5 * n as f64;
    Ok(3.0 * betainc_upper(0.75, h, h)?)
}

/// CDF of a normalized squared side in `Rⁿ`, distributed as
/// `(2/3)·Beta(n/2, n/2)`. Arguments outside `[0, 2/3]` are clamped when
/// `clamp` is set and rejected otherwise.
pub fn squared_side_marginal_cdf(n: usize, x: f64, clamp: bool) -> Result<f64> {
    if n < 2 {
        return Err(ShapeError::InvalidArgument(format!(
            "dimension must be >= 2, got {n}"
        )));
    }
    if x.is_nan() {
        return Err(ShapeError::InvalidArgument("NaN argument".into()));
    }
    let x = if (0.0..=2.0 / 3.0).contains(&x) {
        x
    } else if clamp {
        x.clamp(0.0, 2.0 / 3.0)
    } else {
        return Err(ShapeError::InvalidArgument(format!(
            "squared side {x} outside [0, 2/3]"
        )));
    };
    let h = 0.5 * n as f64;
    betainc((1.5 * x).min(1.0), h, h)
}

/// Uniform point on the probability simplex (normalized exponentials).
pub fn uniform_simplex<R: Rng + ?Sized>(rng: &mut R) -> [f64; 3] {
    let e = [exponential(rng), exponential(rng), exponential(rng)];
    let t: f64 = e.iter().sum();
    e.map(|x| x / t)
}

/// Fraction of uniform simplex triples that close a triangle as squared
/// sides. Converges to `π/√27`.
pub fn broken_stick_fraction(
    n_samples: usize,
    seed: RngSeed,
    workers: Option<usize>,
) -> Result<McEstimate> {
    count_hits(n_samples, seed, workers, |rng| {
        let s = uniform_simplex(rng);
        s.iter().map(|x| x * x).sum::<f64>() <= 0.5
    })
}

/// `π/√27`, the squared broken-stick probability.
pub fn broken_stick_exact() -> f64 {
    PI / 27f64.sqrt()
}

/// Density of the disk radius under the uniform hemisphere measure.
pub fn radius_density(r: f64) -> f64 {
    if !(0.0..0.5).contains(&r) {
        return 0.0;
    }
    4.0 * r / (1.0 - 4.0 * r * r).sqrt()
}

pub fn radius_cdf(r: f64) -> f64 {
    if r <= 0.0 {
        0.0
    } else if r >= 0.5 {
        1.0
    } else {
        1.0 - ((1.0 - 2.0 * r) * (1.0 + 2.0 * r)).sqrt()
    }
}
