//! The `trishape` command line.
//!
//! Exit codes: 0 success, 1 usage or I/O error, 2 a domain violation (for
//! example sides that do not close a triangle), 3 a uniformity test that
//! rejects at `--alpha`.

pub mod output;
pub mod samplefile;

use crate::conversions::{
    convert, hemisphere_to_sides, matrix_to_sides, roundtrip_all, Coordinate, DiskPoint,
    HemispherePoint, Representation, SquaredSides, SvdShape,
};
use crate::error::ShapeError;
use crate::frame::ShapeMatrix;
use crate::geometry::construct_in_hemisphere;
use crate::linalg::Mat2;
use crate::random::{
    angle_bin, angle_bin_count, angle_bin_probabilities, angle_bin_vertices, angle_density,
    angles_of, classify, obtuse_probability_ndim, preshape_triangle_sides, radius_cdf,
    radius_density, sample_batched, sample_gaussian_shape, sample_ndim_shape,
    sample_uniform_angles, sample_uniform_hemisphere, sides_of, ClassifiedShape, McEstimate,
    RngSeed, SimplexAngles, TriangleClass,
};
use crate::uniformity::{run_tests, PreShape, TestSelection};
use clap::{Args, Parser, Subcommand, ValueEnum};
use output::{Emitter, Format, Record, ScatterPoint, Value};
use rand_chacha::ChaCha8Rng;
use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_REJECT: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] ShapeError),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => EXIT_USAGE,
            CliError::Domain(_) => EXIT_DOMAIN,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "trishape", version, about = "Triangle shape space toolkit")]
pub struct Cli {
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write to this file instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    /// Output format; single records default to `structured`, tables to `csv`.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Significance level for `test`.
    #[arg(long, global = true, default_value_t = 0.01)]
    alpha: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Convert a shape between coordinates.
    Convert(ConvertArgs),
    /// Draw random shapes.
    Sample(SampleArgs),
    /// Exact obtuse and acute probabilities for Gaussian vertices in R^n.
    Prob { n: usize },
    /// The hemisphere construction for a triangle.
    Construct(ConstructArgs),
    /// Uniformity tests on a preshape sample file (`-` reads stdin).
    Test(TestArgs),
    /// Data behind the standard plots.
    PlotData(PlotArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Coord {
    Svd,
    Sides,
    Hemisphere,
    Disk,
    Matrix,
}

impl Coord {
    fn arity(self) -> usize {
        match self {
            Coord::Svd | Coord::Sides => 3,
            Coord::Hemisphere | Coord::Disk => 2,
            Coord::Matrix => 4,
        }
    }

    fn target(self) -> Coordinate {
        match self {
            Coord::Svd => Coordinate::Svd,
            Coord::Sides => Coordinate::Sides,
            Coord::Hemisphere => Coordinate::Hemisphere,
            Coord::Disk => Coordinate::Disk,
            Coord::Matrix => Coordinate::Matrix,
        }
    }
}

#[derive(Debug, Args)]
struct ConvertArgs {
    /// Input coordinate: svd (sigma1 sigma2 theta), sides (a2 b2 c2, rescaled
    /// to unit sum), hemisphere (latitude longitude), disk (r phi) or matrix
    /// (m11 m12 m21 m22, rescaled to unit norm).
    #[arg(long, value_enum)]
    from: Coord,
    #[arg(required = true, allow_negative_numbers = true)]
    values: Vec<f64>,
    #[arg(long, value_enum)]
    to: Coord,
    /// Also report the largest discrepancy over all conversion cycles.
    #[arg(long)]
    roundtrip: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Model {
    /// Independent standard normal vertices in the plane.
    Gaussian,
    /// Uniform points on the shape hemisphere.
    Hemisphere,
    /// Angles uniform on the simplex.
    Angles,
    /// Gaussian vertices in R^m.
    Ndim,
}

#[derive(Debug, Args)]
struct ModelArgs {
    /// Number of samples.
    #[arg(short, long, default_value_t = 1000)]
    n: usize,
    /// Ambient dimension for `ndim`.
    #[arg(long, default_value_t = 2)]
    m: usize,
    /// Worker threads (all cores by default); output does not depend on it.
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Debug, Args)]
struct SampleArgs {
    #[arg(value_enum)]
    model: Model,
    #[command(flatten)]
    common: ModelArgs,
    /// Points per configuration for `--preshape` with `ndim`.
    #[arg(long, default_value_t = 3)]
    k: usize,
    /// Print class counts and fractions instead of rows.
    #[arg(long, conflicts_with = "preshape")]
    summary: bool,
    /// Write preshapes in the sample-file format read by `test`.
    #[arg(long)]
    preshape: bool,
}

#[derive(Debug, Args)]
struct ConstructArgs {
    #[arg(num_args = 3, required = true)]
    sides: Vec<f64>,
    /// Read side lengths instead of squared side lengths.
    #[arg(long)]
    lengths: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    ChikuseJupp,
    SigmaMin,
    Hemisphere,
    All,
}

#[derive(Debug, Args)]
struct TestArgs {
    file: PathBuf,
    #[arg(long, value_enum, default_value_t = Which::All)]
    which: Which,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PlotKind {
    DiskScatter,
    RadiusHistogram,
    AngleBins,
    HemisphereMap,
}

#[derive(Debug, Args)]
struct PlotArgs {
    #[arg(value_enum)]
    kind: PlotKind,
    #[arg(long, value_enum, default_value_t = Model::Gaussian)]
    model: Model,
    #[command(flatten)]
    common: ModelArgs,
    /// Radius histogram bins.
    #[arg(long, default_value_t = 50)]
    bins: usize,
    /// Angle bins per simplex side (the grid has per_side² cells).
    #[arg(long, default_value_t = 10)]
    per_side: usize,
    /// Latitude rows of the hemisphere map; longitudes get four times as many.
    #[arg(long, default_value_t = 24)]
    grid: usize,
    /// Also write an SVG scatter (disk-scatter only).
    #[arg(long)]
    svg: Option<PathBuf>,
}

type Out = BufWriter<Box<dyn Write + Send>>;

struct Ctx {
    seed: RngSeed,
    format: Option<Format>,
    alpha: f64,
    output: Option<PathBuf>,
}

impl Ctx {
    fn open(&self) -> CliResult<Out> {
        let w: Box<dyn Write + Send> = match &self.output {
            Some(p) => Box::new(File::create(p)?),
            None => Box::new(io::stdout()),
        };
        Ok(BufWriter::new(w))
    }

    fn emitter(&self, single: bool, columns: &[&str]) -> CliResult<Emitter<Out>> {
        let default = if single {
            Format::Structured
        } else {
            Format::Csv
        };
        Ok(Emitter::new(
            self.open()?,
            self.format.unwrap_or(default),
            single,
            columns.iter().map(|c| c.to_string()).collect(),
        ))
    }

    fn single(&self, r: &Record) -> CliResult<()> {
        let cols: Vec<&str> = r.0.iter().map(|(k, _)| k.as_str()).collect();
        let mut e = self.emitter(true, &cols)?;
        e.record(r)?;
        Ok(e.finish()?)
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code. Errors are reported on stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(e) => {
            let kind = match e {
                CliError::Domain(_) => "domain error",
                _ => "error",
            };
            eprintln!("trishape: {kind}: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: Cli) -> CliResult<i32> {
    if !(cli.alpha > 0.0 && cli.alpha < 1.0) {
        return Err(CliError::Usage(format!(
            "--alpha must be in (0, 1), got {}",
            cli.alpha
        )));
    }
    let ctx = Ctx {
        seed: RngSeed::new(cli.seed),
        format: cli.format,
        alpha: cli.alpha,
        output: cli.output,
    };
    match cli.command {
        Command::Convert(a) => cmd_convert(&ctx, a),
        Command::Sample(a) => cmd_sample(&ctx, a),
        Command::Prob { n } => cmd_prob(&ctx, n),
        Command::Construct(a) => cmd_construct(&ctx, a),
        Command::Test(a) => cmd_test(&ctx, a),
        Command::PlotData(a) => cmd_plot(&ctx, a),
    }
}

fn finite(values: &[f64]) -> CliResult<()> {
    match values.iter().find(|x| !x.is_finite()) {
        Some(x) => Err(CliError::Usage(format!("non-finite value {x}"))),
        None => Ok(()),
    }
}

fn parse_representation(from: Coord, v: &[f64]) -> CliResult<Representation> {
    if v.len() != from.arity() {
        return Err(CliError::Usage(format!(
            "--from {} takes {} values, got {}",
            from.to_possible_value()
                .expect("no skipped variants")
                .get_name(),
            from.arity(),
            v.len()
        )));
    }
    finite(v)?;
    Ok(match from {
        Coord::Svd => Representation::Svd(SvdShape::new(v[0], v[1], v[2])?),
        Coord::Sides => Representation::Sides(SquaredSides::normalized(v[0], v[1], v[2])?),
        Coord::Hemisphere => Representation::Hemisphere(HemispherePoint::new(v[0], v[1])?),
        Coord::Disk => Representation::Disk(DiskPoint::new(v[0], v[1])?),
        Coord::Matrix => {
            Representation::Matrix(ShapeMatrix::normalize(Mat2::new(v[0], v[1], v[2], v[3]))?)
        }
    })
}

fn representation_record(x: &Representation) -> Record {
    let r = Record::new();
    match x {
        Representation::Svd(s) => r
            .with("representation", "svd")
            .with("sigma1", s.sigma1)
            .with("sigma2", s.sigma2)
            .with("theta", s.theta),
        Representation::Sides(s) => r
            .with("representation", "sides")
            .with("a2", s.a2)
            .with("b2", s.b2)
            .with("c2", s.c2),
        Representation::Hemisphere(h) => r
            .with("representation", "hemisphere")
            .with("latitude", h.latitude)
            .with("longitude", h.longitude),
        Representation::Disk(d) => r
            .with("representation", "disk")
            .with("r", d.r)
            .with("phi", d.phi),
        Representation::Matrix(m) => {
            let [[a, b], [c, d]] = m.matrix().0;
            r.with("representation", "matrix")
                .with("m11", a)
                .with("m12", b)
                .with("m21", c)
                .with("m22", d)
        }
    }
}

fn cmd_convert(ctx: &Ctx, a: ConvertArgs) -> CliResult<i32> {
    let x = parse_representation(a.from, &a.values)?;
    let y = convert(&x, a.to.target())?;
    let mut rec = representation_record(&y);
    if a.roundtrip {
        let rt = roundtrip_all(&x)?;
        rec.push("cycles", rt.cycles_checked);
        rec.push("max_discrepancy", rt.max_discrepancy);
        rec.push("worst_cycle", rt.worst_cycle);
    }
    ctx.single(&rec)?;
    Ok(EXIT_OK)
}

/// Sides from a preshape of a triangle in `R^m`; unit sum by construction.
fn ndim_sides(z: &PreShape) -> SquaredSides {
    let [a2, b2, c2] = preshape_triangle_sides(z).expect("k = 3");
    SquaredSides { a2, b2, c2 }
}

fn check_model(model: Model, common: &ModelArgs) -> CliResult<()> {
    if common.n == 0 {
        return Err(CliError::Usage("-n must be positive".into()));
    }
    if common.workers == Some(0) {
        return Err(CliError::Usage("--workers must be positive".into()));
    }
    if model == Model::Ndim && common.m < 1 {
        return Err(CliError::Usage("--m must be at least 1".into()));
    }
    Ok(())
}

/// A classified triangle drawn from `model`.
fn draw(model: Model, m: usize, rng: &mut ChaCha8Rng) -> ClassifiedShape {
    let sides = match model {
        Model::Gaussian => matrix_to_sides(&sample_gaussian_shape(rng)),
        Model::Hemisphere => hemisphere_to_sides(&sample_uniform_hemisphere(rng)),
        Model::Angles => sides_of(&sample_uniform_angles(rng)),
        Model::Ndim => ndim_sides(&sample_ndim_shape(m, 3, rng).expect("m >= 1")),
    };
    classify(&sides)
}

fn class_index(c: TriangleClass) -> usize {
    match c {
        TriangleClass::Acute => 0,
        TriangleClass::Right => 1,
        TriangleClass::Obtuse => 2,
    }
}

fn cmd_sample(ctx: &Ctx, a: SampleArgs) -> CliResult<i32> {
    let (model, c) = (a.model, &a.common);
    check_model(model, c)?;
    let m = c.m;
    if a.preshape {
        return sample_preshapes(ctx, &a);
    }
    if model == Model::Ndim && a.k != 3 {
        return Err(CliError::Usage(
            "rows are triangles; use --preshape for k != 3".into(),
        ));
    }
    if a.summary {
        let mut counts = [0u64; 3];
        sample_batched(
            c.n,
            ctx.seed,
            c.workers,
            |r| class_index(draw(model, m, r).class),
            |part| {
                part.into_iter().for_each(|i| counts[i] += 1);
                Ok::<_, CliError>(())
            },
        )?;
        let n = c.n as u64;
        let acute = McEstimate::new(counts[0], n);
        let obtuse = McEstimate::new(counts[2], n);
        let exact = match model {
            Model::Ndim => obtuse_probability_ndim(m.max(2))?,
            _ => 0.75,
        };
        let rec = Record::new()
            .with(
                "model",
                model
                    .to_possible_value()
                    .expect("no skipped variants")
                    .get_name(),
            )
            .with("samples", c.n)
            .with("acute", counts[0])
            .with("right", counts[1])
            .with("obtuse", counts[2])
            .with("acute_fraction", acute.fraction)
            .with("acute_std_error", acute.std_error)
            .with("obtuse_fraction", obtuse.fraction)
            .with("obtuse_std_error", obtuse.std_error)
            .with("exact_obtuse", exact);
        ctx.single(&rec)?;
        return Ok(EXIT_OK);
    }
    let mut e = ctx.emitter(false, &["a2", "b2", "c2", "r", "phi", "class"])?;
    sample_batched(
        c.n,
        ctx.seed,
        c.workers,
        |r| draw(model, m, r),
        |part| {
            for s in part {
                e.row(&[
                    s.sides.a2.into(),
                    s.sides.b2.into(),
                    s.sides.c2.into(),
                    s.disk.r.into(),
                    s.disk.phi.into(),
                    s.class.name().into(),
                ])?;
            }
            Ok::<_, CliError>(())
        },
    )?;
    e.finish()?;
    Ok(EXIT_OK)
}

fn sample_preshapes(ctx: &Ctx, a: &SampleArgs) -> CliResult<i32> {
    let c = &a.common;
    let (m, k) = match a.model {
        Model::Gaussian => (2, 3),
        Model::Ndim if a.k >= 2 => (c.m, a.k),
        Model::Ndim => return Err(CliError::Usage("--k must be at least 2".into())),
        _ => {
            return Err(CliError::Usage(
                "--preshape needs the gaussian or ndim model".into(),
            ))
        }
    };
    let model = a.model;
    let mut w = samplefile::SampleFileWriter::new(ctx.open()?, m, k)?;
    sample_batched(
        c.n,
        ctx.seed,
        c.workers,
        |r| match model {
            Model::Gaussian => PreShape::from_shape_matrix(&sample_gaussian_shape(r)),
            _ => sample_ndim_shape(m, k, r).expect("dimensions checked"),
        },
        |part| {
            for z in &part {
                w.write(z)?;
            }
            Ok::<_, CliError>(())
        },
    )?;
    w.finish()?;
    Ok(EXIT_OK)
}

fn cmd_prob(ctx: &Ctx, n: usize) -> CliResult<i32> {
    let obtuse = obtuse_probability_ndim(n)?;
    ctx.single(
        &Record::new()
            .with("n", n)
            .with("obtuse", obtuse)
            .with("acute", 1.0 - obtuse),
    )?;
    Ok(EXIT_OK)
}

fn cmd_construct(ctx: &Ctx, a: ConstructArgs) -> CliResult<i32> {
    finite(&a.sides)?;
    let [x, y, z] = [a.sides[0], a.sides[1], a.sides[2]];
    let sides = if a.lengths {
        if [x, y, z].iter().any(|&v| v < 0.0) {
            return Err(
                ShapeError::InvalidArgument("side lengths must be nonnegative".into()).into(),
            );
        }
        SquaredSides::from_lengths(x, y, z)?
    } else {
        SquaredSides::normalized(x, y, z)?
    };
    let c = construct_in_hemisphere(&sides);
    let mut r = Record::new()
        .with("a2", sides.a2)
        .with("b2", sides.b2)
        .with("c2", sides.c2)
        .with("s_x", c.s[0])
        .with("s_y", c.s[1])
        .with("s_z", c.s[2])
        .with("p_x", c.p[0])
        .with("p_y", c.p[1])
        .with("sp", c.height());
    let ends = c.parallelians.cartesian();
    let lens = c.parallelians.lengths();
    for i in 0..3 {
        let [[x0, y0], [x1, y1]] = ends[i];
        r.push(format!("parallelian{i}_x0"), x0);
        r.push(format!("parallelian{i}_y0"), y0);
        r.push(format!("parallelian{i}_x1"), x1);
        r.push(format!("parallelian{i}_y1"), y1);
        r.push(format!("parallelian{i}_length"), lens[i]);
    }
    for (i, t) in c.triangles.iter().enumerate() {
        r.push(format!("triangle{i}_sy"), t.lengths[0]);
        r.push(format!("triangle{i}_sx"), t.lengths[1]);
        r.push(format!("triangle{i}_xy"), t.lengths[2]);
        r.push(format!("triangle{i}_scale"), t.scale);
        r.push(format!("triangle{i}_ratio_residual"), t.ratio_residual);
        r.push(
            format!("triangle{i}_altitude_residual"),
            t.altitude_residual,
        );
    }
    r.push("degenerate", c.degenerate);
    ctx.single(&r)?;
    Ok(EXIT_OK)
}

fn read_sample_file(path: &Path) -> CliResult<Vec<PreShape>> {
    if path == Path::new("-") {
        return samplefile::read_preshapes(io::stdin().lock());
    }
    let f = File::open(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    samplefile::read_preshapes(io::BufReader::new(f))
}

fn cmd_test(ctx: &Ctx, a: TestArgs) -> CliResult<i32> {
    let samples = read_sample_file(&a.file)?;
    let which = match a.which {
        Which::ChikuseJupp => TestSelection::ChikuseJupp,
        Which::SigmaMin => TestSelection::SigmaMin,
        Which::Hemisphere => TestSelection::Hemisphere,
        Which::All => TestSelection::All,
    };
    let suite = run_tests(&samples, which, ctx.seed)?;
    let mut e = ctx.emitter(
        false,
        &["test", "statistic", "reference", "p_value", "count"],
    )?;
    for r in &suite.reports {
        e.row(&[
            r.name.as_str().into(),
            r.statistic.into(),
            r.reference.to_string().into(),
            r.p_value.into(),
            r.count.into(),
        ])?;
    }
    e.finish()?;
    if suite.rejects(ctx.alpha) {
        eprintln!(
            "trishape: uniformity rejected (smallest p = {:e}, alpha = {} over {} tests)",
            suite.min_p_value(),
            ctx.alpha,
            suite.reports.len()
        );
        return Ok(EXIT_REJECT);
    }
    Ok(EXIT_OK)
}

fn cmd_plot(ctx: &Ctx, a: PlotArgs) -> CliResult<i32> {
    if a.svg.is_some() && a.kind != PlotKind::DiskScatter {
        return Err(CliError::Usage("--svg applies to disk-scatter only".into()));
    }
    match a.kind {
        PlotKind::DiskScatter => plot_disk(ctx, &a),
        PlotKind::RadiusHistogram => plot_radius(ctx, &a),
        PlotKind::AngleBins => plot_angles(ctx, &a),
        PlotKind::HemisphereMap => plot_map(ctx, &a),
    }
}

fn plot_disk(ctx: &Ctx, a: &PlotArgs) -> CliResult<i32> {
    let c = &a.common;
    check_model(a.model, c)?;
    let (model, m) = (a.model, c.m);
    let mut points = Vec::new();
    let mut e = ctx.emitter(false, &["x", "y", "class"])?;
    sample_batched(
        c.n,
        ctx.seed,
        c.workers,
        |r| draw(model, m, r),
        |part| {
            for s in part {
                let [x, y] = s.disk.cartesian();
                e.row(&[x.into(), y.into(), s.class.name().into()])?;
                if a.svg.is_some() {
                    points.push(ScatterPoint {
                        x,
                        y,
                        class: class_index(s.class),
                    });
                }
            }
            Ok::<_, CliError>(())
        },
    )?;
    e.finish()?;
    if let Some(path) = &a.svg {
        output::svg_scatter(
            BufWriter::new(File::create(path)?),
            &points,
            -0.55,
            0.55,
            Some(0.5),
        )?;
    }
    Ok(EXIT_OK)
}

fn plot_radius(ctx: &Ctx, a: &PlotArgs) -> CliResult<i32> {
    let c = &a.common;
    check_model(a.model, c)?;
    if a.bins == 0 {
        return Err(CliError::Usage("--bins must be positive".into()));
    }
    let (model, m, bins) = (a.model, c.m, a.bins);
    let mut counts = vec![0u64; bins];
    sample_batched(
        c.n,
        ctx.seed,
        c.workers,
        |r| draw(model, m, r).disk.r,
        |part| {
            for r in part {
                counts[((2.0 * r * bins as f64) as usize).min(bins - 1)] += 1;
            }
            Ok::<_, CliError>(())
        },
    )?;
    let width = 0.5 / bins as f64;
    let n = c.n as f64;
    let mut e = ctx.emitter(
        false,
        &[
            "bin_lo",
            "bin_hi",
            "count",
            "expected",
            "density_theory",
            "density_empirical",
        ],
    )?;
    for (i, &k) in counts.iter().enumerate() {
        let (lo, hi) = (i as f64 * width, (i + 1) as f64 * width);
        e.row(&[
            lo.into(),
            hi.into(),
            Value::Int(k as i64),
            (n * (radius_cdf(hi) - radius_cdf(lo))).into(),
            radius_density(0.5 * (lo + hi)).into(),
            (k as f64 / (n * width)).into(),
        ])?;
    }
    e.finish()?;
    Ok(EXIT_OK)
}

fn plot_angles(ctx: &Ctx, a: &PlotArgs) -> CliResult<i32> {
    let c = &a.common;
    check_model(a.model, c)?;
    if a.per_side == 0 {
        return Err(CliError::Usage("--per-side must be positive".into()));
    }
    let (model, m, per_side) = (a.model, c.m, a.per_side);
    let nbins = angle_bin_count(per_side);
    let mut counts = vec![0u64; nbins];
    let bin_of = |r: &mut ChaCha8Rng| match model {
        Model::Angles => angle_bin(&sample_uniform_angles(r), per_side),
        _ => angle_bin(&angles_of(&draw(model, m, r).sides), per_side),
    };
    sample_batched(c.n, ctx.seed, c.workers, bin_of, |part| {
        part.into_iter().for_each(|b| counts[b] += 1);
        Ok::<_, CliError>(())
    })?;
    let probs = angle_bin_probabilities(per_side)?;
    let n = c.n as f64;
    let mut e = ctx.emitter(
        false,
        &[
            "bin",
            "alpha",
            "beta",
            "gamma",
            "count",
            "expected_shape_uniform",
            "expected_angle_uniform",
            "density",
        ],
    )?;
    for (i, &k) in counts.iter().enumerate() {
        let v = angle_bin_vertices(i, per_side)?;
        let cen: [f64; 3] = std::array::from_fn(|j| (v[0][j] + v[1][j] + v[2][j]) / 3.0);
        let dens = angle_density(&SimplexAngles::new(cen[0], cen[1], cen[2])?);
        e.row(&[
            i.into(),
            cen[0].into(),
            cen[1].into(),
            cen[2].into(),
            Value::Int(k as i64),
            (n * probs[i]).into(),
            (n / nbins as f64).into(),
            dens.into(),
        ])?;
    }
    e.finish()?;
    Ok(EXIT_OK)
}

fn plot_map(ctx: &Ctx, a: &PlotArgs) -> CliResult<i32> {
    if a.grid == 0 {
        return Err(CliError::Usage("--grid must be positive".into()));
    }
    let rows = a.grid;
    let cols = 4 * rows;
    let mut e = ctx.emitter(
        false,
        &[
            "latitude",
            "longitude",
            "x",
            "y",
            "z",
            "alpha",
            "beta",
            "gamma",
            "angle_x",
            "angle_y",
        ],
    )?;
    for i in 0..rows {
        let lat = (i as f64 + 0.5) / rows as f64 * std::f64::consts::FRAC_PI_2;
        for j in 0..cols {
            let lon = j as f64 / cols as f64 * std::f64::consts::TAU;
            let h = HemispherePoint::new(lat, lon)?;
            let [x, y, z] = h.cartesian();
            let t = angles_of(&hemisphere_to_sides(&h));
            // angles drawn in an equilateral triangle with unit sides
            let ax = t.beta + 0.5 * t.gamma;
            let ay = t.gamma * 3f64.sqrt() / 2.0;
            e.row(&[
                lat.into(),
                lon.into(),
                x.into(),
                y.into(),
                z.into(),
                t.alpha.into(),
                t.beta.into(),
                t.gamma.into(),
                ax.into(),
                ay.into(),
            ])?;
        }
    }
    e.finish()?;
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out");
        let mut full = vec!["trishape", "-o", path.to_str().unwrap()];
        full.extend_from_slice(args);
        let code = run(full);
        let text = std::fs::read_to_string(&path).unwrap_or_default();
        (code, text)
    }

    fn field(text: &str, key: &str) -> f64 {
        text.lines()
            .find_map(|l| l.strip_prefix(&format!("{key}=")))
            .unwrap_or_else(|| panic!("no {key} in {text}"))
            .parse()
            .unwrap()
    }

    #[test]
    fn right_triangle_to_disk() {
        // acos(−1/(4r)) = π when the hypotenuse is c; relabeling a → c turns φ by 2π/3
        let (code, out) = run_capture(&[
            "convert", "--from", "sides", "0.25", "0.25", "0.5", "--to", "disk",
        ]);
        assert_eq!(code, 0);
        assert!((field(&out, "r") - 0.25).abs() < 1e-15);
        assert!((field(&out, "phi") - std::f64::consts::PI).abs() < 1e-15);
        let (_, out) = run_capture(&[
            "convert", "--from", "sides", "0.5", "0.25", "0.25", "--to", "disk",
        ]);
        assert!((field(&out, "r") - 0.25).abs() < 1e-15);
        assert!((field(&out, "phi") - std::f64::consts::FRAC_PI_3).abs() < 1e-15);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(
            run_capture(&["convert", "--from", "sides", "0.7", "0.2", "0.1", "--to", "disk"]).0,
            EXIT_DOMAIN
        );
        assert_eq!(
            run_capture(&["convert", "--from", "sides", "0.7", "0.2", "--to", "disk"]).0,
            EXIT_USAGE
        );
        assert_eq!(
            run_capture(&["convert", "--from", "cube", "1", "--to", "disk"]).0,
            EXIT_USAGE
        );
        assert_eq!(run_capture(&["sample", "lattice"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn prob_planar() {
        let (code, out) = run_capture(&["prob", "2"]);
        assert_eq!(code, 0);
        assert!((field(&out, "obtuse") - 0.75).abs() < 1e-14);
    }
}
