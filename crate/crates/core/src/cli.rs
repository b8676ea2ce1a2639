//! The `hpot` command-line front end.
//!
//! Every subcommand reads JSON or CSV inputs, writes JSON or CSV to stdout
//! (or `--output`), and reports failures on stderr as a JSON object with a
//! stable `code` field. Exit codes: 0 success, 2 math-domain error, 3
//! integrability refusal, 64 usage, 65 input schema.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::capacity::{thinness_series, CapacityKind, CapacityProblem, SetSpec, ThinnessOptions};
use crate::error::Error;
use crate::exceptional::{
    growth_scan, vitali_covering, CoveringResult, GrowthParams, MaximalQuery,
};
use crate::geometry::{BoundaryPoint, Point};
use crate::kernels::{self, KernelConfig};
use crate::measures::{AtomicMeasure, BoundaryData};
use crate::potentials::{FieldKind, PotentialField};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_CONDITION: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_SCHEMA: i32 = 65;

#[derive(Debug, Parser)]
#[command(name = "hpot", version, about = "Half-space potential theory toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KernelKind {
    #[value(name = "E")]
    E,
    #[value(name = "G")]
    G,
    #[value(name = "P")]
    P,
    #[value(name = "Em")]
    Em,
    #[value(name = "Gm")]
    Gm,
    #[value(name = "Pm")]
    Pm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PotentialKind {
    Dirichlet,
    Green,
    Superposition,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CapKind {
    Boundary,
    Halfspace,
}

impl From<CapKind> for CapacityKind {
    fn from(k: CapKind) -> Self {
        match k {
            CapKind::Boundary => CapacityKind::Boundary,
            CapKind::Halfspace => CapacityKind::Halfspace,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a single kernel value.
    Kernel {
        #[arg(long, value_enum)]
        kind: KernelKind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        m: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        x: Vec<f64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        y: Option<Vec<f64>>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        yp: Option<Vec<f64>>,
    },
    /// Evaluate a Poisson integral, Green potential or their sum on a CSV of points.
    Potential {
        #[arg(long, value_enum)]
        kind: PotentialKind,
        /// Boundary data JSON.
        #[arg(long)]
        data: Option<PathBuf>,
        /// Atomic measure JSON.
        #[arg(long)]
        measure: Option<PathBuf>,
        /// CSV with header `x_1,...,x_n`.
        #[arg(long)]
        points: PathBuf,
        #[arg(long, default_value_t = 0)]
        m: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Vitali covering of the exceptional set of an atomic measure.
    Exceptional {
        #[arg(long)]
        measure: PathBuf,
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        lambda: f64,
        /// Dyadic shell range `a..b` (inclusive).
        #[arg(long, value_parser = parse_shells)]
        shells: (i32, i32),
        #[arg(long, default_value_t = 0.1)]
        grid_delta: f64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Growth ratios along random rays.
    Growth {
        #[arg(long)]
        data: Option<PathBuf>,
        #[arg(long)]
        measure: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        m: usize,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 8)]
        rays: usize,
        #[arg(long)]
        rmin: f64,
        #[arg(long)]
        rmax: f64,
        #[arg(long, default_value_t = 16)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Covering JSON as written by `exceptional`.
        #[arg(long)]
        covering: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Discretised capacity of a problem given as JSON.
    Capacity {
        #[arg(long)]
        problem: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Dyadic thinness or rarefiedness series of a set.
    Thinness {
        #[arg(long)]
        set: PathBuf,
        #[arg(long, value_enum)]
        kind: CapKind,
        #[arg(long)]
        imax: u32,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn parse_shells(s: &str) -> Result<(i32, i32), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected a range like 1..6, got `{s}`"))?;
    let a: i32 = a.trim().parse().map_err(|e| format!("bad shell start: {e}"))?;
    let b: i32 = b.trim().parse().map_err(|e| format!("bad shell end: {e}"))?;
    if a > b {
        return Err(format!("empty shell range {a}..{b}"));
    }
    Ok((a, b))
}

/// A command failure: either a library error or a usage problem.
#[derive(Debug)]
pub enum Failure {
    Lib(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Lib(e) => match e {
                Error::ConditionViolated(_) => EXIT_CONDITION,
                Error::Schema { .. } => EXIT_SCHEMA,
                Error::Domain(_)
                | Error::Singularity(_)
                | Error::NotInHalfSpace(_)
                | Error::Infeasible(_) => EXIT_DOMAIN,
                Error::DimensionMismatch { .. }
                | Error::InvalidDimension(_)
                | Error::InvalidInput(_)
                | Error::Io(_) => EXIT_USAGE,
            },
        }
    }

    fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Payload<'a> {
            code: &'a str,
            message: String,
            #[serde(skip_serializing_if = "Option::is_none")]
            report: Option<&'a crate::measures::ConditionReport>,
        }
        let payload = match self {
            Failure::Usage(msg) => Payload {
                code: "usage",
                message: msg.clone(),
                report: None,
            },
            Failure::Lib(e) => Payload {
                code: e.code(),
                message: e.to_string(),
                report: match e {
                    Error::ConditionViolated(r) => Some(r),
                    _ => None,
                },
            },
        };
        to_json(&payload)
    }
}

struct SigFormatter;

impl serde_json::ser::Formatter for SigFormatter {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(fmt_f64(value).as_bytes())
    }
}

/// Seventeen significant digits, enough to round-trip any `f64`.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// JSON with every float printed through [`fmt_f64`].
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SigFormatter);
    value.serialize(&mut ser).expect("in-memory serialization");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn emit(output: Option<&Path>, out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    match output {
        Some(p) => fs::write(p, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Lib(Error::Io(e))),
    }
}

/// Reads a point CSV with header `x_1,...,x_n`.
pub fn read_points_csv(text: &str, n: usize) -> crate::Result<Vec<Point>> {
    let schema = |path: String, message: String| Error::Schema { path, message };
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = rdr
        .headers()
        .map_err(|e| schema("header".into(), e.to_string()))?
        .clone();
    let expected: Vec<String> = (1..=n).map(|i| format!("x_{i}")).collect();
    if headers.iter().collect::<Vec<_>>() != expected {
        return Err(schema(
            "header".into(),
            format!("expected `{}`", expected.join(",")),
        ));
    }
    let mut points = Vec::new();
    for (row, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| schema(format!("rows[{row}]"), e.to_string()))?;
        let coords = rec
            .iter()
            .enumerate()
            .map(|(k, s)| {
                s.parse::<f64>()
                    .map_err(|e| schema(format!("rows[{row}].x_{}", k + 1), e.to_string()))
            })
            .collect::<crate::Result<Vec<f64>>>()?;
        let p = Point::new(coords).map_err(|e| schema(format!("rows[{row}]"), e.to_string()))?;
        points.push(p);
    }
    Ok(points)
}

/// CSV `x_1,...,x_n,value`.
pub fn write_values_csv(points: &[Point], values: &[f64]) -> String {
    let n = points.first().map_or(0, |p| p.dim());
    let mut wtr = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let mut header: Vec<String> = (1..=n).map(|i| format!("x_{i}")).collect();
    header.push("value".into());
    wtr.write_record(&header).expect("in-memory write");
    for (p, v) in points.iter().zip(values) {
        let mut row: Vec<String> = p.coords().iter().map(|c| fmt_f64(*c)).collect();
        row.push(fmt_f64(*v));
        wtr.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(wtr.into_inner().expect("flush")).expect("UTF-8")
}

fn point(coords: Vec<f64>, n: usize) -> crate::Result<Point> {
    let p = Point::new(coords)?;
    p.check_dim(n)?;
    Ok(p)
}

fn cmd_kernel(
    kind: KernelKind,
    n: usize,
    m: usize,
    x: Vec<f64>,
    y: Option<Vec<f64>>,
    yp: Option<Vec<f64>>,
) -> Result<f64, Failure> {
    let cfg = KernelConfig::new(n, m).map_err(|e| Failure::Usage(e.to_string()))?;
    let x = point(x, n).map_err(|e| Failure::Usage(e.to_string()))?;
    let need_y = |y: Option<Vec<f64>>| -> Result<Point, Failure> {
        let y = y.ok_or_else(|| Failure::Usage("this kernel needs --y".into()))?;
        point(y, n).map_err(|e| Failure::Usage(e.to_string()))
    };
    let need_yp = |yp: Option<Vec<f64>>| -> Result<BoundaryPoint, Failure> {
        let yp = yp.ok_or_else(|| Failure::Usage("this kernel needs --yp".into()))?;
        if yp.len() + 1 != n {
            return Err(Failure::Usage(format!("--yp needs {} coordinates", n - 1)));
        }
        BoundaryPoint::new(yp).map_err(|e| Failure::Usage(e.to_string()))
    };
    let v = match kind {
        KernelKind::E => kernels::fundamental(&cfg, &x)?,
        KernelKind::G => kernels::green(&cfg, &x, &need_y(y)?)?,
        KernelKind::P => kernels::poisson(&cfg, &x, &need_yp(yp)?)?,
        KernelKind::Em => kernels::modified_fundamental(&cfg, &x, &need_y(y)?)?,
        KernelKind::Gm => kernels::modified_green(&cfg, &x, &need_y(y)?)?,
        KernelKind::Pm => kernels::modified_poisson(&cfg, &x, &need_yp(yp)?)?,
    };
    Ok(v)
}

fn load_data(path: Option<&Path>) -> Result<Option<BoundaryData>, Failure> {
    path.map(|p| Ok(BoundaryData::from_json(&read_text(p)?)?)).transpose()
}

fn load_measure(path: Option<&Path>) -> Result<Option<AtomicMeasure>, Failure> {
    path.map(|p| Ok(AtomicMeasure::from_json(&read_text(p)?)?)).transpose()
}

fn build_field(
    kind: FieldKind,
    data: Option<BoundaryData>,
    measure: Option<AtomicMeasure>,
    m: usize,
) -> Result<PotentialField, Failure> {
    let missing = |what: &str| Failure::Usage(format!("this potential needs --{what}"));
    let dim = data
        .as_ref()
        .map(|d| d.dimension())
        .or(measure.as_ref().map(|mu| mu.dimension()))
        .ok_or_else(|| missing("data or --measure"))?;
    if let (Some(d), Some(mu)) = (&data, &measure) {
        if d.dimension() != mu.dimension() {
            return Err(Failure::Lib(Error::Schema {
                path: "dimension".into(),
                message: format!(
                    "boundary data has n = {}, measure has n = {}",
                    d.dimension(),
                    mu.dimension()
                ),
            }));
        }
    }
    let cfg = KernelConfig::new(dim, m)?;
    Ok(match kind {
        FieldKind::Dirichlet => PotentialField::dirichlet(cfg, data.ok_or_else(|| missing("data"))?)?,
        FieldKind::Green => PotentialField::green(cfg, measure.ok_or_else(|| missing("measure"))?)?,
        FieldKind::Superposition => PotentialField::superposition(
            cfg,
            data.ok_or_else(|| missing("data"))?,
            measure.ok_or_else(|| missing("measure"))?,
        )?,
    })
}

/// `count` unit vectors in `H`, uniformly distributed, fixed by `seed`.
pub fn random_rays(n: usize, count: usize, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rays = Vec::with_capacity(count);
    while rays.len() < count {
        let mut v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let r = crate::geometry::norm(&v);
        if !(r > 1e-3 && r <= 1.0) || v[n - 1] == 0.0 {
            continue;
        }
        v[n - 1] = v[n - 1].abs();
        rays.push(Point::new(v.iter().map(|c| c / r).collect()).expect("finite ray"));
    }
    rays
}

/// `steps` radii from `rmin` to `rmax` in geometric progression.
pub fn geometric_radii(rmin: f64, rmax: f64, steps: usize) -> crate::Result<Vec<f64>> {
    if !(rmin > 0.0 && rmax > rmin && steps >= 2) {
        return Err(Error::domain("need 0 < rmin < rmax and at least two steps"));
    }
    let q = (rmax / rmin).ln() / (steps - 1) as f64;
    Ok((0..steps)
        .map(|i| if i + 1 == steps { rmax } else { rmin * (q * i as f64).exp() })
        .collect())
}

pub fn write_growth_csv(rows: &[crate::exceptional::GrowthRow]) -> String {
    let mut s = String::from("ray_index,radius,ratio,in_G\n");
    for r in rows {
        s.push_str(&format!(
            "{},{},{},{}\n",
            r.ray_index,
            fmt_f64(r.radius),
            fmt_f64(r.ratio),
            r.in_g
        ));
    }
    s
}

fn dispatch(cmd: Command, out: &mut Vec<u8>, err: &mut Vec<u8>) -> Result<(), Failure> {
    match cmd {
        Command::Kernel { kind, n, m, x, y, yp } => {
            let v = cmd_kernel(kind, n, m, x, y, yp)?;
            #[derive(Serialize)]
            struct Value {
                value: f64,
            }
            emit(None, out, &(to_json(&Value { value: v }) + "\n"))
        }
        Command::Potential { kind, data, measure, points, m, format, output } => {
            let kind = match kind {
                PotentialKind::Dirichlet => FieldKind::Dirichlet,
                PotentialKind::Green => FieldKind::Green,
                PotentialKind::Superposition => FieldKind::Superposition,
            };
            let field = build_field(
                kind,
                load_data(data.as_deref())?,
                load_measure(measure.as_deref())?,
                m,
            )?;
            let pts = read_points_csv(&read_text(&points)?, field.config().n())?;
            let evals = field.eval_batch(&pts)?;
            let near: Vec<usize> = evals
                .iter()
                .enumerate()
                .filter(|(_, e)| e.near_boundary)
                .map(|(i, _)| i)
                .collect();
            let text = match format {
                Format::Csv => {
                    let values: Vec<f64> = evals.iter().map(|e| e.value).collect();
                    write_values_csv(&pts, &values)
                }
                Format::Json => {
                    #[derive(Serialize)]
                    struct Row<'a> {
                        x: &'a [f64],
                        value: f64,
                        near_boundary: bool,
                    }
                    let rows: Vec<Row> = pts
                        .iter()
                        .zip(&evals)
                        .map(|(p, e)| Row { x: p.coords(), value: e.value, near_boundary: e.near_boundary })
                        .collect();
                    to_json(&rows) + "\n"
                }
            };
            if !near.is_empty() && format == Format::Csv {
                #[derive(Serialize)]
                struct Warn<'a> {
                    warning: &'a str,
                    rows: &'a [usize],
                }
                let w = to_json(&Warn { warning: "near_boundary", rows: &near });
                let _ = writeln!(err, "{w}");
            }
            emit(output.as_deref(), out, &text)
        }
        Command::Exceptional { measure, beta, lambda, shells, grid_delta, output } => {
            let mu = AtomicMeasure::from_json(&read_text(&measure)?)?;
            let q = MaximalQuery::new(beta, lambda)?;
            let cov = vitali_covering(&mu, &q, shells.0..=shells.1, grid_delta)?;
            emit(output.as_deref(), out, &(to_json(&cov) + "\n"))
        }
        Command::Growth {
            data,
            measure,
            m,
            alpha,
            rays,
            rmin,
            rmax,
            steps,
            seed,
            covering,
            output,
        } => {
            let data = load_data(data.as_deref())?;
            let measure = load_measure(measure.as_deref())?;
            let (kind, g) = match (&data, &measure) {
                (Some(_), None) => (FieldKind::Dirichlet, GrowthParams::dirichlet(alpha, m, data.as_ref().unwrap().dimension())?),
                (None, Some(_)) => (FieldKind::Green, GrowthParams::subharmonic(alpha, m)?),
                (Some(_), Some(_)) => (FieldKind::Superposition, GrowthParams::subharmonic(alpha, m)?),
                (None, None) => return Err(Failure::Usage("growth needs --data and/or --measure".into())),
            };
            let field = build_field(kind, data, measure, m)?;
            let cov: Option<CoveringResult> = covering
                .map(|p| -> Result<CoveringResult, Failure> {
                    let text = read_text(&p)?;
                    serde_json::from_str(&text).map_err(|e| {
                        Failure::Lib(Error::Schema { path: "covering".into(), message: e.to_string() })
                    })
                })
                .transpose()?;
            let rays = random_rays(field.config().n(), rays, seed);
            let radii = geometric_radii(rmin, rmax, steps)?;
            let rows = growth_scan(|x: &Point| field.eval(x), &rays, &radii, &g, cov.as_ref())?;
            emit(output.as_deref(), out, &write_growth_csv(&rows))
        }
        Command::Capacity { problem, output } => {
            let p = CapacityProblem::from_json(&read_text(&problem)?)?;
            let sol = p.solve()?;
            #[derive(Serialize)]
            struct Cap<'a> {
                value: f64,
                dual_bound: f64,
                g: &'a [f64],
            }
            let text = to_json(&Cap { value: sol.value, dual_bound: sol.dual_value(), g: &sol.g });
            emit(output.as_deref(), out, &(text + "\n"))
        }
        Command::Thinness { set, kind, imax, n, output } => {
            let spec = SetSpec::from_json(&read_text(&set)?)?;
            let report = thinness_series(&spec, kind.into(), n, imax, &ThinnessOptions::default())?;
            emit(output.as_deref(), out, &(to_json(&report) + "\n"))
        }
    }
}

fn thread_pool() -> Result<rayon::ThreadPool, Failure> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("HPOT_THREADS") {
        let t: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|t| *t > 0)
            .ok_or_else(|| Failure::Usage(format!("HPOT_THREADS must be a positive integer, got `{v}`")))?;
        builder = builder.num_threads(t);
    }
    builder
        .build()
        .map_err(|e| Failure::Usage(format!("cannot start thread pool: {e}")))
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let f = Failure::Usage(e.render().to_string().trim().to_string());
            let _ = writeln!(err, "{}", f.to_json());
            return f.exit_code();
        }
    };
    let mut out_buf = Vec::new();
    let mut err_buf = Vec::new();
    let result = thread_pool()
        .and_then(|pool| pool.install(|| dispatch(cli.command, &mut out_buf, &mut err_buf)));
    let _ = out.write_all(&out_buf);
    let _ = err.write_all(&err_buf);
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "{}", f.to_json());
            f.exit_code()
        }
    }
}
