//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure (or I/O failure),
//! 2 usage error, 3 degenerate input.

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::analysis::DEFAULT_MIN_ANGLE;
use crate::arcs::{
    arcs_of, deviation, drift, rational_deviation, rational_drift, rational_iterate, step_angular,
    to_angular, AngularTriangle, RationalArcTriple,
};
use crate::error::Error;
use crate::euclid::{Circle, LabeledTriangle, Point, DEGENERACY_THRESHOLD, ON_CIRCLE_TOLERANCE};
use crate::figures::{preset, render, Figure};
use crate::suite::run_suite;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "midarc", version)]
#[command(
    about = "Mid-arc triangle iteration, its equilateral limits, and the classical triangles beside it"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Iterate the mid-arc map and print one record per rank
    Iterate(IterateArgs),
    /// Run the invariant suite over seeded random triangles
    Verify(VerifyArgs),
    /// Write one of the stock figures as SVG
    Render(RenderArgs),
}

#[derive(Args, Debug)]
struct TriangleArgs {
    /// Vertices as "x,y x,y x,y", or the keyword `equilateral`
    #[arg(long, conflicts_with_all = ["angles", "arcs"])]
    vertices: Option<String>,

    /// Interior angles as "alpha,beta,gamma"
    #[arg(long, conflicts_with = "arcs")]
    angles: Option<String>,

    /// Arcs opposite A, B, C as fractions of the circumference, "p/q,p/q,p/q"
    #[arg(long)]
    arcs: Option<String>,

    /// Circumradius used with --angles and --arcs
    #[arg(long, default_value_t = 1.0)]
    radius: f64,

    /// Unit of --angles
    #[arg(long, value_enum, default_value_t = AngleUnit::Rad)]
    unit: AngleUnit,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum AngleUnit {
    Rad,
    Deg,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct IterateArgs {
    #[command(flatten)]
    triangle: TriangleArgs,

    /// Number of steps; ranks 0..=steps are printed
    #[arg(long, default_value_t = 4)]
    steps: u32,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Exact rational arithmetic; requires --arcs
    #[arg(long)]
    exact: bool,

    /// Write to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value_t = 1000)]
    samples: u64,

    #[arg(long, default_value_t = 42)]
    seed: u64,

    /// Smallest interior angle of the sampled triangles, radians
    #[arg(long, default_value_t = DEFAULT_MIN_ANGLE)]
    min_angle: f64,

    /// Write the report to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RenderArgs {
    /// fig1, fig2, fig3 or fig4
    #[arg(long)]
    figure: String,

    #[command(flatten)]
    triangle: TriangleArgs,

    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Degenerate(String),
    Io(String),
    Verification(Vec<String>),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::DegenerateTriangle | Error::DegenerateOutput => {
                Failure::Degenerate(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

/// Metadata block shared by the JSON outputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub version: String,
    pub seed: Option<u64>,
    pub tolerances: BTreeMap<String, f64>,
    pub mode: String,
    pub circumradius: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterateRecord {
    pub rank: u32,
    pub l_a: f64,
    pub l_b: f64,
    pub l_c: f64,
    pub deviation: f64,
    pub drift_ab: Option<f64>,
    pub theta_a: f64,
    pub theta_b: f64,
    pub theta_c: f64,
}

/// Exact-mode record; values are fractions of the circumference.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactRecord {
    pub rank: u32,
    pub l_a: String,
    pub l_b: String,
    pub l_c: String,
    pub deviation: String,
    pub drift_ab: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document<R> {
    pub meta: Meta,
    pub records: Vec<R>,
}

fn parse_number(s: &str) -> Result<f64, Failure> {
    s.trim()
        .parse::<f64>()
        .ok()
        .filter(|x| x.is_finite())
        .ok_or_else(|| Failure::Usage(format!("not a finite number: {s:?}")))
}

fn parse_vertices(s: &str) -> Result<LabeledTriangle, Failure> {
    if s.trim() == "equilateral" {
        return Ok(LabeledTriangle::equilateral(Point::ORIGIN, 1.0, PI / 2.0)?);
    }
    let pts = s
        .split_whitespace()
        .map(|pair| {
            let (x, y) = pair
                .split_once(',')
                .ok_or_else(|| Failure::Usage(format!("expected x,y but got {pair:?}")))?;
            Ok(Point::new(parse_number(x)?, parse_number(y)?))
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    match pts.as_slice() {
        [a, b, c] => Ok(LabeledTriangle::new(*a, *b, *c)?),
        _ => Err(Failure::Usage(format!(
            "expected three vertices, got {}",
            pts.len()
        ))),
    }
}

/// Triangle on a circle of radius `r` around the origin with A at angle 0
/// and the given arcs (radians of central angle) opposite A, B, C.
fn from_central_angles(r: f64, central: [f64; 3]) -> Result<AngularTriangle, Failure> {
    let circle = Circle::new(Point::ORIGIN, r)?;
    let [ca, _, cc] = central;
    Ok(AngularTriangle::new(circle, 0.0, cc, cc + ca)?)
}

fn parse_angles(s: &str, unit: AngleUnit, r: f64) -> Result<AngularTriangle, Failure> {
    let vals = s
        .split(',')
        .map(parse_number)
        .collect::<Result<Vec<_>, _>>()?;
    let [a, b, g] =
        <[f64; 3]>::try_from(vals).map_err(|_| Failure::Usage("expected three angles".into()))?;
    let scale = match unit {
        AngleUnit::Rad => 1.0,
        AngleUnit::Deg => PI / 180.0,
    };
    let angles = [a * scale, b * scale, g * scale];
    if angles.iter().any(|&x| x < 0.0) {
        return Err(Failure::Usage("angles must be nonnegative".into()));
    }
    if (angles.iter().sum::<f64>() - PI).abs() > 1e-9 {
        return Err(Failure::Usage("angles must sum to π".into()));
    }
    if angles.contains(&0.0) {
        return Err(Failure::Degenerate("zero interior angle".into()));
    }
    from_central_angles(r, angles.map(|x| 2.0 * x))
}

fn parse_float_arcs(s: &str, r: f64) -> Result<AngularTriangle, Failure> {
    let f: RationalArcTriple = s.parse()?;
    let fr = f.fractions();
    from_central_angles(
        r,
        std::array::from_fn(|i| TAU * crate::arcs::rational_to_f64(&fr[i])),
    )
}

fn angular_input(t: &TriangleArgs) -> Result<AngularTriangle, Failure> {
    if let Some(v) = &t.vertices {
        Ok(to_angular(&parse_vertices(v)?)?)
    } else if let Some(a) = &t.angles {
        parse_angles(a, t.unit, t.radius)
    } else if let Some(a) = &t.arcs {
        parse_float_arcs(a, t.radius)
    } else {
        Err(Failure::Usage(
            "one of --vertices, --angles or --arcs is required".into(),
        ))
    }
}

fn labeled_input(t: &TriangleArgs) -> Result<LabeledTriangle, Failure> {
    match &t.vertices {
        Some(v) => parse_vertices(v),
        None => Ok(angular_input(t)?.to_labeled()?),
    }
}

fn iterate_tolerances() -> BTreeMap<String, f64> {
    BTreeMap::from([
        ("degeneracy".to_string(), DEGENERACY_THRESHOLD),
        ("on_circle".to_string(), ON_CIRCLE_TOLERANCE),
    ])
}

fn emit(out: &mut dyn Write, path: &Option<PathBuf>, bytes: &[u8]) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, bytes)?,
        None => out.write_all(bytes)?,
    }
    Ok(())
}

fn csv_bytes(rows: Vec<[String; 6]>) -> Result<Vec<u8>, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Failure::Io(e.to_string());
    w.write_record(["rank", "l_a", "l_b", "l_c", "deviation", "drift_ab"])
        .map_err(io)?;
    for row in rows {
        w.write_record(&row).map_err(io)?;
    }
    w.into_inner().map_err(|e| Failure::Io(e.to_string()))
}

fn json_bytes<T: Serialize>(doc: &T) -> Result<Vec<u8>, Failure> {
    let mut s = serde_json::to_string_pretty(doc).map_err(|e| Failure::Io(e.to_string()))?;
    s.push('\n');
    Ok(s.into_bytes())
}

fn cmd_iterate(args: &IterateArgs, out: &mut dyn Write) -> Result<(), Failure> {
    if args.exact {
        let arcs = args
            .triangle
            .arcs
            .as_deref()
            .ok_or_else(|| Failure::Usage("--exact requires --arcs p/q,p/q,p/q".into()))?;
        if args.triangle.vertices.is_some() || args.triangle.angles.is_some() {
            return Err(Failure::Usage("--exact accepts only --arcs".into()));
        }
        let f: RationalArcTriple = arcs.parse()?;
        let records: Vec<ExactRecord> = (0..=args.steps)
            .map(|n| {
                let it = rational_iterate(&f, n);
                let [a, b, c] = it.fractions().each_ref().map(ToString::to_string);
                ExactRecord {
                    rank: n,
                    l_a: a,
                    l_b: b,
                    l_c: c,
                    deviation: rational_deviation(&it).to_string(),
                    drift_ab: rational_drift(&f, n).ok().map(|d| d.drift_ab.to_string()),
                }
            })
            .collect();
        let bytes = match args.format {
            Format::Csv => csv_bytes(
                records
                    .into_iter()
                    .map(|r| {
                        [
                            r.rank.to_string(),
                            r.l_a,
                            r.l_b,
                            r.l_c,
                            r.deviation,
                            r.drift_ab.unwrap_or_default(),
                        ]
                    })
                    .collect(),
            )?,
            Format::Json => json_bytes(&Document {
                meta: Meta {
                    version: env!("CARGO_PKG_VERSION").to_string(),
                    seed: None,
                    tolerances: BTreeMap::new(),
                    mode: "exact".into(),
                    circumradius: None,
                },
                records,
            })?,
        };
        return emit(out, &args.out, &bytes);
    }

    let start = angular_input(&args.triangle)?;
    let l0 = arcs_of(&start);
    let mut current = start;
    let mut records = Vec::with_capacity(args.steps as usize + 1);
    for n in 0..=args.steps {
        let l = arcs_of(&current);
        let [ta, tb, tc] = current.positions();
        records.push(IterateRecord {
            rank: n,
            l_a: l.l_a,
            l_b: l.l_b,
            l_c: l.l_c,
            deviation: deviation(&l),
            drift_ab: drift(&l0, n).ok().map(|d| d.drift_ab),
            theta_a: ta,
            theta_b: tb,
            theta_c: tc,
        });
        current = step_angular(&current);
    }
    let bytes = match args.format {
        Format::Csv => csv_bytes(
            records
                .iter()
                .map(|r| {
                    [
                        r.rank.to_string(),
                        r.l_a.to_string(),
                        r.l_b.to_string(),
                        r.l_c.to_string(),
                        r.deviation.to_string(),
                        r.drift_ab.map(|d| d.to_string()).unwrap_or_default(),
                    ]
                })
                .collect(),
        )?,
        Format::Json => json_bytes(&Document {
            meta: Meta {
                version: env!("CARGO_PKG_VERSION").to_string(),
                seed: None,
                tolerances: iterate_tolerances(),
                mode: "float".into(),
                circumradius: Some(start.circle().radius),
            },
            records,
        })?,
    };
    emit(out, &args.out, &bytes)
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<(), Failure> {
    if args.samples == 0 {
        return Err(Failure::Usage("--samples must be at least 1".into()));
    }
    let report = run_suite(args.samples, args.seed, args.min_angle)?;
    emit(out, &args.out, &json_bytes(&report)?)?;
    if report.all_passed {
        Ok(())
    } else {
        Err(Failure::Verification(
            report
                .failed_checks()
                .into_iter()
                .map(String::from)
                .collect(),
        ))
    }
}

fn cmd_render(args: &RenderArgs) -> Result<(), Failure> {
    let figure: Figure = args.figure.parse()?;
    let t = labeled_input(&args.triangle)?;
    let svg = render(&preset(figure, &t)?)?;
    fs::write(&args.out, svg)?;
    Ok(())
}

/// Runs the CLI with explicit streams and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match &cli.command {
        Command::Iterate(a) => cmd_iterate(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Render(a) => cmd_render(a),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Degenerate(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_DEGENERATE
        }
        Err(Failure::Io(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_VERIFY_FAILED
        }
        Err(Failure::Verification(failed)) => {
            let _ = writeln!(err, "verification failed: {}", failed.join(", "));
            EXIT_VERIFY_FAILED
        }
    }
}
