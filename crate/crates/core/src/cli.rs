//! The `almost-circles` command line.
//!
//! Results go to standard output or `--out`; diagnostics go to standard
//! error as one JSON object per line. Exit codes: 0 pass, 1 I/O failure,
//! 2 invalid input, 3 verification failure.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::certificate::{self, Certificate, RepresentOptions, DEFAULT_EPSILON, DEFAULT_FAMILY_ID};
use crate::combinatorics::{
    closure_from_orderings, convex_dimension, minimal_generating_orders, ClosureSystem,
    GeometryJson, LinearOrderTuple, OrdersJson,
};
use crate::curves::{AlmostCircle, CurveJson, Point};
use crate::error::Error;
use crate::hull::{HullConfig, PlaneCurve};
use crate::props::{run_property_suite, PropsConfig};
use crate::svg::{render_family, SvgOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_INVALID_INPUT: i32 = 2;
pub const EXIT_VERIFICATION_FAILED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "almost-circles", version, about = "Represent finite convex geometries by almost-circles")]
pub struct Cli {
    /// Also log progress (`-v`) and near-ties (`-vv`).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build and verify a representation; writes a certificate.
    Represent {
        /// Geometry (`{"n", "closed_sets"}`) or orders (`{"n", "orders"}`) JSON.
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
        /// Use this `m` instead of deriving it from `--epsilon`.
        #[arg(long)]
        multiplicity: Option<usize>,
        #[arg(long, default_value = DEFAULT_FAMILY_ID)]
        family_id: String,
        #[arg(long, default_value_t = HullConfig::default().directions)]
        directions: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check a certificate from scratch.
    Verify {
        certificate: PathBuf,
        /// Override the direction count stored in the certificate.
        #[arg(long)]
        directions: Option<usize>,
    },
    /// Convex dimension and a minimum generating tuple of orders.
    Dim { input: PathBuf },
    /// Draw a certificate, a single curve (`{"m", "t", "S"}`) or `{"points": [[x, y], ...]}`.
    Render {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Exaggerate the distance of every arc from its chord.
        #[arg(long, default_value_t = 1.0)]
        gap_scale: f64,
        /// Overlay the sector triangles.
        #[arg(long)]
        triangles: bool,
    },
    /// Run the good-function and rigidity property suite.
    Props,
}

struct JsonLogger;

impl log::Log for JsonLogger {
    fn enabled(&self, metadata: &log::Metadata) -> bool {
        metadata.level() <= log::max_level()
    }

    fn log(&self, record: &log::Record) {
        if self.enabled(record.metadata()) {
            let line = json!({
                "level": record.level().as_str().to_lowercase(),
                "target": record.target(),
                "message": record.args().to_string(),
            });
            let _ = writeln!(io::stderr().lock(), "{line}");
        }
    }

    fn flush(&self) {}
}

static LOGGER: JsonLogger = JsonLogger;

/// Installs the JSON-lines logger; later calls only change the level.
pub fn init_logging(verbose: u8) {
    let _ = log::set_logger(&LOGGER);
    log::set_max_level(match verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    });
}

struct Failure {
    code: i32,
    diagnostic: Value,
}

impl Failure {
    fn invalid(err: Error) -> Failure {
        let mut diagnostic = json!({"level": "error", "kind": "invalid_input", "message": err.to_string()});
        if let Error::NotConvexGeometry { set, x, y } = &err {
            diagnostic["kind"] = json!("not_convex_geometry");
            diagnostic["witness"] = json!({"set": set.to_vec(), "x": x, "y": y});
        }
        Failure {
            code: EXIT_INVALID_INPUT,
            diagnostic,
        }
    }

    fn io(path: &Path, err: io::Error) -> Failure {
        Failure {
            code: EXIT_IO,
            diagnostic: json!({"level": "error", "kind": "io", "path": path, "message": err.to_string()}),
        }
    }

    fn verification(diagnostic: Value) -> Failure {
        Failure {
            code: EXIT_VERIFICATION_FAILED,
            diagnostic,
        }
    }
}

type Outcome = std::result::Result<(), Failure>;

fn read_json(path: &Path) -> std::result::Result<Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| Failure::invalid(e.into()))
}

fn decode<T: for<'de> Deserialize<'de>>(value: Value) -> std::result::Result<T, Failure> {
    serde_json::from_value(value).map_err(|e| Failure::invalid(e.into()))
}

/// Reads a closure system from geometry JSON, or generates it from orders JSON.
pub fn load_geometry(value: Value) -> crate::Result<ClosureSystem> {
    if value.get("orders").is_some() {
        let orders: OrdersJson = serde_json::from_value(value)?;
        closure_from_orderings(&LinearOrderTuple::from_json(&orders)?)
    } else if value.get("closed_sets").is_some() {
        let geometry: GeometryJson = serde_json::from_value(value)?;
        ClosureSystem::from_json(&geometry)
    } else {
        Err(Error::Parse("expected an object with \"closed_sets\" or \"orders\"".into()))
    }
}

fn emit(out: &mut dyn Write, target: Option<&Path>, text: &str) -> Outcome {
    match target {
        Some(path) => fs::write(path, text).map_err(|e| Failure::io(path, e)),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Failure::io(Path::new("<stdout>"), e)),
    }
}

fn represent(
    out: &mut dyn Write,
    input: &Path,
    opts: RepresentOptions,
    target: Option<&Path>,
) -> Outcome {
    if !(opts.epsilon > 0.0 && opts.epsilon < 1.0) {
        return Err(Failure::invalid(Error::Domain(format!("epsilon {} is not in (0, 1)", opts.epsilon))));
    }
    let sys = load_geometry(read_json(input)?).map_err(Failure::invalid)?;
    let cert = certificate::represent(&sys, &opts).map_err(Failure::invalid)?;
    log::info!("m = {}, t = {}, {} members", cert.m, cert.t, cert.members.len());
    emit(out, target, &(cert.to_json_pretty().map_err(Failure::invalid)? + "\n"))?;
    if cert.verdict.pass {
        Ok(())
    } else {
        Err(Failure::verification(json!({
            "level": "error",
            "kind": "verification_failed",
            "verdict": cert.verdict,
        })))
    }
}

fn verify(out: &mut dyn Write, path: &Path, directions: Option<usize>) -> Outcome {
    let cert: Certificate = decode(read_json(path)?)?;
    let report = certificate::verify(&cert, directions);
    let text = serde_json::to_string_pretty(&report).map_err(|e| Failure::invalid(e.into()))?;
    emit(out, None, &(text + "\n"))?;
    match report.first_failure() {
        None => Ok(()),
        Some(check) => Err(Failure::verification(json!({
            "level": "error",
            "kind": "verification_failed",
            "check": check.name,
            "message": check.detail,
        }))),
    }
}

fn dim(out: &mut dyn Write, input: &Path) -> Outcome {
    let sys = load_geometry(read_json(input)?).map_err(Failure::invalid)?;
    certificate::require_convex_geometry(&sys).map_err(Failure::invalid)?;
    let dimension = convex_dimension(&sys).map_err(Failure::invalid)?;
    let orders = minimal_generating_orders(&sys).map_err(Failure::invalid)?;
    let report = json!({"n": sys.n(), "convex_dimension": dimension, "orders": orders.orders()});
    emit(out, None, &format!("{}\n", serde_json::to_string_pretty(&report).expect("plain JSON")))
}

#[derive(Deserialize)]
struct PointsJson {
    points: Vec<Point>,
}

fn render(out: &mut dyn Write, input: &Path, opts: SvgOptions, target: Option<&Path>) -> Outcome {
    let value = read_json(input)?;
    let curves: Vec<(usize, PlaneCurve)> = if value.get("members").is_some() {
        let cert: Certificate = decode(value)?;
        cert.curves()
            .map_err(Failure::invalid)?
            .into_iter()
            .map(|(e, c)| (e, PlaneCurve::curve(c)))
            .collect()
    } else if value.get("points").is_some() {
        let points: PointsJson = decode(value)?;
        points
            .points
            .into_iter()
            .enumerate()
            .map(|(k, p)| (k + 1, PlaneCurve::Point(p)))
            .collect()
    } else {
        let curve: CurveJson = decode(value)?;
        vec![(1, PlaneCurve::curve(AlmostCircle::from_json(&curve).map_err(Failure::invalid)?))]
    };
    emit(out, target, &render_family(&curves, &opts))
}

fn props(out: &mut dyn Write) -> Outcome {
    let checks = run_property_suite(&PropsConfig::default());
    let mut table = String::new();
    for c in &checks {
        table.push_str(&format!("{} {}: {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail));
    }
    emit(out, None, &table)?;
    match checks.iter().find(|c| !c.passed) {
        None => Ok(()),
        Some(c) => Err(Failure::verification(json!({
            "level": "error",
            "kind": "property_failed",
            "check": c.name,
            "message": c.detail,
        }))),
    }
}

/// Runs one parsed invocation, writing results to `out` and the final
/// diagnostic, if any, to `err`. Returns the exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let outcome = match cli.command {
        Command::Represent {
            input,
            epsilon,
            multiplicity,
            family_id,
            directions,
            out: target,
        } => represent(
            out,
            &input,
            RepresentOptions {
                epsilon,
                multiplicity,
                family_id,
                directions,
            },
            target.as_deref(),
        ),
        Command::Verify {
            certificate,
            directions,
        } => verify(out, &certificate, directions),
        Command::Dim { input } => dim(out, &input),
        Command::Render {
            input,
            out: target,
            gap_scale,
            triangles,
        } => render(
            out,
            &input,
            SvgOptions {
                gap_scale,
                sector_triangles: triangles,
                ..SvgOptions::default()
            },
            target.as_deref(),
        ),
        Command::Props => props(out),
    };
    match outcome {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "{}", f.diagnostic);
            f.code
        }
    }
}

/// Parses `args` (including the program name) and runs them.
pub fn run_from_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => {
            init_logging(cli.verbose);
            run(cli, out, err)
        }
        Err(e) if !e.use_stderr() => {
            let _ = write!(out, "{e}");
            EXIT_OK
        }
        Err(e) => {
            let line = json!({"level": "error", "kind": "usage", "message": e.to_string()});
            let _ = writeln!(err, "{line}");
            EXIT_INVALID_INPUT
        }
    }
}
