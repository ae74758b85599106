//! Command-line front end: JSON in, JSON or SVG out.
//!
//! Exit codes: 0 on success, 2 for unusable arguments or unreadable input,
//! 3 for inputs that violate an operation's preconditions, 4 when a
//! verification run completes but reports violations.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::json;

use rivergeo::error::Error;
use rivergeo::metric::{distance, Point};
use rivergeo::noncompact::{mnc, modulus_estimate, nuc_characteristic, Measure};
use rivergeo::numfmt::round_numbers;
use rivergeo::properties::{run_check, Check};
use rivergeo::render::{render_svg, Scene};
use rivergeo::segment::{metric_segment, midpoint};
use rivergeo::sets::{convex_hull, is_convex, SetDescription};
use rivergeo::wstructure::w_point;

#[derive(Parser)]
#[command(
    name = "rivergeo",
    version,
    about = "Geometry toolkit for the plane under the river metric"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Distance between two points given as JSON pairs, e.g. "[1,1]" "[3,0]".
    Dist { p: String, q: String },
    /// Shortest path between two points, as its polyline pieces.
    Segment { p: String, q: String },
    /// Convex-combination point for a weight lambda in [0, 1].
    W { p: String, q: String, lambda: f64 },
    /// Point halfway along the shortest path.
    Midpoint { p: String, q: String },
    /// Convex hull of a point cloud read from a JSON file.
    Hull { file: PathBuf },
    /// Exact convexity decision for a set description read from a JSON file.
    ConvexCheck { file: PathBuf },
    /// Noncompactness measures of a set description read from a JSON file.
    Mnc { file: PathBuf },
    /// Modulus-of-noncompactness estimate at a given epsilon.
    Modulus {
        #[arg(long)]
        measure: Measure,
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = 200)]
        grid: usize,
    },
    /// Noncompactness characteristic of every measure over its epsilon grid.
    NucSweep {
        #[arg(long, default_value_t = 60)]
        grid: usize,
    },
    /// Randomized verification suite for one named property check.
    Properties {
        #[arg(long)]
        check: Check,
        #[arg(long)]
        samples: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Render a scene description from a JSON file to an SVG file.
    Render {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
}

enum Failure {
    Parse(String),
    Precondition(Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Parse(_) => 2,
            Failure::Precondition(_) => 3,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Parse(msg) => msg.clone(),
            Failure::Precondition(err) => err.to_string(),
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        Failure::Precondition(err)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}

fn run(command: Command) -> Result<ExitCode, Failure> {
    match command {
        Command::Dist { p, q } => {
            let (p, q) = (parse_point(&p)?, parse_point(&q)?);
            emit(&json!({ "distance": distance(p, q) }));
        }
        Command::Segment { p, q } => {
            let (p, q) = (parse_point(&p)?, parse_point(&q)?);
            let seg = metric_segment(p, q);
            let mut value = serde_json::to_value(&seg).expect("segment serializes");
            value
                .as_object_mut()
                .expect("segment is an object")
                .insert("length".into(), json!(seg.length));
            emit(&value);
        }
        Command::W { p, q, lambda } => {
            let (p, q) = (parse_point(&p)?, parse_point(&q)?);
            let point = w_point(p, q, lambda)?;
            emit(&json!({ "point": point }));
        }
        Command::Midpoint { p, q } => {
            let (p, q) = (parse_point(&p)?, parse_point(&q)?);
            emit(&json!({ "midpoint": midpoint(p, q) }));
        }
        Command::Hull { file } => {
            let points: Vec<Point> = read_json(&file)?;
            emit(&convex_hull(&points)?);
        }
        Command::ConvexCheck { file } => {
            let set: SetDescription = read_json(&file)?;
            emit(&is_convex(&set)?);
        }
        Command::Mnc { file } => {
            let set: SetDescription = read_json(&file)?;
            set.validate()?;
            emit(&mnc(&set));
        }
        Command::Modulus { measure, eps, grid } => {
            emit(&modulus_estimate(measure, eps, grid)?);
        }
        Command::NucSweep { grid } => {
            let alpha_grid: Vec<f64> = (1..=20).map(|i| i as f64 / 10.0).collect();
            let unit_grid: Vec<f64> = (1..=10).map(|i| i as f64 / 10.0).collect();
            let alpha = nuc_characteristic(Measure::Alpha, &alpha_grid, grid)?;
            let beta = nuc_characteristic(Measure::Beta, &unit_grid, grid)?;
            let chi = nuc_characteristic(Measure::Chi, &unit_grid, grid)?;
            emit(&json!({ "alpha": alpha, "beta": beta, "chi": chi }));
        }
        Command::Properties {
            check,
            samples,
            seed,
            tol,
        } => {
            let report = run_check(check, samples, seed, tol);
            let failed = report.violations > 0;
            emit(&report);
            if failed {
                return Ok(ExitCode::from(4));
            }
        }
        Command::Render { file, output } => {
            let scene: Scene = read_json(&file)?;
            let svg = render_svg(&scene)?;
            fs::write(&output, svg).map_err(|e| {
                Failure::Parse(format!("cannot write {}: {e}", output.display()))
            })?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_point(text: &str) -> Result<Point, Failure> {
    serde_json::from_str(text)
        .map_err(|e| Failure::Parse(format!("invalid point literal {text:?}: {e}")))
}

fn read_json<T: DeserializeOwned>(path: &PathBuf) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Parse(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::Parse(format!("invalid JSON in {}: {e}", path.display())))
}

fn emit<T: Serialize>(value: &T) {
    let mut v = serde_json::to_value(value).expect("output serializes");
    round_numbers(&mut v);
    println!("{v}");
}
