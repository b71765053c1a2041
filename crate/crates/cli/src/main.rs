use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use divcheck_core::localfields::{is_cube_local, is_square_local, parse_rational};
use divcheck_core::search::point_search;
use divcheck_core::verify::{run_scenarios, scenario_ids, Config};
use divcheck_core::{CoveringMap, DiagonalCubic, Error, Place, ProjPoint};

const USAGE_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "divcheck", version, about = "Exact checks of local-global divisibility examples")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run built-in scenarios and report pass/fail per step.
    Verify {
        /// Scenario id; may be repeated. Defaults to all.
        #[arg(long = "scenario", value_name = "ID", conflicts_with = "all")]
        scenarios: Vec<String>,
        #[arg(long)]
        all: bool,
        #[arg(long)]
        seed: Option<u64>,
        /// Height bound for point searches.
        #[arg(long)]
        height: Option<u64>,
        /// Relative p-adic precision for explicit local points.
        #[arg(long)]
        precision: Option<u32>,
        /// Write the JSON report here.
        #[arg(long, value_name = "PATH")]
        report: Option<PathBuf>,
        /// Omit timings from the written report.
        #[arg(long)]
        canonical: bool,
        /// Run scenarios on this many threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// TOML configuration file.
        #[arg(long, value_name = "PATH")]
        config: Option<PathBuf>,
        /// List scenario ids and exit.
        #[arg(long)]
        list: bool,
    },
    /// All points of aX³ + bY³ + cZ³ = 0 up to a height bound.
    Search {
        #[arg(long, value_name = "A,B,C", allow_hyphen_values = true)]
        curve: String,
        #[arg(long, default_value_t = 1000)]
        height: u64,
        #[arg(long)]
        json: bool,
    },
    /// Whether a rational number is a square or cube in ℚ_p or ℝ.
    Local {
        #[arg(long, value_enum)]
        op: Op,
        #[arg(long, value_name = "Q", allow_hyphen_values = true)]
        value: String,
        #[arg(long, value_name = "p|real")]
        place: String,
    },
    /// Image of a point of aX³ + bY³ + cZ³ = 0 on x³ + y³ + abc·z³ = 0.
    Cover {
        #[arg(long, value_name = "A,B,C", allow_hyphen_values = true)]
        abc: String,
        #[arg(long, value_name = "X,Y,Z", allow_hyphen_values = true)]
        point: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Square,
    Cube,
}

/// A failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidArgument(_) | Error::NotFound(_) => USAGE_ERROR,
            Error::Inconclusive(_) => 2,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: USAGE_ERROR, message: message.into() }
}

fn parse_triple(s: &str) -> Result<[BigInt; 3], Failure> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [a, b, c] = parts.as_slice() else {
        return Err(usage(format!("expected three comma-separated integers, got {s:?}")));
    };
    let int = |t: &str| t.parse::<BigInt>().map_err(|_| usage(format!("not an integer: {t:?}")));
    Ok([int(a)?, int(b)?, int(c)?])
}

fn cubic(s: &str) -> Result<DiagonalCubic, Failure> {
    let [a, b, c] = parse_triple(s)?;
    Ok(DiagonalCubic::new(a, b, c)?)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Verify { scenarios, all: _, seed, height, precision, report, canonical, jobs, config, list } => {
            let mut cfg = match config {
                Some(path) => {
                    let text = std::fs::read_to_string(&path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
                    Config::from_toml(&text)?
                }
                None => Config::default(),
            };
            if let Some(s) = seed {
                cfg.seed = s;
            }
            if let Some(h) = height {
                cfg.height = h;
            }
            if let Some(k) = precision {
                cfg.precision = k;
            }
            if list {
                for id in scenario_ids(&cfg) {
                    println!("{id}");
                }
                return Ok(0);
            }
            let ids = if scenarios.is_empty() { scenario_ids(&cfg) } else { scenarios };
            let run = run_scenarios(&ids, &cfg, jobs.max(1))?;
            for r in &run.reports {
                print!("{}", r.summary());
            }
            println!("overall: {}", run.status);
            if let Some(path) = report {
                let text = if canonical { run.canonical_json() } else { run.to_json() };
                std::fs::write(&path, text + "\n")
                    .map_err(|e| Failure { code: 1, message: format!("{}: {e}", path.display()) })?;
            }
            Ok(run.exit_code() as u8)
        }
        Command::Search { curve, height, json } => {
            let curve = cubic(&curve)?;
            let report = point_search(&curve, height)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            } else {
                println!("{} points on {} with height <= {}", report.points.len(), curve, height);
                for p in &report.points {
                    println!("{p}");
                }
            }
            Ok(0)
        }
        Command::Local { op, value, place } => {
            let q = parse_rational(&value)?;
            let v: Place = place.parse()?;
            let answer = match op {
                Op::Square => is_square_local(&q, &v)?,
                Op::Cube => is_cube_local(&q, &v)?,
            };
            println!("{answer}");
            Ok(0)
        }
        Command::Cover { abc, point } => {
            let cov = CoveringMap::new(cubic(&abc)?);
            let [x, y, z] = parse_triple(&point)?;
            let image = cov.covering_eval(&ProjPoint::new(x, y, z)?)?;
            println!("{image}");
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE_ERROR } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
