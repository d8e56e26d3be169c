mod report;

use std::io::Write;
use std::ops::RangeInclusive;
use std::process::ExitCode;

use clap::{error::ErrorKind, Args, CommandFactory, Parser, Subcommand};
use wps_core::catalog::{self, CatalogEntry};
use wps_core::quasihom::{solve_weights, NfClass, NormalForm, WeightSystem};
use wps_core::Exec;

use report::Report;

#[derive(Parser)]
#[command(name = "wps", version, about = "Exact invariants and weighted blow-up smoothings of graded surface singularities")]
struct Cli {
    /// Print machine-readable JSON instead of tables.
    #[arg(long, global = true)]
    json: bool,
    /// Evaluate search candidates on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List catalog entries.
    List,
    /// Weights, Milnor number, branch points B, Ĉ², R and genus.
    Analyze(Input),
    /// Dual candidates for each point of B and the resulting dual sets.
    Duals(Input),
    /// Characteristic polynomial of the monodromy and the unipotent exponent.
    Monodromy(Input),
    /// Scan w3 for smoothings whose exceptional surface realizes a dual set.
    Search {
        #[command(flatten)]
        input: Input,
        /// Inclusive range of w3 to scan, e.g. 1..66 (default 1..d).
        #[arg(long, value_parser = parse_range)]
        w3_range: Option<RangeInclusive<i64>>,
    },
    /// Intersection numbers of the curve C on the central fiber.
    Intersect {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 1)]
        w3: i64,
    },
    /// Bounded check that the weighted blow-up is a canonical modification.
    Ishii {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 1)]
        w3: i64,
        /// Enumeration bound for cone vectors (default d).
        #[arg(long)]
        bound: Option<i64>,
    },
    /// Recompute catalog entries and diff against their recorded values.
    Verify {
        /// Verify every entry.
        #[arg(long, conflicts_with = "name")]
        all: bool,
        name: Option<String>,
    },
}

#[derive(Args)]
struct Input {
    /// Catalog name or alias, e.g. E12 or "D_{2,3,7}".
    name: Option<String>,
    /// Normal-form class (I..VII), used with --exponents.
    #[arg(long, requires = "exponents")]
    class: Option<NfClass>,
    /// Normal-form exponents p0,p1,p2.
    #[arg(long, value_delimiter = ',', requires = "class")]
    exponents: Option<Vec<i64>>,
    /// Extra exponents a,b for classes VI and VII.
    #[arg(long, value_delimiter = ',', requires = "class")]
    extra: Option<Vec<i64>>,
    /// Weights w0,w1,w2, used with --degree.
    #[arg(long, value_delimiter = ',', requires = "degree")]
    weights: Option<Vec<i64>>,
    #[arg(long, requires = "weights")]
    degree: Option<i64>,
}

fn parse_range(s: &str) -> Result<RangeInclusive<i64>, String> {
    let (a, b) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .ok_or_else(|| format!("expected A..B, got {s:?}"))?;
    let a: i64 = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let b: i64 = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    if a < 1 || b < a {
        return Err(format!("need 1 <= A <= B, got {a}..{b}"));
    }
    Ok(a..=b)
}

/// A germ resolved from one of the three input forms.
pub struct Germ {
    pub label: String,
    pub ws: WeightSystem,
}

fn usage_error(kind: ErrorKind, msg: impl std::fmt::Display) -> ! {
    Cli::command().error(kind, msg).exit()
}

fn load_catalog() -> Result<Vec<CatalogEntry>, wps_core::Error> {
    match std::env::var_os("WPS_CATALOG") {
        Some(path) => catalog::load_catalog(path),
        None => catalog::bundled_catalog(),
    }
}

fn resolve(input: &Input) -> Result<Germ, wps_core::Error> {
    let sources =
        [input.name.is_some(), input.class.is_some(), input.weights.is_some()].iter().filter(|&&b| b).count();
    if sources != 1 {
        usage_error(
            ErrorKind::ArgumentConflict,
            "give exactly one of NAME, --class/--exponents, or --weights/--degree",
        );
    }
    if let Some(name) = &input.name {
        let cat = load_catalog()?;
        let entry = catalog::find(&cat, name).ok_or_else(|| {
            wps_core::Error::InvalidInput(format!("no catalog entry named {name:?} (try `wps list`)"))
        })?;
        return Ok(Germ { label: entry.name.clone(), ws: entry.weight_system()? });
    }
    if let (Some(class), Some(p)) = (input.class, &input.exponents) {
        let p: [i64; 3] = p.as_slice().try_into().map_err(|_| {
            wps_core::Error::InvalidInput(format!("--exponents needs 3 values, got {}", p.len()))
        })?;
        let extra = match input.extra.as_deref() {
            None => None,
            Some([a, b]) => Some((*a, *b)),
            Some(v) => {
                return Err(wps_core::Error::InvalidInput(format!("--extra needs 2 values, got {}", v.len())))
            }
        };
        let nf = NormalForm::new(class, p, extra)?;
        let ws = solve_weights(&nf)?;
        return Ok(Germ { label: format!("class {class} {p:?}"), ws });
    }
    let (Some(w), Some(d)) = (&input.weights, input.degree) else { unreachable!("checked above") };
    if w.len() != 3 {
        return Err(wps_core::Error::InvalidInput(format!("--weights needs 3 values, got {}", w.len())));
    }
    let ws = WeightSystem::new(w.clone(), d)?;
    Ok(Germ { label: ws.to_string(), ws })
}

fn run(cli: &Cli) -> Result<(Report, bool), wps_core::Error> {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::Parallel };
    let out = match &cli.command {
        Command::List => Report::list(&load_catalog()?),
        Command::Analyze(input) => Report::analyze(&resolve(input)?)?,
        Command::Duals(input) => Report::duals(&resolve(input)?)?,
        Command::Monodromy(input) => Report::monodromy(&resolve(input)?)?,
        Command::Search { input, w3_range } => {
            let germ = resolve(input)?;
            let range = w3_range.clone().unwrap_or(1..=germ.ws.degree);
            Report::search(&germ, range, exec)?
        }
        Command::Intersect { input, w3 } => Report::intersect(&resolve(input)?, *w3)?,
        Command::Ishii { input, w3, bound } => {
            let germ = resolve(input)?;
            let bound = bound.unwrap_or(germ.ws.degree);
            Report::ishii(&germ, *w3, bound, exec)?
        }
        Command::Verify { all, name } => {
            let cat = load_catalog()?;
            let entries: Vec<CatalogEntry> = match (all, name) {
                (true, _) => cat,
                (false, Some(n)) => vec![catalog::find(&cat, n)
                    .ok_or_else(|| wps_core::Error::InvalidInput(format!("no catalog entry named {n:?}")))?
                    .clone()],
                (false, None) => usage_error(ErrorKind::MissingRequiredArgument, "verify needs NAME or --all"),
            };
            let reports = catalog::verify_all(&entries, exec);
            let failed = reports.iter().any(|r| !r.passed());
            return Ok((Report::Verify(reports), failed));
        }
    };
    Ok((out, false))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((report, failed)) => {
            let text = if cli.json {
                serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
            } else {
                report.to_string()
            };
            let mut stdout = std::io::stdout().lock();
            // A closed pipe (e.g. `wps verify --all | head`) is not an error.
            if let Err(e) = stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()) {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            }
            if failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
