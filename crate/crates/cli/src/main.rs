//! `degroot` command-line front end.
//!
//! Exit codes: 0 success, 1 other failure, 2 parse error, 3 carrier cap
//! exceeded, 4 verification failure.

mod cache;
mod config;
mod input;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use degroot::census::{canonicalize, dual_image_report, enumerate_preorders};
use degroot::classify::classify_finite;
use degroot::dual::dual_power;
use degroot::laws::run_laws;
use degroot::symbolic::{catalog, classify_symbolic, symbolic_dual_power};
use degroot::topology::alexandrov_from_preorder;
use degroot::{census, Error, FiniteTopology, MAX_CARRIER};

use config::{ConfigFile, OutputFormat, Overrides, RunConfig};
use input::{parse_space, Space};

#[derive(Parser, Debug)]
#[command(name = "degroot", version, about = "de Groot duals, classification, and finite topology census")]
struct Cli {
    /// TOML config with max_n, jobs, cache_dir, output_format
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Largest carrier for census-style commands (≤ 7)
    #[arg(long, global = true)]
    max_n: Option<usize>,

    /// Census worker threads
    #[arg(long, short = 'j', global = true)]
    jobs: Option<usize>,

    /// Census cache directory
    #[arg(long, global = true, env = "DEGROOT_CACHE_DIR")]
    cache_dir: Option<PathBuf>,

    #[arg(long, short = 'f', global = true, value_enum)]
    format: Option<OutputFormat>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a dual power of a space and its full dual sequence
    Dual {
        /// topology JSON file, inline JSON, `-` for stdin, or a symbolic token
        #[arg(long = "in")]
        input: String,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(0..=6))]
        power: u8,
    },
    /// Classify a space by its dual sequence
    Classify {
        #[arg(long = "in")]
        input: String,
    },
    /// Classify and law-check every topology on n points
    Census {
        #[arg(short = 'n')]
        n: usize,
        /// Recompute even when a cached report exists
        #[arg(long)]
        no_cache: bool,
    },
    /// List the topologies on n points
    Enumerate {
        #[arg(short = 'n')]
        n: usize,
        /// One representative per homeomorphism class
        #[arg(long)]
        canonical: bool,
    },
    /// Run every law over the n-point census and the symbolic catalog
    Laws {
        #[arg(short = 'n')]
        n: usize,
    },
    /// Show the symbolic catalog and its dual rules
    SymbolicList,
    /// Which n-point topologies arise as duals
    DualImage {
        #[arg(short = 'n')]
        n: usize,
    },
}

enum Failure {
    Lib(Error),
    Other(anyhow::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Other(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::CapExceeded { .. } | Error::PowerOutOfRange(_) | Error::GuardExceeded { .. } => 3,
        Error::VerificationFailure { .. }
        | Error::TheoremViolation(_)
        | Error::RuleInconsistency(_)
        | Error::WitnessNotFound(_) => 4,
        Error::Parse(_)
        | Error::CarrierMismatch { .. }
        | Error::MissingEmptyOrFull
        | Error::NotClosedUnderUnion(..)
        | Error::NotClosedUnderIntersection(..)
        | Error::InvalidPreorder(_)
        | Error::UnknownFamily(_)
        | Error::NotTruncatable(_)
        | Error::PreconditionViolated(_)
        | Error::PreconditionFipViolated => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            emit(&out);
            ExitCode::SUCCESS
        }
        Err(Failure::Lib(e)) => {
            if let Error::VerificationFailure { counterexample, .. } = &e {
                emit(counterexample);
            }
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Other(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn run(cli: Cli) -> Result<String, Failure> {
    let file = match &cli.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let cfg = RunConfig::resolve(
        file,
        Overrides {
            max_n: cli.max_n,
            jobs: cli.jobs,
            cache_dir: cli.cache_dir,
            output_format: cli.format,
        },
    )?;
    let fmt = cfg.output_format;

    match cli.command {
        Command::Dual { input, power } => {
            let power = power as usize;
            Ok(match parse_space(&input)? {
                Space::Finite(t) => {
                    check_spot(&t)?;
                    let result = dual_power(&t, power)?;
                    render::dual(fmt, power, &result, &classify_finite(&t)?)
                }
                Space::Symbolic(s) => {
                    let result = symbolic_dual_power(s, power)?;
                    render::dual(fmt, power, &result, &classify_symbolic(s)?)
                }
            })
        }
        Command::Classify { input } => Ok(match parse_space(&input)? {
            Space::Finite(t) => {
                check_spot(&t)?;
                render::classification(fmt, &classify_finite(&t)?)
            }
            Space::Symbolic(s) => render::classification(fmt, &classify_symbolic(s)?),
        }),
        Command::Census { n, no_cache } => {
            check_cap(n, &cfg)?;
            let cache_dir = cfg.cache_dir.as_deref().filter(|_| !no_cache);
            if let Some(row) = cache_dir.and_then(|dir| cache::load(dir, n)) {
                return Ok(render::census(fmt, &row));
            }
            let row = census(n, cfg.max_n, cfg.jobs)?;
            if !row.cross_validated() {
                return Err(Error::VerificationFailure {
                    law: "labeled count agrees across enumerators".into(),
                    counterexample: format!(
                        "{{\"n\":{n},\"labeled\":{},\"extension\":{}}}",
                        row.labeled_count, row.extension_count
                    ),
                }
                .into());
            }
            if let Some(dir) = cache_dir {
                if let Err(e) = cache::store(dir, &row) {
                    eprintln!("warning: could not write census cache: {e}");
                }
            }
            Ok(render::census(fmt, &row))
        }
        Command::Enumerate { n, canonical } => {
            check_cap(n, &cfg)?;
            let mut spaces: Vec<FiniteTopology> = enumerate_preorders(n, cfg.max_n)?
                .iter()
                .map(alexandrov_from_preorder)
                .collect();
            if canonical {
                spaces = spaces.iter().map(canonicalize).collect();
                spaces.sort();
                spaces.dedup();
            }
            Ok(render::enumerate(fmt, &spaces))
        }
        Command::Laws { n } => {
            check_cap(n, &cfg)?;
            let report = run_laws(n, cfg.max_n, cfg.jobs)?;
            let text = render::laws(fmt, &report);
            if report.all_passed() {
                Ok(text)
            } else {
                emit(&text);
                let failed: Vec<&str> = report
                    .rows
                    .iter()
                    .filter(|r| !r.passed())
                    .map(|r| r.law.as_str())
                    .collect();
                Err(Error::VerificationFailure {
                    law: failed.join(", "),
                    counterexample: report
                        .rows
                        .iter()
                        .find_map(|r| r.first_counterexample.clone())
                        .unwrap_or_default(),
                }
                .into())
            }
        }
        Command::SymbolicList => {
            let entries = catalog()
                .into_iter()
                .map(|space| {
                    Ok(render::CatalogEntry {
                        space,
                        classification: classify_symbolic(space)?,
                    })
                })
                .collect::<Result<Vec<_>, Error>>()?;
            Ok(render::catalog(fmt, &entries))
        }
        Command::DualImage { n } => {
            check_cap(n, &cfg)?;
            Ok(render::dual_image(fmt, &dual_image_report(n, cfg.max_n)?))
        }
    }
}

fn check_cap(n: usize, cfg: &RunConfig) -> Result<(), Error> {
    if n > cfg.max_n {
        return Err(Error::CapExceeded { n, cap: cfg.max_n });
    }
    Ok(())
}

fn check_spot(t: &FiniteTopology) -> Result<(), Error> {
    if t.carrier() > MAX_CARRIER {
        return Err(Error::CapExceeded { n: t.carrier(), cap: MAX_CARRIER });
    }
    Ok(())
}
