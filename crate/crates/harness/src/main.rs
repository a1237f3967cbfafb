use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use zring_core::{axioms, Limits};
use zring_harness::{self as harness, Catalog, HarnessError, RunOptions};

#[derive(Parser)]
#[command(name = "zring", version)]
#[command(about = "Exhaustive checks of z°-ideal and annihilator-ideal facts on finite rings")]
#[command(arg_required_else_help = true)]
struct Cli {
    /// Print every check id with the statement it verifies
    #[arg(long)]
    list_checks: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Ring construction and axiom validation
    Ring {
        #[command(subcommand)]
        action: RingAction,
    },
    /// Classify one ideal
    Ideal {
        #[command(subcommand)]
        action: IdealAction,
    },
    /// Run one check on one ring
    Check {
        check_id: String,
        #[arg(long)]
        ring: String,
        /// Generators such as "4" or "2,3"; or Mn:, Tn:, GT: structured descriptions
        #[arg(long)]
        ideal: Option<String>,
        /// n for the zn0 classifier
        #[arg(long)]
        n: Option<usize>,
        /// Also write the report here
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run hypothesis-gated lattice checks anyway (verdict stays hypothesis-not-met)
        #[arg(long)]
        exploratory: bool,
        /// Record wall-clock time in the report
        #[arg(long)]
        timing: bool,
    },
    /// Run catalogs of rings
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Annihilator-ideal lattice export
    Lattice {
        #[command(subcommand)]
        action: LatticeAction,
    },
}

#[derive(Subcommand)]
enum RingAction {
    /// Check every ring axiom on the tables
    Validate { spec: String },
}

#[derive(Subcommand)]
enum IdealAction {
    /// z°, z_n°, sz°, right d-ideal, annihilator and prime verdicts with witnesses
    Classify {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        ideal: String,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Run all theorem checks (or --checks) on every entry; the bundled catalog when no file is given
    Run {
        file: Option<PathBuf>,
        /// Comma-separated check ids
        #[arg(long, value_delimiter = ',')]
        checks: Option<Vec<String>>,
        /// Write the full run here
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Subcommand)]
enum LatticeAction {
    /// Hasse diagram in DOT
    Dot {
        #[arg(long)]
        ring: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Elements as generator lists with join and meet tables
    Json {
        #[arg(long)]
        ring: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn emit(text: &str, path: Option<&PathBuf>) -> Result<(), HarnessError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| HarnessError::Io {
            path: p.display().to_string(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<i32, HarnessError> {
    let limits = Limits::from_env();
    if cli.list_checks {
        print!("{}", harness::list_checks());
        if cli.command.is_none() {
            return Ok(0);
        }
    }
    let Some(command) = cli.command else {
        return Ok(0);
    };
    match command {
        Command::Ring {
            action: RingAction::Validate { spec },
        } => {
            let report = match harness::build_ring(&spec, &limits) {
                Ok(ring) => axioms::validate_ring(&ring),
                Err(HarnessError::Core(e)) if e.is_budget() => {
                    zring_core::VerificationReport::new(spec, axioms::CHECK_ID).budget_exceeded(e.to_string())
                }
                Err(e) => return Err(e),
            };
            print!("{}", to_json(&report));
            Ok(report.verdict.exit_code())
        }
        Command::Ideal {
            action: IdealAction::Classify { ring, ideal },
        } => {
            let c = harness::classify(&ring, &ideal, &limits)?;
            print!("{}", to_json(&c));
            Ok(0)
        }
        Command::Check {
            check_id,
            ring,
            ideal,
            n,
            json,
            seed,
            exploratory,
            timing,
        } => {
            let opts = RunOptions {
                ideal,
                n,
                seed,
                exploratory,
                timing,
            };
            let report = harness::run_check(&ring, &check_id, &opts, &limits)?;
            let text = to_json(&report);
            print!("{text}");
            if let Some(p) = json.as_ref() {
                emit(&text, Some(p))?;
            }
            Ok(report.verdict.exit_code())
        }
        Command::Catalog {
            action:
                CatalogAction::Run {
                    file,
                    checks,
                    json,
                    seed,
                    timing,
                },
        } => {
            let catalog = match file {
                Some(p) => Catalog::load(&p)?,
                None => Catalog::default_catalog(),
            };
            let opts = RunOptions {
                seed,
                timing,
                ..RunOptions::default()
            };
            let run = harness::run_catalog(&catalog, checks.as_deref(), &opts, &limits)?;
            for r in &run.reports {
                println!("{:<12} {:<32} {:?}", r.ring_spec, r.check_id, r.verdict);
            }
            if let Some(p) = json.as_ref() {
                emit(&to_json(&run), Some(p))?;
            }
            Ok(run.exit_code())
        }
        Command::Lattice { action } => {
            let (ring, output, dot) = match action {
                LatticeAction::Dot { ring, output } => (ring, output, true),
                LatticeAction::Json { ring, output } => (ring, output, false),
            };
            let (analysis, lattice) = harness::lattice(&ring, &limits)?;
            let text = if dot {
                lattice.to_dot(&analysis)
            } else {
                to_json(&lattice.to_json(&analysis))
            };
            emit(&text, output.as_ref())?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
