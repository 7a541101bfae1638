use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use thinville::beauville::{Outcome, SearchMode};
use thinville::catalog::{self, certificate_text, SuiteReport};
use thinville::congruence::formula_table;
use thinville::error::Error;

const FORMULA_PRIMES: [u32; 5] = [3, 5, 7, 11, 13];

/// Finite p-group engine and Beauville analyzer for metabelian thin p-groups.
#[derive(Parser)]
#[command(name = "thinville", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Structural report for a group.
    Analyze {
        /// Catalog id, builtin id or presentation file.
        target: String,
        #[arg(long)]
        json: bool,
        /// Skip the Beauville search.
        #[arg(long)]
        no_beauville: bool,
        /// Enumeration budget and search cap.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Search for a Beauville structure.
    Beauville {
        target: String,
        #[command(flatten)]
        mode: ModeArgs,
        #[arg(long)]
        json: bool,
        /// Exit with status 3 if the search is inconclusive.
        #[arg(long)]
        definite: bool,
    },
    /// Normal-subgroup lattice profile.
    Lattice {
        target: String,
        /// Graphviz output.
        #[arg(long)]
        dot: bool,
    },
    /// Congruence identity table at one prime.
    Formulas {
        #[arg(long)]
        p: u32,
    },
    /// Reproduction suites.
    VerifyTheorems {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Prime for the formulas suite (default: 3, 5, 7, 11, 13).
        #[arg(long)]
        p: Option<u32>,
        /// Catalog directory.
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long)]
        budget: Option<u64>,
    },
}

#[derive(Args)]
#[group(multiple = false)]
struct ModeArgs {
    #[arg(long)]
    exhaustive: bool,
    #[arg(long)]
    guided: bool,
    /// Exhaustive with this work cap, then guided.
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    P3,
    P5,
    Formulas,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ExpectationMismatch { .. } | Error::Inconsistent(_) => 1,
        Error::BudgetExceeded { .. } => 3,
        _ => 2,
    }
}

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize")
}

fn run(cli: Cli) -> Result<u8, Error> {
    let env_budget = catalog::budget_from_env();
    match cli.command {
        Command::Analyze {
            target,
            json: as_json,
            no_beauville,
            budget,
        } => {
            let budget = budget.unwrap_or(env_budget);
            let entry = catalog::resolve(&target)?;
            let g = entry.group(budget)?;
            let search = (!no_beauville).then_some(SearchMode::Budgeted(budget));
            let report = catalog::analyze(&entry.id, &g, search)?;
            if as_json {
                println!("{}", json(&report));
            } else {
                print!("{}", report.to_text());
            }
            Ok(0)
        }
        Command::Beauville {
            target,
            mode,
            json: as_json,
            definite,
        } => {
            let entry = catalog::resolve(&target)?;
            let g = entry.group(env_budget)?;
            let mode = if mode.exhaustive {
                SearchMode::Exhaustive
            } else if mode.guided {
                SearchMode::Guided
            } else {
                SearchMode::Budgeted(mode.budget.unwrap_or(env_budget))
            };
            let cert = g.find_beauville_structure(mode)?;
            if as_json {
                println!("{}", json(&cert));
            } else {
                println!("id: {}", entry.id);
                print!("{}", certificate_text(&cert));
            }
            if !cert.verify(&g)? {
                eprintln!("certificate failed re-verification");
                return Ok(1);
            }
            Ok(if definite && cert.outcome == Outcome::Inconclusive { 3 } else { 0 })
        }
        Command::Lattice { target, dot } => {
            let entry = catalog::resolve(&target)?;
            let g = entry.group(env_budget)?;
            let profile = g.lattice_profile()?;
            if dot {
                print!("{}", profile.to_dot(&g));
            } else {
                println!("id: {}", entry.id);
                println!("shape: {}", profile.shape_word());
                println!("normal_subgroups: {}", profile.normal_subgroups.len());
                for l in &profile.layers {
                    println!("layer {}: width={} count={} shape={}", l.layer, l.width, l.count, l.shape.as_str());
                }
            }
            Ok(0)
        }
        Command::Formulas { p } => {
            let mut ok = true;
            for r in formula_table(p)? {
                ok &= r.passed();
                let verdict = if r.passed() { "pass" } else { "FAIL" };
                println!("{} p={} cases={} {}", r.name, r.p, r.cases, verdict);
                for f in &r.failures {
                    println!("  {f}");
                }
            }
            Ok(if ok { 0 } else { 1 })
        }
        Command::VerifyTheorems {
            suite,
            p,
            catalog: dir,
            budget,
        } => {
            let budget = budget.unwrap_or(env_budget);
            let report: SuiteReport = match suite {
                Suite::Formulas => {
                    let primes = p.map_or_else(|| FORMULA_PRIMES.to_vec(), |p| vec![p]);
                    catalog::verify_formulas(&primes)?
                }
                Suite::P3 | Suite::P5 => {
                    let dir = dir.unwrap_or_else(catalog::catalog_dir);
                    let entries = catalog::load_catalog(&dir)?;
                    if matches!(suite, Suite::P3) {
                        catalog::verify_p3(&entries, budget)?
                    } else {
                        catalog::verify_p5(&entries, budget)?
                    }
                }
            };
            print!("{}", report.to_text());
            Ok(report.exit_code() as u8)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
