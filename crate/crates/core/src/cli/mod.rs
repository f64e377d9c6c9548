//! The `diagonal-lab` command line: one subcommand per experiment, each
//! printing a JSON [`ReportDocument`].
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 on a
//! totality violation, 3 when the acceptor scan hits its ceiling, 4 when a
//! brute-force bound is infeasible and 64 for usage or input errors.

mod commands;
mod report;
pub mod sampling;

pub use commands::{
    cmd_diagonal, cmd_enumerate, cmd_kleene, cmd_run, cmd_sat, cmd_verify_axioms, truth_table_sat,
    DiagonalConfig, KleeneConfig, KleeneTarget, SatInput, EXIT_CHECK_FAILED, EXIT_INFEASIBLE_BOUND,
    EXIT_SCAN_CEILING, EXIT_TOTALITY_VIOLATION, EXIT_USAGE,
};
pub use report::{ReportDocument, Summary};

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_bigint::BigUint;

use crate::clocks::{family_by_name, GrowthFamily, FAMILY_NAMES};
use crate::diagonal::{read_stream, Budgets};
use crate::verify::{verifier_by_name, Verifier, VERIFIER_NAMES};
use crate::words::{parse_natural, BinaryWord, CnfFormula};

fn natural(text: &str) -> Result<BigUint, String> {
    parse_natural(text).ok_or_else(|| format!("{text:?} is not a natural number (digits or 2^k)"))
}

#[derive(Debug, Parser)]
#[command(
    name = "diagonal-lab",
    version,
    about = "Clocked machines, verifiers and diagonalization experiments"
)]
pub struct Cli {
    /// Seed for sampled checks.
    #[arg(long, global = true, env = "DIAGONAL_LAB_SEED", default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the first clocked-machine codes with their (i, n) splits.
    Enumerate {
        #[arg(long, default_value_t = 10)]
        count: u64,
        #[arg(long, default_value = "polynomial", value_parser = FAMILY_NAMES)]
        family: String,
    },
    /// Diagonalize against a stream of total-machine indices.
    Diagonal {
        /// A file with one index per line, `-` for stdin, or `builtin:constants:N`.
        #[arg(long, default_value = "builtin:constants:10")]
        stream: String,
        #[arg(long, default_value = "parity", value_parser = VERIFIER_NAMES)]
        verifier: String,
        #[arg(long, default_value = "polynomial", value_parser = FAMILY_NAMES)]
        family: String,
        /// Largest x probed by the f_P searches.
        #[arg(long, default_value_t = Budgets::default().search_budget)]
        budget: u64,
        /// Steps allowed for each stream machine on its diagonal input.
        #[arg(long, default_value_t = Budgets::default().meta_steps)]
        meta_budget: u64,
        /// Positions scanned for an accepting machine.
        #[arg(long, default_value_t = Budgets::default().scan_ceiling)]
        scan_ceiling: u64,
        /// Steps any single clocked run may simulate directly.
        #[arg(long, default_value_t = Budgets::default().simulation_ceiling)]
        simulation_ceiling: u64,
        /// Random (m, x) pairs for the equivalence check.
        #[arg(long, default_value_t = 100)]
        equivalence_samples: u64,
        /// Also write the per-step witness table as CSV.
        #[arg(long)]
        witness_csv: Option<PathBuf>,
    },
    /// Check the verifier's boundary and richness clauses.
    VerifyAxioms {
        #[arg(long, default_value = "parity", value_parser = VERIFIER_NAMES)]
        verifier: String,
        #[arg(long, default_value_t = 1024)]
        xmax: u64,
        #[arg(long, default_value_t = 1024)]
        smax: u64,
    },
    /// SAT membership against a truth-table oracle.
    Sat {
        /// DIMACS file, or `-` for stdin.
        #[arg(long, group = "input")]
        formula: Option<String>,
        /// A binary word, decoded as a CNF formula.
        #[arg(long, group = "input")]
        word: Option<BinaryWord>,
        /// Number of random formulas.
        #[arg(long, group = "input")]
        random: Option<u64>,
        /// Variables per random formula.
        #[arg(long, default_value_t = 8)]
        vars: u32,
    },
    /// Kleene normal form against direct simulation.
    Kleene {
        #[command(flatten)]
        target: KleeneArgs,
    },
    /// The totalized search U(μy (T(e,x,y) ∨ Q(y))) against direct simulation.
    Unsound {
        #[command(flatten)]
        target: KleeneArgs,
        /// Q holds exactly at this point; Q is false everywhere without it.
        #[arg(long, value_parser = natural)]
        q_true_at: Option<BigUint>,
    },
    /// One clocked run P_p(x).
    Run {
        #[arg(long, value_parser = natural)]
        p: BigUint,
        #[arg(long, default_value = "")]
        x: BinaryWord,
        #[arg(long, default_value = "polynomial", value_parser = FAMILY_NAMES)]
        family: String,
        #[arg(long, default_value_t = Budgets::default().simulation_ceiling)]
        simulation_ceiling: u64,
    },
}

#[derive(Debug, clap::Args)]
pub struct KleeneArgs {
    /// Machine index; without it, random halting pairs are sampled.
    #[arg(long, value_parser = natural, requires = "x")]
    pub e: Option<BigUint>,
    /// Input as a canonical word index.
    #[arg(long, value_parser = natural, requires = "e")]
    pub x: Option<BigUint>,
    /// Largest history code searched.
    #[arg(long, value_parser = natural, default_value = "2^4194304")]
    pub budget: BigUint,
    /// Steps of the reference simulation.
    #[arg(long, default_value_t = 10_000)]
    pub steps: u64,
    #[arg(long, default_value_t = 200)]
    pub samples: u64,
    /// Sampled pairs halt within this many steps.
    #[arg(long, default_value_t = 1000)]
    pub halting_within: u64,
}

impl KleeneArgs {
    fn split(&self) -> (KleeneTarget, KleeneConfig) {
        let target = match (&self.e, &self.x) {
            (Some(e), Some(x)) => KleeneTarget::Single {
                e: e.clone(),
                x: x.clone(),
            },
            _ => KleeneTarget::Sampled {
                count: self.samples,
                halting_within: self.halting_within,
            },
        };
        let config = KleeneConfig {
            budget: self.budget.clone(),
            steps: self.steps,
        };
        (target, config)
    }
}

/// What the binary prints and how it exits.
pub struct Outcome {
    pub report: ReportDocument,
    pub csv: Option<(PathBuf, String)>,
}

fn verifier(name: &str) -> Box<dyn Verifier> {
    verifier_by_name(name).expect("clap restricts verifier names")
}

fn family(name: &str) -> Box<dyn GrowthFamily> {
    family_by_name(name).expect("clap restricts family names")
}

fn read_input(source: &str) -> std::io::Result<String> {
    if source == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(source)
    }
}

pub fn execute(cli: &Cli) -> Outcome {
    let seed = cli.seed;
    let plain = |report| Outcome { report, csv: None };
    match &cli.command {
        Command::Enumerate { count, family: f } => plain(cmd_enumerate(*count, &*family(f), seed)),
        Command::Diagonal {
            stream,
            verifier: v,
            family: f,
            budget,
            meta_budget,
            scan_ceiling,
            simulation_ceiling,
            equivalence_samples,
            witness_csv,
        } => {
            let indices = match read_stream(stream) {
                Ok(indices) => indices,
                Err(err) => {
                    return plain(
                        ReportDocument::new("diagonal", seed)
                            .with_config("stream", stream.as_str())
                            .fail_with(EXIT_USAGE, err),
                    )
                }
            };
            let config = DiagonalConfig {
                stream: stream.clone(),
                budgets: Budgets {
                    meta_steps: *meta_budget,
                    scan_ceiling: *scan_ceiling,
                    search_budget: *budget,
                    simulation_ceiling: *simulation_ceiling,
                },
                equivalence_samples: *equivalence_samples,
            };
            let (report, csv) = cmd_diagonal(&indices, &config, &*verifier(v), &*family(f), seed);
            Outcome {
                report,
                csv: witness_csv.clone().zip(csv),
            }
        }
        Command::VerifyAxioms {
            verifier: v,
            xmax,
            smax,
        } => plain(cmd_verify_axioms(&*verifier(v), *xmax, *smax, seed)),
        Command::Sat {
            formula,
            word,
            random,
            vars,
        } => {
            let input = if let Some(source) = formula {
                match read_input(source)
                    .map_err(|e| e.to_string())
                    .and_then(|text| CnfFormula::from_dimacs(&text).map_err(|e| e.to_string()))
                {
                    Ok(f) => SatInput::Formula(f),
                    Err(err) => {
                        return plain(
                            ReportDocument::new("sat", seed)
                                .with_config("formula", source.as_str())
                                .fail_with(EXIT_USAGE, err),
                        )
                    }
                }
            } else if let Some(w) = word {
                SatInput::Word(w.clone())
            } else {
                SatInput::Random {
                    count: random.unwrap_or(200),
                    vars: *vars,
                }
            };
            plain(cmd_sat(&input, seed))
        }
        Command::Kleene { target } => {
            let (target, config) = target.split();
            plain(cmd_kleene("kleene", &target, None, &config, seed))
        }
        Command::Unsound { target, q_true_at } => {
            let (target, config) = target.split();
            plain(cmd_kleene(
                "unsound",
                &target,
                q_true_at.as_ref(),
                &config,
                seed,
            ))
        }
        Command::Run {
            p,
            x,
            family: f,
            simulation_ceiling,
        } => plain(cmd_run(p, x, &*family(f), *simulation_ceiling, seed)),
    }
}
