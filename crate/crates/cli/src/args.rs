use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand};
use tra_core::search::{SearchConfig, DEFAULT_SEED, DEFAULT_TRIALS};

use crate::invocation::{Formula, Invocation, Mode};
use crate::spec::AlgebraSpec;
use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "tra", version, about = "Finite transposition set algebras: checkers and verifiers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub mode: ModeArgs,
}

#[derive(Debug, Args)]
pub struct ModeArgs {
    /// Enumerate every case; fail if the space exceeds the budget.
    #[arg(long, global = true, conflicts_with = "random")]
    pub exhaustive: bool,
    /// Draw TRIALS seeded random cases instead of enumerating.
    #[arg(long, global = true, value_name = "TRIALS")]
    pub random: Option<u64>,
    /// Seed for random cases (decimal or 0x-prefixed hex).
    #[arg(long, global = true, value_name = "S", value_parser = parse_seed)]
    pub seed: Option<u64>,
    /// Worker threads for searches; results do not depend on it.
    #[arg(long, global = true, value_name = "N", value_parser = clap::value_parser!(u64).range(1..=1024))]
    pub workers: Option<u64>,
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| e.to_string())
}

impl ModeArgs {
    pub fn mode(&self) -> Mode {
        let seed = self.seed.unwrap_or(DEFAULT_SEED);
        let config = if self.exhaustive {
            SearchConfig {
                seed,
                ..SearchConfig::exhaustive()
            }
        } else if let Some(trials) = self.random {
            SearchConfig::random(trials, seed)
        } else {
            SearchConfig::auto(DEFAULT_TRIALS, seed)
        };
        let workers = self.workers.unwrap_or(1) as usize;
        Mode::from_config(&config.with_workers(workers))
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reproduce the σ counterexample and its consequences.
    SigmaDemo {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..=6))]
        n: u64,
        /// Check σ for every pair of permutations, not just the two cycles (n ≤ 5).
        #[arg(long)]
        all_perm_pairs: bool,
    },
    /// Check an equation or quasi-equation in ℘(D).
    #[command(group(ArgGroup::new("formula").required(true).args(["eq", "quasi"])))]
    Check {
        #[arg(long, value_name = "FILE")]
        spec: PathBuf,
        #[arg(long, value_name = "EQUATION")]
        eq: Option<String>,
        #[arg(long, value_name = "QUASI_EQUATION")]
        quasi: Option<String>,
    },
    /// Verify that x ↦ x ∩ G is a homomorphism ℘(E) → ℘(G).
    VerifyRelativization {
        #[arg(long, value_name = "FILE")]
        big: PathBuf,
        #[arg(long, value_name = "FILE")]
        sub: PathBuf,
    },
    /// Decompose ℘(^n k) through the atom-indexed homomorphisms.
    Decompose {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Close a carrier under all transpositions.
    Closure {
        #[arg(long, value_name = "FILE")]
        spec: PathBuf,
    },
    /// Check ψ for a principal ultrafilter over the given factors.
    Ultraproduct {
        /// Factor spec files (full carriers), in index order.
        #[arg(long, value_name = "FILE", required = true, num_args = 1..)]
        spec: Vec<PathBuf>,
        /// Index generating the principal ultrafilter.
        #[arg(long, default_value_t = 0)]
        i0: usize,
    },
}

impl Command {
    /// Loads spec files and resolves the command into an [`Invocation`].
    pub fn resolve(&self) -> Result<Invocation, CliError> {
        Ok(match self {
            Command::SigmaDemo { n, all_perm_pairs } => Invocation::SigmaDemo {
                n: *n as usize,
                all_perm_pairs: *all_perm_pairs,
            },
            Command::Check { spec, eq, quasi } => {
                let formula = match (eq, quasi) {
                    (Some(e), None) => Formula::Eq(e.clone()),
                    (None, Some(q)) => Formula::Quasi(q.clone()),
                    _ => return Err(CliError::Usage("give exactly one of --eq and --quasi".into())),
                };
                Invocation::Check {
                    spec: AlgebraSpec::load(spec)?,
                    formula,
                }
            }
            Command::VerifyRelativization { big, sub } => Invocation::VerifyRelativization {
                big: AlgebraSpec::load(big)?,
                sub: AlgebraSpec::load(sub)?,
            },
            Command::Decompose { n, k } => Invocation::Decompose { n: *n, k: *k },
            Command::Closure { spec } => Invocation::Closure {
                spec: AlgebraSpec::load(spec)?,
            },
            Command::Ultraproduct { spec, i0 } => Invocation::Ultraproduct {
                specs: spec.iter().map(|p| AlgebraSpec::load(p)).collect::<Result<_, _>>()?,
                i0: *i0,
            },
        })
    }
}
