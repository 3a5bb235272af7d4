//! Fully resolved command inputs. Spec files are inlined, so a report's
//! `inputs` and `mode` are enough to rerun it without the original files.

use serde::{Deserialize, Serialize};
use tra_core::search::{SearchConfig, DEFAULT_SEED, DEFAULT_TRIALS};

use crate::spec::AlgebraSpec;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Formula {
    Eq(String),
    Quasi(String),
}

impl Formula {
    pub fn text(&self) -> &str {
        match self {
            Formula::Eq(t) | Formula::Quasi(t) => t,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Invocation {
    SigmaDemo { n: usize, all_perm_pairs: bool },
    Check { spec: AlgebraSpec, formula: Formula },
    VerifyRelativization { big: AlgebraSpec, sub: AlgebraSpec },
    Decompose { n: usize, k: usize },
    Closure { spec: AlgebraSpec },
    Ultraproduct { specs: Vec<AlgebraSpec>, i0: usize },
}

impl Invocation {
    pub fn name(&self) -> &'static str {
        match self {
            Invocation::SigmaDemo { .. } => "sigma-demo",
            Invocation::Check { .. } => "check",
            Invocation::VerifyRelativization { .. } => "verify-relativization",
            Invocation::Decompose { .. } => "decompose",
            Invocation::Closure { .. } => "closure",
            Invocation::Ultraproduct { .. } => "ultraproduct",
        }
    }
}

/// Search mode: `exhaustive`, `random` or `auto` (exhaustive within budget,
/// sampled otherwise).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mode {
    pub strategy: String,
    pub trials: u64,
    pub seed: u64,
    pub workers: usize,
}

impl Default for Mode {
    fn default() -> Self {
        Mode::from_config(&SearchConfig::auto(DEFAULT_TRIALS, DEFAULT_SEED))
    }
}

impl Mode {
    pub fn from_config(c: &SearchConfig) -> Self {
        Mode {
            strategy: c.strategy.clone(),
            trials: c.trials,
            seed: c.seed,
            workers: c.workers,
        }
    }

    pub fn config(&self) -> SearchConfig {
        SearchConfig {
            strategy: self.strategy.clone(),
            trials: self.trials,
            seed: self.seed,
            workers: self.workers.max(1),
        }
    }

    pub fn describe(&self) -> String {
        match self.strategy.as_str() {
            "exhaustive" => "exhaustive".to_string(),
            s => format!("{s} ({} trials, seed {:#x})", self.trials, self.seed),
        }
    }
}
