//! Executable verifiers for the structural results about transposition
//! algebras, each producing a report that records what was checked and how.

mod decompose;
mod relativization;
mod sigma;
mod ultraproduct;

use serde::Serialize;

use crate::search::SearchOutcome;

pub use decompose::{decompose_small, AtomHom, Decomposition, DecompositionRecord, SeparationReport};
pub use relativization::{verify_relativization, HomReport, HomViolation};
pub use sigma::{
    build_counterexample, constant_map_certificate, sigma_holds_small, verify_h_escape, Certificate,
    Counterexample, CounterexampleChecks, HEscapeReport, PairMode, PairVerdict, SigmaSmallReport,
};
pub use ultraproduct::{principal_ultraproduct, psi_image, PrincipalUltrafilter, UltraproductReport};

/// How thoroughly a space of cases was covered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum Coverage {
    Exhaustive { cases: u64 },
    Sampled { trials: u64, seed: u64 },
}

impl Coverage {
    pub fn cases(&self) -> u64 {
        match self {
            Coverage::Exhaustive { cases } => *cases,
            Coverage::Sampled { trials, .. } => *trials,
        }
    }

    pub fn is_exhaustive(&self) -> bool {
        matches!(self, Coverage::Exhaustive { .. })
    }

    /// The coverage of a search that found nothing, or `None` if it found a
    /// violation.
    pub(crate) fn of(outcome: &SearchOutcome) -> Option<Coverage> {
        match outcome {
            SearchOutcome::Exhausted { cases } => Some(Coverage::Exhaustive { cases: *cases }),
            SearchOutcome::Sampled { trials, seed } => Some(Coverage::Sampled {
                trials: *trials,
                seed: *seed,
            }),
            SearchOutcome::Found { .. } => None,
        }
    }
}
