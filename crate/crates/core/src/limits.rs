//! Size caps and enumeration budgets.

use crate::error::{Error, Result};

/// Environment variable that overrides [`Limits::max_assignments`].
pub const BUDGET_ENV: &str = "TRA_BUDGET";

pub const DEFAULT_MAX_CARRIER: u64 = 1 << 20;
pub const DEFAULT_MAX_SUBALGEBRA: usize = 1 << 16;
pub const DEFAULT_MAX_ASSIGNMENTS: u64 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest number of members a carrier may have.
    pub max_carrier: u64,
    /// Largest number of elements a generated subalgebra may have.
    pub max_subalgebra: usize,
    /// Largest number of cases an exhaustive enumeration may visit.
    pub max_assignments: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_carrier: DEFAULT_MAX_CARRIER,
            max_subalgebra: DEFAULT_MAX_SUBALGEBRA,
            max_assignments: DEFAULT_MAX_ASSIGNMENTS,
        }
    }
}

impl Limits {
    /// Defaults, with the assignment budget taken from `TRA_BUDGET` when set.
    pub fn from_env() -> Result<Self> {
        let mut limits = Limits::default();
        if let Ok(raw) = std::env::var(BUDGET_ENV) {
            limits.max_assignments = raw.trim().parse().map_err(|_| {
                Error::Invalid(format!("{BUDGET_ENV} must be a non-negative integer, got `{raw}`"))
            })?;
        }
        Ok(limits)
    }

    /// `2^bits` raised to `vars`, if it fits under the assignment budget.
    pub fn assignments_within_budget(&self, bits: usize, vars: usize) -> Option<u64> {
        let per_var = if bits < 64 { 1u64 << bits } else { return None };
        let total = per_var.checked_pow(u32::try_from(vars).ok()?)?;
        (total <= self.max_assignments).then_some(total)
    }
}
