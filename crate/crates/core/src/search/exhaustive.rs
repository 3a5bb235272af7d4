use smallvec::SmallVec;

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::limits::Limits;

use super::{least_hit, Case, SearchConfig, SearchOutcome, SearchSpace, SearchStrategy, Violation};

/// Visits every assignment. The first variable is the most significant digit
/// and each variable runs through its bit vectors in increasing numeric
/// order, so the reported violation is the least one.
#[derive(Debug, Default, Clone, Copy)]
pub struct Exhaustive;

impl Exhaustive {
    pub const NAME: &'static str = "exhaustive";

    /// The assignment at position `index` of the enumeration.
    pub fn decode(space: SearchSpace, index: u64) -> Vec<BitSet> {
        Self::decode_inline(space, index).into_vec()
    }

    fn decode_inline(space: SearchSpace, index: u64) -> SmallVec<[BitSet; 4]> {
        let mask = if space.width >= 64 { u64::MAX } else { (1u64 << space.width) - 1 };
        (0..space.vars)
            .map(|j| {
                let shift = space.width * (space.vars - 1 - j);
                let value = if shift >= 64 { 0 } else { (index >> shift) & mask };
                BitSet::from_value(space.width, value as u128)
            })
            .collect()
    }
}

impl SearchStrategy for Exhaustive {
    fn name(&self) -> &'static str {
        Self::NAME
    }

    fn description(&self) -> &'static str {
        "every assignment in enumeration order; reports the least violation"
    }

    fn search(
        &self,
        space: SearchSpace,
        config: &SearchConfig,
        limits: &Limits,
        violates: &Violation<'_>,
    ) -> Result<SearchOutcome> {
        let total = limits
            .assignments_within_budget(space.width, space.vars)
            .ok_or_else(|| Error::BudgetExceeded {
                requested: format!("(2^{})^{}", space.width, space.vars),
                budget: limits.max_assignments,
            })?;
        let probe = |i: u64| {
            let values = Exhaustive::decode_inline(space, i);
            violates(&values).then(|| values.into_vec())
        };
        Ok(match least_hit(total, config.workers, &probe) {
            Some((i, values)) => SearchOutcome::Found {
                case: Case::Index(i),
                values,
            },
            None => SearchOutcome::Exhausted { cases: total },
        })
    }
}
