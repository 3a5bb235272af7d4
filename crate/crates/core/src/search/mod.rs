//! Strategies for searching a space of assignments for a violation.
//!
//! A search space is `vars` variables, each ranging over all bit vectors of
//! `width` bits. Strategies implement [`SearchStrategy`] and are looked up by
//! name in a [`StrategyRegistry`]; the built-in ones are `exhaustive`,
//! `random` and `auto`.

mod exhaustive;
mod random;
mod registry;

use serde::{Deserialize, Serialize};

use crate::bits::BitSet;
use crate::error::Result;
use crate::limits::Limits;

pub use exhaustive::Exhaustive;
pub use random::{Random, GENERATOR};
pub use registry::{Auto, StrategyRegistry};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 0x5EED_2024;
/// Trial count used by sampling strategies when none is given.
pub const DEFAULT_TRIALS: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchSpace {
    /// Bits per variable.
    pub width: usize,
    /// Number of variables.
    pub vars: usize,
}

/// Which strategy to run and with what parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub strategy: String,
    pub trials: u64,
    pub seed: u64,
    pub workers: usize,
}

impl SearchConfig {
    pub fn exhaustive() -> Self {
        SearchConfig {
            strategy: Exhaustive::NAME.into(),
            trials: 0,
            seed: DEFAULT_SEED,
            workers: 1,
        }
    }

    pub fn random(trials: u64, seed: u64) -> Self {
        SearchConfig {
            strategy: Random::NAME.into(),
            trials,
            seed,
            workers: 1,
        }
    }

    /// Exhaustive when the space fits the budget, otherwise `trials` samples.
    pub fn auto(trials: u64, seed: u64) -> Self {
        SearchConfig {
            strategy: Auto::NAME.into(),
            trials,
            seed,
            workers: 1,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig::auto(DEFAULT_TRIALS, DEFAULT_SEED)
    }
}

/// Where a violating case was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Case {
    /// Index in the exhaustive enumeration order.
    Index(u64),
    /// Trial number of a seeded sample.
    Trial(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    /// Every case was visited; none violates.
    Exhausted { cases: u64 },
    /// `trials` seeded samples were drawn; none violates.
    Sampled { trials: u64, seed: u64 },
    /// A violating case.
    Found { case: Case, values: Vec<BitSet> },
}

impl SearchOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found { .. })
    }
}

/// A predicate over one assignment; `true` means the assignment violates.
pub type Violation<'a> = dyn Fn(&[BitSet]) -> bool + Sync + 'a;

pub trait SearchStrategy: Send + Sync {
    fn name(&self) -> &'static str;

    fn description(&self) -> &'static str;

    fn search(
        &self,
        space: SearchSpace,
        config: &SearchConfig,
        limits: &Limits,
        violates: &Violation<'_>,
    ) -> Result<SearchOutcome>;
}

/// Runs `config` against the built-in registry.
pub fn run(
    space: SearchSpace,
    config: &SearchConfig,
    limits: &Limits,
    violates: &Violation<'_>,
) -> Result<SearchOutcome> {
    StrategyRegistry::builtin().get(&config.strategy)?.search(space, config, limits, violates)
}

/// Splits `0..total` into at most `workers` contiguous chunks and returns the
/// least `i` for which `probe(i)` is `Some`, scanning chunks in parallel.
pub(crate) fn least_hit<T: Send>(
    total: u64,
    workers: usize,
    probe: &(dyn Fn(u64) -> Option<T> + Sync),
) -> Option<(u64, T)> {
    use std::sync::atomic::{AtomicU64, Ordering};

    let workers = (workers.max(1) as u64).min(total.max(1));
    if workers == 1 {
        return (0..total).find_map(|i| probe(i).map(|t| (i, t)));
    }
    let best = AtomicU64::new(u64::MAX);
    let chunk = total.div_ceil(workers);
    let hits: Vec<Option<(u64, T)>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let best = &best;
                scope.spawn(move || {
                    let start = w * chunk;
                    let end = (start + chunk).min(total);
                    for i in start..end {
                        if i > best.load(Ordering::Relaxed) {
                            return None;
                        }
                        if let Some(t) = probe(i) {
                            best.fetch_min(i, Ordering::Relaxed);
                            return Some((i, t));
                        }
                    }
                    None
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("search worker panicked")).collect()
    });
    hits.into_iter().flatten().min_by_key(|(i, _)| *i)
}
