use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bits::BitSet;
use crate::error::Result;
use crate::limits::Limits;

use super::{least_hit, Case, SearchConfig, SearchOutcome, SearchSpace, SearchStrategy, Violation};

/// Name of the generator behind sampled searches, reported with every seed.
pub const GENERATOR: &str = "ChaCha8";

/// Seeded uniform sampling. Trial `t` draws from its own ChaCha8 stream, so
/// the sample set and the reported violation do not depend on worker count.
#[derive(Debug, Default, Clone, Copy)]
pub struct Random;

impl Random {
    pub const NAME: &'static str = "random";

    /// The assignment drawn at trial `trial`.
    pub fn draw(space: SearchSpace, seed: u64, trial: u64) -> Vec<BitSet> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial);
        (0..space.vars).map(|_| BitSet::random(space.width, &mut rng)).collect()
    }
}

impl SearchStrategy for Random {
    fn name(&self) -> &'static str {
        Self::NAME
    }

    fn description(&self) -> &'static str {
        "seeded uniform samples of fair coin bits; can miss violations, never invents them"
    }

    fn search(
        &self,
        space: SearchSpace,
        config: &SearchConfig,
        _limits: &Limits,
        violates: &Violation<'_>,
    ) -> Result<SearchOutcome> {
        let probe = |t: u64| {
            let values = Random::draw(space, config.seed, t);
            violates(&values).then_some(values)
        };
        Ok(match least_hit(config.trials, config.workers, &probe) {
            Some((t, values)) => SearchOutcome::Found {
                case: Case::Trial(t),
                values,
            },
            None => SearchOutcome::Sampled {
                trials: config.trials,
                seed: config.seed,
            },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn draws_are_reproducible_and_distinct() {
        let space = SearchSpace { width: 40, vars: 2 };
        assert_eq!(Random::draw(space, 7, 3), Random::draw(space, 7, 3));
        assert_ne!(Random::draw(space, 7, 3), Random::draw(space, 7, 4));
        assert_ne!(Random::draw(space, 7, 3), Random::draw(space, 8, 3));
    }

    #[test]
    fn worker_count_does_not_change_result() {
        let space = SearchSpace { width: 10, vars: 1 };
        let pred = |v: &[BitSet]| v[0].count() >= 9;
        let limits = Limits::default();
        let one = Random.search(space, &SearchConfig::random(5000, 1), &limits, &pred).unwrap();
        let four = Random
            .search(space, &SearchConfig::random(5000, 1).with_workers(4), &limits, &pred)
            .unwrap();
        assert!(one.is_found());
        assert_eq!(one, four);
    }

    #[test]
    fn bits_look_fair() {
        let space = SearchSpace { width: 64, vars: 1 };
        let ones: usize = (0..200).map(|t| Random::draw(space, 11, t)[0].count()).sum();
        let frac = ones as f64 / (200.0 * 64.0);
        assert!((frac - 0.5).abs() < 0.02, "fraction of ones {frac}");
    }
}
