use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::limits::Limits;

use super::{Exhaustive, Random, SearchConfig, SearchOutcome, SearchSpace, SearchStrategy, Violation};

/// Exhaustive when the space fits the assignment budget, sampled otherwise.
#[derive(Debug, Default, Clone, Copy)]
pub struct Auto;

impl Auto {
    pub const NAME: &'static str = "auto";
}

impl SearchStrategy for Auto {
    fn name(&self) -> &'static str {
        Self::NAME
    }

    fn description(&self) -> &'static str {
        "exhaustive within the budget, otherwise seeded sampling"
    }

    fn search(
        &self,
        space: SearchSpace,
        config: &SearchConfig,
        limits: &Limits,
        violates: &Violation<'_>,
    ) -> Result<SearchOutcome> {
        if limits.assignments_within_budget(space.width, space.vars).is_some() {
            Exhaustive.search(space, config, limits, violates)
        } else {
            Random.search(space, config, limits, violates)
        }
    }
}

/// Search strategies keyed by name.
pub struct StrategyRegistry {
    entries: BTreeMap<&'static str, Box<dyn SearchStrategy>>,
}

impl StrategyRegistry {
    pub fn empty() -> Self {
        StrategyRegistry {
            entries: BTreeMap::new(),
        }
    }

    pub fn with_builtin() -> Self {
        let mut registry = Self::empty();
        registry.register(Exhaustive);
        registry.register(Random);
        registry.register(Auto);
        registry
    }

    /// The shared registry of built-in strategies.
    pub fn builtin() -> &'static StrategyRegistry {
        static BUILTIN: OnceLock<StrategyRegistry> = OnceLock::new();
        BUILTIN.get_or_init(Self::with_builtin)
    }

    /// Adds a strategy, replacing any previous one of the same name.
    pub fn register<S: SearchStrategy + 'static>(&mut self, strategy: S) {
        self.entries.insert(strategy.name(), Box::new(strategy));
    }

    pub fn get(&self, name: &str) -> Result<&dyn SearchStrategy> {
        self.entries
            .get(name)
            .map(|s| s.as_ref())
            .ok_or_else(|| Error::UnknownStrategy(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.keys().copied()
    }

    pub fn describe(&self) -> Vec<(&'static str, &'static str)> {
        self.entries.values().map(|s| (s.name(), s.description())).collect()
    }

    pub fn run(
        &self,
        space: SearchSpace,
        config: &SearchConfig,
        limits: &Limits,
        violates: &Violation<'_>,
    ) -> Result<SearchOutcome> {
        self.get(&config.strategy)?.search(space, config, limits, violates)
    }
}

impl Default for StrategyRegistry {
    fn default() -> Self {
        Self::with_builtin()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::BitSet;

    struct Never;

    impl SearchStrategy for Never {
        fn name(&self) -> &'static str {
            "never"
        }
        fn description(&self) -> &'static str {
            "claims everything holds after zero trials"
        }
        fn search(&self, _: SearchSpace, c: &SearchConfig, _: &Limits, _: &Violation<'_>) -> Result<SearchOutcome> {
            Ok(SearchOutcome::Sampled { trials: 0, seed: c.seed })
        }
    }

    #[test]
    fn lookup_by_name() {
        let reg = StrategyRegistry::builtin();
        assert_eq!(reg.names().collect::<Vec<_>>(), vec!["auto", "exhaustive", "random"]);
        assert!(matches!(reg.get("bogus"), Err(Error::UnknownStrategy(_))));
    }

    #[test]
    fn custom_strategy_is_selectable() {
        let mut reg = StrategyRegistry::with_builtin();
        reg.register(Never);
        let cfg = SearchConfig {
            strategy: "never".into(),
            ..SearchConfig::default()
        };
        let out = reg.run(SearchSpace { width: 3, vars: 1 }, &cfg, &Limits::default(), &|_| true).unwrap();
        assert!(!out.is_found());
    }

    #[test]
    fn auto_switches_on_budget() {
        let limits = Limits {
            max_assignments: 16,
            ..Limits::default()
        };
        let cfg = SearchConfig::auto(10, 3);
        let small = Auto.search(SearchSpace { width: 4, vars: 1 }, &cfg, &limits, &|_: &[BitSet]| false).unwrap();
        assert_eq!(small, SearchOutcome::Exhausted { cases: 16 });
        let big = Auto.search(SearchSpace { width: 5, vars: 1 }, &cfg, &limits, &|_: &[BitSet]| false).unwrap();
        assert_eq!(big, SearchOutcome::Sampled { trials: 10, seed: 3 });
    }
}
