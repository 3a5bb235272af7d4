use std::collections::BTreeMap;

use crate::algebra::Carrier;
use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::search::{self, Case, Exhaustive, SearchConfig, SearchOutcome, SearchSpace, GENERATOR};
use crate::seqspace::Perm;

use super::ast::{Equation, PermSpec, QuasiEquation, Term};
use super::eval::{eval_reference, Assignment, CompiledTerm};

/// Largest dimension for which every `(f, g)` pair of `σ` is enumerated.
pub const MAX_ALL_PAIRS_DIM: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// No assignment violates; all were visited.
    HoldsExhaustive { assignments: u64 },
    /// No sampled assignment violates.
    HoldsSampled {
        trials: u64,
        seed: u64,
        generator: &'static str,
    },
    /// `witness` violates. For quasi-equations it satisfies every hypothesis
    /// and falsifies the conclusion.
    Fails { witness: Assignment, case: Case },
}

impl Verdict {
    pub fn holds(&self) -> bool {
        !matches!(self, Verdict::Fails { .. })
    }

    pub fn witness(&self) -> Option<&Assignment> {
        match self {
            Verdict::Fails { witness, .. } => Some(witness),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::HoldsExhaustive { .. } => "holds-exhaustive",
            Verdict::HoldsSampled { .. } => "holds-sampled",
            Verdict::Fails { .. } => "fails",
        }
    }
}

fn compile_all<'a>(
    d: &Carrier,
    terms: impl IntoIterator<Item = &'a Term>,
    vars: &[String],
) -> Result<Vec<CompiledTerm>> {
    terms.into_iter().map(|t| CompiledTerm::new(t, d, vars)).collect()
}

fn into_verdict(d: &Carrier, vars: &[String], outcome: SearchOutcome) -> Result<Verdict> {
    Ok(match outcome {
        SearchOutcome::Exhausted { cases } => Verdict::HoldsExhaustive { assignments: cases },
        SearchOutcome::Sampled { trials, seed } => Verdict::HoldsSampled {
            trials,
            seed,
            generator: GENERATOR,
        },
        SearchOutcome::Found { case, values } => {
            let witness = vars
                .iter()
                .cloned()
                .zip(values)
                .map(|(v, bits)| Ok((v, d.elem(bits)?)))
                .collect::<Result<BTreeMap<_, _>>>()?;
            Verdict::Fails { witness, case }
        }
    })
}

/// Decides `lhs = rhs` in `℘(D)` by searching assignments.
pub fn check_equation(d: &Carrier, eq: &Equation, config: &SearchConfig, limits: &Limits) -> Result<Verdict> {
    let vars: Vec<String> = eq.vars().into_iter().collect();
    let lhs = CompiledTerm::new(&eq.lhs, d, &vars)?;
    let rhs = CompiledTerm::new(&eq.rhs, d, &vars)?;
    let space = SearchSpace {
        width: d.len(),
        vars: vars.len(),
    };
    let violates = |values: &[BitSet]| lhs.eval(values) != rhs.eval(values);
    into_verdict(d, &vars, search::run(space, config, limits, &violates)?)
}

struct CompiledQuasi {
    hyps: Vec<(CompiledTerm, CompiledTerm)>,
    concl: (CompiledTerm, CompiledTerm),
}

impl CompiledQuasi {
    fn new(d: &Carrier, qe: &QuasiEquation, vars: &[String]) -> Result<Self> {
        let mut hyps = Vec::with_capacity(qe.hypotheses.len());
        for h in &qe.hypotheses {
            let mut both = compile_all(d, [&h.lhs, &h.rhs], vars)?;
            let rhs = both.pop().unwrap();
            hyps.push((both.pop().unwrap(), rhs));
        }
        let mut both = compile_all(d, [&qe.conclusion.lhs, &qe.conclusion.rhs], vars)?;
        let rhs = both.pop().unwrap();
        Ok(CompiledQuasi {
            hyps,
            concl: (both.pop().unwrap(), rhs),
        })
    }

    fn violates(&self, values: &[BitSet]) -> bool {
        self.hyps.iter().all(|(l, r)| l.eval(values) == r.eval(values))
            && self.concl.0.eval(values) != self.concl.1.eval(values)
    }
}

/// Decides a quasi-equation: every assignment satisfying all hypotheses
/// must satisfy the conclusion.
pub fn check_quasi(d: &Carrier, qe: &QuasiEquation, config: &SearchConfig, limits: &Limits) -> Result<Verdict> {
    let vars: Vec<String> = qe.vars().into_iter().collect();
    let compiled = CompiledQuasi::new(d, qe, &vars)?;
    let space = SearchSpace {
        width: d.len(),
        vars: vars.len(),
    };
    let violates = |values: &[BitSet]| compiled.violates(values);
    into_verdict(d, &vars, search::run(space, config, limits, &violates)?)
}

/// Every violating assignment, in enumeration order.
pub fn falsifiers(d: &Carrier, qe: &QuasiEquation, limits: &Limits) -> Result<Vec<Assignment>> {
    let vars: Vec<String> = qe.vars().into_iter().collect();
    let compiled = CompiledQuasi::new(d, qe, &vars)?;
    let space = SearchSpace {
        width: d.len(),
        vars: vars.len(),
    };
    let total = limits
        .assignments_within_budget(space.width, space.vars)
        .ok_or_else(|| Error::BudgetExceeded {
            requested: format!("(2^{})^{}", space.width, space.vars),
            budget: limits.max_assignments,
        })?;
    let mut out = Vec::new();
    for i in 0..total {
        let values = Exhaustive::decode(space, i);
        if compiled.violates(&values) {
            let assignment = vars
                .iter()
                .cloned()
                .zip(values)
                .map(|(v, bits)| Ok((v, d.elem(bits)?)))
                .collect::<Result<_>>()?;
            out.push(assignment);
        }
    }
    Ok(out)
}

/// Re-evaluates `witness` through the reference evaluator and reports
/// whether it really violates `qe`.
pub fn revalidate(d: &Carrier, qe: &QuasiEquation, witness: &Assignment) -> Result<bool> {
    for h in &qe.hypotheses {
        if eval_reference(&h.lhs, d, witness)? != eval_reference(&h.rhs, d, witness)? {
            return Ok(false);
        }
    }
    let c = &qe.conclusion;
    Ok(eval_reference(&c.lhs, d, witness)? != eval_reference(&c.rhs, d, witness)?)
}

/// `σ(f, g)`: `s_f x ∨ s_g x = ¬x ⟹ 0 = 1`.
pub fn sigma(n: usize, f: &Perm, g: &Perm) -> Result<QuasiEquation> {
    for p in [f, g] {
        if p.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.dim(),
            });
        }
    }
    let x = || Term::var("x");
    let hypothesis = Equation::new(
        Term::or(
            Term::subst(PermSpec::from_perm(f), x()),
            Term::subst(PermSpec::from_perm(g), x()),
        ),
        Term::not(x()),
    );
    Ok(QuasiEquation::new(vec![hypothesis], Equation::new(Term::Zero, Term::One)))
}

/// Every `(f, g)` pair of permutations of `n`, for `n ≤ 5`.
pub fn sigma_pairs(n: usize) -> Result<Vec<(Perm, Perm)>> {
    if n > MAX_ALL_PAIRS_DIM {
        return Err(Error::Invalid(format!(
            "all permutation pairs are only enumerated for n ≤ {MAX_ALL_PAIRS_DIM}"
        )));
    }
    let perms = Perm::all(n);
    Ok(perms
        .iter()
        .flat_map(|f| perms.iter().map(move |g| (f.clone(), g.clone())))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqspace::Seq;
    use crate::termlang::{parse_equation, parse_quasi};

    fn unit_carrier(n: usize) -> Carrier {
        Carrier::from_seqs(n, 2, (0..n).map(|i| Seq::unit(n, i).unwrap())).unwrap()
    }

    #[test]
    fn equation_examples() {
        let d = Carrier::full(2, 2).unwrap();
        let limits = Limits::default();
        let ex = SearchConfig::exhaustive();
        let inv = parse_equation("s[0,1] s[0,1] x = x").unwrap();
        assert_eq!(check_equation(&d, &inv, &ex, &limits).unwrap(), Verdict::HoldsExhaustive { assignments: 16 });

        let bad = parse_equation("x = ~x").unwrap();
        let v = check_equation(&d, &bad, &ex, &limits).unwrap();
        assert_eq!(v.witness().unwrap()["x"], d.zero());

        let empty = Carrier::full(2, 0).unwrap();
        assert!(check_equation(&empty, &bad, &ex, &limits).unwrap().holds());
    }

    #[test]
    fn quasi_examples() {
        let limits = Limits::default();
        let ex = SearchConfig::exhaustive();
        let swap = Perm::from_images(vec![1, 0]).unwrap();
        let s2 = sigma(2, &swap, &swap).unwrap();

        let full = Carrier::full(2, 2).unwrap();
        assert!(check_quasi(&full, &s2, &ex, &limits).unwrap().holds());

        let g = unit_carrier(2);
        let v = check_quasi(&g, &s2, &ex, &limits).unwrap();
        let x = &v.witness().unwrap()["x"];
        assert_eq!(g.seqs_of(x).unwrap(), vec![Seq::unit(2, 1).unwrap()]);
        assert!(revalidate(&g, &s2, v.witness().unwrap()).unwrap());

        let vacuous = parse_quasi("0 = 1 => x = ~x").unwrap();
        assert!(check_quasi(&full, &vacuous, &ex, &limits).unwrap().holds());
    }

    #[test]
    fn sigma_printing() {
        let s3 = sigma(3, &Perm::cycle_up(3), &Perm::cycle_down(3)).unwrap();
        assert_eq!(s3.to_string(), "s{1,2,0} x | s{2,0,1} x = ~x => 0 = 1");
        let s2 = sigma(2, &Perm::cycle_up(2), &Perm::cycle_down(2)).unwrap();
        assert_eq!(s2.to_string(), "s{1,0} x | s{1,0} x = ~x => 0 = 1");
        let id = sigma(4, &Perm::identity(4), &Perm::identity(4)).unwrap();
        assert_eq!(id.hypotheses[0].to_string(), "s{0,1,2,3} x | s{0,1,2,3} x = ~x");
        assert!(sigma(3, &Perm::identity(2), &Perm::identity(3)).is_err());
        assert_eq!(parse_quasi(&s3.to_string()).unwrap(), s3);
    }

    #[test]
    fn budget_is_enforced() {
        let d = Carrier::full(2, 3).unwrap();
        let limits = Limits {
            max_assignments: 100,
            ..Limits::default()
        };
        let eq = parse_equation("x = x").unwrap();
        assert!(matches!(
            check_equation(&d, &eq, &SearchConfig::exhaustive(), &limits),
            Err(Error::BudgetExceeded { .. })
        ));
        let sampled = check_equation(&d, &eq, &SearchConfig::random(50, 9), &limits).unwrap();
        assert_eq!(sampled, Verdict::HoldsSampled { trials: 50, seed: 9, generator: GENERATOR });
    }

    #[test]
    fn equation_and_bare_quasi_agree() {
        let d = Carrier::from_seqs(2, 3, [Seq::new(vec![0, 1]), Seq::new(vec![1, 0]), Seq::new(vec![2, 2]), Seq::new(vec![0, 2])]).unwrap();
        let limits = Limits::default();
        let ex = SearchConfig::exhaustive();
        for text in ["s[0,1] s[0,1] x = x", "s[0,1] ~x = ~s[0,1] x", "x & y = y & x", "s[0,1] (x | y) = s[0,1] x | s[0,1] y"] {
            let eq = parse_equation(text).unwrap();
            let a = check_equation(&d, &eq, &ex, &limits).unwrap();
            let b = check_quasi(&d, &QuasiEquation::from(eq), &ex, &limits).unwrap();
            assert_eq!(a, b, "{text}");
        }
    }

    #[test]
    fn pair_enumeration() {
        assert_eq!(sigma_pairs(2).unwrap().len(), 4);
        assert_eq!(sigma_pairs(3).unwrap().len(), 36);
        assert!(sigma_pairs(6).is_err());
    }
}
