use std::sync::Arc;

use crate::algebra::{BaseRenaming, Carrier, Elem, Rebase, Relativization};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::search::SearchConfig;
use crate::seqspace::{Perm, Seq};
use crate::termlang::{check_quasi, falsifiers, revalidate, sigma, sigma_pairs, Assignment, QuasiEquation, Verdict};

use super::relativization::{verify_relativization, HomReport};

/// Which `(f, g)` instances of `σ` to check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairMode {
    All,
    Given(Perm, Perm),
}

impl PairMode {
    /// The two n-cycles `(0 1 … n-1)` and `(n-1 … 1 0)`.
    pub fn cycles(n: usize) -> Self {
        PairMode::Given(Perm::cycle_up(n), Perm::cycle_down(n))
    }

    fn pairs(&self, n: usize) -> Result<Vec<(Perm, Perm)>> {
        match self {
            PairMode::All => sigma_pairs(n),
            PairMode::Given(f, g) => {
                for p in [f, g] {
                    if p.dim() != n {
                        return Err(Error::DimensionMismatch {
                            expected: n,
                            found: p.dim(),
                        });
                    }
                }
                Ok(vec![(f.clone(), g.clone())])
            }
        }
    }
}

/// The constant-map argument for `σ`: a constant member `q` is fixed by every
/// permutation, so `q ∈ S_f X ∪ S_g X ⇔ q ∈ X`, and the hypothesis
/// `S_f X ∪ S_g X = ∼X` can never hold. On an empty carrier `0 = 1` holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub carrier_empty: bool,
    /// Constant members of the carrier.
    pub constants: Vec<Seq>,
    /// Every constant member is fixed by every permutation of every pair.
    pub fixed_by_all: bool,
}

impl Certificate {
    pub fn holds(&self) -> bool {
        self.carrier_empty || (!self.constants.is_empty() && self.fixed_by_all)
    }
}

pub fn constant_map_certificate(d: &Carrier, pairs: &[(Perm, Perm)]) -> Result<Certificate> {
    let constants: Vec<Seq> = d.seqs().filter(Seq::is_constant).collect();
    let mut fixed_by_all = true;
    for q in &constants {
        for (f, g) in pairs {
            fixed_by_all &= q.compose_right(f)? == *q && q.compose_right(g)? == *q;
        }
    }
    Ok(Certificate {
        carrier_empty: d.is_empty(),
        constants,
        fixed_by_all,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairVerdict {
    pub f: Perm,
    pub g: Perm,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaSmallReport {
    pub n: usize,
    pub k: usize,
    pub pairs: usize,
    pub certificate: Certificate,
    /// Brute-force verdicts per pair; `None` when the budget ruled it out.
    pub brute_force: Option<Vec<PairVerdict>>,
}

impl SigmaSmallReport {
    pub fn brute_force_holds(&self) -> Option<bool> {
        self.brute_force
            .as_ref()
            .map(|vs| vs.iter().all(|p| p.verdict.holds()))
    }

    /// The certificate and the brute-force search agree (or only the
    /// certificate ran).
    pub fn agree(&self) -> bool {
        self.brute_force_holds().is_none_or(|b| b == self.certificate.holds())
    }

    pub fn holds(&self) -> bool {
        self.certificate.holds() && self.brute_force_holds() != Some(false)
    }

    pub fn first_failure(&self) -> Option<&PairVerdict> {
        self.brute_force.as_ref()?.iter().find(|p| !p.verdict.holds())
    }
}

/// Checks `σ` in `A_nk = ℘(^n k)` by the constant-map certificate and,
/// budget permitting, by searching every `X`.
pub fn sigma_holds_small(
    n: usize,
    k: usize,
    mode: &PairMode,
    config: &SearchConfig,
    limits: &Limits,
) -> Result<SigmaSmallReport> {
    let d = Carrier::full_capped(n, k, limits.max_carrier)?;
    let pairs = mode.pairs(n)?;
    let certificate = constant_map_certificate(&d, &pairs)?;
    let mut verdicts = Vec::with_capacity(pairs.len());
    let mut brute_ok = true;
    for (f, g) in &pairs {
        match check_quasi(&d, &sigma(n, f, g)?, config, limits) {
            Ok(verdict) => verdicts.push(PairVerdict {
                f: f.clone(),
                g: g.clone(),
                verdict,
            }),
            Err(Error::BudgetExceeded { .. }) => {
                brute_ok = false;
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(SigmaSmallReport {
        n,
        k,
        pairs: pairs.len(),
        certificate,
        brute_force: brute_ok.then_some(verdicts),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterexampleChecks {
    pub g_permutable: bool,
    pub union_is_complement: bool,
    pub complement_is_evens: bool,
    pub nondegenerate: bool,
    pub verdict_fails: bool,
    pub witness_revalidates: bool,
    pub named_witness_violates: bool,
    pub x_among_falsifiers: bool,
}

impl CounterexampleChecks {
    pub fn all(&self) -> bool {
        self.g_permutable
            && self.union_is_complement
            && self.complement_is_evens
            && self.nondegenerate
            && self.verdict_fails
            && self.witness_revalidates
            && self.named_witness_violates
            && self.x_among_falsifiers
    }
}

/// The permutable unit-vector carrier `G`, the odd-indexed `X` and the two
/// n-cycles, together with every check on them.
#[derive(Debug, Clone)]
pub struct Counterexample {
    pub n: usize,
    pub g_carrier: Arc<Carrier>,
    pub x: Elem,
    pub f: Perm,
    pub g: Perm,
    pub subst_f: Elem,
    pub subst_g: Elem,
    pub union: Elem,
    pub complement: Elem,
    pub sigma: QuasiEquation,
    pub verdict: Verdict,
    pub falsifiers: usize,
    pub checks: CounterexampleChecks,
}

impl Counterexample {
    pub fn passed(&self) -> bool {
        self.checks.all()
    }
}

/// `{e_i : i < n}` over base 2.
pub fn unit_vector_carrier(n: usize) -> Result<Carrier> {
    let units = (0..n).map(|i| Seq::unit(n, i)).collect::<Result<Vec<_>>>()?;
    Carrier::from_seqs(n, 2, units)
}

pub fn build_counterexample(n: usize, limits: &Limits) -> Result<Counterexample> {
    if n < 2 {
        return Err(Error::DimensionTooSmall { n, min: 2 });
    }
    let g_carrier = Arc::new(unit_vector_carrier(n)?);
    let d = &*g_carrier;
    let units = |pred: fn(usize) -> bool| -> Result<Elem> {
        let seqs = (0..n).filter(|&i| pred(i)).map(|i| Seq::unit(n, i)).collect::<Result<Vec<_>>>()?;
        d.elem_from_seqs(&seqs)
    };
    let x = units(|i| i % 2 == 1)?;
    let evens = units(|i| i % 2 == 0)?;
    let (f, g) = (Perm::cycle_up(n), Perm::cycle_down(n));

    let subst_f = d.subst(&f, &x)?;
    let subst_g = d.subst(&g, &x)?;
    let union = subst_f.join(&subst_g)?;
    let complement = x.complement();

    let sigma = sigma(n, &f, &g)?;
    let verdict = check_quasi(d, &sigma, &SearchConfig::exhaustive(), limits)?;
    let all_falsifiers = falsifiers(d, &sigma, limits)?;
    let named: Assignment = [("x".to_string(), x.clone())].into();

    let checks = CounterexampleChecks {
        g_permutable: d.is_permutable(),
        union_is_complement: union == complement,
        complement_is_evens: complement == evens,
        nondegenerate: !d.is_empty() && d.zero() != d.one(),
        verdict_fails: !verdict.holds(),
        witness_revalidates: match verdict.witness() {
            Some(w) => revalidate(d, &sigma, w)?,
            None => false,
        },
        named_witness_violates: revalidate(d, &sigma, &named)?,
        x_among_falsifiers: all_falsifiers.contains(&named),
    };
    Ok(Counterexample {
        n,
        g_carrier,
        x,
        f,
        g,
        subst_f,
        subst_g,
        union,
        complement,
        sigma,
        verdict,
        falsifiers: all_falsifiers.len(),
        checks,
    })
}

/// `℘(G)` as a homomorphic image of `℘(^n n)`: `σ` holds upstairs and fails
/// downstairs, so `H` does not preserve `σ`.
#[derive(Debug, Clone)]
pub struct HEscapeReport {
    pub n: usize,
    pub big_len: usize,
    pub sub_len: usize,
    pub renaming: BaseRenaming,
    pub g_permutable: bool,
    pub homomorphism: HomReport,
    pub surjective: bool,
    pub sigma_big: SigmaSmallReport,
    pub sigma_sub: Verdict,
}

impl HEscapeReport {
    pub fn sigma_holds_big(&self) -> bool {
        self.sigma_big.holds() && self.sigma_big.agree()
    }

    /// `σ` is not preserved by homomorphic images, so the class is not
    /// closed under `H`.
    pub fn variety_closure_fails(&self) -> bool {
        self.g_permutable
            && self.homomorphism.passed()
            && self.surjective
            && self.sigma_holds_big()
            && !self.sigma_sub.holds()
    }
}

pub fn verify_h_escape(n: usize, config: &SearchConfig, limits: &Limits) -> Result<HEscapeReport> {
    if n < 2 {
        return Err(Error::DimensionTooSmall { n, min: 2 });
    }
    let big = Carrier::full_capped(n, n, limits.max_carrier)?;
    let base2 = unit_vector_carrier(n)?;
    let renaming = BaseRenaming::new([(0, 0), (1, 1)].into());
    let (sub, _) = Rebase::new(&base2, n, &renaming)?;

    let homomorphism = verify_relativization(&big, &sub, config, limits)?;
    let h = Relativization::new(&big, &sub)?;
    let mut surjective = true;
    for y in sub.all_elems() {
        surjective &= h.apply(&h.lift(&y)?)? == y;
    }

    let mode = PairMode::cycles(n);
    let sigma_big = sigma_holds_small(n, n, &mode, config, limits)?;
    let PairMode::Given(f, g) = &mode else { unreachable!() };
    let sigma_sub = check_quasi(&sub, &sigma(n, f, g)?, &SearchConfig::exhaustive(), limits)?;

    Ok(HEscapeReport {
        n,
        big_len: big.len(),
        sub_len: sub.len(),
        renaming,
        g_permutable: sub.is_permutable(),
        homomorphism,
        surjective,
        sigma_big,
        sigma_sub,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, i: usize) -> Seq {
        Seq::unit(n, i).unwrap()
    }

    #[test]
    fn counterexample_n2() {
        let c = build_counterexample(2, &Limits::default()).unwrap();
        assert!(c.passed(), "{:?}", c.checks);
        assert_eq!(c.g_carrier.seqs_of(&c.x).unwrap(), vec![e(2, 1)]);
        assert_eq!(c.g_carrier.seqs_of(&c.union).unwrap(), vec![e(2, 0)]);
    }

    #[test]
    fn counterexample_n3() {
        let c = build_counterexample(3, &Limits::default()).unwrap();
        assert!(c.passed(), "{:?}", c.checks);
        assert_eq!(c.g_carrier.seqs_of(&c.x).unwrap(), vec![e(3, 1)]);
        let mut union = c.g_carrier.seqs_of(&c.union).unwrap();
        union.sort();
        assert_eq!(union, vec![e(3, 2), e(3, 0)]);
        assert_eq!(c.g_carrier.seqs_of(&c.subst_f).unwrap(), vec![e(3, 2)]);
        assert_eq!(c.g_carrier.seqs_of(&c.subst_g).unwrap(), vec![e(3, 0)]);
    }

    #[test]
    fn counterexample_n4() {
        let c = build_counterexample(4, &Limits::default()).unwrap();
        assert!(c.passed());
        let mut x = c.g_carrier.seqs_of(&c.x).unwrap();
        x.sort();
        assert_eq!(x, vec![e(4, 3), e(4, 1)]);
        let mut union = c.g_carrier.seqs_of(&c.union).unwrap();
        union.sort();
        assert_eq!(union, vec![e(4, 2), e(4, 0)]);
    }

    #[test]
    fn counterexample_needs_two_dims() {
        assert!(matches!(
            build_counterexample(1, &Limits::default()),
            Err(Error::DimensionTooSmall { n: 1, min: 2 })
        ));
    }

    #[test]
    fn sigma_small_examples() {
        let limits = Limits::default();
        let ex = SearchConfig::exhaustive();
        let r = sigma_holds_small(2, 2, &PairMode::All, &ex, &limits).unwrap();
        assert_eq!(r.pairs, 4);
        assert!(r.holds() && r.agree());
        assert_eq!(
            r.brute_force.as_ref().unwrap()[0].verdict,
            Verdict::HoldsExhaustive { assignments: 16 }
        );

        let r = sigma_holds_small(3, 2, &PairMode::All, &ex, &limits).unwrap();
        assert_eq!(r.pairs, 36);
        assert!(r.holds() && r.agree());

        let r = sigma_holds_small(2, 0, &PairMode::All, &ex, &limits).unwrap();
        assert!(r.certificate.carrier_empty);
        assert!(r.holds() && r.agree());
    }

    #[test]
    fn sigma_small_over_budget_keeps_certificate() {
        let limits = Limits {
            max_assignments: 1 << 10,
            ..Limits::default()
        };
        let r = sigma_holds_small(3, 3, &PairMode::cycles(3), &SearchConfig::exhaustive(), &limits).unwrap();
        assert_eq!(r.brute_force, None);
        assert!(r.holds() && r.agree());
    }

    #[test]
    fn certificate_fails_without_constants() {
        let g = unit_vector_carrier(3).unwrap();
        let cert = constant_map_certificate(&g, &[(Perm::cycle_up(3), Perm::cycle_down(3))]).unwrap();
        assert!(cert.constants.is_empty());
        assert!(!cert.holds());
    }

    #[test]
    fn h_escape_n2() {
        let r = verify_h_escape(2, &SearchConfig::default(), &Limits::default()).unwrap();
        assert!(r.variety_closure_fails());
        assert!(r.homomorphism.unary.unwrap().is_exhaustive());
        assert!(r.sigma_big.brute_force.is_some());
    }
}
