use crate::algebra::{Carrier, Elem, Relativization};
use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::search::{self, SearchConfig, SearchOutcome, SearchSpace};
use crate::seqspace::Perm;

use super::Coverage;

/// A witness that `h(x) = x ∩ G` fails to preserve one operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomViolation {
    pub operation: String,
    pub x: Elem,
    pub y: Option<Elem>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomReport {
    pub dim: usize,
    pub base: usize,
    pub big_len: usize,
    pub sub_len: usize,
    pub operations: Vec<String>,
    /// Coverage of the single-element checks (complement, constants, `S_ij`).
    pub unary: Option<Coverage>,
    /// Coverage of the two-element checks (meet, join).
    pub binary: Option<Coverage>,
    pub violation: Option<HomViolation>,
}

impl HomReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }

    pub fn elements_tested(&self) -> u64 {
        self.unary.map_or(0, |c| c.cases())
    }
}

/// Largest `|E|` for which `h` is tabulated before the pair search.
const MEMO_WIDTH: usize = 16;

/// Checks that relativization by a permutable `G ⊆ E` preserves `∧`, `∨`,
/// `∼`, `0`, `1` and every `S_ij`.
pub fn verify_relativization(big: &Carrier, sub: &Carrier, config: &SearchConfig, limits: &Limits) -> Result<HomReport> {
    let h = Relativization::new(big, sub)?;
    if !sub.is_permutable() {
        return Err(Error::NotPermutable);
    }
    let swaps = Perm::transpositions(big.dim());
    let big_maps = swaps.iter().map(|t| big.subst_map(t)).collect::<Result<Vec<_>>>()?;
    let sub_maps = swaps.iter().map(|t| sub.subst_map(t)).collect::<Result<Vec<_>>>()?;

    let mut operations = vec!["zero".to_string(), "one".into(), "complement".into(), "meet".into(), "join".into()];
    operations.extend(swaps.iter().map(|t| {
        let moved: Vec<usize> = (0..t.dim()).filter(|&i| t.apply(i) != i).collect();
        format!("s[{},{}]", moved[0], moved[1])
    }));

    let mut report = HomReport {
        dim: big.dim(),
        base: big.base(),
        big_len: big.len(),
        sub_len: sub.len(),
        operations: operations.clone(),
        unary: None,
        binary: None,
        violation: None,
    };

    let constants = [
        ("zero", h.apply(&big.zero())? == sub.zero()),
        ("one", h.apply(&big.one())? == sub.one()),
    ];
    if let Some((op, _)) = constants.iter().find(|(_, ok)| !ok) {
        report.violation = Some(HomViolation {
            operation: op.to_string(),
            x: if *op == "zero" { big.zero() } else { big.one() },
            y: None,
        });
        return Ok(report);
    }

    let unary_failure = |x: &BitSet| -> Option<String> {
        let hx = h.apply_bits(x);
        if h.apply_bits(&x.not()) != hx.not() {
            return Some("complement".into());
        }
        for (i, (bm, sm)) in big_maps.iter().zip(&sub_maps).enumerate() {
            if h.apply_bits(&bm.apply(x)) != sm.apply(&hx) {
                return Some(operations[5 + i].clone());
            }
        }
        None
    };
    let space = SearchSpace {
        width: big.len(),
        vars: 1,
    };
    let outcome = search::run(space, config, limits, &|v: &[BitSet]| unary_failure(&v[0]).is_some())?;
    report.unary = Coverage::of(&outcome);
    if let SearchOutcome::Found { values, .. } = outcome {
        report.violation = Some(HomViolation {
            operation: unary_failure(&values[0]).expect("witness re-fails"),
            x: big.elem(values[0].clone())?,
            y: None,
        });
        return Ok(report);
    }

    // h on every element, when that is small enough to tabulate
    let table: Option<Vec<BitSet>> = (big.len() <= MEMO_WIDTH).then(|| {
        (0..1u64 << big.len())
            .map(|v| h.apply_bits(&BitSet::from_value(big.len(), v as u128)))
            .collect()
    });
    let h_of = |x: &BitSet| -> BitSet {
        match &table {
            Some(t) => t[x.value().expect("tabulated width") as usize].clone(),
            None => h.apply_bits(x),
        }
    };
    let binary_failure = |x: &BitSet, y: &BitSet| -> Option<&'static str> {
        let (hx, hy) = (h_of(x), h_of(y));
        if h_of(&x.and(y)) != hx.and(&hy) {
            Some("meet")
        } else if h_of(&x.or(y)) != hx.or(&hy) {
            Some("join")
        } else {
            None
        }
    };
    let space = SearchSpace {
        width: big.len(),
        vars: 2,
    };
    let outcome = search::run(space, config, limits, &|v: &[BitSet]| binary_failure(&v[0], &v[1]).is_some())?;
    report.binary = Coverage::of(&outcome);
    if let SearchOutcome::Found { values, .. } = outcome {
        report.violation = Some(HomViolation {
            operation: binary_failure(&values[0], &values[1]).expect("witness re-fails").into(),
            x: big.elem(values[0].clone())?,
            y: Some(big.elem(values[1].clone())?),
        });
    }
    Ok(report)
}
