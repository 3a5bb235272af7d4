use std::collections::BTreeSet;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Carrier, Elem, Product, ProductElem};
use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::search::{self, SearchConfig, SearchOutcome, SearchSpace};
use crate::seqspace::{Perm, Seq};

use super::Coverage;

/// The principal ultrafilter `{A ⊆ I : i0 ∈ A}` on a finite index set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrincipalUltrafilter {
    pub indices: usize,
    pub generator: usize,
}

impl PrincipalUltrafilter {
    pub fn new(indices: usize, generator: usize) -> Result<Self> {
        if generator >= indices {
            return Err(Error::IndexOutOfRange {
                index: generator,
                len: indices,
            });
        }
        Ok(PrincipalUltrafilter { indices, generator })
    }

    pub fn contains(&self, set: &BTreeSet<usize>) -> bool {
        set.contains(&self.generator)
    }
}

/// The embedding `ψ : ∏A_i/F → ℘(^n U)`, `U = ∏U_i/F`, for a principal `F`.
///
/// A class of `∏U_i/F` is determined by its `i0` coordinate; it is
/// represented by the partial function that takes that value at `i0` and 0
/// (where the base is nonempty) elsewhere.
struct Psi<'a> {
    product: &'a Product,
    filter: PrincipalUltrafilter,
    image: Carrier,
}

impl Psi<'_> {
    fn representative(&self, class: usize) -> Vec<Option<usize>> {
        self.product
            .factors()
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if i == self.filter.generator {
                    Some(class)
                } else if c.base() > 0 {
                    Some(0)
                } else {
                    None
                }
            })
            .collect()
    }

    /// `ψ(a) = {t/F : {i : (t_0(i),…,t_{n-1}(i)) ∈ a_i} ∈ F}`.
    fn apply(&self, a: &[BitSet]) -> BitSet {
        let mut out = BitSet::zeros(self.image.len());
        for p in 0..self.image.len() {
            let t = self.image.seq_at(p);
            let reps: Vec<Vec<Option<usize>>> = t.entries().iter().map(|&c| self.representative(c)).collect();
            let mut agree = BTreeSet::new();
            for (i, factor) in self.product.factors().iter().enumerate() {
                let coords: Option<Vec<usize>> = reps.iter().map(|r| r[i]).collect();
                if let Some(coords) = coords {
                    if factor.position(&Seq::new(coords)).is_some_and(|q| a[i].get(q)) {
                        agree.insert(i);
                    }
                }
            }
            if self.filter.contains(&agree) {
                out.insert(p);
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UltraproductReport {
    pub dim: usize,
    pub bases: Vec<usize>,
    pub index: usize,
    /// Representatives drawn per class of the quotient.
    pub representatives: usize,
    pub classes: Option<Coverage>,
    pub pairs: Option<Coverage>,
    pub violation: Option<String>,
}

impl UltraproductReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }

    pub const NON_PRINCIPAL_NOTE: &'static str =
        "non-principal ultrafilters live on infinite index sets and have no finite realization; only principal ones are checked";
}

const REPS: usize = 3;

/// Checks that `ψ` for the principal ultrafilter at `i0` is well defined,
/// equals projection to factor `i0`, preserves `∼`, `∧` and every `S_ij`,
/// and is injective on the quotient.
pub fn principal_ultraproduct(
    factors: Vec<Arc<Carrier>>,
    i0: usize,
    config: &SearchConfig,
    limits: &Limits,
) -> Result<UltraproductReport> {
    let filter = PrincipalUltrafilter::new(factors.len(), i0)?;
    if let Some(c) = factors.iter().find(|c| !c.is_full()) {
        return Err(Error::Invalid(format!(
            "ultraproduct factors must be full carriers; got {} of {} sequences",
            c.len(),
            crate::seqspace::space_size(c.dim(), c.base()).unwrap_or(u64::MAX)
        )));
    }
    let product = Product::new(factors)?;
    let n = product.factors()[i0].dim();
    let focus = Arc::clone(&product.factors()[i0]);
    let psi = Psi {
        product: &product,
        filter,
        image: Carrier::full_capped(n, focus.base(), limits.max_carrier)?,
    };
    let swaps = Perm::transpositions(n);
    let factor_maps = swaps
        .iter()
        .map(|t| product.factors().iter().map(|c| c.subst_map(t)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let image_maps = swaps.iter().map(|t| psi.image.subst_map(t)).collect::<Result<Vec<_>>>()?;

    // Representatives of the class determined by `x` at i0: other coordinates
    // all zero, all one, then seeded random.
    let reps_of = |x: &BitSet| -> Vec<Vec<BitSet>> {
        let value = x.value().unwrap_or(0) as u64;
        (0..REPS)
            .map(|r| {
                let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
                rng.set_stream(value.wrapping_mul(REPS as u64).wrapping_add(r as u64));
                product
                    .factors()
                    .iter()
                    .enumerate()
                    .map(|(i, c)| match (i == i0, r) {
                        (true, _) => x.clone(),
                        (false, 0) => BitSet::zeros(c.len()),
                        (false, 1) => BitSet::ones(c.len()),
                        (false, _) => BitSet::random(c.len(), &mut rng),
                    })
                    .collect()
            })
            .collect()
    };
    // identifies x ∈ ℘(D_i0) with its copy in ℘(^n U); positions coincide
    let projected = |x: &BitSet| x.clone();

    let unary_failure = |x: &BitSet| -> Option<String> {
        for rep in reps_of(x) {
            let image = psi.apply(&rep);
            if image != projected(x) {
                return Some("ψ differs from projection to the principal index".into());
            }
            let complement: Vec<BitSet> = rep.iter().map(BitSet::not).collect();
            if psi.apply(&complement) != image.not() {
                return Some("ψ does not preserve complement".into());
            }
            for ((maps, image_map), t) in factor_maps.iter().zip(&image_maps).zip(&swaps) {
                let moved: Vec<BitSet> = rep.iter().zip(maps).map(|(a, m)| m.apply(a)).collect();
                if psi.apply(&moved) != image_map.apply(&image) {
                    return Some(format!("ψ does not preserve S_{t}"));
                }
            }
        }
        None
    };
    let binary_failure = |x: &BitSet, y: &BitSet| -> Option<String> {
        let (rx, ry) = (&reps_of(x)[REPS - 1], &reps_of(y)[REPS - 1]);
        let meet: Vec<BitSet> = rx.iter().zip(ry).map(|(a, b)| a.and(b)).collect();
        let (px, py) = (psi.apply(rx), psi.apply(ry));
        if psi.apply(&meet) != px.and(&py) {
            return Some("ψ does not preserve meet".into());
        }
        if x != y && px == py {
            return Some("ψ is not injective".into());
        }
        None
    };

    let mut report = UltraproductReport {
        dim: n,
        bases: product.factors().iter().map(|c| c.base()).collect(),
        index: i0,
        representatives: REPS,
        classes: None,
        pairs: None,
        violation: None,
    };
    let space = SearchSpace {
        width: focus.len(),
        vars: 1,
    };
    let outcome = search::run(space, config, limits, &|v: &[BitSet]| unary_failure(&v[0]).is_some())?;
    report.classes = Coverage::of(&outcome);
    if let SearchOutcome::Found { values, .. } = outcome {
        report.violation = unary_failure(&values[0]);
        return Ok(report);
    }
    let space = SearchSpace {
        width: focus.len(),
        vars: 2,
    };
    let outcome = search::run(space, config, limits, &|v: &[BitSet]| binary_failure(&v[0], &v[1]).is_some())?;
    report.pairs = Coverage::of(&outcome);
    if let SearchOutcome::Found { values, .. } = outcome {
        report.violation = binary_failure(&values[0], &values[1]);
    }
    Ok(report)
}

/// `ψ` applied to one product element, exposed for inspection.
pub fn psi_image(product: &Product, i0: usize, a: &ProductElem) -> Result<(Carrier, Elem)> {
    let filter = PrincipalUltrafilter::new(product.arity(), i0)?;
    let focus = &product.factors()[i0];
    let psi = Psi {
        product,
        filter,
        image: Carrier::full(focus.dim(), focus.base())?,
    };
    let bits: Vec<BitSet> = a.components().iter().map(|c| c.bits().clone()).collect();
    let image_bits = psi.apply(&bits);
    let elem = psi.image.elem(image_bits)?;
    Ok((psi.image, elem))
}
