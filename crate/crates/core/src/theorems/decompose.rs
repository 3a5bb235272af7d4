use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{canonicalize_base, BaseRenaming, Carrier, Elem, Product, ProductElem, Rebase, Relativization, SmallAlgebra};
use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::search::{self, SearchConfig, SearchOutcome, SearchSpace};
use crate::seqspace::{space_size, Perm, Seq, SpaceRank};

use super::Coverage;

/// `h_U = canonicalize ∘ relativize-by-^n U`, a homomorphism `℘(^n k) → A_{n,|U|}`.
#[derive(Debug, Clone)]
pub struct AtomHom {
    pub range: Vec<usize>,
    pub renaming: BaseRenaming,
    pub target: SmallAlgebra,
    relativize: Relativization,
    rebase: Rebase,
    /// `^n U` as a sub-carrier of the source.
    sub: Arc<Carrier>,
    /// The canonicalized copy of `sub`; structurally equal to the target.
    renamed: Arc<Carrier>,
}

impl AtomHom {
    fn new(source: &Carrier, range: Vec<usize>, limits: &Limits) -> Result<Self> {
        let n = source.dim();
        let m = range.len();
        let count = space_size(n, m)?;
        let seqs = (0..count).map(|r| {
            Seq::unrank(SpaceRank(r), n, m)
                .expect("rank in range")
                .rename(|v| range[v])
        });
        let sub = Carrier::from_seqs(n, source.base(), seqs)?;
        let relativize = Relativization::new(source, &sub)?;
        let (renamed, renaming, rebase) = canonicalize_base(&sub)?;
        let target = SmallAlgebra::with_cap(n, m, limits.max_carrier)?;
        if renamed != **target.carrier() {
            return Err(Error::Invalid(format!(
                "canonicalized ^n{range:?} is not {}",
                target.label()
            )));
        }
        Ok(AtomHom {
            range,
            renaming,
            target,
            relativize,
            rebase,
            sub: Arc::new(sub),
            renamed: Arc::new(renamed),
        })
    }

    /// The image of `x` as a bit vector over the target carrier.
    pub fn apply_bits(&self, x: &BitSet) -> BitSet {
        self.rebase.apply_bits(&self.relativize.apply_bits(x))
    }

    /// The image of `x` as an element of the target small algebra.
    pub fn apply(&self, x: &Elem) -> Result<Elem> {
        let relativized = self.relativize.apply(x)?;
        let moved = self.rebase.apply(&relativized)?;
        self.target.carrier().elem(moved.into_bits())
    }

    pub fn sub_carrier(&self) -> &Carrier {
        &self.sub
    }

    /// Whether renaming kept every member in place (it always should:
    /// an order-preserving renaming preserves lexicographic order).
    pub fn positions_preserved(&self) -> bool {
        self.rebase.preserves_positions() && self.renamed.len() == self.target.carrier().len()
    }
}

/// One homomorphism of the separating family, indexed by an atom `{q}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionRecord {
    /// `q`, or `None` for the one-element algebra, which has no atoms.
    pub witness: Option<Seq>,
    pub range: Vec<usize>,
    pub k_a: usize,
    pub renaming: BaseRenaming,
    pub target: String,
    /// `h_a({q}) ≠ 0`; not applicable to the degenerate record.
    pub image_nonzero: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationReport {
    pub coverage: Option<Coverage>,
    /// Two distinct elements identified by every `h_a`, if any.
    pub unseparated: Option<(Elem, Elem)>,
    /// The first operation some `h_a` fails to preserve, if any.
    pub hom_failure: Option<String>,
    pub hom_coverage: Option<Coverage>,
}

impl SeparationReport {
    pub fn separated(&self) -> bool {
        self.unseparated.is_none()
    }
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    pub n: usize,
    pub k: usize,
    pub source: Arc<Carrier>,
    pub records: Vec<DecompositionRecord>,
    pub separation: SeparationReport,
    homs: Vec<AtomHom>,
    /// Index into `homs` for each atom record.
    atom_hom: Vec<usize>,
    product: Product,
}

impl Decomposition {
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.image_nonzero != Some(false))
            && self.separation.separated()
            && self.separation.hom_failure.is_none()
            && (!self.source.is_empty() || self.records.len() == 1)
    }

    /// The distinct homomorphisms (one per occurring range).
    pub fn homs(&self) -> &[AtomHom] {
        &self.homs
    }

    /// The product `∏_a A_{n,k_a}` over atoms.
    pub fn product(&self) -> &Product {
        &self.product
    }

    /// The subdirect embedding `x ↦ (h_a(x))_a`.
    pub fn embed(&self, x: &Elem) -> Result<ProductElem> {
        let components = self
            .atom_hom
            .iter()
            .map(|&i| self.homs[i].apply(x))
            .collect::<Result<Vec<_>>>()?;
        self.product.elem(components)
    }
}

/// Decomposes `℘(^n k)` through the family `{h_a : a an atom}`: checks
/// `h_a(a) ≠ 0`, that each `h_a` is a homomorphism, and that the family
/// separates distinct elements.
pub fn decompose_small(n: usize, k: usize, config: &SearchConfig, limits: &Limits) -> Result<Decomposition> {
    let source = Arc::new(Carrier::full_capped(n, k, limits.max_carrier)?);

    if source.is_empty() {
        let target = SmallAlgebra::with_cap(n, 0, limits.max_carrier)?;
        let record = DecompositionRecord {
            witness: None,
            range: Vec::new(),
            k_a: 0,
            renaming: BaseRenaming::default(),
            target: target.label(),
            image_nonzero: None,
        };
        let iso = *source == **target.carrier();
        return Ok(Decomposition {
            n,
            k,
            source,
            records: vec![record],
            separation: SeparationReport {
                coverage: Some(Coverage::Exhaustive { cases: 1 }),
                unseparated: None,
                hom_failure: (!iso).then(|| format!("℘(^{n} 0) is not {}", target.label())),
                hom_coverage: Some(Coverage::Exhaustive { cases: 1 }),
            },
            homs: Vec::new(),
            atom_hom: Vec::new(),
            product: Product::new(Vec::new())?,
        });
    }

    let mut by_range: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut homs = Vec::new();
    let mut atom_hom = Vec::with_capacity(source.len());
    let mut records = Vec::with_capacity(source.len());
    for q in source.seqs() {
        let range: Vec<usize> = q.range().into_iter().collect();
        let idx = match by_range.get(&range) {
            Some(&i) => i,
            None => {
                homs.push(AtomHom::new(&source, range.clone(), limits)?);
                by_range.insert(range.clone(), homs.len() - 1);
                homs.len() - 1
            }
        };
        let hom = &homs[idx];
        let image = hom.apply(&source.atom(&q)?)?;
        records.push(DecompositionRecord {
            witness: Some(q),
            k_a: range.len(),
            range,
            renaming: hom.renaming.clone(),
            target: hom.target.label(),
            image_nonzero: Some(!image.is_zero()),
        });
        atom_hom.push(idx);
    }

    // each h_a preserves complement and every S_ij (it preserves ∧ because
    // relativization and renaming are both set maps on positions)
    let swaps = Perm::transpositions(n);
    let maps: Vec<_> = homs
        .iter()
        .map(|h| {
            swaps
                .iter()
                .map(|t| Ok((source.subst_map(t)?, h.target.carrier().subst_map(t)?)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let hom_failure_at = |x: &BitSet| -> Option<String> {
        for (h, hmaps) in homs.iter().zip(&maps) {
            let hx = h.apply_bits(x);
            if h.apply_bits(&x.not()) != hx.not() {
                return Some(format!("h_{:?} does not preserve complement", h.range));
            }
            for ((src, tgt), t) in hmaps.iter().zip(&swaps) {
                if h.apply_bits(&src.apply(x)) != tgt.apply(&hx) {
                    return Some(format!("h_{:?} does not preserve S_{t}", h.range));
                }
            }
        }
        None
    };
    let space = SearchSpace {
        width: source.len(),
        vars: 1,
    };
    let outcome = search::run(space, config, limits, &|v: &[BitSet]| hom_failure_at(&v[0]).is_some())?;
    let hom_coverage = Coverage::of(&outcome);
    let hom_failure = match outcome {
        SearchOutcome::Found { values, .. } => hom_failure_at(&values[0]),
        _ => None,
    };

    let identified = |x: &BitSet, y: &BitSet| x != y && homs.iter().all(|h| h.apply_bits(x) == h.apply_bits(y));
    let space = SearchSpace {
        width: source.len(),
        vars: 2,
    };
    let outcome = search::run(space, config, limits, &|v: &[BitSet]| identified(&v[0], &v[1]))?;
    let coverage = Coverage::of(&outcome);
    let unseparated = match outcome {
        SearchOutcome::Found { values, .. } => Some((source.elem(values[0].clone())?, source.elem(values[1].clone())?)),
        _ => None,
    };

    let product = Product::new(atom_hom.iter().map(|&i| Arc::clone(homs[i].target.carrier())).collect())?;
    Ok(Decomposition {
        n,
        k,
        source,
        records,
        separation: SeparationReport {
            coverage,
            unseparated,
            hom_failure,
            hom_coverage,
        },
        homs,
        atom_hom,
        product,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_base_is_one_element_algebra() {
        let d = decompose_small(2, 0, &SearchConfig::exhaustive(), &Limits::default()).unwrap();
        assert_eq!(d.records.len(), 1);
        assert_eq!(d.records[0].witness, None);
        assert_eq!(d.records[0].target, "A_{2,0}");
        assert!(d.passed());
    }

    #[test]
    fn atom_01_in_base_3() {
        let d = decompose_small(2, 3, &SearchConfig::exhaustive(), &Limits::default()).unwrap();
        let r = d
            .records
            .iter()
            .find(|r| r.witness == Some(Seq::new(vec![0, 1])))
            .unwrap();
        assert_eq!(r.range, vec![0, 1]);
        assert_eq!(r.k_a, 2);
        assert_eq!(r.target, "A_{2,2}");
        assert_eq!(r.image_nonzero, Some(true));
        assert!(r.renaming.is_identity());

        let r12 = d.records.iter().find(|r| r.witness == Some(Seq::new(vec![2, 1]))).unwrap();
        assert_eq!(r12.range, vec![1, 2]);
        assert_eq!(r12.renaming.get(1), Some(0));
        assert_eq!(r12.renaming.get(2), Some(1));
        assert!(d.passed());
        assert!(d.homs().iter().all(AtomHom::positions_preserved));
    }

    #[test]
    fn full_2_2_is_separated() {
        let d = decompose_small(2, 2, &SearchConfig::exhaustive(), &Limits::default()).unwrap();
        assert_eq!(d.records.len(), 4);
        assert_eq!(d.separation.coverage, Some(Coverage::Exhaustive { cases: 256 }));
        assert!(d.separation.separated());
        // the constant atoms land in A_{2,1}
        assert_eq!(d.records.iter().filter(|r| r.k_a == 1).count(), 2);
        let x = d.source.elem_from_value(0b0110);
        let embedded = d.embed(&x).unwrap();
        assert!(!d.product().is_zero(&embedded).unwrap());
        assert!(d.product().is_zero(&d.embed(&d.source.zero()).unwrap()).unwrap());
    }
}
