use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bits::BitSet;
use crate::error::{Error, Result};

use super::carrier::{Carrier, CarrierId};
use super::elem::Elem;

/// The map `h(x) = x ∩ G` from `℘(E)` to `℘(G)`, for `G ⊆ E`.
#[derive(Debug, Clone)]
pub struct Relativization {
    big: CarrierId,
    sub: CarrierId,
    big_len: usize,
    /// Position in `E` of each member of `G`.
    positions: Vec<usize>,
}

impl Relativization {
    pub fn new(big: &Carrier, sub: &Carrier) -> Result<Self> {
        if !big.contains_carrier(sub) {
            return Err(Error::NotASubCarrier);
        }
        let positions = sub
            .members()
            .iter()
            .map(|&r| big.position_of_rank(r).expect("checked containment"))
            .collect();
        Ok(Relativization {
            big: big.id(),
            sub: sub.id(),
            big_len: big.len(),
            positions,
        })
    }

    pub fn apply(&self, x: &Elem) -> Result<Elem> {
        if x.carrier() != self.big {
            return Err(Error::CarrierMismatch);
        }
        Ok(Elem::new(self.sub, self.apply_bits(x.bits())))
    }

    /// [`Relativization::apply`] on raw bit vectors over `E`.
    pub fn apply_bits(&self, bits: &BitSet) -> BitSet {
        bits.gather(&self.positions)
    }

    /// The inclusion `℘(G) → ℘(E)`; `apply(lift(y)) = y`.
    pub fn lift(&self, y: &Elem) -> Result<Elem> {
        if y.carrier() != self.sub {
            return Err(Error::CarrierMismatch);
        }
        let bits = BitSet::from_positions(self.big_len, y.bits().iter_ones().map(|p| self.positions[p]));
        Ok(Elem::new(self.big, bits))
    }
}

/// `h(x) = x ∩ G` as an element of `℘(G)`.
pub fn relativize(x: &Elem, big: &Carrier, sub: &Carrier) -> Result<Elem> {
    Relativization::new(big, sub)?.apply(x)
}

/// A renaming of base elements, `old ↦ new`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BaseRenaming(BTreeMap<usize, usize>);

impl BaseRenaming {
    pub fn new(map: BTreeMap<usize, usize>) -> Self {
        BaseRenaming(map)
    }

    /// The order-preserving bijection from `values` onto `{0..m-1}`.
    pub fn compacting(values: impl IntoIterator<Item = usize>) -> Self {
        let sorted: std::collections::BTreeSet<usize> = values.into_iter().collect();
        BaseRenaming(sorted.into_iter().enumerate().map(|(new, old)| (old, new)).collect())
    }

    pub fn get(&self, old: usize) -> Option<usize> {
        self.0.get(&old).copied()
    }

    pub fn map(&self) -> &BTreeMap<usize, usize> {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|(a, b)| a == b)
    }

    pub fn is_order_preserving_injection(&self) -> bool {
        let images: Vec<usize> = self.0.values().copied().collect();
        images.windows(2).all(|w| w[0] < w[1])
    }
}

/// Transports elements along a base renaming `D → D'`.
#[derive(Debug, Clone)]
pub struct Rebase {
    from: CarrierId,
    to: CarrierId,
    to_len: usize,
    positions: Vec<usize>,
}

impl Rebase {
    /// Renames every member of `d` into base `new_base`, returning the
    /// renamed carrier and the transport map.
    pub fn new(d: &Carrier, new_base: usize, renaming: &BaseRenaming) -> Result<(Carrier, Rebase)> {
        if !renaming.is_order_preserving_injection() {
            return Err(Error::Invalid("base renaming must be an order-preserving injection".into()));
        }
        let mut renamed = Vec::with_capacity(d.len());
        for s in d.seqs() {
            let mut entries = Vec::with_capacity(s.dim());
            for &v in s.entries() {
                entries.push(renaming.get(v).ok_or_else(|| {
                    Error::Invalid(format!("base element {v} is not covered by the renaming"))
                })?);
            }
            renamed.push(crate::seqspace::Seq::checked(entries, new_base)?);
        }
        let target = Carrier::from_seqs(d.dim(), new_base, renamed.iter().cloned())?;
        let positions = renamed
            .iter()
            .map(|s| target.position(s).expect("renamed member is present"))
            .collect();
        let rebase = Rebase {
            from: d.id(),
            to: target.id(),
            to_len: target.len(),
            positions,
        };
        Ok((target, rebase))
    }

    pub fn apply(&self, x: &Elem) -> Result<Elem> {
        if x.carrier() != self.from {
            return Err(Error::CarrierMismatch);
        }
        Ok(Elem::new(self.to, self.apply_bits(x.bits())))
    }

    pub fn apply_bits(&self, bits: &BitSet) -> BitSet {
        BitSet::from_positions(self.to_len, bits.iter_ones().map(|p| self.positions[p]))
    }

    /// Whether the transport keeps every member at the same position.
    pub fn preserves_positions(&self) -> bool {
        self.positions.iter().enumerate().all(|(p, &q)| p == q)
    }
}

/// Renames the base elements occurring in `D` onto `{0..m-1}` in order.
pub fn canonicalize_base(d: &Carrier) -> Result<(Carrier, BaseRenaming, Rebase)> {
    let renaming = BaseRenaming::compacting(d.seqs().flat_map(|s| s.into_entries()));
    let (target, rebase) = Rebase::new(d, renaming.len(), &renaming)?;
    Ok((target, renaming, rebase))
}
