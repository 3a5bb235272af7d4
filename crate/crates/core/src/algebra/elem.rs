use crate::bits::BitSet;
use crate::error::{Error, Result};

use super::carrier::CarrierId;

/// An element of `℘(D)`: bit `p` is set iff the `p`-th member of `D` belongs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Elem {
    carrier: CarrierId,
    bits: BitSet,
}

impl Elem {
    pub(crate) fn new(carrier: CarrierId, bits: BitSet) -> Self {
        Elem { carrier, bits }
    }

    pub fn carrier(&self) -> CarrierId {
        self.carrier
    }

    pub fn bits(&self) -> &BitSet {
        &self.bits
    }

    pub fn into_bits(self) -> BitSet {
        self.bits
    }

    fn same_carrier(&self, other: &Elem) -> Result<()> {
        if self.carrier == other.carrier {
            Ok(())
        } else {
            Err(Error::CarrierMismatch)
        }
    }

    pub fn meet(&self, other: &Elem) -> Result<Elem> {
        self.same_carrier(other)?;
        Ok(Elem::new(self.carrier, self.bits.and(&other.bits)))
    }

    pub fn join(&self, other: &Elem) -> Result<Elem> {
        self.same_carrier(other)?;
        Ok(Elem::new(self.carrier, self.bits.or(&other.bits)))
    }

    /// Complement relative to the carrier.
    pub fn complement(&self) -> Elem {
        Elem::new(self.carrier, self.bits.not())
    }

    pub fn is_zero(&self) -> bool {
        self.bits.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.bits.not().is_zero()
    }

    pub fn leq(&self, other: &Elem) -> Result<bool> {
        self.same_carrier(other)?;
        Ok(self.bits.is_subset(&other.bits))
    }

    /// Number of sequences in the set.
    pub fn count(&self) -> usize {
        self.bits.count()
    }
}
