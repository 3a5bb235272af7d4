use std::sync::Arc;

use crate::error::Result;
use crate::limits::DEFAULT_MAX_CARRIER;
use crate::seqspace::Perm;

use super::carrier::Carrier;
use super::elem::Elem;

/// The full algebra `A_nk = ℘(^n k)`.
#[derive(Debug, Clone)]
pub struct SmallAlgebra {
    n: usize,
    k: usize,
    carrier: Arc<Carrier>,
}

impl SmallAlgebra {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        Self::with_cap(n, k, DEFAULT_MAX_CARRIER)
    }

    pub fn with_cap(n: usize, k: usize, cap: u64) -> Result<Self> {
        Ok(SmallAlgebra {
            n,
            k,
            carrier: Arc::new(Carrier::full_capped(n, k, cap)?),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn base(&self) -> usize {
        self.k
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    /// Number of elements, `2^(k^n)`, when it fits in a `u128`.
    pub fn order(&self) -> Option<u128> {
        1u128.checked_shl(u32::try_from(self.carrier.len()).ok()?)
    }

    /// The table of `S_f` on atoms: entry `p` is the position `S_f` sends
    /// the atom at `p` to.
    pub fn subst_table(&self, f: &Perm) -> Result<Vec<usize>> {
        // S_f({p}) = {p∘f⁻¹} on a full carrier
        let inv_map = self.carrier.subst_map(&f.inverse())?;
        Ok((0..self.carrier.len())
            .map(|p| inv_map.image_of(p).expect("full carriers are permutable"))
            .collect())
    }

    pub fn subst(&self, f: &Perm, x: &Elem) -> Result<Elem> {
        self.carrier.subst(f, x)
    }

    pub fn label(&self) -> String {
        format!("A_{{{},{}}}", self.n, self.k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_agrees_with_subst() {
        let a = SmallAlgebra::new(3, 2).unwrap();
        assert_eq!(a.order(), Some(256));
        for f in Perm::all(3) {
            let table = a.subst_table(&f).unwrap();
            for (p, &q) in table.iter().enumerate() {
                let atom = a.carrier().atom(&a.carrier().seq_at(p)).unwrap();
                let image = a.subst(&f, &atom).unwrap();
                assert_eq!(image.bits().iter_ones().collect::<Vec<_>>(), vec![q]);
            }
        }
        assert_eq!(SmallAlgebra::new(2, 0).unwrap().order(), Some(1));
    }
}
