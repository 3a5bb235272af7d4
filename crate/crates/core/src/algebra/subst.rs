use crate::bits::BitSet;
use crate::seqspace::Perm;

use super::carrier::Carrier;

const OUTSIDE: u32 = u32::MAX;

/// The action of `S_f` on one carrier, precomputed once per permutation.
///
/// `forward[p]` is the position of `member_p∘f`, or outside `D`. Since
/// `q ↦ q∘f` is injective, `preimage[r]` is the unique `p` with
/// `member_p∘f = member_r`, if any, and `S_f(X) = preimage[X]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubstMap {
    forward: Vec<u32>,
    preimage: Vec<u32>,
}

impl SubstMap {
    pub(crate) fn build(carrier: &Carrier, f: &Perm) -> Self {
        let len = carrier.len();
        let mut forward = vec![OUTSIDE; len];
        let mut preimage = vec![OUTSIDE; len];
        for (p, slot) in forward.iter_mut().enumerate() {
            let moved = carrier
                .seq_at(p)
                .compose_right(f)
                .expect("dimension checked by caller");
            if let Some(r) = carrier.position(&moved) {
                *slot = r as u32;
                preimage[r] = p as u32;
            }
        }
        SubstMap { forward, preimage }
    }

    /// Position of `member_p∘f`, if it lies in the carrier.
    pub fn image_of(&self, p: usize) -> Option<usize> {
        match self.forward[p] {
            OUTSIDE => None,
            r => Some(r as usize),
        }
    }

    /// Whether `q∘f ∈ D` for every member `q`.
    pub fn is_total(&self) -> bool {
        self.forward.iter().all(|&r| r != OUTSIDE)
    }

    #[inline]
    pub fn apply(&self, x: &BitSet) -> BitSet {
        let mut out = BitSet::zeros(x.len());
        for r in x.iter_ones() {
            let p = self.preimage[r];
            if p != OUTSIDE {
                out.insert(p as usize);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use crate::algebra::Carrier;
    use crate::seqspace::{Perm, Seq};

    fn seq(v: &[usize]) -> Seq {
        Seq::new(v.to_vec())
    }

    /// `{q ∈ D : q∘f ∈ X}` read straight off the definition.
    fn subst_by_definition(d: &Carrier, f: &Perm, x: &[Seq]) -> Vec<Seq> {
        d.seqs()
            .filter(|q| x.contains(&q.compose_right(f).unwrap()))
            .collect()
    }

    #[test]
    fn subst_examples() {
        let d = Carrier::full(2, 2).unwrap();
        let x = d.atom(&seq(&[0, 1])).unwrap();
        let swap = Perm::from_images(vec![1, 0]).unwrap();
        assert_eq!(d.seqs_of(&d.subst(&swap, &x).unwrap()).unwrap(), vec![seq(&[1, 0])]);

        let e = |i| Seq::unit(3, i).unwrap();
        let g = Carrier::from_seqs(3, 2, (0..3).map(e)).unwrap();
        let x = g.atom(&e(1)).unwrap();
        let f = Perm::from_images(vec![1, 2, 0]).unwrap();
        assert_eq!(g.seqs_of(&g.subst(&f, &x).unwrap()).unwrap(), vec![e(2)]);

        for x in d.all_elems() {
            assert_eq!(d.subst(&Perm::identity(2), &x).unwrap(), x);
        }
    }

    #[test]
    fn subst_rejects_bad_inputs() {
        let d = Carrier::full(2, 2).unwrap();
        let other = Carrier::full(2, 2).unwrap();
        assert!(d.subst(&Perm::identity(2), &other.one()).is_err());
        assert!(d.subst(&Perm::identity(3), &d.one()).is_err());
    }

    #[test]
    fn non_permutable_carrier_follows_definition() {
        let d = Carrier::from_seqs(3, 3, [seq(&[0, 1, 2]), seq(&[1, 0, 2]), seq(&[2, 2, 1])]).unwrap();
        assert!(!d.is_permutable());
        for f in Perm::all(3) {
            assert_eq!(d.subst_map(&f).unwrap().is_total(), f.is_identity() || f == Perm::transposition(3, 0, 1).unwrap());
            for x in d.all_elems() {
                let xs = d.seqs_of(&x).unwrap();
                let got = d.seqs_of(&d.subst(&f, &x).unwrap()).unwrap();
                assert_eq!(got, subst_by_definition(&d, &f, &xs));
            }
        }
    }
}
