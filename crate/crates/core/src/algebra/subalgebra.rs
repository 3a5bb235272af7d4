use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::limits::DEFAULT_MAX_SUBALGEBRA;
use crate::seqspace::Perm;

use super::carrier::Carrier;
use super::elem::Elem;

/// Splits every block of `blocks` along `cut`, dropping empty pieces.
fn refine(blocks: Vec<BitSet>, cut: &BitSet) -> Vec<BitSet> {
    let mut out = Vec::with_capacity(blocks.len() + 1);
    for b in blocks {
        let inside = b.and(cut);
        let outside = b.and(&cut.not());
        if !inside.is_zero() {
            out.push(inside);
        }
        if !outside.is_zero() {
            out.push(outside);
        }
    }
    out
}

/// Atoms of the subalgebra of `℘(D)` generated by `generators` under
/// `∧`, `∼`, `0`, `1` and every `S_ij`.
///
/// A finite Boolean subalgebra is determined by its atom partition, and it is
/// closed under the additive operator `S_ij` iff `S_ij` maps every atom to a
/// union of atoms. Refine until that holds.
pub fn subalgebra_atoms(d: &Carrier, generators: &[Elem]) -> Result<Vec<BitSet>> {
    let mut blocks = if d.is_empty() {
        Vec::new()
    } else {
        vec![BitSet::ones(d.len())]
    };
    for g in generators {
        d.check_owner(g)?;
        blocks = refine(blocks, g.bits());
    }
    let maps = Perm::transpositions(d.dim())
        .iter()
        .map(|t| d.subst_map(t))
        .collect::<Result<Vec<_>>>()?;
    loop {
        let before = blocks.len();
        let images: Vec<BitSet> = maps
            .iter()
            .flat_map(|m| blocks.iter().map(move |b| m.apply(b)))
            .collect();
        for img in &images {
            blocks = refine(blocks, img);
        }
        if blocks.len() == before {
            return Ok(blocks);
        }
    }
}

/// The subalgebra generated by `generators`, in numeric bit-vector order.
pub fn generate_subalgebra(d: &Carrier, generators: &[Elem]) -> Result<Vec<Elem>> {
    generate_subalgebra_capped(d, generators, DEFAULT_MAX_SUBALGEBRA)
}

pub fn generate_subalgebra_capped(d: &Carrier, generators: &[Elem], cap: usize) -> Result<Vec<Elem>> {
    let atoms = subalgebra_atoms(d, generators)?;
    if atoms.len() >= usize::BITS as usize - 1 || 1usize << atoms.len() > cap {
        return Err(Error::SubalgebraTooLarge { cap });
    }
    let mut elems: Vec<BitSet> = (0..1usize << atoms.len())
        .map(|mask| {
            atoms
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .fold(BitSet::zeros(d.len()), |acc, (_, a)| acc.or(a))
        })
        .collect();
    elems.sort();
    elems.into_iter().map(|b| d.elem(b)).collect()
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::seqspace::Seq;

    /// Naive closure: apply every operation to everything until nothing new appears.
    fn brute_closure(d: &Carrier, generators: &[Elem]) -> Vec<Elem> {
        let mut set: BTreeSet<BitSet> = generators.iter().map(|g| g.bits().clone()).collect();
        set.insert(d.zero().into_bits());
        set.insert(d.one().into_bits());
        let swaps = Perm::transpositions(d.dim());
        loop {
            let current: Vec<BitSet> = set.iter().cloned().collect();
            let mut next = set.clone();
            for a in &current {
                next.insert(a.not());
                for t in &swaps {
                    next.insert(d.subst(t, &d.elem(a.clone()).unwrap()).unwrap().into_bits());
                }
                for b in &current {
                    next.insert(a.and(b));
                }
            }
            if next.len() == set.len() {
                return set.into_iter().map(|b| d.elem(b).unwrap()).collect();
            }
            set = next;
        }
    }

    fn seq(v: &[usize]) -> Seq {
        Seq::new(v.to_vec())
    }

    #[test]
    fn empty_generators() {
        let d = Carrier::full(2, 2).unwrap();
        assert_eq!(generate_subalgebra(&d, &[]).unwrap(), vec![d.zero(), d.one()]);
        let empty = Carrier::full(2, 0).unwrap();
        assert_eq!(generate_subalgebra(&empty, &[]).unwrap(), vec![empty.zero()]);
    }

    #[test]
    fn diagonal_is_fixed() {
        let d = Carrier::full(2, 2).unwrap();
        let diag = d.elem_from_seqs(&[seq(&[0, 0]), seq(&[1, 1])]).unwrap();
        let sub = generate_subalgebra(&d, std::slice::from_ref(&diag)).unwrap();
        assert_eq!(sub, vec![d.zero(), diag.complement(), diag, d.one()]);
    }

    #[test]
    fn atom_pulls_in_its_swap() {
        let d = Carrier::full(2, 2).unwrap();
        let a = d.atom(&seq(&[0, 1])).unwrap();
        let sub = generate_subalgebra(&d, &[a]).unwrap();
        assert!(sub.contains(&d.atom(&seq(&[1, 0])).unwrap()));
        assert_eq!(sub, brute_closure(&d, &[d.atom(&seq(&[0, 1])).unwrap()]));
    }

    #[test]
    fn matches_brute_force_closure() {
        let full = Carrier::full(2, 3).unwrap();
        let nonperm = Carrier::from_seqs(3, 2, [seq(&[0, 0, 1]), seq(&[0, 1, 0]), seq(&[1, 1, 0]), seq(&[1, 1, 1])]).unwrap();
        for d in [&full, &nonperm] {
            for v in [1u128, 0b10010, 0b1100, 0b111000101] {
                let g = d.elem_from_value(v & ((1 << d.len()) - 1));
                let mut got = generate_subalgebra(d, std::slice::from_ref(&g)).unwrap();
                got.sort_by(|a, b| a.bits().cmp(b.bits()));
                assert_eq!(got, brute_closure(d, &[g]));
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let d = Carrier::full(3, 2).unwrap();
        let gens: Vec<Elem> = d.seqs().map(|s| d.atom(&s).unwrap()).collect();
        assert_eq!(generate_subalgebra(&d, &gens).unwrap().len(), 256);
        assert_eq!(
            generate_subalgebra_capped(&d, &gens, 255),
            Err(Error::SubalgebraTooLarge { cap: 255 })
        );
    }
}
