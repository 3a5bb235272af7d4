//! Sequences of `^n u`, permutations of `n`, and the right action `s ↦ s∘f`.
//!
//! Sequences are ranked in pure lexicographic order: coordinate 0 is the most
//! significant digit of a base-`u` numeral.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A sequence `s ∈ ^n U`, stored as its list of base elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Seq(Vec<usize>);

/// A permutation of `{0..n-1}` in one-line image notation: `images[i] = f(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Perm(Vec<usize>);

/// Position of a sequence in the lexicographic enumeration of `^n u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SpaceRank(pub u64);

/// Number of sequences in `^n u`, i.e. `u^n` (with `0^0 = 1`).
pub fn space_size(n: usize, base: usize) -> Result<u64> {
    let exp = u32::try_from(n).map_err(|_| Error::SpaceOverflow { n, base })?;
    (base as u64)
        .checked_pow(exp)
        .ok_or(Error::SpaceOverflow { n, base })
}

impl Seq {
    pub fn new(entries: Vec<usize>) -> Self {
        Seq(entries)
    }

    /// A sequence that is valid for base `base`, or an error naming the bad entry.
    pub fn checked(entries: Vec<usize>, base: usize) -> Result<Self> {
        if let Some((coord, &entry)) = entries.iter().enumerate().find(|(_, &e)| e >= base) {
            return Err(Error::EntryOutOfRange { coord, entry, base });
        }
        Ok(Seq(entries))
    }

    /// The constant sequence with every coordinate equal to `value`.
    pub fn constant(n: usize, value: usize) -> Self {
        Seq(vec![value; n])
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<usize> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_constant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    /// The set of base elements the sequence takes.
    pub fn range(&self) -> BTreeSet<usize> {
        self.0.iter().copied().collect()
    }

    /// Mixed-radix rank with coordinate 0 most significant.
    pub fn rank(&self, base: usize) -> Result<SpaceRank> {
        let mut value: u64 = 0;
        for (coord, &entry) in self.0.iter().enumerate() {
            if entry >= base {
                return Err(Error::EntryOutOfRange { coord, entry, base });
            }
            value = value
                .checked_mul(base as u64)
                .and_then(|v| v.checked_add(entry as u64))
                .ok_or(Error::SpaceOverflow { n: self.dim(), base })?;
        }
        Ok(SpaceRank(value))
    }

    /// Inverse of [`Seq::rank`].
    pub fn unrank(rank: SpaceRank, n: usize, base: usize) -> Result<Self> {
        let size = space_size(n, base)?;
        if rank.0 >= size {
            return Err(Error::RankOutOfRange { rank: rank.0, size });
        }
        let mut rest = rank.0;
        let mut entries = vec![0; n];
        for slot in entries.iter_mut().rev() {
            *slot = (rest % base as u64) as usize;
            rest /= base as u64;
        }
        Ok(Seq(entries))
    }

    /// Precomposition `(s∘f)(i) = s(f(i))`.
    pub fn compose_right(&self, f: &Perm) -> Result<Self> {
        if self.dim() != f.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: f.dim(),
            });
        }
        Ok(Seq(f.0.iter().map(|&j| self.0[j]).collect()))
    }

    /// The unit sequence `e_i`: 1 at coordinate `i`, 0 elsewhere.
    pub fn unit(n: usize, i: usize) -> Result<Self> {
        if i >= n {
            return Err(Error::CoordinateOutOfRange { n, i });
        }
        let mut entries = vec![0; n];
        entries[i] = 1;
        Ok(Seq(entries))
    }

    /// Applies a value renaming to every entry.
    pub fn rename(&self, map: impl Fn(usize) -> usize) -> Self {
        Seq(self.0.iter().map(|&e| map(e)).collect())
    }
}

impl fmt::Display for Seq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl Perm {
    /// Validates a one-line image list.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &img in &images {
            if img >= n || seen[img] {
                return Err(Error::NotAPermutation(images));
            }
            seen[img] = true;
        }
        Ok(Perm(images))
    }

    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    /// The transposition `[i,j]`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        if i == j || i >= n || j >= n {
            return Err(Error::InvalidTransposition { n, i, j });
        }
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i, j);
        Ok(Perm(images))
    }

    /// The cycle `(0 1 … n-1)`, i.e. `i ↦ i+1 mod n`.
    pub fn cycle_up(n: usize) -> Self {
        Perm((0..n).map(|i| (i + 1) % n).collect())
    }

    /// The cycle `(n-1 n-2 … 0)`, i.e. `i ↦ i-1 mod n`.
    pub fn cycle_down(n: usize) -> Self {
        Perm((0..n).map(|i| (i + n - 1) % n).collect())
    }

    /// Builds a permutation from disjoint cycles, e.g. `[[0,1,2]]`.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (pos, &a) in cycle.iter().enumerate() {
                if a >= n || touched[a] {
                    return Err(Error::Invalid(format!(
                        "cycles {cycles:?} are not disjoint cycles on {n} points"
                    )));
                }
                touched[a] = true;
                images[a] = cycle[(pos + 1) % cycle.len()];
            }
        }
        Perm::from_images(images)
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `(self∘g)(i) = self(g(i))`.
    pub fn compose(&self, g: &Perm) -> Result<Perm> {
        if self.dim() != g.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: g.dim(),
            });
        }
        Ok(Perm(g.0.iter().map(|&j| self.0[j]).collect()))
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.dim()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v] = i;
        }
        Perm(inv)
    }

    /// All transpositions `[i,j]` with `i < j`.
    pub fn transpositions(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let mut images: Vec<usize> = (0..n).collect();
                images.swap(i, j);
                out.push(Perm(images));
            }
        }
        out
    }

    /// Every permutation of `n`, in lexicographic order of image lists.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (0..n).collect();
        loop {
            out.push(Perm(current.clone()));
            // next permutation in lexicographic order
            let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
            current.swap(i - 1, j);
            current[i..].reverse();
        }
        out
    }
}

impl<'de> Deserialize<'de> for Perm {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let images = Vec::<usize>::deserialize(de)?;
        Perm::from_images(images).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(v: &[usize]) -> Seq {
        Seq::new(v.to_vec())
    }

    fn perm(v: &[usize]) -> Perm {
        Perm::from_images(v.to_vec()).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(seq(&[0, 0]).rank(2).unwrap(), SpaceRank(0));
        assert_eq!(seq(&[0, 1]).rank(2).unwrap(), SpaceRank(1));
        assert_eq!(seq(&[1, 0]).rank(2).unwrap(), SpaceRank(2));
        assert_eq!(seq(&[1, 1]).rank(2).unwrap(), SpaceRank(3));
        assert!(matches!(
            seq(&[0, 2]).rank(2),
            Err(Error::EntryOutOfRange { coord: 1, entry: 2, base: 2 })
        ));
    }

    #[test]
    fn unrank_examples() {
        assert_eq!(Seq::unrank(SpaceRank(0), 2, 2).unwrap(), seq(&[0, 0]));
        assert_eq!(Seq::unrank(SpaceRank(2), 2, 2).unwrap(), seq(&[1, 0]));
        assert_eq!(Seq::unrank(SpaceRank(3), 2, 3).unwrap(), seq(&[1, 0]));
        assert!(Seq::unrank(SpaceRank(4), 2, 2).is_err());
        assert!(Seq::unrank(SpaceRank(0), 2, 0).is_err());
        assert_eq!(Seq::unrank(SpaceRank(0), 0, 0).unwrap(), seq(&[]));
    }

    #[test]
    fn rank_unrank_exhaustive() {
        for n in 0..=4 {
            for u in 0..=4 {
                let size = space_size(n, u).unwrap();
                for r in 0..size {
                    let s = Seq::unrank(SpaceRank(r), n, u).unwrap();
                    assert_eq!(s.rank(u).unwrap(), SpaceRank(r));
                }
            }
        }
    }

    #[test]
    fn compose_right_examples() {
        let swap = Perm::transposition(2, 0, 1).unwrap();
        assert_eq!(seq(&[0, 1]).compose_right(&swap).unwrap(), seq(&[1, 0]));

        let f = perm(&[1, 2, 0]);
        let g = perm(&[2, 0, 1]);
        let e = |i| Seq::unit(3, i).unwrap();
        assert_eq!(e(1).compose_right(&f).unwrap(), e(0));
        assert_eq!(e(1).compose_right(&g).unwrap(), e(2));
        assert!(seq(&[0, 1]).compose_right(&f).is_err());
    }

    #[test]
    fn transposition_examples() {
        assert_eq!(Perm::transposition(3, 0, 1).unwrap(), perm(&[1, 0, 2]));
        assert_eq!(Perm::transposition(2, 0, 1).unwrap(), perm(&[1, 0]));
        assert_eq!(Perm::transposition(4, 1, 3).unwrap(), perm(&[0, 3, 2, 1]));
        assert!(Perm::transposition(3, 1, 1).is_err());
        assert!(Perm::transposition(3, 0, 3).is_err());
    }

    #[test]
    fn compose_and_inverse_examples() {
        assert_eq!(perm(&[1, 0]).compose(&perm(&[1, 0])).unwrap(), perm(&[0, 1]));
        assert_eq!(
            perm(&[1, 2, 0]).compose(&perm(&[1, 2, 0])).unwrap(),
            perm(&[2, 0, 1])
        );
        assert_eq!(
            perm(&[1, 2, 0]).compose(&perm(&[2, 0, 1])).unwrap(),
            Perm::identity(3)
        );
        assert!(perm(&[1, 0]).compose(&Perm::identity(3)).is_err());

        assert_eq!(Perm::identity(3).inverse(), Perm::identity(3));
        assert_eq!(perm(&[1, 2, 0]).inverse(), perm(&[2, 0, 1]));
        assert_eq!(perm(&[1, 0]).inverse(), perm(&[1, 0]));
    }

    #[test]
    fn from_images_validates() {
        assert!(Perm::from_images(vec![1, 2, 0]).is_ok());
        assert!(matches!(
            Perm::from_images(vec![0, 0, 1]),
            Err(Error::NotAPermutation(_))
        ));
        assert!(Perm::from_images(vec![0, 3, 1]).is_err());
        assert_eq!(Perm::from_images(vec![]).unwrap().dim(), 0);
    }

    #[test]
    fn unit_examples() {
        assert_eq!(Seq::unit(2, 1).unwrap(), seq(&[0, 1]));
        assert_eq!(Seq::unit(3, 0).unwrap(), seq(&[1, 0, 0]));
        assert_eq!(Seq::unit(4, 2).unwrap(), seq(&[0, 0, 1, 0]));
        assert!(Seq::unit(2, 2).is_err());
    }

    #[test]
    fn named_cycles() {
        assert_eq!(Perm::cycle_up(3), perm(&[1, 2, 0]));
        assert_eq!(Perm::cycle_down(3), perm(&[2, 0, 1]));
        assert_eq!(Perm::cycle_up(2), Perm::cycle_down(2));
        assert_eq!(
            Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap(),
            Perm::cycle_up(3)
        );
        assert!(Perm::from_cycles(3, &[vec![0, 1], vec![1, 2]]).is_err());
    }

    #[test]
    fn all_perms_counts() {
        assert_eq!(Perm::all(0).len(), 1);
        assert_eq!(Perm::all(1).len(), 1);
        assert_eq!(Perm::all(3).len(), 6);
        assert_eq!(Perm::all(4).len(), 24);
        assert_eq!(Perm::all(3)[0], Perm::identity(3));
        assert_eq!(Perm::transpositions(4).len(), 6);
    }
}
