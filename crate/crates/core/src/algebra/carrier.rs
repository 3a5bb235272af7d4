use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock, RwLock};

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::limits::DEFAULT_MAX_CARRIER;
use crate::seqspace::{space_size, Perm, Seq, SpaceRank};

use super::elem::Elem;
use super::subst::SubstMap;

/// Total map entries (maps × members) a carrier keeps cached.
const SUBST_CACHE_ENTRIES: usize = 1 << 21;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// Opaque identity of a carrier; elements remember which carrier owns them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CarrierId(u64);

impl CarrierId {
    fn fresh() -> Self {
        CarrierId(NEXT_ID.fetch_add(1, Ordering::Relaxed))
    }
}

/// A set `D ⊆ ^n u` of sequences: the unit of a relativized set algebra.
///
/// Members are kept as sorted ranks. Elements of `℘(D)` index bits by
/// position in this list, so a small carrier inside a large space stays cheap.
pub struct Carrier {
    id: CarrierId,
    n: usize,
    base: usize,
    members: Vec<SpaceRank>,
    index: HashMap<SpaceRank, usize>,
    permutable: OnceLock<bool>,
    subst_maps: RwLock<HashMap<Perm, Arc<SubstMap>>>,
}

impl Carrier {
    fn from_sorted(n: usize, base: usize, members: Vec<SpaceRank>) -> Self {
        let index = members.iter().enumerate().map(|(p, &r)| (r, p)).collect();
        Carrier {
            id: CarrierId::fresh(),
            n,
            base,
            members,
            index,
            permutable: OnceLock::new(),
            subst_maps: RwLock::new(HashMap::new()),
        }
    }

    /// The full space `^n k`, capped at the default member limit.
    pub fn full(n: usize, k: usize) -> Result<Self> {
        Self::full_capped(n, k, DEFAULT_MAX_CARRIER)
    }

    pub fn full_capped(n: usize, k: usize, cap: u64) -> Result<Self> {
        let size = space_size(n, k).map_err(|_| Error::CarrierTooLarge {
            requested: u64::MAX,
            cap,
        })?;
        if size > cap {
            return Err(Error::CarrierTooLarge {
                requested: size,
                cap,
            });
        }
        let carrier = Self::from_sorted(n, k, (0..size).map(SpaceRank).collect());
        let _ = carrier.permutable.set(true);
        Ok(carrier)
    }

    /// A carrier from an explicit list of sequences; duplicates are dropped.
    pub fn from_seqs(n: usize, base: usize, seqs: impl IntoIterator<Item = Seq>) -> Result<Self> {
        let mut ranks = BTreeSet::new();
        for s in seqs {
            if s.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: s.dim(),
                });
            }
            ranks.insert(s.rank(base)?);
        }
        Ok(Self::from_sorted(n, base, ranks.into_iter().collect()))
    }

    pub fn from_ranks(n: usize, base: usize, ranks: impl IntoIterator<Item = SpaceRank>) -> Result<Self> {
        let size = space_size(n, base)?;
        let mut sorted = BTreeSet::new();
        for r in ranks {
            if r.0 >= size {
                return Err(Error::RankOutOfRange { rank: r.0, size });
            }
            sorted.insert(r);
        }
        Ok(Self::from_sorted(n, base, sorted.into_iter().collect()))
    }

    pub fn id(&self) -> CarrierId {
        self.id
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[SpaceRank] {
        &self.members
    }

    /// Whether this carrier is all of `^n u`.
    pub fn is_full(&self) -> bool {
        space_size(self.n, self.base).is_ok_and(|s| s == self.members.len() as u64)
    }

    /// The sequence at position `p`.
    pub fn seq_at(&self, p: usize) -> Seq {
        Seq::unrank(self.members[p], self.n, self.base).expect("member ranks are in range")
    }

    pub fn seqs(&self) -> impl Iterator<Item = Seq> + '_ {
        (0..self.len()).map(|p| self.seq_at(p))
    }

    pub fn position_of_rank(&self, r: SpaceRank) -> Option<usize> {
        self.index.get(&r).copied()
    }

    /// Position of `s` in the member list, if `s ∈ D`.
    pub fn position(&self, s: &Seq) -> Option<usize> {
        if s.dim() != self.n {
            return None;
        }
        s.rank(self.base).ok().and_then(|r| self.position_of_rank(r))
    }

    pub fn contains(&self, s: &Seq) -> bool {
        self.position(s).is_some()
    }

    /// Closure of `D` under `s ↦ s∘[i,j]` for every `i ≠ j`. Cached.
    pub fn is_permutable(&self) -> bool {
        *self.permutable.get_or_init(|| {
            let swaps = Perm::transpositions(self.n);
            self.seqs().all(|s| {
                swaps
                    .iter()
                    .all(|t| self.contains(&s.compose_right(t).expect("dimensions agree")))
            })
        })
    }

    /// Whether the permutability check has already run, and its answer.
    pub fn permutable_cached(&self) -> Option<bool> {
        self.permutable.get().copied()
    }

    /// The smallest permutable superset: the union of the orbits of `D`'s
    /// members under all permutations of the coordinates.
    pub fn permutable_closure(&self) -> Result<Self> {
        self.permutable_closure_capped(DEFAULT_MAX_CARRIER)
    }

    pub fn permutable_closure_capped(&self, cap: u64) -> Result<Self> {
        let swaps = Perm::transpositions(self.n);
        let mut seen: BTreeSet<SpaceRank> = self.members.iter().copied().collect();
        let mut queue: VecDeque<Seq> = self.seqs().collect();
        while let Some(s) = queue.pop_front() {
            for t in &swaps {
                let next = s.compose_right(t)?;
                if seen.insert(next.rank(self.base)?) {
                    if seen.len() as u64 > cap {
                        return Err(Error::CarrierTooLarge {
                            requested: seen.len() as u64,
                            cap,
                        });
                    }
                    queue.push_back(next);
                }
            }
        }
        let closure = Self::from_sorted(self.n, self.base, seen.into_iter().collect());
        let _ = closure.permutable.set(true);
        Ok(closure)
    }

    /// Whether every member of `sub` is a member of `self` (same `n`, `u`).
    pub fn contains_carrier(&self, sub: &Carrier) -> bool {
        self.n == sub.n
            && self.base == sub.base
            && sub.members.iter().all(|r| self.index.contains_key(r))
    }

    /// The precomputed action of `S_f` on this carrier.
    pub fn subst_map(&self, f: &Perm) -> Result<Arc<SubstMap>> {
        if f.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: f.dim(),
            });
        }
        if let Some(map) = self.subst_maps.read().expect("subst cache poisoned").get(f) {
            return Ok(Arc::clone(map));
        }
        let map = Arc::new(SubstMap::build(self, f));
        let mut cache = self.subst_maps.write().expect("subst cache poisoned");
        if (cache.len() + 1) * self.len() <= SUBST_CACHE_ENTRIES {
            cache.entry(f.clone()).or_insert_with(|| Arc::clone(&map));
        }
        Ok(map)
    }

    pub fn zero(&self) -> Elem {
        Elem::new(self.id, BitSet::zeros(self.len()))
    }

    pub fn one(&self) -> Elem {
        Elem::new(self.id, BitSet::ones(self.len()))
    }

    /// Wraps a bit vector as an element of `℘(D)`.
    pub fn elem(&self, bits: BitSet) -> Result<Elem> {
        if bits.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: bits.len(),
            });
        }
        Ok(Elem::new(self.id, bits))
    }

    /// The element whose bit vector has numeric value `value`.
    pub fn elem_from_value(&self, value: u128) -> Elem {
        Elem::new(self.id, BitSet::from_value(self.len(), value))
    }

    /// The element `{s : s ∈ seqs}`; every sequence must be a member.
    pub fn elem_from_seqs<'a>(&self, seqs: impl IntoIterator<Item = &'a Seq>) -> Result<Elem> {
        let mut bits = BitSet::zeros(self.len());
        for s in seqs {
            let p = self
                .position(s)
                .ok_or_else(|| Error::NotAMember(s.entries().to_vec()))?;
            bits.insert(p);
        }
        Ok(Elem::new(self.id, bits))
    }

    /// The singleton `{s}`.
    pub fn atom(&self, s: &Seq) -> Result<Elem> {
        self.elem_from_seqs(std::iter::once(s))
    }

    /// The sequences in `x`, in carrier order.
    pub fn seqs_of(&self, x: &Elem) -> Result<Vec<Seq>> {
        self.check_owner(x)?;
        Ok(x.bits().iter_ones().map(|p| self.seq_at(p)).collect())
    }

    pub fn check_owner(&self, x: &Elem) -> Result<()> {
        if x.carrier() == self.id {
            Ok(())
        } else {
            Err(Error::CarrierMismatch)
        }
    }

    /// `S_f(X) = {q ∈ D : q∘f ∈ X}`.
    pub fn subst(&self, f: &Perm, x: &Elem) -> Result<Elem> {
        self.check_owner(x)?;
        let map = self.subst_map(f)?;
        Ok(Elem::new(self.id, map.apply(x.bits())))
    }

    /// Every element of `℘(D)`, in numeric order. Only sensible for small `D`.
    pub fn all_elems(&self) -> impl Iterator<Item = Elem> + '_ {
        assert!(self.len() < 64, "cannot enumerate ℘(D) for |D| = {}", self.len());
        (0..1u64 << self.len()).map(|v| self.elem_from_value(v as u128))
    }

    /// Set-builder rendering of an element, e.g. `{(0,1),(1,0)}`.
    pub fn display_elem(&self, x: &Elem) -> String {
        let inner: Vec<String> = x
            .bits()
            .iter_ones()
            .map(|p| self.seq_at(p).to_string())
            .collect();
        format!("{{{}}}", inner.join(","))
    }
}

impl PartialEq for Carrier {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.base == other.base && self.members == other.members
    }
}

impl Eq for Carrier {}

impl fmt::Debug for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Carrier")
            .field("id", &self.id)
            .field("n", &self.n)
            .field("base", &self.base)
            .field("len", &self.members.len())
            .field("permutable", &self.permutable.get())
            .finish()
    }
}

/// A clone keeps the identity, so elements of the original remain valid.
impl Clone for Carrier {
    fn clone(&self) -> Self {
        let permutable = OnceLock::new();
        if let Some(&p) = self.permutable.get() {
            let _ = permutable.set(p);
        }
        Carrier {
            id: self.id,
            n: self.n,
            base: self.base,
            members: self.members.clone(),
            index: self.index.clone(),
            permutable,
            subst_maps: RwLock::new(self.subst_maps.read().map(|m| m.clone()).unwrap_or_default()),
        }
    }
}

impl fmt::Display for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let seqs: Vec<String> = self.seqs().map(|s| s.to_string()).collect();
        write!(f, "{{{}}}", seqs.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(v: &[usize]) -> Seq {
        Seq::new(v.to_vec())
    }

    #[test]
    fn full_carrier_examples() {
        let d = Carrier::full(2, 2).unwrap();
        assert_eq!(d.members(), &[SpaceRank(0), SpaceRank(1), SpaceRank(2), SpaceRank(3)]);
        assert_eq!(d.permutable_cached(), Some(true));

        let empty = Carrier::full(2, 0).unwrap();
        assert!(empty.is_empty());
        assert_eq!(empty.zero(), empty.one());

        assert_eq!(Carrier::full(3, 2).unwrap().len(), 8);
        assert!(matches!(
            Carrier::full_capped(3, 4, 32),
            Err(Error::CarrierTooLarge { requested: 64, cap: 32 })
        ));
        assert!(Carrier::full(2, 1 << 11).is_err());
    }

    #[test]
    fn from_seqs_examples() {
        let g = Carrier::from_seqs(2, 2, [seq(&[0, 1]), seq(&[1, 0])]).unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(g.permutable_cached(), None);
        assert!(Carrier::from_seqs(2, 2, []).unwrap().is_empty());
        assert_eq!(
            Carrier::from_seqs(2, 2, [seq(&[0, 1]), seq(&[0, 1])]).unwrap().len(),
            1
        );
        assert!(Carrier::from_seqs(2, 2, [seq(&[0, 2])]).is_err());
        assert!(Carrier::from_seqs(2, 2, [seq(&[0, 1, 1])]).is_err());
    }

    #[test]
    fn permutability_examples() {
        assert!(Carrier::full(2, 2).unwrap().is_permutable());
        for n in 2..=5 {
            let g = Carrier::from_seqs(n, 2, (0..n).map(|i| Seq::unit(n, i).unwrap())).unwrap();
            assert!(g.is_permutable(), "unit vectors at n={n}");
        }
        let d = Carrier::from_seqs(2, 2, [seq(&[0, 1])]).unwrap();
        assert!(!d.is_permutable());
        assert_eq!(d.permutable_cached(), Some(false));
    }

    #[test]
    fn closure_examples() {
        let d = Carrier::from_seqs(2, 2, [seq(&[0, 1])]).unwrap();
        let c = d.permutable_closure().unwrap();
        assert_eq!(c.seqs().collect::<Vec<_>>(), vec![seq(&[0, 1]), seq(&[1, 0])]);
        assert!(c.is_permutable());

        let full = Carrier::full(3, 2).unwrap();
        assert_eq!(full.permutable_closure().unwrap(), full);

        let inj = Carrier::from_seqs(3, 3, [seq(&[0, 1, 2])]).unwrap();
        let orbit = inj.permutable_closure().unwrap();
        assert_eq!(orbit.len(), 6);
        assert!(orbit.seqs().all(|s| s.range().len() == 3));

        assert!(inj.permutable_closure_capped(4).is_err());
    }

    #[test]
    fn closure_is_idempotent() {
        let d = Carrier::from_seqs(3, 3, [seq(&[0, 0, 1]), seq(&[2, 1, 0])]).unwrap();
        let once = d.permutable_closure().unwrap();
        let twice = once.permutable_closure().unwrap();
        assert_eq!(once, twice);
        // re-check permutability from scratch rather than through the cache
        let fresh = Carrier::from_ranks(3, 3, once.members().iter().copied()).unwrap();
        assert!(fresh.is_permutable());
    }

    #[test]
    fn atoms() {
        let d = Carrier::full(2, 2).unwrap();
        let a = d.atom(&seq(&[1, 0])).unwrap();
        assert_eq!(a.bits().iter_ones().collect::<Vec<_>>(), vec![2]);

        let g = Carrier::from_seqs(2, 2, [Seq::unit(2, 0).unwrap(), Seq::unit(2, 1).unwrap()]).unwrap();
        // e_1 = (0,1) sorts before e_0 = (1,0)
        let e0 = g.atom(&Seq::unit(2, 0).unwrap()).unwrap();
        assert_eq!(e0.bits().iter_ones().collect::<Vec<_>>(), vec![1]);
        assert!(matches!(g.atom(&seq(&[0, 0])), Err(Error::NotAMember(_))));
    }

    #[test]
    fn structural_equality_ignores_identity() {
        let a = Carrier::full(2, 2).unwrap();
        let b = Carrier::full(2, 2).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.id(), b.id());
        assert_eq!(a.zero().meet(&b.zero()), Err(Error::CarrierMismatch));
    }
}
