//! Fixed-length bit vectors with inline storage for up to 128 bits.

use std::cmp::Ordering;

use smallvec::SmallVec;

const WORD: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    len: usize,
    words: SmallVec<[u64; 2]>,
}

fn word_count(len: usize) -> usize {
    len.div_ceil(WORD)
}

impl BitSet {
    pub fn zeros(len: usize) -> Self {
        BitSet {
            len,
            words: SmallVec::from_elem(0, word_count(len)),
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut b = BitSet {
            len,
            words: SmallVec::from_elem(!0, word_count(len)),
        };
        b.trim();
        b
    }

    /// The bit vector whose numeric value is `value` (bit `p` has weight `2^p`).
    pub fn from_value(len: usize, value: u128) -> Self {
        let mut b = BitSet::zeros(len);
        if let Some(w) = b.words.get_mut(0) {
            *w = value as u64;
        }
        if let Some(w) = b.words.get_mut(1) {
            *w = (value >> 64) as u64;
        }
        b.trim();
        b
    }

    pub fn from_positions(len: usize, positions: impl IntoIterator<Item = usize>) -> Self {
        let mut b = BitSet::zeros(len);
        for p in positions {
            b.insert(p);
        }
        b
    }

    /// Independent fair coin bits.
    pub fn random<R: rand::Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        let mut b = BitSet {
            len,
            words: (0..word_count(len)).map(|_| rng.next_u64()).collect(),
        };
        b.trim();
        b
    }

    fn trim(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, p: usize) -> bool {
        debug_assert!(p < self.len);
        self.words[p / WORD] >> (p % WORD) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, p: usize) {
        assert!(p < self.len, "bit {p} out of range {}", self.len);
        self.words[p / WORD] |= 1 << (p % WORD);
    }

    pub fn remove(&mut self, p: usize) {
        assert!(p < self.len, "bit {p} out of range {}", self.len);
        self.words[p / WORD] &= !(1 << (p % WORD));
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn and(&self, other: &BitSet) -> BitSet {
        self.zip(other, |a, b| a & b)
    }

    pub fn or(&self, other: &BitSet) -> BitSet {
        self.zip(other, |a, b| a | b)
    }

    pub fn xor(&self, other: &BitSet) -> BitSet {
        self.zip(other, |a, b| a ^ b)
    }

    pub fn not(&self) -> BitSet {
        let mut b = BitSet {
            len: self.len,
            words: self.words.iter().map(|w| !w).collect(),
        };
        b.trim();
        b
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    fn zip(&self, other: &BitSet, op: impl Fn(u64, u64) -> u64) -> BitSet {
        debug_assert_eq!(self.len, other.len);
        BitSet {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        }
    }

    /// The vector whose bit `p` is bit `positions[p]` of `self`.
    pub fn gather(&self, positions: &[usize]) -> BitSet {
        if self.len <= WORD && positions.len() <= WORD {
            let w = self.words.first().copied().unwrap_or(0);
            let mut o = 0u64;
            for (p, &q) in positions.iter().enumerate() {
                o |= (w >> q & 1) << p;
            }
            return BitSet {
                len: positions.len(),
                words: SmallVec::from_elem(o, word_count(positions.len())),
            };
        }
        let mut out = BitSet::zeros(positions.len());
        for (p, &q) in positions.iter().enumerate() {
            debug_assert!(q < self.len);
            out.words[p / WORD] |= (self.words[q / WORD] >> (q % WORD) & 1) << (p % WORD);
        }
        out
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let tz = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD + tz)
            })
        })
    }

    /// Numeric value, if the vector fits in 128 bits.
    pub fn value(&self) -> Option<u128> {
        if self.len > 128 {
            return None;
        }
        let lo = self.words.first().copied().unwrap_or(0) as u128;
        let hi = self.words.get(1).copied().unwrap_or(0) as u128;
        Some(lo | hi << 64)
    }
}

impl Ord for BitSet {
    /// Numeric order for equal lengths; shorter vectors sort first.
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for BitSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
