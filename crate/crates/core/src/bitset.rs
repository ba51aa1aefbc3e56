//! Fixed-length bit sets over `u64` words.
//!
//! Pair-coverage sets live here. The exact solver works on the raw word
//! slices through the free functions at the bottom of the module.

/// A fixed-capacity set of bit indices `0..len`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    words: Vec<u64>,
    len: usize,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        Self {
            words: vec![0; words_for(len)],
            len,
        }
    }

    /// A set with every index in `0..len` present.
    pub fn full(len: usize) -> Self {
        let mut set = Self {
            words: vec![u64::MAX; words_for(len)],
            len,
        };
        set.clear_tail();
        set
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn insert(&mut self, bit: usize) {
        debug_assert!(bit < self.len);
        self.words[bit / 64] |= 1 << (bit % 64);
    }

    #[inline]
    pub fn remove(&mut self, bit: usize) {
        debug_assert!(bit < self.len);
        self.words[bit / 64] &= !(1 << (bit % 64));
    }

    #[inline]
    pub fn contains(&self, bit: usize) -> bool {
        bit < self.len && self.words[bit / 64] >> (bit % 64) & 1 == 1
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_full(&self) -> bool {
        is_full_words(&self.words, self.len)
    }

    pub fn union_with(&mut self, other: &BitSet) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn difference_with(&mut self, other: &BitSet) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    /// `|self ∩ other|` without allocating.
    pub fn intersection_count(&self, other: &BitSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let tz = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + tz)
            })
        })
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    fn clear_tail(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl std::fmt::Debug for BitSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[inline]
pub fn words_for(len: usize) -> usize {
    len.div_ceil(64)
}

/// True when the first `len` bits of `words` are all set.
#[inline]
pub fn is_full_words(words: &[u64], len: usize) -> bool {
    let full = len / 64;
    if words[..full].iter().any(|&w| w != u64::MAX) {
        return false;
    }
    let rem = len % 64;
    rem == 0 || words[full] & ((1u64 << rem) - 1) == (1u64 << rem) - 1
}

/// True when `a | b` covers the first `len` bits; exits on the first gap.
#[inline]
pub fn union_is_full(a: &[u64], b: &[u64], len: usize) -> bool {
    let full = len / 64;
    for i in 0..full {
        if a[i] | b[i] != u64::MAX {
            return false;
        }
    }
    let rem = len % 64;
    rem == 0 || {
        let mask = (1u64 << rem) - 1;
        (a[full] | b[full]) & mask == mask
    }
}

#[inline]
pub fn union_into(dst: &mut [u64], a: &[u64], b: &[u64]) {
    for ((d, x), y) in dst.iter_mut().zip(a).zip(b) {
        *d = x | y;
    }
}

#[inline]
pub fn popcount(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}
