//! Sets of hypercube points: a `2^n`-bit mask indexed by subset masks.
//!
//! The point with index `i` is the subset of `{1, ..., n}` whose
//! characteristic mask equals `i`; index 0 is the empty set. For n ≤ 6 the
//! whole mask fits in one word and stays inline.

use std::cmp::Ordering;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::set::{check_var_count, ElementSet};

/// A set of points of the n-cube, i.e. a subset of `2^{1..n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PointSet {
    n: u8,
    words: SmallVec<[u64; 1]>,
}

fn word_count(n: usize) -> usize {
    if n <= 6 {
        1
    } else {
        1 << (n - 6)
    }
}

/// Mask of the valid bits in the last (only) word when n ≤ 6.
pub(crate) fn full_word(n: usize) -> u64 {
    debug_assert!(n <= 6);
    if n == 6 {
        u64::MAX
    } else {
        (1u64 << (1usize << n)) - 1
    }
}

impl PointSet {
    pub fn empty(n: usize) -> Result<Self> {
        check_var_count(n)?;
        Ok(PointSet {
            n: n as u8,
            words: SmallVec::from_elem(0, word_count(n)),
        })
    }

    /// All `2^n` points.
    pub fn full(n: usize) -> Result<Self> {
        check_var_count(n)?;
        let words = if n <= 6 {
            SmallVec::from_elem(full_word(n), 1)
        } else {
            SmallVec::from_elem(u64::MAX, word_count(n))
        };
        Ok(PointSet { n: n as u8, words })
    }

    /// Builds from a single-word mask; only valid for n ≤ 6.
    pub fn from_u64(bits: u64, n: usize) -> Result<Self> {
        check_var_count(n)?;
        if n > 6 {
            return Err(Error::VarCountOutOfRange { n, max: 6 });
        }
        if bits & !full_word(n) != 0 {
            return Err(Error::MaskOutOfRange { bits, n });
        }
        Ok(PointSet {
            n: n as u8,
            words: SmallVec::from_elem(bits, 1),
        })
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn num_points(&self) -> usize {
        1 << self.n
    }

    /// The mask as one word; panics if n > 6.
    pub fn as_u64(&self) -> u64 {
        assert!(self.n <= 6, "PointSet::as_u64 requires n <= 6");
        self.words[0]
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn contains_index(&self, idx: usize) -> bool {
        debug_assert!(idx < self.num_points());
        self.words[idx >> 6] >> (idx & 63) & 1 == 1
    }

    pub fn contains(&self, s: ElementSet) -> bool {
        debug_assert_eq!(s.n(), self.n());
        self.contains_index(s.bits() as usize)
    }

    pub fn insert_index(&mut self, idx: usize) {
        debug_assert!(idx < self.num_points());
        self.words[idx >> 6] |= 1 << (idx & 63);
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union_with(&mut self, other: &PointSet) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn is_disjoint(&self, other: &PointSet) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset_of(&self, other: &PointSet) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Indices of the points in the set, ascending.
    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let base = wi << 6;
            BitIter(w).map(move |b| base + b)
        })
    }

    /// Image of the set under a variable relabeling: point `S` maps to
    /// `σ(S)`.
    pub fn permute(&self, sigma: &crate::set::Permutation) -> crate::error::Result<PointSet> {
        let n = self.n();
        if sigma.n() != n {
            return Err(crate::error::Error::PermutationMismatch {
                perm_n: sigma.n(),
                object_n: n,
            });
        }
        let mut out = PointSet::empty(n)?;
        for idx in self.indices() {
            out.insert_index(sigma.apply_mask(idx as u16) as usize);
        }
        Ok(out)
    }

    /// Numeric comparison of the underlying `2^n`-bit integers.
    pub fn cmp_value(&self, other: &PointSet) -> Ordering {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter().rev().zip(other.words.iter().rev()) {
            match a.cmp(b) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

struct BitIter(u64);

impl Iterator for BitIter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_set_operations() {
        let mut s = PointSet::empty(3).unwrap();
        assert!(s.is_empty());
        s.insert_index(5);
        s.insert_index(0);
        assert_eq!(s.len(), 2);
        assert!(s.contains_index(5));
        assert!(!s.contains_index(1));
        assert_eq!(s.indices().collect::<Vec<_>>(), vec![0, 5]);
        assert_eq!(PointSet::full(3).unwrap().len(), 8);
    }

    #[test]
    fn wide_sets_span_words() {
        let mut s = PointSet::empty(8).unwrap();
        assert_eq!(s.words().len(), 4);
        s.insert_index(200);
        assert!(s.contains_index(200));
        assert_eq!(s.len(), 1);
        assert_eq!(PointSet::full(8).unwrap().len(), 256);
    }

    #[test]
    fn value_ordering_uses_high_words_first() {
        let mut a = PointSet::empty(7).unwrap();
        let mut b = PointSet::empty(7).unwrap();
        a.insert_index(70);
        b.insert_index(3);
        assert_eq!(a.cmp_value(&b), Ordering::Greater);
    }

    #[test]
    fn from_u64_validates_range() {
        assert!(PointSet::from_u64(0x10, 2).is_err());
        assert!(PointSet::from_u64(0xf, 2).is_ok());
        assert!(PointSet::from_u64(0, 7).is_err());
    }
}
