//! Subsets of the ground set `{1, ..., n}` and permutations acting on it.

use std::fmt;

use crate::error::{Error, Result};

/// Hard cap on the number of variables supported by the value types.
pub const MAX_VARS: usize = 16;

/// A subset of `{1, ..., n}` stored as an n-bit mask (bit `i-1` set iff
/// element `i` is present). Subset/superset tests are bitwise AND/OR
/// identities on the mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet {
    bits: u16,
    n: u8,
}

impl ElementSet {
    /// Builds a set from its mask. Fails if `n` is out of range or the mask
    /// uses bits above `n`.
    pub fn new(bits: u16, n: usize) -> Result<Self> {
        check_var_count(n)?;
        if n < 16 && bits >= 1 << n {
            return Err(Error::MaskOutOfRange {
                bits: bits as u64,
                n,
            });
        }
        Ok(ElementSet { bits, n: n as u8 })
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(0, n)
    }

    /// The full ground set `{1, ..., n}`.
    pub fn full(n: usize) -> Result<Self> {
        check_var_count(n)?;
        Ok(ElementSet {
            bits: full_element_mask(n),
            n: n as u8,
        })
    }

    pub fn bits(self) -> u16 {
        self.bits
    }

    pub fn n(self) -> usize {
        self.n as usize
    }

    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    /// Membership of element `i` (1-based).
    pub fn contains(self, i: usize) -> bool {
        debug_assert!(i >= 1 && i <= self.n());
        self.bits >> (i - 1) & 1 == 1
    }

    pub fn is_subset_of(self, other: ElementSet) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.bits & other.bits == self.bits
    }

    pub fn with_element(self, i: usize) -> ElementSet {
        debug_assert!(i >= 1 && i <= self.n());
        ElementSet {
            bits: self.bits | 1 << (i - 1),
            n: self.n,
        }
    }

    pub fn without_element(self, i: usize) -> ElementSet {
        debug_assert!(i >= 1 && i <= self.n());
        ElementSet {
            bits: self.bits & !(1 << (i - 1)),
            n: self.n,
        }
    }

    /// Elements of the set in increasing order.
    pub fn elements(self) -> impl Iterator<Item = usize> {
        let bits = self.bits;
        (1..=self.n()).filter(move |i| bits >> (i - 1) & 1 == 1)
    }

    /// All `2^n` subsets of `{1, ..., n}` in ascending mask order.
    pub fn all(n: usize) -> Result<impl Iterator<Item = ElementSet>> {
        check_var_count(n)?;
        Ok((0..1u32 << n).map(move |bits| ElementSet {
            bits: bits as u16,
            n: n as u8,
        }))
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for i in self.elements() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
            first = false;
        }
        write!(f, "}}")
    }
}

/// A bijection on `{1, ..., n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    /// `map[i]` is the image of element `i+1`, stored 0-based.
    map: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Result<Self> {
        check_var_count(n)?;
        Ok(Permutation {
            map: (0..n as u8).collect(),
        })
    }

    /// Builds a permutation from the 1-based image list `mapping[i-1] = σ(i)`.
    pub fn from_mapping(mapping: &[usize]) -> Result<Self> {
        let n = mapping.len();
        check_var_count(n)?;
        let mut seen = vec![false; n];
        for &v in mapping {
            if v < 1 || v > n || seen[v - 1] {
                return Err(Error::NotPermutation { len: n, n });
            }
            seen[v - 1] = true;
        }
        Ok(Permutation {
            map: mapping.iter().map(|&v| (v - 1) as u8).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.map.len()
    }

    /// Image of element `i` (1-based).
    pub fn image(&self, i: usize) -> usize {
        self.map[i - 1] as usize + 1
    }

    /// Applies the permutation elementwise to a set: `σ(S) = {σ(i) : i ∈ S}`.
    pub fn apply_set(&self, s: ElementSet) -> Result<ElementSet> {
        if s.n() != self.n() {
            return Err(Error::PermutationMismatch {
                perm_n: self.n(),
                object_n: s.n(),
            });
        }
        Ok(ElementSet {
            bits: self.apply_mask(s.bits()),
            n: s.n,
        })
    }

    /// Internal 0-based image list, used by the table remap kernels.
    pub(crate) fn map_slice(&self) -> &[u8] {
        &self.map
    }

    pub(crate) fn apply_mask(&self, bits: u16) -> u16 {
        let mut out = 0u16;
        let mut w = bits;
        while w != 0 {
            let i = w.trailing_zeros() as usize;
            out |= 1 << self.map[i];
            w &= w - 1;
        }
        out
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.n() != other.n() {
            return Err(Error::PermutationMismatch {
                perm_n: self.n(),
                object_n: other.n(),
            });
        }
        Ok(Permutation {
            map: (0..self.n()).map(|i| self.map[other.map[i] as usize]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut map = vec![0u8; self.n()];
        for (i, &v) in self.map.iter().enumerate() {
            map[v as usize] = i as u8;
        }
        Permutation { map }
    }

    /// All `n!` permutations in lexicographic order of their image lists.
    /// Capped at n = 8 (40320 permutations), the same cap as exact
    /// canonicalization.
    pub fn all(n: usize) -> Result<Vec<Permutation>> {
        if n == 0 || n > 8 {
            return Err(Error::VarCountOutOfRange { n, max: 8 });
        }
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(n);
        let mut used = vec![false; n];
        gen_perms(n, &mut current, &mut used, &mut out);
        Ok(out)
    }
}

fn gen_perms(n: usize, current: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Permutation>) {
    if current.len() == n {
        out.push(Permutation {
            map: current.clone(),
        });
        return;
    }
    for v in 0..n {
        if !used[v] {
            used[v] = true;
            current.push(v as u8);
            gen_perms(n, current, used, out);
            current.pop();
            used[v] = false;
        }
    }
}

pub(crate) fn check_var_count(n: usize) -> Result<()> {
    if n == 0 || n > MAX_VARS {
        return Err(Error::VarCountOutOfRange { n, max: MAX_VARS });
    }
    Ok(())
}

pub(crate) fn full_element_mask(n: usize) -> u16 {
    if n == 16 {
        u16::MAX
    } else {
        (1u16 << n) - 1
    }
}
