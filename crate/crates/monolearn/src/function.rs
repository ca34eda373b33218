//! Monotone Boolean functions as explicit truth tables, their antichain
//! certificates, and the permutation action on them.
//!
//! A function on n variables is a `2^n`-bit table; bit `i` is the value on
//! the subset whose characteristic mask is `i` (the low bit is the empty
//! set). Monotonicity is validated at construction: corrupt tables are loud
//! errors, never silently repaired.

use std::cmp::Ordering;
use std::fmt;

use crate::bits;
use crate::error::{Error, Result};
use crate::points::PointSet;
use crate::set::{check_var_count, ElementSet, Permutation};

/// A monotone Boolean function `f: 2^{1..n} -> {0,1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonotoneFn {
    table: PointSet,
}

/// A collection of pairwise incomparable subsets of `{1, ..., n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Antichain {
    n: u8,
    sets: Vec<ElementSet>,
}

impl Antichain {
    /// Validates pairwise incomparability (duplicates count as comparable)
    /// and stores the members sorted by mask.
    pub fn new(n: usize, mut sets: Vec<ElementSet>) -> Result<Self> {
        check_var_count(n)?;
        sets.sort_by_key(|s| s.bits());
        for (idx, &a) in sets.iter().enumerate() {
            debug_assert_eq!(a.n(), n);
            for &b in &sets[idx + 1..] {
                if a.is_subset_of(b) || b.is_subset_of(a) {
                    return Err(Error::NotAntichain {
                        a: a.bits() as u64,
                        b: b.bits() as u64,
                    });
                }
            }
        }
        Ok(Antichain { n: n as u8, sets })
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// Members in ascending mask order.
    pub fn sets(&self) -> &[ElementSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, s: ElementSet) -> bool {
        self.sets.binary_search_by_key(&s.bits(), |t| t.bits()).is_ok()
    }
}

impl fmt::Display for Antichain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, s) in self.sets.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "}}")
    }
}

/// Whether a table is monotone (upward closure of ones).
pub fn is_monotone(table: &PointSet) -> bool {
    let n = table.n();
    if n <= 6 {
        return bits::is_monotone(table.as_u64(), n);
    }
    let words = table.words();
    // Variables whose stride stays inside one word.
    for (i, &lo) in LO_MASK_WIDE.iter().enumerate().take(n.min(6)) {
        let stride = 1usize << i;
        for &w in words {
            if w & lo & !(w >> stride) != 0 {
                return false;
            }
        }
    }
    // Variables whose stride is a whole number of words.
    for i in 6..n {
        let ws = 1usize << (i - 6);
        for wj in 0..words.len() {
            if wj & ws == 0 && words[wj] & !words[wj + ws] != 0 {
                return false;
            }
        }
    }
    true
}

const LO_MASK_WIDE: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0f0f_0f0f_0f0f_0f0f,
    0x00ff_00ff_00ff_00ff,
    0x0000_ffff_0000_ffff,
    0x0000_0000_ffff_ffff,
];

impl MonotoneFn {
    /// Wraps a validated table. Fails with `NotMonotone` otherwise.
    pub fn new(table: PointSet) -> Result<Self> {
        if !is_monotone(&table) {
            return Err(Error::NotMonotone);
        }
        Ok(MonotoneFn { table })
    }

    /// Builds from a single-word table, n ≤ 6.
    pub fn from_u64_table(table: u64, n: usize) -> Result<Self> {
        Self::new(PointSet::from_u64(table, n)?)
    }

    /// Internal constructor for tables already known monotone.
    pub(crate) fn from_u64_unchecked(table: u64, n: usize) -> Self {
        debug_assert!(bits::is_monotone(table, n));
        MonotoneFn {
            table: PointSet::from_u64(table, n).expect("valid table word"),
        }
    }

    /// The all-zero function `f0`.
    pub fn all_zero(n: usize) -> Result<Self> {
        Ok(MonotoneFn {
            table: PointSet::empty(n)?,
        })
    }

    /// The all-one function `f1`.
    pub fn all_one(n: usize) -> Result<Self> {
        Ok(MonotoneFn {
            table: PointSet::full(n)?,
        })
    }

    pub fn n(&self) -> usize {
        self.table.n()
    }

    pub fn table(&self) -> &PointSet {
        &self.table
    }

    /// Single-word table; panics if n > 6.
    pub fn table_u64(&self) -> u64 {
        self.table.as_u64()
    }

    pub fn value(&self, s: ElementSet) -> bool {
        self.table.contains(s)
    }

    pub(crate) fn value_index(&self, idx: usize) -> bool {
        self.table.contains_index(idx)
    }

    /// The minimal upper sets `U(f)`: value-1 points all of whose
    /// single-element removals have value 0.
    pub fn minimal_upper_sets(&self) -> Antichain {
        let n = self.n();
        let mut sets = Vec::new();
        for p in 0..1usize << n {
            if !self.value_index(p) {
                continue;
            }
            let minimal = (0..n)
                .filter(|i| p >> i & 1 == 1)
                .all(|i| !self.value_index(p & !(1 << i)));
            if minimal {
                sets.push(ElementSet::new(p as u16, n).expect("point in range"));
            }
        }
        Antichain { n: n as u8, sets }
    }

    /// The maximal lower sets `L(f)`: value-0 points all of whose
    /// single-element extensions have value 1.
    pub fn maximal_lower_sets(&self) -> Antichain {
        let n = self.n();
        let mut sets = Vec::new();
        for p in 0..1usize << n {
            if self.value_index(p) {
                continue;
            }
            let maximal = (0..n)
                .filter(|i| p >> i & 1 == 0)
                .all(|i| self.value_index(p | 1 << i));
            if maximal {
                sets.push(ElementSet::new(p as u16, n).expect("point in range"));
            }
        }
        Antichain { n: n as u8, sets }
    }

    /// Certificate size `m(f) = |U(f)| + |L(f)|`, the minimum number of
    /// queries any deterministic algorithm needs to verify `f`.
    pub fn certificate_size(&self) -> usize {
        let n = self.n();
        if n <= 6 {
            bits::certificate_size(self.table.as_u64(), n)
        } else {
            self.minimal_upper_sets().len() + self.maximal_lower_sets().len()
        }
    }

    /// The unique monotone function whose minimal upper sets are `sets`:
    /// `f(S) = 1` iff some member is contained in `S`.
    pub fn from_upper_antichain(sets: &Antichain) -> Self {
        let n = sets.n();
        let mut table = PointSet::empty(n).expect("validated n");
        for p in 0..1usize << n {
            if sets
                .sets()
                .iter()
                .any(|u| u.bits() as usize & p == u.bits() as usize)
            {
                table.insert_index(p);
            }
        }
        debug_assert!(is_monotone(&table));
        MonotoneFn { table }
    }

    /// Dual of `from_upper_antichain`: `f(S) = 0` iff `S` is contained in
    /// some member.
    pub fn from_lower_antichain(sets: &Antichain) -> Self {
        let n = sets.n();
        let mut table = PointSet::empty(n).expect("validated n");
        for p in 0..1usize << n {
            let below = sets
                .sets()
                .iter()
                .any(|l| p & l.bits() as usize == p);
            if !below {
                table.insert_index(p);
            }
        }
        debug_assert!(is_monotone(&table));
        MonotoneFn { table }
    }

    /// Extends to n+1 variables with `g(S) = g(S ∪ {n+1}) = f(S ∩ {1..n})`.
    /// The minimal upper sets are unchanged, each maximal lower set gains
    /// the new element, so the certificate size is preserved.
    pub fn lift(&self) -> Result<Self> {
        let n = self.n();
        check_var_count(n + 1)?;
        let mut table = PointSet::empty(n + 1)?;
        let half = 1usize << n;
        for p in 0..half {
            if self.value_index(p) {
                table.insert_index(p);
                table.insert_index(p | half);
            }
        }
        Ok(MonotoneFn { table })
    }

    /// Relabels variables: returns `g` with `g(σ(S)) = f(S)` for all `S`.
    pub fn apply_permutation(&self, sigma: &Permutation) -> Result<Self> {
        let n = self.n();
        if sigma.n() != n {
            return Err(Error::PermutationMismatch {
                perm_n: sigma.n(),
                object_n: n,
            });
        }
        let mut table = PointSet::empty(n)?;
        for p in 0..1usize << n {
            if self.value_index(p) {
                table.insert_index(sigma.apply_mask(p as u16) as usize);
            }
        }
        Ok(MonotoneFn { table })
    }

    /// The lexicographically smallest truth table over all n! relabelings;
    /// two functions are equivalent iff their canonical forms coincide.
    /// Brute-force over all permutations, capped at n = 8.
    pub fn canonical_form(&self) -> Result<Self> {
        let n = self.n();
        let perms = Permutation::all(n)?;
        if n <= 6 {
            let table = self.table.as_u64();
            let mut best = table;
            for sigma in &perms[1..] {
                let remap = bits::point_remap(sigma.map_slice(), n);
                let image = bits::apply_remap(table, &remap);
                if image < best {
                    best = image;
                }
            }
            return Ok(MonotoneFn::from_u64_unchecked(best, n));
        }
        let mut best = self.clone();
        for sigma in &perms[1..] {
            let image = self.apply_permutation(sigma)?;
            if image.table.cmp_value(&best.table) == Ordering::Less {
                best = image;
            }
        }
        Ok(best)
    }

    /// Hexadecimal encoding of the table, most significant nibble first,
    /// exactly `ceil(2^n / 4)` digits.
    pub fn to_hex(&self) -> String {
        let n = self.n();
        let digits = hex_digits(n);
        let words = self.table.words();
        let mut out = String::with_capacity(digits);
        for d in (0..digits).rev() {
            let nibble = (words[d >> 4] >> ((d & 15) << 2)) & 0xf;
            out.push(char::from_digit(nibble as u32, 16).expect("nibble"));
        }
        out
    }

    /// Parses the `to_hex` encoding; the digit count must match exactly and
    /// the table must be monotone.
    pub fn from_hex(text: &str, n: usize) -> Result<Self> {
        check_var_count(n)?;
        let digits = hex_digits(n);
        if text.len() != digits {
            return Err(Error::BadTableString {
                text: text.to_string(),
                reason: format!("expected exactly {digits} hex digits for n={n}"),
            });
        }
        let mut table = PointSet::empty(n)?;
        for (pos, ch) in text.chars().enumerate() {
            let nibble = ch.to_digit(16).ok_or_else(|| Error::BadTableString {
                text: text.to_string(),
                reason: format!("invalid hex digit {ch:?}"),
            })? as usize;
            let d = digits - 1 - pos;
            for b in 0..4 {
                if nibble >> b & 1 == 1 {
                    let idx = (d << 2) | b;
                    if idx >= 1 << n {
                        return Err(Error::MaskOutOfRange {
                            bits: nibble as u64,
                            n,
                        });
                    }
                    table.insert_index(idx);
                }
            }
        }
        MonotoneFn::new(table)
    }
}

fn hex_digits(n: usize) -> usize {
    (1usize << n).div_ceil(4)
}

impl PartialOrd for MonotoneFn {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MonotoneFn {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n()
            .cmp(&other.n())
            .then_with(|| self.table.cmp_value(&other.table))
    }
}

impl fmt::Display for MonotoneFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.n(), self.to_hex())
    }
}
