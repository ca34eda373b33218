//! Exhaustive generation of all monotone functions on up to six variables,
//! their counts, orbit representatives under variable relabeling, and the
//! distribution of certificate sizes.
//!
//! Small instances (n ≤ 4) filter every table; n = 5 and 6 are built
//! recursively: a monotone function on n variables is a pointwise-ordered
//! pair of monotone functions on n−1 variables (the restrictions by the
//! last variable). Streams are lazy so the 7.8M functions of n = 6 are
//! never materialized unless the caller collects them.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::bits;
use crate::error::{Error, Result};
use crate::function::MonotoneFn;
use crate::set::Permutation;

/// Largest n for which exhaustive enumeration is supported.
pub const MAX_ENUM_VARS: usize = 6;

/// Counts of monotone Boolean functions for n = 0..8 (free distributive
/// lattice sizes plus the two constants). Indices 7 and 8 are literature
/// values, beyond what this crate enumerates.
pub const DEDEKIND: [u128; 9] = [
    2,
    3,
    6,
    20,
    168,
    7_581,
    7_828_354,
    2_414_682_040_998,
    56_130_437_228_687_557_907_788,
];

/// Counts of inequivalent monotone Boolean functions (orbits under
/// variable relabeling) for n = 1..6.
pub const ORBIT_COUNTS: [u64; 6] = [3, 5, 10, 30, 210, 16_353];

/// Exact binomial coefficient in u128 (safe far beyond n = 16).
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

fn check_enum_range(n: usize) -> Result<()> {
    if n == 0 || n > MAX_ENUM_VARS {
        return Err(Error::VarCountOutOfRange {
            n,
            max: MAX_ENUM_VARS,
        });
    }
    Ok(())
}

/// Lazy stream of all monotone truth tables on n variables in ascending
/// table order, as single words.
pub(crate) fn enumerate_tables(n: usize) -> Result<TableStream> {
    check_enum_range(n)?;
    Ok(if n <= 4 {
        TableStream::Filter {
            n,
            next: 0,
            end: 1u64 << (1usize << n),
        }
    } else {
        let base = collect_tables(n - 1)?;
        TableStream::Pairs {
            shift: 1usize << (n - 1),
            hi: 0,
            lo: 0,
            base,
        }
    })
}

fn collect_tables(n: usize) -> Result<Vec<u64>> {
    Ok(enumerate_tables(n)?.collect())
}

pub(crate) enum TableStream {
    Filter {
        n: usize,
        next: u64,
        end: u64,
    },
    Pairs {
        base: Vec<u64>,
        shift: usize,
        hi: usize,
        lo: usize,
    },
}

impl Iterator for TableStream {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        match self {
            TableStream::Filter { n, next, end } => {
                while *next < *end {
                    let t = *next;
                    *next += 1;
                    if bits::is_monotone(t, *n) {
                        return Some(t);
                    }
                }
                None
            }
            TableStream::Pairs {
                base,
                shift,
                hi,
                lo,
            } => {
                while *hi < base.len() {
                    let upper = base[*hi];
                    while *lo < base.len() {
                        let lower = base[*lo];
                        *lo += 1;
                        // lower ≤ upper pointwise keeps the cross edges monotone.
                        if lower & !upper == 0 {
                            return Some((upper << *shift) | lower);
                        }
                    }
                    *lo = 0;
                    *hi += 1;
                }
                None
            }
        }
    }
}

/// Every monotone function on n variables exactly once, ascending by truth
/// table. Capped at n = 6.
pub fn enumerate_all(n: usize) -> Result<impl Iterator<Item = MonotoneFn>> {
    let stream = enumerate_tables(n)?;
    Ok(stream.map(move |t| MonotoneFn::from_u64_unchecked(t, n)))
}

/// A count of monotone functions, flagged when it comes from the
/// literature rather than from enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DedekindCount {
    pub n: usize,
    pub value: u128,
    /// True for n = 7, 8: the value is a verified constant, not computed.
    pub literature: bool,
}

/// `|M_n|`: computed for n ≤ 6, from the constant table for n = 7, 8.
pub fn count_all(n: usize) -> Result<DedekindCount> {
    if (7..=8).contains(&n) {
        return Ok(DedekindCount {
            n,
            value: DEDEKIND[n],
            literature: true,
        });
    }
    check_enum_range(n)?;
    let value = enumerate_tables(n)?.count() as u128;
    Ok(DedekindCount {
        n,
        value,
        literature: false,
    })
}

/// Deterministically shuffled remap tables for all non-identity
/// permutations; a fixed scramble keeps the expected early-exit cost low
/// on asymmetric inputs.
fn shuffled_remaps(n: usize) -> Vec<[u8; 64]> {
    let perms = Permutation::all(n).expect("n <= 6");
    let mut order: Vec<usize> = (1..perms.len()).collect();
    order.sort_by_key(|&i| (i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    order
        .into_iter()
        .map(|i| bits::point_remap(perms[i].map_slice(), n))
        .collect()
}

/// Whether the table is the numerically smallest member of its orbit.
fn is_orbit_min(table: u64, remaps: &[[u8; 64]]) -> bool {
    for remap in remaps {
        if bits::apply_remap(table, remap) < table {
            return false;
        }
    }
    true
}

/// Exactly one representative per equivalence class: the canonical
/// (smallest-table) member, in ascending table order.
pub fn enumerate_inequivalent(n: usize) -> Result<impl Iterator<Item = MonotoneFn>> {
    check_enum_range(n)?;
    let remaps = shuffled_remaps(n);
    let stream = enumerate_tables(n)?;
    Ok(stream.filter_map(move |t| {
        if is_orbit_min(t, &remaps) {
            Some(MonotoneFn::from_u64_unchecked(t, n))
        } else {
            None
        }
    }))
}

/// Distribution of certificate sizes over all of `M_n`:
/// `counts[i]` is the number of functions with `m(f) = i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BProfile {
    pub n: usize,
    pub counts: BTreeMap<usize, u64>,
}

impl BProfile {
    pub fn total(&self) -> u128 {
        self.counts.values().map(|&c| c as u128).sum()
    }

    pub fn count(&self, i: usize) -> u64 {
        self.counts.get(&i).copied().unwrap_or(0)
    }

    /// Sum of counts for certificate sizes up to and including `i`.
    pub fn prefix_sum(&self, i: usize) -> u128 {
        self.counts
            .iter()
            .filter(|&(&k, _)| k <= i)
            .map(|(_, &c)| c as u128)
            .sum()
    }

    pub fn max_certificate(&self) -> usize {
        self.counts.keys().copied().max().unwrap_or(0)
    }

    /// Associative merge of partial profiles, for chunked or parallel
    /// reduction.
    pub fn merge(&mut self, other: &BProfile) {
        debug_assert_eq!(self.n, other.n);
        for (&k, &c) in &other.counts {
            *self.counts.entry(k).or_insert(0) += c;
        }
    }
}

/// Computes the certificate-size profile by full enumeration, n ≤ 6.
pub fn b_profile(n: usize) -> Result<BProfile> {
    check_enum_range(n)?;
    let mut profile = BProfile {
        n,
        counts: BTreeMap::new(),
    };
    for t in enumerate_tables(n)? {
        *profile
            .counts
            .entry(bits::certificate_size(t, n))
            .or_insert(0) += 1;
    }
    Ok(profile)
}

/// Closed form for the number of functions with certificate size `i`,
/// available for i ≤ 4 at any supported n: 2, n, 2·C(n,2), 8·C(n,3).
pub fn closed_form_b(n: usize, i: usize) -> Option<u128> {
    match i {
        1 => Some(2),
        2 => Some(n as u128),
        3 => Some(2 * binomial(n, 2)),
        4 => Some(8 * binomial(n, 3)),
        _ => None,
    }
}
