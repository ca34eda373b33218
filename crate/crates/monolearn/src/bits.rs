//! Single-word truth-table kernels for n ≤ 6.
//!
//! A table is a u64 whose bit `i` is the function value on the subset with
//! characteristic mask `i`. Monotonicity, certificate extraction and closure
//! sweeps reduce to shift-and-mask passes, one per variable.

/// Bits at point indices whose variable-`i` bit is clear, repeated across
/// the word (`i` < 6).
const LO_MASK: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0f0f_0f0f_0f0f_0f0f,
    0x00ff_00ff_00ff_00ff,
    0x0000_ffff_0000_ffff,
    0x0000_0000_ffff_ffff,
];

/// Mask of the `2^n` valid table bits.
pub(crate) fn full_table(n: usize) -> u64 {
    debug_assert!((1..=6).contains(&n));
    if n == 6 {
        u64::MAX
    } else {
        (1u64 << (1usize << n)) - 1
    }
}

/// Upward-closure check: no subset with value 1 has a superset with value 0.
pub(crate) fn is_monotone(table: u64, n: usize) -> bool {
    debug_assert!(table & !full_table(n) == 0);
    for (i, &lo) in LO_MASK.iter().enumerate().take(n) {
        let stride = 1usize << i;
        // Value-1 at a point without variable i, value-0 with it: violation.
        if table & lo & !(table >> stride) != 0 {
            return false;
        }
    }
    true
}

/// Mask of the minimal value-1 points (the minimal upper sets).
pub(crate) fn minimal_ones(table: u64, n: usize) -> u64 {
    let mut has_one_below = 0u64;
    for (i, &lo) in LO_MASK.iter().enumerate().take(n) {
        let stride = 1usize << i;
        has_one_below |= (table & lo) << stride;
    }
    table & !has_one_below
}

/// Mask of the maximal value-0 points (the maximal lower sets).
pub(crate) fn maximal_zeros(table: u64, n: usize) -> u64 {
    let zeros = !table & full_table(n);
    let mut has_zero_above = 0u64;
    for (i, &lo) in LO_MASK.iter().enumerate().take(n) {
        let stride = 1usize << i;
        has_zero_above |= (zeros >> stride) & lo;
    }
    zeros & !has_zero_above
}

/// Certificate size `m(f) = |U| + |L|` straight from the table.
pub(crate) fn certificate_size(table: u64, n: usize) -> usize {
    (minimal_ones(table, n).count_ones() + maximal_zeros(table, n).count_ones()) as usize
}

/// Points of the certificate `U ∪ L`.
pub(crate) fn certificate_mask(table: u64, n: usize) -> u64 {
    minimal_ones(table, n) | maximal_zeros(table, n)
}

/// Mask of all subsets of the point `p` (inclusive).
pub(crate) fn down_closure(p: usize) -> u64 {
    let mut mask = 0u64;
    let mut sub = p;
    loop {
        mask |= 1u64 << sub;
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & p;
    }
    mask
}

/// Mask of all supersets of the point `p` within n variables (inclusive).
pub(crate) fn up_closure(p: usize, n: usize) -> u64 {
    let free = !p & ((1usize << n) - 1);
    let mut mask = 0u64;
    let mut sub = free;
    loop {
        mask |= 1u64 << (p | sub);
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & free;
    }
    mask
}

/// Point-index remap table for a permutation given as a 0-based image list.
pub(crate) fn point_remap(map: &[u8], n: usize) -> [u8; 64] {
    debug_assert!(n <= 6);
    let mut remap = [0u8; 64];
    for (p, slot) in remap.iter_mut().enumerate().take(1 << n) {
        let mut img = 0usize;
        let mut w = p;
        while w != 0 {
            let i = w.trailing_zeros() as usize;
            img |= 1 << map[i];
            w &= w - 1;
        }
        *slot = img as u8;
    }
    remap
}

/// Applies a point remap to a table: output bit `remap[i]` = input bit `i`.
pub(crate) fn apply_remap(table: u64, remap: &[u8; 64]) -> u64 {
    let mut out = 0u64;
    let mut w = table;
    while w != 0 {
        let i = w.trailing_zeros() as usize;
        out |= 1u64 << remap[i];
        w &= w - 1;
    }
    out
}
