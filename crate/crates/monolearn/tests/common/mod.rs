//! Shared helpers for the integration suites: independent naive oracles
//! and the hand-encoded reference strategies used by the acceptance gate.

#![allow(dead_code)]

use monolearn::optsearch::{greedy_completion, DecisionTree};
use monolearn::oracle::PartialKnowledge;
use monolearn::{ElementSet, MonotoneFn};

pub fn set(bits: u16, n: usize) -> ElementSet {
    ElementSet::new(bits, n).unwrap()
}

pub fn knowledge_after(n: usize, answers: &[(u16, bool)]) -> PartialKnowledge {
    answers
        .iter()
        .fold(PartialKnowledge::empty(n).unwrap(), |k, &(s, a)| {
            k.with_answer(set(s, n), a).unwrap()
        })
}

/// Direct-definition monotonicity check, independent of the library's
/// shift-sweep implementation.
pub fn naive_is_monotone(table: u64, n: usize) -> bool {
    let points = 1usize << n;
    for s in 0..points {
        for t in 0..points {
            if s & t == s && table >> s & 1 > table >> t & 1 {
                return false;
            }
        }
    }
    true
}

/// Brute-force minimal upper sets by scanning all pairs of points.
pub fn naive_minimal_upper(f: &MonotoneFn) -> Vec<u16> {
    let n = f.n();
    let table = f.table_u64();
    let points = 1usize << n;
    (0..points)
        .filter(|&p| {
            table >> p & 1 == 1
                && (0..points).all(|q| q == p || q & p != q || table >> q & 1 == 0)
        })
        .map(|p| p as u16)
        .collect()
}

pub fn naive_maximal_lower(f: &MonotoneFn) -> Vec<u16> {
    let n = f.n();
    let table = f.table_u64();
    let points = 1usize << n;
    (0..points)
        .filter(|&p| {
            table >> p & 1 == 0
                && (0..points).all(|q| q == p || q | p != q || table >> q & 1 == 1)
        })
        .map(|p| p as u16)
        .collect()
}

/// The displayed stop positions of the 5/2-competitive strategy for three
/// variables, as root-to-stop answer paths in display order.
pub const STRATEGY_STOPS_N3: [&[(u16, bool)]; 8] = [
    &[(0b011, false), (0b111, false)],
    &[(0b011, false), (0b111, true)],
    &[(0b011, true), (0b000, false), (0b001, false), (0b101, false), (0b010, false)],
    &[(0b011, true), (0b000, false), (0b001, false), (0b101, false), (0b010, true)],
    &[(0b011, true), (0b000, false), (0b001, false), (0b101, true)],
    &[(0b011, true), (0b000, false), (0b001, true), (0b110, false)],
    &[(0b011, true), (0b000, false), (0b001, true), (0b110, true)],
    &[(0b011, true), (0b000, true)],
];

/// The 5/2-competitive strategy for three variables, with every displayed
/// stop position completed by the greedy reasonable rule.
pub fn completed_strategy_n3() -> DecisionTree {
    let n = 3;
    let g = |answers: &[(u16, bool)]| greedy_completion(&knowledge_after(n, answers)).unwrap();
    DecisionTree::node(
        set(0b011, n),
        DecisionTree::node(
            set(0b111, n),
            g(STRATEGY_STOPS_N3[0]),
            g(STRATEGY_STOPS_N3[1]),
        ),
        DecisionTree::node(
            set(0b000, n),
            DecisionTree::node(
                set(0b001, n),
                DecisionTree::node(
                    set(0b101, n),
                    DecisionTree::node(
                        set(0b010, n),
                        g(STRATEGY_STOPS_N3[2]),
                        g(STRATEGY_STOPS_N3[3]),
                    ),
                    g(STRATEGY_STOPS_N3[4]),
                ),
                DecisionTree::node(
                    set(0b110, n),
                    g(STRATEGY_STOPS_N3[5]),
                    g(STRATEGY_STOPS_N3[6]),
                ),
            ),
            g(STRATEGY_STOPS_N3[7]),
        ),
    )
}

/// The two-variable example strategy whose first question is {1}.
pub fn example_tree_n2() -> DecisionTree {
    let n = 2;
    let leaf = |t: u64| DecisionTree::Leaf(MonotoneFn::from_u64_table(t, n).unwrap());
    DecisionTree::node(
        set(0b01, n),
        DecisionTree::node(
            set(0b11, n),
            leaf(0b0000),
            DecisionTree::node(set(0b10, n), leaf(0b1000), leaf(0b1100)),
        ),
        DecisionTree::node(
            set(0b00, n),
            DecisionTree::node(set(0b10, n), leaf(0b1010), leaf(0b1110)),
            leaf(0b1111),
        ),
    )
}
