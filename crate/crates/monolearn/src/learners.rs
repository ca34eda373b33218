//! The two classical reconstruction algorithms, run against an oracle
//! session: Gainanov's Find-Border, which repeatedly shrinks a known
//! one-point to a minimal upper set (or dually grows a known zero-point to
//! a maximal lower set), and Hansel's method, which walks a symmetric chain
//! decomposition of the cube shortest chains first.
//!
//! Both ask only points whose value is not already deducible, so every
//! learner here is reasonable: `unreasonable_count` stays zero.

use crate::enumeration::binomial;
use crate::error::{Error, Result};
use crate::function::MonotoneFn;
use crate::oracle::{Deduction, OracleSession, QueryRecord};
use crate::set::{check_var_count, ElementSet};

/// A partition of the cube into symmetric chains: each chain steps up one
/// element at a time and covers sizes `[k, n-k]` for some k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainDecomposition {
    n: usize,
    chains: Vec<Vec<ElementSet>>,
}

impl ChainDecomposition {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Chains ordered by increasing length, then by bottom-set mask.
    pub fn chains(&self) -> &[Vec<ElementSet>] {
        &self.chains
    }

    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }
}

/// The recursive symmetric chain decomposition: each chain of the smaller
/// cube spawns an extended copy and, when longer than one point, a trimmed
/// copy shifted into the new variable. Yields exactly `C(n, ⌊n/2⌋)` chains.
pub fn hansel_chains(n: usize) -> Result<ChainDecomposition> {
    check_var_count(n)?;
    let mut chains: Vec<Vec<u16>> = vec![vec![0b0, 0b1]];
    for k in 1..n {
        let new_bit = 1u16 << k;
        let mut next = Vec::with_capacity(chains.len() * 2);
        for chain in &chains {
            let mut extended = chain.clone();
            extended.push(chain.last().unwrap() | new_bit);
            next.push(extended);
            if chain.len() > 1 {
                let trimmed: Vec<u16> = chain[..chain.len() - 1]
                    .iter()
                    .map(|&m| m | new_bit)
                    .collect();
                next.push(trimmed);
            }
        }
        chains = next;
    }
    let mut chains: Vec<Vec<ElementSet>> = chains
        .into_iter()
        .map(|chain| {
            chain
                .into_iter()
                .map(|m| ElementSet::new(m, n).expect("chain mask in range"))
                .collect()
        })
        .collect();
    chains.sort_by_key(|c: &Vec<ElementSet>| (c.len(), c[0].bits()));
    Ok(ChainDecomposition { n, chains })
}

/// Outcome of one learner run: the reconstructed function and its cost.
#[derive(Debug, Clone)]
pub struct LearnResult {
    pub learned: MonotoneFn,
    pub questions_asked: usize,
    pub transcript: Vec<QueryRecord>,
}

fn finish(session: &OracleSession) -> LearnResult {
    let knowledge = session.knowledge();
    debug_assert!(knowledge.is_complete());
    let learned = MonotoneFn::new(knowledge.ones().clone()).expect("up-set is monotone");
    debug_assert_eq!(&learned, session.hidden());
    LearnResult {
        learned,
        questions_asked: session.asked_count(),
        transcript: session.transcript().to_vec(),
    }
}

fn require_fresh(session: &OracleSession) -> Result<()> {
    if session.asked_count() > 0 {
        return Err(Error::SessionNotFresh);
    }
    Ok(())
}

/// Shrinks `start`, already known to be one, to a minimal upper set of the
/// hidden function. Removal candidates are tried in increasing element
/// order from the current set, skipping any whose value is deducible; at
/// most n questions are issued, and the result's minimality is certified by
/// the session knowledge afterwards.
pub fn find_border_minimize(
    session: &mut OracleSession,
    start: ElementSet,
) -> Result<ElementSet> {
    if session.knowledge().deduced(start) != Deduction::One {
        return Err(Error::StartNotKnownOne {
            bits: start.bits() as u64,
        });
    }
    let n = session.n();
    let mut current = start;
    for i in 1..=n {
        if !current.contains(i) {
            continue;
        }
        let candidate = current.without_element(i);
        match session.knowledge().deduced(candidate) {
            Deduction::One => current = candidate,
            Deduction::Zero => {}
            Deduction::Unknown => {
                if session.query(candidate) {
                    current = candidate;
                }
            }
        }
    }
    Ok(current)
}

/// Dual of `find_border_minimize`: grows `start`, known to be zero, to a
/// maximal lower set by trying single-element additions.
pub fn find_border_maximize(
    session: &mut OracleSession,
    start: ElementSet,
) -> Result<ElementSet> {
    if session.knowledge().deduced(start) != Deduction::Zero {
        return Err(Error::StartNotKnownOne {
            bits: start.bits() as u64,
        });
    }
    let n = session.n();
    let mut current = start;
    for i in 1..=n {
        if current.contains(i) {
            continue;
        }
        let candidate = current.with_element(i);
        match session.knowledge().deduced(candidate) {
            Deduction::Zero => current = candidate,
            Deduction::One => {}
            Deduction::Unknown => {
                if !session.query(candidate) {
                    current = candidate;
                }
            }
        }
    }
    Ok(current)
}

/// Probe order: undetermined sets of maximum cardinality first (minimum
/// for the dual learner), smallest mask within a cardinality.
fn probe_order(n: usize, dual: bool) -> Vec<ElementSet> {
    let mut points: Vec<ElementSet> = ElementSet::all(n).expect("valid n").collect();
    if dual {
        points.sort_by_key(|s| (s.len(), s.bits()));
    } else {
        points.sort_by_key(|s| (n - s.len(), s.bits()));
    }
    points
}

fn find_border_run(session: &mut OracleSession, dual: bool) -> Result<LearnResult> {
    require_fresh(session)?;
    let n = session.n();
    let order = probe_order(n, dual);
    loop {
        let probe = order
            .iter()
            .copied()
            .find(|&s| session.knowledge().deduced(s) == Deduction::Unknown);
        let Some(probe) = probe else {
            return Ok(finish(session));
        };
        let answer = session.query(probe);
        if !dual && answer {
            // A one-point found; walk it down to a minimal upper set.
            find_border_minimize(session, probe)?;
        } else if dual && !answer {
            find_border_maximize(session, probe)?;
        }
        // A zero on a maximum-cardinality open probe (dually, a one on a
        // minimum-cardinality one) is itself a border element; its closure
        // is already recorded.
    }
}

/// Reconstructs the hidden function by iteratively locating minimal upper
/// sets; asks at most `n·|U| + 1 + |L|` questions.
pub fn find_border_learn(session: &mut OracleSession) -> Result<LearnResult> {
    find_border_run(session, false)
}

/// Mirror image of `find_border_learn`, locating maximal lower sets
/// instead; asks at most `n·|L| + 1 + |U|` questions.
pub fn find_border_learn_dual(session: &mut OracleSession) -> Result<LearnResult> {
    find_border_run(session, true)
}

/// Walks the Hansel chains shortest first, querying every point whose value
/// is still open, lowest first within a chain. Stays within the worst-case
/// ceiling `C(n,⌊n/2⌋) + C(n,⌊n/2⌋+1)` for every hidden function.
pub fn hansel_learn(session: &mut OracleSession) -> Result<LearnResult> {
    require_fresh(session)?;
    let decomposition = hansel_chains(session.n())?;
    for chain in decomposition.chains() {
        for &point in chain {
            if session.knowledge().deduced(point) == Deduction::Unknown {
                session.query(point);
            }
        }
    }
    Ok(finish(session))
}

/// Name-addressable learner selection, as exposed on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LearnerKind {
    FindBorder,
    FindBorderDual,
    Hansel,
}

impl LearnerKind {
    pub const ALL: [LearnerKind; 3] = [
        LearnerKind::FindBorder,
        LearnerKind::FindBorderDual,
        LearnerKind::Hansel,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LearnerKind::FindBorder => "find-border",
            LearnerKind::FindBorderDual => "find-border-dual",
            LearnerKind::Hansel => "hansel",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == name)
    }

    /// Runs the learner against a fresh session for `hidden`.
    pub fn learn(self, hidden: &MonotoneFn) -> Result<LearnResult> {
        let mut session = OracleSession::new(hidden.clone());
        let result = match self {
            LearnerKind::FindBorder => find_border_learn(&mut session)?,
            LearnerKind::FindBorderDual => find_border_learn_dual(&mut session)?,
            LearnerKind::Hansel => hansel_learn(&mut session)?,
        };
        debug_assert_eq!(session.unreasonable_count(), 0);
        Ok(result)
    }
}

/// Engel's worst-case ceiling `C(n,⌊n/2⌋) + C(n,⌊n/2⌋+1)`.
pub fn worst_case_ceiling(n: usize) -> u128 {
    binomial(n, n / 2) + binomial(n, n / 2 + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::enumerate_all;
    use crate::function::Antichain;

    fn fn_from_upper(n: usize, masks: &[u16]) -> MonotoneFn {
        let sets = masks
            .iter()
            .map(|&m| ElementSet::new(m, n).unwrap())
            .collect();
        MonotoneFn::from_upper_antichain(&Antichain::new(n, sets).unwrap())
    }

    #[test]
    fn chain_examples() {
        let c1 = hansel_chains(1).unwrap();
        assert_eq!(c1.len(), 1);
        assert_eq!(
            c1.chains()[0].iter().map(|s| s.bits()).collect::<Vec<_>>(),
            [0b0, 0b1]
        );

        let c2 = hansel_chains(2).unwrap();
        let masks: Vec<Vec<u16>> = c2
            .chains()
            .iter()
            .map(|c| c.iter().map(|s| s.bits()).collect())
            .collect();
        assert_eq!(masks, vec![vec![0b10], vec![0b00, 0b01, 0b11]]);

        assert_eq!(hansel_chains(3).unwrap().len(), 3);
    }

    #[test]
    fn chain_invariants_up_to_16() {
        for n in 1..=16usize {
            let d = hansel_chains(n).unwrap();
            assert_eq!(d.len() as u128, binomial(n, n / 2), "chain count n={n}");
            let mut seen = vec![false; 1 << n];
            for chain in d.chains() {
                let k = chain[0].len();
                assert_eq!(chain.last().unwrap().len(), n - k, "symmetry n={n}");
                assert_eq!(chain.len(), n - 2 * k + 1);
                for pair in chain.windows(2) {
                    assert!(pair[0].is_subset_of(pair[1]));
                    assert_eq!(pair[0].len() + 1, pair[1].len());
                }
                for s in chain {
                    assert!(!seen[s.bits() as usize], "point repeated n={n}");
                    seen[s.bits() as usize] = true;
                }
            }
            assert!(seen.iter().all(|&b| b), "partition incomplete n={n}");
        }
    }

    #[test]
    fn minimize_examples() {
        // Nothing to remove from the empty set.
        let mut s = OracleSession::new(MonotoneFn::all_one(3).unwrap());
        s.query(ElementSet::empty(3).unwrap());
        let asked = s.asked_count();
        let u = find_border_minimize(&mut s, ElementSet::empty(3).unwrap()).unwrap();
        assert_eq!(u, ElementSet::empty(3).unwrap());
        assert_eq!(s.asked_count(), asked);

        // Hidden U = {{3}}: removals 1, 2 succeed, removal 3 fails.
        let mut s = OracleSession::new(fn_from_upper(3, &[0b100]));
        let top = ElementSet::full(3).unwrap();
        s.query(top);
        let u = find_border_minimize(&mut s, top).unwrap();
        assert_eq!(u.bits(), 0b100);
        assert_eq!(s.asked_count(), 4);

        // Hidden U = {{1,2}}: both removals fail.
        let mut s = OracleSession::new(fn_from_upper(2, &[0b11]));
        let top = ElementSet::full(2).unwrap();
        s.query(top);
        let u = find_border_minimize(&mut s, top).unwrap();
        assert_eq!(u.bits(), 0b11);
        assert_eq!(s.asked_count(), 3);

        // Precondition: start must be known one.
        let mut s = OracleSession::new(MonotoneFn::all_one(2).unwrap());
        assert!(matches!(
            find_border_minimize(&mut s, ElementSet::full(2).unwrap()),
            Err(Error::StartNotKnownOne { .. })
        ));
    }

    #[test]
    fn find_border_costs_on_constants() {
        // All-zero: the first probe is the full set, whose zero closes
        // everything below.
        let r = LearnerKind::FindBorder
            .learn(&MonotoneFn::all_zero(3).unwrap())
            .unwrap();
        assert_eq!(r.questions_asked, 1);

        // All-one: probe the full set, then n minimization steps.
        let r = LearnerKind::FindBorder
            .learn(&MonotoneFn::all_one(3).unwrap())
            .unwrap();
        assert_eq!(r.questions_asked, 4);
        let asked: Vec<u16> = r.transcript.iter().map(|q| q.set.bits()).collect();
        assert_eq!(asked, vec![0b111, 0b110, 0b100, 0b000]);
    }

    #[test]
    fn dual_costs_on_constants() {
        let r = LearnerKind::FindBorderDual
            .learn(&MonotoneFn::all_one(3).unwrap())
            .unwrap();
        assert_eq!(r.questions_asked, 1);
        let r = LearnerKind::FindBorderDual
            .learn(&MonotoneFn::all_zero(3).unwrap())
            .unwrap();
        assert_eq!(r.questions_asked, 4);
    }

    #[test]
    fn refined_bounds_exhaustive_small() {
        for n in 1..=4usize {
            for f in enumerate_all(n).unwrap() {
                let u = f.minimal_upper_sets().len();
                let l = f.maximal_lower_sets().len();
                let r = LearnerKind::FindBorder.learn(&f).unwrap();
                assert_eq!(r.learned, f);
                assert!(r.questions_asked <= n * u + 1 + l, "n={n} f={f}");
                assert!(r.questions_asked >= f.certificate_size());
                let d = LearnerKind::FindBorderDual.learn(&f).unwrap();
                assert_eq!(d.learned, f);
                assert!(d.questions_asked <= n * l + 1 + u, "n={n} f={f}");
            }
        }
    }

    #[test]
    fn hansel_bounds_exhaustive_small() {
        for n in 1..=4usize {
            let ceiling = worst_case_ceiling(n) as usize;
            for f in enumerate_all(n).unwrap() {
                let r = LearnerKind::Hansel.learn(&f).unwrap();
                assert_eq!(r.learned, f);
                assert!(r.questions_asked <= ceiling, "n={n} f={f}");
            }
        }
    }

    #[test]
    fn hansel_on_all_one_asks_middle_binomial() {
        // At least C(n, ⌊n/2⌋) questions on the all-one function.
        for n in 1..=5usize {
            let r = LearnerKind::Hansel
                .learn(&MonotoneFn::all_one(n).unwrap())
                .unwrap();
            assert!(r.questions_asked as u128 >= binomial(n, n / 2), "n={n}");
        }
        // Bound instance from the ceiling side.
        let r = LearnerKind::Hansel
            .learn(&MonotoneFn::all_zero(2).unwrap())
            .unwrap();
        assert!(r.questions_asked <= 3);
    }

    #[test]
    fn learners_reject_used_sessions() {
        let mut s = OracleSession::new(MonotoneFn::all_zero(2).unwrap());
        s.query(ElementSet::empty(2).unwrap());
        assert!(matches!(
            find_border_learn(&mut s),
            Err(Error::SessionNotFresh)
        ));
    }
}
