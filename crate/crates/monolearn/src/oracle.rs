//! Membership-query oracle with query counting and deducibility tracking.
//!
//! Knowledge is kept as the monotone closure of the answers so far: a
//! downward-closed set of known zeros and an upward-closed set of known
//! ones. A question whose answer is already forced by that closure is
//! "unreasonable"; it still counts, but the session records it.

use crate::bits;
use crate::enumeration::enumerate_tables;
use crate::error::{Error, Result};
use crate::function::MonotoneFn;
use crate::points::PointSet;
use crate::set::ElementSet;

/// What the current knowledge says about one point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Deduction {
    Zero,
    One,
    Unknown,
}

/// Monotone closure of a set of answers: disjoint down-set of known zeros
/// and up-set of known ones. Immutable; extending an answer produces a new
/// snapshot.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialKnowledge {
    zeros: PointSet,
    ones: PointSet,
}

impl PartialKnowledge {
    pub fn empty(n: usize) -> Result<Self> {
        Ok(PartialKnowledge {
            zeros: PointSet::empty(n)?,
            ones: PointSet::empty(n)?,
        })
    }

    /// Wraps existing closure masks; they must be closed and disjoint.
    pub fn from_masks(zeros: PointSet, ones: PointSet) -> Result<Self> {
        if !zeros.is_disjoint(&ones) {
            return Err(Error::ContradictoryAnswer { bits: 0 });
        }
        let k = PartialKnowledge { zeros, ones };
        debug_assert!(k.closure_invariant_holds());
        Ok(k)
    }

    pub(crate) fn from_u64_masks(zeros: u64, ones: u64, n: usize) -> Self {
        PartialKnowledge {
            zeros: PointSet::from_u64(zeros, n).expect("valid zeros mask"),
            ones: PointSet::from_u64(ones, n).expect("valid ones mask"),
        }
    }

    pub fn n(&self) -> usize {
        self.zeros.n()
    }

    pub fn zeros(&self) -> &PointSet {
        &self.zeros
    }

    pub fn ones(&self) -> &PointSet {
        &self.ones
    }

    pub(crate) fn zeros_u64(&self) -> u64 {
        self.zeros.as_u64()
    }

    pub(crate) fn ones_u64(&self) -> u64 {
        self.ones.as_u64()
    }

    pub fn deduced(&self, s: ElementSet) -> Deduction {
        debug_assert_eq!(s.n(), self.n());
        self.deduced_index(s.bits() as usize)
    }

    pub(crate) fn deduced_index(&self, idx: usize) -> Deduction {
        if self.zeros.contains_index(idx) {
            Deduction::Zero
        } else if self.ones.contains_index(idx) {
            Deduction::One
        } else {
            Deduction::Unknown
        }
    }

    /// Extends the closure with one answer: a zero marks every subset zero,
    /// a one marks every superset one. Rejects answers that contradict the
    /// closure so far.
    pub fn with_answer(&self, s: ElementSet, answer: bool) -> Result<Self> {
        let n = self.n();
        debug_assert_eq!(s.n(), n);
        let idx = s.bits() as usize;
        let mut next = self.clone();
        if answer {
            if self.zeros.contains_index(idx) {
                return Err(Error::ContradictoryAnswer {
                    bits: s.bits() as u64,
                });
            }
            if n <= 6 {
                let ones = next.ones.as_u64() | bits::up_closure(idx, n);
                next.ones = PointSet::from_u64(ones, n)?;
            } else {
                for p in 0..1usize << n {
                    if p & idx == idx {
                        next.ones.insert_index(p);
                    }
                }
            }
        } else {
            if self.ones.contains_index(idx) {
                return Err(Error::ContradictoryAnswer {
                    bits: s.bits() as u64,
                });
            }
            if n <= 6 {
                let zeros = next.zeros.as_u64() | bits::down_closure(idx);
                next.zeros = PointSet::from_u64(zeros, n)?;
            } else {
                for p in 0..1usize << n {
                    if p & idx == p {
                        next.zeros.insert_index(p);
                    }
                }
            }
        }
        Ok(next)
    }

    /// True when every point is determined; by the uniqueness of the
    /// certificate this is equivalent to exactly one consistent function.
    pub fn is_complete(&self) -> bool {
        self.zeros.len() + self.ones.len() == self.zeros.num_points()
    }

    pub fn undetermined_count(&self) -> usize {
        self.zeros.num_points() - self.zeros.len() - self.ones.len()
    }

    /// Undetermined points in ascending mask order.
    pub fn undetermined_points(&self) -> Vec<ElementSet> {
        let n = self.n();
        (0..1usize << n)
            .filter(|&p| !self.zeros.contains_index(p) && !self.ones.contains_index(p))
            .map(|p| ElementSet::new(p as u16, n).expect("in range"))
            .collect()
    }

    fn closure_invariant_holds(&self) -> bool {
        let n = self.n();
        if n > 6 {
            return true; // spot-checked by tests; the wide path is rare
        }
        let z = self.zeros.as_u64();
        let o = self.ones.as_u64();
        // zeros downward closed <=> complement monotone; ones upward closed.
        bits::is_monotone(!z & bits::full_table(n), n) && bits::is_monotone(o, n)
    }
}

/// One oracle call, as recorded in a session transcript.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QueryRecord {
    pub index: usize,
    pub set: ElementSet,
    pub answer: bool,
    pub was_deducible: bool,
}

impl QueryRecord {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "index": self.index,
            "set_mask": self.set.bits(),
            "answer": self.answer as u8,
            "was_deducible": self.was_deducible,
        })
    }
}

/// Referee between a learner and one hidden function: answers questions,
/// counts them, and maintains the knowledge closure.
#[derive(Debug, Clone)]
pub struct OracleSession {
    hidden: MonotoneFn,
    records: Vec<QueryRecord>,
    knowledge: PartialKnowledge,
    unreasonable: usize,
}

impl OracleSession {
    pub fn new(hidden: MonotoneFn) -> Self {
        let knowledge = PartialKnowledge::empty(hidden.n()).expect("valid n");
        OracleSession {
            hidden,
            records: Vec::new(),
            knowledge,
            unreasonable: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.hidden.n()
    }

    pub fn hidden(&self) -> &MonotoneFn {
        &self.hidden
    }

    /// Evaluates the hidden function at `s`. Every call counts; re-asking a
    /// deducible point is legal but increments the unreasonable counter.
    pub fn query(&mut self, s: ElementSet) -> bool {
        let answer = self.hidden.value(s);
        let was_deducible = self.knowledge.deduced(s) != Deduction::Unknown;
        if was_deducible {
            self.unreasonable += 1;
        }
        self.records.push(QueryRecord {
            index: self.records.len(),
            set: s,
            answer,
            was_deducible,
        });
        self.knowledge = self
            .knowledge
            .with_answer(s, answer)
            .expect("truthful answers never contradict");
        answer
    }

    pub fn knowledge(&self) -> &PartialKnowledge {
        &self.knowledge
    }

    pub fn asked_count(&self) -> usize {
        self.records.len()
    }

    pub fn unreasonable_count(&self) -> usize {
        self.unreasonable
    }

    pub fn transcript(&self) -> &[QueryRecord] {
        &self.records
    }
}

/// Every monotone function agreeing with the knowledge, ascending by table.
/// Capped at n = 6 like the enumeration it filters.
pub fn consistent_functions(
    knowledge: &PartialKnowledge,
) -> Result<impl Iterator<Item = MonotoneFn>> {
    let n = knowledge.n();
    if n > 6 {
        return Err(Error::VarCountOutOfRange { n, max: 6 });
    }
    let zeros = knowledge.zeros_u64();
    let ones = knowledge.ones_u64();
    Ok(enumerate_tables(n)?.filter_map(move |t| {
        if t & zeros == 0 && t & ones == ones {
            Some(MonotoneFn::from_u64_unchecked(t, n))
        } else {
            None
        }
    }))
}

pub fn count_consistent(knowledge: &PartialKnowledge) -> Result<u64> {
    Ok(consistent_functions(knowledge)?.count() as u64)
}

/// Minimum certificate size among the consistent functions.
pub fn min_remaining_certificate(knowledge: &PartialKnowledge) -> Result<usize> {
    let n = knowledge.n();
    if n > 6 {
        return Err(Error::VarCountOutOfRange { n, max: 6 });
    }
    let zeros = knowledge.zeros_u64();
    let ones = knowledge.ones_u64();
    enumerate_tables(n)?
        .filter(|&t| t & zeros == 0 && t & ones == ones)
        .map(|t| bits::certificate_size(t, n))
        .min()
        .ok_or(Error::NoConsistentFunction)
}
