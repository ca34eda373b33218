//! Exact computation of the optimal competitivity by minimax search over
//! reasonable decision trees.
//!
//! The algorithm player picks an undetermined question (min node), the
//! adversary picks the answer (max node); a position is terminal once the
//! answer closure determines every point, which happens exactly when one
//! consistent function remains. The charged value at a terminal is
//! questions-asked over the certificate size of the surviving function.
//!
//! States are memoized under simultaneous relabeling of the variables
//! (lexicographically minimal (zeros, ones) pair), candidate questions are
//! reduced to one representative per orbit of the state's stabilizer, and
//! subtrees are pruned with two admissible lower bounds: the undetermined
//! certificate points of any surviving function must each still be asked,
//! and each answer at best halves the surviving set.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use smallvec::{smallvec, SmallVec};

use crate::bits;
use crate::competitive::{
    ceil_log2, evaluate_competitivity, CompetitivityReport, EvalMode, QueryAlgorithm, Ratio,
};
use crate::enumeration::enumerate_tables;
use crate::error::{Error, Result};
use crate::function::MonotoneFn;
use crate::oracle::{min_remaining_certificate, Deduction, PartialKnowledge};
use crate::set::{ElementSet, Permutation};

/// Largest n the search engine accepts (adversary bounds only above 5).
pub const MAX_SEARCH_VARS: usize = 6;

/// A position in the question game: the knowledge closure so far plus the
/// number of questions spent reaching it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchState {
    pub knowledge: PartialKnowledge,
    pub questions_asked: usize,
}

impl SearchState {
    pub fn initial(n: usize) -> Result<Self> {
        Ok(SearchState {
            knowledge: PartialKnowledge::empty(n)?,
            questions_asked: 0,
        })
    }
}

/// A deterministic adaptive questioning strategy: internal nodes ask, the
/// zero answer goes left, leaves name the reconstructed function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecisionTree {
    Leaf(MonotoneFn),
    Node {
        question: ElementSet,
        on_zero: Box<DecisionTree>,
        on_one: Box<DecisionTree>,
    },
}

impl DecisionTree {
    pub fn leaf(f: MonotoneFn) -> Self {
        DecisionTree::Leaf(f)
    }

    pub fn node(question: ElementSet, on_zero: DecisionTree, on_one: DecisionTree) -> Self {
        DecisionTree::Node {
            question,
            on_zero: Box::new(on_zero),
            on_one: Box::new(on_one),
        }
    }

    /// Number of questions the tree spends on `hidden`; errors if the
    /// reached leaf names a different function.
    pub fn questions_for(&self, hidden: &MonotoneFn) -> Result<usize> {
        let mut node = self;
        let mut count = 0usize;
        loop {
            match node {
                DecisionTree::Leaf(f) => {
                    if f == hidden {
                        return Ok(count);
                    }
                    return Err(Error::TreeIncomplete {
                        table_hex: hidden.to_hex(),
                        n: hidden.n(),
                    });
                }
                DecisionTree::Node {
                    question,
                    on_zero,
                    on_one,
                } => {
                    count += 1;
                    node = if hidden.value(*question) {
                        on_one
                    } else {
                        on_zero
                    };
                }
            }
        }
    }
}

impl QueryAlgorithm for DecisionTree {
    fn name(&self) -> String {
        "decision-tree".to_string()
    }

    fn questions(&self, hidden: &MonotoneFn) -> Result<usize> {
        self.questions_for(hidden)
    }
}

/// Counters streamed out of a search run.
#[derive(Debug, Clone, Copy, Default)]
pub struct SearchStats {
    pub states_expanded: u64,
    pub memo_hits: u64,
    pub elapsed: Duration,
}

/// Result value of a search: exact, or certified bounds when a budget ran
/// out (the lower bound is always sound).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchValue {
    Exact(Ratio),
    Bounds { lower: Ratio, upper: Option<Ratio> },
}

impl SearchValue {
    pub fn lower(&self) -> Ratio {
        match self {
            SearchValue::Exact(v) => *v,
            SearchValue::Bounds { lower, .. } => *lower,
        }
    }
}

/// Outcome of `compute_optimal`: the value, a witness strategy when the
/// search finished exactly, and the run counters.
#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub n: usize,
    pub value: SearchValue,
    pub tree: Option<DecisionTree>,
    pub stats: SearchStats,
}

// ---------------------------------------------------------------------------
// Engine internals: dense single-word states, n <= 6.

struct Cube {
    n: usize,
    full: u64,
    remaps: Vec<[u8; 64]>,
    tables: Vec<u64>,
    cert_m: Vec<u8>,
    cert_mask: Vec<u64>,
    down: Vec<u64>,
    up: Vec<u64>,
}

impl Cube {
    fn new(n: usize) -> Result<Cube> {
        if n == 0 || n > MAX_SEARCH_VARS {
            return Err(Error::VarCountOutOfRange {
                n,
                max: MAX_SEARCH_VARS,
            });
        }
        let tables: Vec<u64> = enumerate_tables(n)?.collect();
        let cert_m = tables
            .iter()
            .map(|&t| bits::certificate_size(t, n) as u8)
            .collect();
        let cert_mask = tables
            .iter()
            .map(|&t| bits::certificate_mask(t, n))
            .collect();
        let remaps = Permutation::all(n)?
            .iter()
            .map(|p| bits::point_remap(p.map_slice(), n))
            .collect();
        let points = 1usize << n;
        let down = (0..points).map(bits::down_closure).collect();
        let up = (0..points).map(|p| bits::up_closure(p, n)).collect();
        Ok(Cube {
            n,
            full: bits::full_table(n),
            remaps,
            tables,
            cert_m,
            cert_mask,
            down,
            up,
        })
    }

    fn all_candidates(&self) -> Vec<u32> {
        (0..self.tables.len() as u32).collect()
    }

    fn candidates_for(&self, zeros: u64, ones: u64) -> Vec<u32> {
        (0..self.tables.len() as u32)
            .filter(|&i| {
                let t = self.tables[i as usize];
                t & zeros == 0 && t & ones == ones
            })
            .collect()
    }
}

type MemoKey = (u64, u64, u16);

struct Engine<'c> {
    cube: &'c Cube,
    exact_memo: HashMap<MemoKey, Ratio>,
    bound_memo: HashMap<MemoKey, Ratio>,
    stats: SearchStats,
    deadline: Option<Instant>,
    depth_limit: usize,
    pruning: bool,
    expired: bool,
}

impl<'c> Engine<'c> {
    fn new(cube: &'c Cube) -> Engine<'c> {
        Engine {
            cube,
            exact_memo: HashMap::new(),
            bound_memo: HashMap::new(),
            stats: SearchStats::default(),
            deadline: None,
            depth_limit: usize::MAX,
            pruning: true,
            expired: false,
        }
    }

    /// Lexicographically minimal relabeled (zeros, ones) pair, plus the
    /// indices of the relabelings fixing the raw state (its stabilizer).
    fn canonical_key(&self, zeros: u64, ones: u64, q: usize) -> (MemoKey, SmallVec<[u16; 8]>) {
        let mut min_z = zeros;
        let mut min_o = ones;
        let mut stab: SmallVec<[u16; 8]> = smallvec![0];
        for (i, remap) in self.cube.remaps.iter().enumerate().skip(1) {
            let zi = bits::apply_remap(zeros, remap);
            let oi = bits::apply_remap(ones, remap);
            if zi == zeros && oi == ones {
                stab.push(i as u16);
            }
            if (zi, oi) < (min_z, min_o) {
                min_z = zi;
                min_o = oi;
            }
        }
        ((min_z, min_o, q as u16), stab)
    }

    /// Admissible lower bound on the subtree value: every undetermined
    /// certificate point of a surviving function must still be asked
    /// individually, and each answer at best halves the candidate set.
    fn static_lower_bound(&self, zeros: u64, ones: u64, q: usize, cands: &[u32]) -> Ratio {
        debug_assert!(!cands.is_empty());
        let undet = !(zeros | ones) & self.cube.full;
        let q = q as i64;
        let mut best = Ratio::new(0, 1);
        let mut max_m = 1i64;
        for &ci in cands {
            let m = self.cube.cert_m[ci as usize] as i64;
            max_m = max_m.max(m);
            let open = (self.cube.cert_mask[ci as usize] & undet).count_ones() as i64;
            let r = Ratio::new(q + open, m);
            if r > best {
                best = r;
            }
        }
        let info = Ratio::new(q + ceil_log2(cands.len() as u128), max_m);
        best.max(info)
    }

    fn check_deadline(&mut self) {
        if !self.expired {
            if let Some(d) = self.deadline {
                if self.stats.states_expanded & 0x3f == 0 && Instant::now() >= d {
                    self.expired = true;
                }
            }
        }
    }

    /// Minimax value of a state; the flag reports exactness (false when a
    /// depth or time cutoff was substituted somewhere below, in which case
    /// the value is a sound lower bound).
    fn value(&mut self, zeros: u64, ones: u64, q: usize, cands: &[u32]) -> (Ratio, bool) {
        let full = self.cube.full;
        if zeros | ones == full {
            debug_assert_eq!(cands.len(), 1);
            let m = self.cube.cert_m[cands[0] as usize] as i64;
            return (Ratio::new(q as i64, m), true);
        }
        let (key, stab) = self.canonical_key(zeros, ones, q);
        if let Some(&v) = self.exact_memo.get(&key) {
            self.stats.memo_hits += 1;
            return (v, true);
        }
        if let Some(&v) = self.bound_memo.get(&key) {
            self.stats.memo_hits += 1;
            return (v, false);
        }
        self.check_deadline();
        if q >= self.depth_limit || self.expired {
            let v = self.static_lower_bound(zeros, ones, q, cands);
            self.bound_memo.insert(key, v);
            return (v, false);
        }
        self.stats.states_expanded += 1;

        let undet = !(zeros | ones) & full;
        let reps = self.question_reps(undet, &stab);
        let mut best: Option<(Ratio, bool)> = None;
        for &p in &reps {
            let p = p as usize;
            let z0 = zeros | self.cube.down[p];
            let o1 = ones | self.cube.up[p];
            let c0: Vec<u32> = cands
                .iter()
                .copied()
                .filter(|&i| self.cube.tables[i as usize] >> p & 1 == 0)
                .collect();
            let c1: Vec<u32> = cands
                .iter()
                .copied()
                .filter(|&i| self.cube.tables[i as usize] >> p & 1 == 1)
                .collect();
            // Both answers stay realizable for an undetermined question.
            debug_assert!(!c0.is_empty() && !c1.is_empty());
            if self.pruning {
                if let Some((incumbent, _)) = best {
                    let lb = self
                        .static_lower_bound(z0, ones, q + 1, &c0)
                        .max(self.static_lower_bound(zeros, o1, q + 1, &c1));
                    if lb >= incumbent {
                        continue;
                    }
                }
            }
            let (v0, e0) = self.value(z0, ones, q + 1, &c0);
            if self.pruning {
                if let Some((incumbent, _)) = best {
                    if v0 >= incumbent {
                        continue;
                    }
                }
            }
            let (v1, e1) = self.value(zeros, o1, q + 1, &c1);
            let value = v0.max(v1);
            let exact = e0 && e1;
            match best {
                None => best = Some((value, exact)),
                Some((b, be)) => {
                    if value < b || (value == b && exact && !be) {
                        best = Some((value, exact));
                    }
                }
            }
        }
        let (value, exact) = best.expect("open state has an undetermined question");
        if exact {
            self.exact_memo.insert(key, value);
        } else {
            self.bound_memo.insert(key, value);
        }
        (value, exact)
    }

    /// One representative question per orbit of the state stabilizer,
    /// ascending by mask.
    fn question_reps(&self, undet: u64, stab: &[u16]) -> SmallVec<[u8; 64]> {
        let mut reps: SmallVec<[u8; 64]> = SmallVec::new();
        let mut w = undet;
        while w != 0 {
            let p = w.trailing_zeros() as usize;
            w &= w - 1;
            if stab.len() == 1 {
                reps.push(p as u8);
                continue;
            }
            let mut orbit_min = p;
            for &si in &stab[1..] {
                let image = self.cube.remaps[si as usize][p] as usize;
                orbit_min = orbit_min.min(image);
            }
            if orbit_min == p {
                reps.push(p as u8);
            }
        }
        reps
    }

    /// Re-arms the engine for witness extraction: the value is already
    /// exact, so cutoffs must not fire while walking pruned siblings.
    fn prepare_extraction(&mut self) {
        self.depth_limit = usize::MAX;
        self.deadline = None;
        self.expired = false;
        self.bound_memo.clear();
    }

    /// Witness extraction over raw states; applied after values are fixed,
    /// choosing the smallest-mask question achieving the state value and
    /// exploring the zero answer first.
    fn extract(&mut self, zeros: u64, ones: u64, q: usize) -> DecisionTree {
        let n = self.cube.n;
        if zeros | ones == self.cube.full {
            return DecisionTree::Leaf(MonotoneFn::from_u64_unchecked(ones, n));
        }
        let cands = self.cube.candidates_for(zeros, ones);
        let (target, exact) = self.value(zeros, ones, q, &cands);
        debug_assert!(exact);
        let undet = !(zeros | ones) & self.cube.full;
        let mut w = undet;
        while w != 0 {
            let p = w.trailing_zeros() as usize;
            w &= w - 1;
            let z0 = zeros | self.cube.down[p];
            let o1 = ones | self.cube.up[p];
            let c0 = self.cube.candidates_for(z0, ones);
            let c1 = self.cube.candidates_for(zeros, o1);
            let (v0, _) = self.value(z0, ones, q + 1, &c0);
            let (v1, _) = self.value(zeros, o1, q + 1, &c1);
            if v0.max(v1) == target {
                return DecisionTree::node(
                    ElementSet::new(p as u16, n).expect("point in range"),
                    self.extract(z0, ones, q + 1),
                    self.extract(zeros, o1, q + 1),
                );
            }
        }
        unreachable!("some question must achieve the state value");
    }
}

// ---------------------------------------------------------------------------
// Public operations.

/// Exact minimax value of a mid-game state; n ≤ 4.
pub fn state_value(state: &SearchState) -> Result<Ratio> {
    let n = state.knowledge.n();
    if n > 4 {
        return Err(Error::VarCountOutOfRange { n, max: 4 });
    }
    let cube = Cube::new(n)?;
    let mut engine = Engine::new(&cube);
    let zeros = state.knowledge.zeros_u64();
    let ones = state.knowledge.ones_u64();
    let cands = cube.candidates_for(zeros, ones);
    if cands.is_empty() {
        return Err(Error::NoConsistentFunction);
    }
    let (v, exact) = engine.value(zeros, ones, state.questions_asked, &cands);
    debug_assert!(exact);
    Ok(v)
}

/// Same search with pruning disabled; used to validate pruning soundness.
pub fn state_value_unpruned(state: &SearchState) -> Result<Ratio> {
    let n = state.knowledge.n();
    if n > 4 {
        return Err(Error::VarCountOutOfRange { n, max: 4 });
    }
    let cube = Cube::new(n)?;
    let mut engine = Engine::new(&cube);
    engine.pruning = false;
    let zeros = state.knowledge.zeros_u64();
    let ones = state.knowledge.ones_u64();
    let cands = cube.candidates_for(zeros, ones);
    if cands.is_empty() {
        return Err(Error::NoConsistentFunction);
    }
    Ok(engine.value(zeros, ones, state.questions_asked, &cands).0)
}

/// Determines the optimal competitivity. Exact for n ≤ 4 (with a witness
/// strategy); n = 5 runs in iterative-deepening lower-bound mode within the
/// budget. A budget expiry at n ≤ 4 reports certified partial bounds
/// instead of a value. Passing no budget at n = 5 lets the deepening run
/// to exhaustion, which is impractical; callers should set one.
pub fn compute_optimal(n: usize, budget: Option<Duration>) -> Result<SearchOutcome> {
    if n == 0 || n > 5 {
        return Err(Error::VarCountOutOfRange { n, max: 5 });
    }
    let started = Instant::now();
    let deadline = budget.map(|b| started + b);
    let cube = Cube::new(n)?;
    let mut engine = Engine::new(&cube);
    engine.deadline = deadline;

    if n <= 4 {
        let cands = cube.all_candidates();
        let (value, exact) = engine.value(0, 0, 0, &cands);
        if exact {
            engine.prepare_extraction();
            let tree = engine.extract(0, 0, 0);
            let mut stats = engine.stats;
            stats.elapsed = started.elapsed();
            debug_assert_eq!(
                verify_tree(&tree, n)?.report.max_ratio,
                value,
                "witness must reproduce the search value"
            );
            return Ok(SearchOutcome {
                n,
                value: SearchValue::Exact(value),
                tree: Some(tree),
                stats,
            });
        }
        // Budget ran out: the root value is a sound lower bound; any
        // completed reasonable strategy gives an upper bound.
        let greedy = greedy_completion(&PartialKnowledge::empty(n)?)?;
        let upper = verify_tree(&greedy, n)?.report.max_ratio;
        let mut stats = engine.stats;
        stats.elapsed = started.elapsed();
        return Ok(SearchOutcome {
            n,
            value: SearchValue::Bounds {
                lower: value,
                upper: Some(upper),
            },
            tree: Some(greedy),
            stats,
        });
    }

    // n = 5: anytime lower bounds by iterative deepening.
    let (value, exact) = deepening_lower_bound(&mut engine, 1 << n);
    let mut stats = engine.stats;
    stats.elapsed = started.elapsed();
    if exact {
        engine.prepare_extraction();
        let tree = engine.extract(0, 0, 0);
        stats.elapsed = started.elapsed();
        return Ok(SearchOutcome {
            n,
            value: SearchValue::Exact(value),
            tree: Some(tree),
            stats,
        });
    }
    Ok(SearchOutcome {
        n,
        value: SearchValue::Bounds {
            lower: value,
            upper: None,
        },
        tree: None,
        stats,
    })
}

fn deepening_lower_bound(engine: &mut Engine<'_>, max_depth: usize) -> (Ratio, bool) {
    let cands = engine.cube.all_candidates();
    let mut best = Ratio::new(0, 1);
    for depth in 1..=max_depth {
        engine.depth_limit = depth;
        engine.bound_memo.clear();
        let (v, exact) = engine.value(0, 0, 0, &cands);
        best = best.max(v);
        if exact {
            return (best, true);
        }
        if engine.expired {
            break;
        }
    }
    (best, false)
}

/// Certified lower bound on the optimal competitivity: the algorithm side
/// is explored to the depth and budget limits, cut positions are scored by
/// the admissible static bound, so the result never exceeds the true value.
pub fn adversary_lower_bound(
    n: usize,
    depth: Option<usize>,
    budget: Option<Duration>,
) -> Result<Ratio> {
    if n == 0 || n > MAX_SEARCH_VARS {
        return Err(Error::VarCountOutOfRange {
            n,
            max: MAX_SEARCH_VARS,
        });
    }
    let cube = Cube::new(n)?;
    let mut engine = Engine::new(&cube);
    engine.deadline = budget.map(|b| Instant::now() + b);
    let cap = depth.unwrap_or(1 << n).min(1 << n);
    Ok(deepening_lower_bound(&mut engine, cap).0)
}

/// The memo representative of a knowledge state: the lexicographically
/// minimal (zeros, ones) pair over all simultaneous relabelings. Two
/// states share a representative exactly when some relabeling maps one
/// onto the other. Exact relabeling sweeps cap at n = 8.
pub fn canonical_state(knowledge: &PartialKnowledge) -> Result<PartialKnowledge> {
    let n = knowledge.n();
    if n <= 6 {
        let cube = Cube::new(n)?;
        let engine = Engine::new(&cube);
        let ((z, o, _), _) =
            engine.canonical_key(knowledge.zeros_u64(), knowledge.ones_u64(), 0);
        return Ok(PartialKnowledge::from_u64_masks(z, o, n));
    }
    let mut best_z = knowledge.zeros().clone();
    let mut best_o = knowledge.ones().clone();
    for sigma in Permutation::all(n)?.iter().skip(1) {
        let zi = knowledge.zeros().permute(sigma)?;
        let oi = knowledge.ones().permute(sigma)?;
        let ord = zi
            .cmp_value(&best_z)
            .then_with(|| oi.cmp_value(&best_o));
        if ord == std::cmp::Ordering::Less {
            best_z = zi;
            best_o = oi;
        }
    }
    PartialKnowledge::from_masks(best_z, best_o)
}

/// Verification report for a tree: the exhaustive ratio sweep plus a count
/// of questions that were already deducible on their own path (flagged,
/// not fatal).
#[derive(Debug, Clone)]
pub struct TreeVerification {
    pub report: CompetitivityReport,
    pub unreasonable_nodes: u64,
}

/// Independent brute-force check of a tree: walks every function through
/// the tree, counts questions, divides by the certificate size, and flags
/// unreasonable questions. Errors if any function fails to reach its leaf.
pub fn verify_tree(tree: &DecisionTree, n: usize) -> Result<TreeVerification> {
    if n > MAX_SEARCH_VARS {
        return Err(Error::VarCountOutOfRange {
            n,
            max: MAX_SEARCH_VARS,
        });
    }
    let report = evaluate_competitivity(tree, n, EvalMode::Exhaustive, 1)?;
    let mut unreasonable = 0u64;
    fn walk(
        node: &DecisionTree,
        knowledge: &PartialKnowledge,
        unreasonable: &mut u64,
    ) -> Result<()> {
        if let DecisionTree::Node {
            question,
            on_zero,
            on_one,
        } = node
        {
            if knowledge.deduced(*question) != Deduction::Unknown {
                *unreasonable += 1;
            }
            // Contradictory branches are unreachable; skip them.
            if let Ok(k0) = knowledge.with_answer(*question, false) {
                walk(on_zero, &k0, unreasonable)?;
            }
            if let Ok(k1) = knowledge.with_answer(*question, true) {
                walk(on_one, &k1, unreasonable)?;
            }
        }
        Ok(())
    }
    walk(tree, &PartialKnowledge::empty(n)?, &mut unreasonable)?;
    Ok(TreeVerification {
        report,
        unreasonable_nodes: unreasonable,
    })
}

/// Annotation of a stopped path position, in the style of truncated
/// strategy displays: either the position is fully determined and carries
/// its exact ratio, or it reports the number of unclassified sets, the
/// minimum certificate size among the surviving functions, and the ratio
/// bound `(questions + unclassified) / min_certificate` that every
/// reasonable continuation respects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LeafAnnotation {
    Determined {
        ratio: Ratio,
    },
    Open {
        unclassified: usize,
        min_certificate: usize,
        bound: Ratio,
    },
}

pub fn annotate_state(knowledge: &PartialKnowledge, questions_asked: usize) -> Result<LeafAnnotation> {
    let k = min_remaining_certificate(knowledge)?;
    if knowledge.is_complete() {
        return Ok(LeafAnnotation::Determined {
            ratio: Ratio::new(questions_asked as i64, k as i64),
        });
    }
    let u = knowledge.undetermined_count();
    Ok(LeafAnnotation::Open {
        unclassified: u,
        min_certificate: k,
        bound: Ratio::new((questions_asked + u) as i64, k as i64),
    })
}

/// Completes a position into a reasonable strategy by always asking the
/// smallest undetermined set; useful for turning truncated strategy
/// sketches into full trees.
pub fn greedy_completion(knowledge: &PartialKnowledge) -> Result<DecisionTree> {
    let n = knowledge.n();
    if n > MAX_SEARCH_VARS {
        return Err(Error::VarCountOutOfRange {
            n,
            max: MAX_SEARCH_VARS,
        });
    }
    if knowledge.is_complete() {
        return Ok(DecisionTree::Leaf(MonotoneFn::new(knowledge.ones().clone())?));
    }
    let question = knowledge.undetermined_points()[0];
    Ok(DecisionTree::node(
        question,
        greedy_completion(&knowledge.with_answer(question, false)?)?,
        greedy_completion(&knowledge.with_answer(question, true)?)?,
    ))
}

// ---------------------------------------------------------------------------
// Interchange formats.

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum TreeJson {
    Node {
        question_mask: u16,
        on_zero: Box<TreeJson>,
        on_one: Box<TreeJson>,
    },
    Leaf {
        leaf_table_hex: String,
    },
}

fn to_json_node(tree: &DecisionTree) -> TreeJson {
    match tree {
        DecisionTree::Leaf(f) => TreeJson::Leaf {
            leaf_table_hex: f.to_hex(),
        },
        DecisionTree::Node {
            question,
            on_zero,
            on_one,
        } => TreeJson::Node {
            question_mask: question.bits(),
            on_zero: Box::new(to_json_node(on_zero)),
            on_one: Box::new(to_json_node(on_one)),
        },
    }
}

fn from_json_node(node: &TreeJson, n: usize) -> Result<DecisionTree> {
    match node {
        TreeJson::Leaf { leaf_table_hex } => {
            Ok(DecisionTree::Leaf(MonotoneFn::from_hex(leaf_table_hex, n)?))
        }
        TreeJson::Node {
            question_mask,
            on_zero,
            on_one,
        } => Ok(DecisionTree::node(
            ElementSet::new(*question_mask, n)?,
            from_json_node(on_zero, n)?,
            from_json_node(on_one, n)?,
        )),
    }
}

/// Serializes a tree in the interchange format: nodes as
/// `{question_mask, on_zero, on_one}`, leaves as `{leaf_table_hex}`.
pub fn tree_to_json(tree: &DecisionTree) -> String {
    serde_json::to_string(&to_json_node(tree)).expect("tree serialization cannot fail")
}

/// Parses the interchange format. Structural validation (completeness,
/// reasonableness) is deferred to `verify_tree`.
pub fn parse_tree(text: &str, n: usize) -> Result<DecisionTree> {
    let parsed: TreeJson = serde_json::from_str(text).map_err(|e| Error::BadTree(e.to_string()))?;
    from_json_node(&parsed, n)
}

/// DOT rendering: questions label internal nodes, the zero answer is the
/// left edge, and each leaf names the minimal upper and maximal lower sets
/// of its function.
pub fn tree_to_dot(tree: &DecisionTree) -> String {
    let mut out = String::new();
    out.push_str("digraph strategy {\n");
    out.push_str("  graph [ordering=out];\n");
    out.push_str("  node [shape=box, fontname=\"monospace\"];\n");
    let mut counter = 0usize;
    fn emit(node: &DecisionTree, counter: &mut usize, out: &mut String) -> usize {
        let id = *counter;
        *counter += 1;
        match node {
            DecisionTree::Leaf(f) => {
                out.push_str(&format!(
                    "  n{id} [label=\"U={} L={}\", shape=ellipse];\n",
                    f.minimal_upper_sets(),
                    f.maximal_lower_sets()
                ));
            }
            DecisionTree::Node {
                question,
                on_zero,
                on_one,
            } => {
                out.push_str(&format!("  n{id} [label=\"{question}\"];\n"));
                let zero_id = emit(on_zero, counter, out);
                out.push_str(&format!("  n{id} -> n{zero_id} [label=\"0\"];\n"));
                let one_id = emit(on_one, counter, out);
                out.push_str(&format!("  n{id} -> n{one_id} [label=\"1\"];\n"));
            }
        }
        id
    }
    emit(tree, &mut counter, &mut out);
    out.push_str("}\n");
    out
}
