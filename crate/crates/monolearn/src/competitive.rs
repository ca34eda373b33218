//! Competitive-ratio evaluation of reconstruction algorithms over all of
//! `M_n`, and the analytic lower bounds on the best achievable ratio.
//!
//! Every ratio is an exact rational; no floating point enters any
//! comparison anywhere in the crate.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::Signed;
use rand::seq::index::sample as index_sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::enumeration::{b_profile, closed_form_b, count_all, enumerate_all};
use crate::error::{Error, Result};
use crate::function::MonotoneFn;
use crate::learners::LearnerKind;

/// An exact nonnegative rational in lowest terms, ordered by value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ratio(Rational64);

impl Ratio {
    /// Reduced fraction `num/den`; `den` must be nonzero.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "ratio denominator must be nonzero");
        let r = Rational64::new(num, den);
        assert!(!r.is_negative(), "ratios in this crate are nonnegative");
        Ratio(r)
    }

    pub fn from_integer(v: i64) -> Self {
        Ratio(Rational64::from_integer(v))
    }

    pub fn numer(self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(self) -> i64 {
        *self.0.denom()
    }
}

impl std::fmt::Display for Ratio {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl FromStr for Ratio {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadTableString {
            text: s.to_string(),
            reason: "expected a rational like 5/2 or 2".to_string(),
        };
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (
                a.trim().parse::<i64>().map_err(|_| bad())?,
                b.trim().parse::<i64>().map_err(|_| bad())?,
            ),
            None => (s.trim().parse::<i64>().map_err(|_| bad())?, 1),
        };
        if den == 0 {
            return Err(bad());
        }
        Ok(Ratio::new(num, den))
    }
}

impl Serialize for Ratio {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Ratio {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(de::Error::custom)
    }
}

/// Anything that reconstructs a hidden function by asking questions and
/// reports how many it asked. Failing to reconstruct exactly is an error.
pub trait QueryAlgorithm: Sync {
    fn name(&self) -> String;
    fn questions(&self, hidden: &MonotoneFn) -> Result<usize>;
}

impl QueryAlgorithm for LearnerKind {
    fn name(&self) -> String {
        LearnerKind::name(*self).to_string()
    }

    fn questions(&self, hidden: &MonotoneFn) -> Result<usize> {
        Ok(self.learn(hidden)?.questions_asked)
    }
}

/// How much of `M_n` an evaluation covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalMode {
    Exhaustive,
    /// Uniform sample without replacement from the enumeration stream;
    /// the resulting max ratio is a lower bound on the true one.
    Sample { size: usize, seed: u64 },
}

/// Worst-case ratio certificate for one algorithm over `M_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompetitivityReport {
    pub n: usize,
    pub algorithm: String,
    pub max_ratio: Ratio,
    /// Every function attaining `max_ratio`, ascending by table.
    pub argmax_functions: Vec<MonotoneFn>,
    /// Worst ratio among the functions of each certificate size.
    pub per_certificate_worst: BTreeMap<usize, Ratio>,
    pub mean_questions: Ratio,
    pub functions_evaluated: u64,
    /// True when the report covers a sample rather than all of `M_n`;
    /// `max_ratio` is then only a lower bound on the true maximum.
    pub sampled: bool,
}

impl Serialize for MonotoneFn {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_hex())
    }
}

#[derive(Debug, Default)]
struct Partial {
    max: Option<Ratio>,
    argmax: Vec<MonotoneFn>,
    per_certificate: BTreeMap<usize, Ratio>,
    sum_questions: u128,
    count: u64,
}

impl Partial {
    fn add(&mut self, f: MonotoneFn, questions: usize) {
        let m = f.certificate_size();
        let ratio = Ratio::new(questions as i64, m as i64);
        match self.max {
            Some(best) if ratio < best => {}
            Some(best) if ratio == best => self.argmax.push(f),
            _ => {
                self.max = Some(ratio);
                self.argmax = vec![f];
            }
        }
        let entry = self.per_certificate.entry(m).or_insert(ratio);
        if ratio > *entry {
            *entry = ratio;
        }
        self.sum_questions += questions as u128;
        self.count += 1;
    }

    fn merge(mut self, other: Partial) -> Partial {
        match (self.max, other.max) {
            (Some(a), Some(b)) if a == b => self.argmax.extend(other.argmax),
            (Some(a), Some(b)) if b > a => {
                self.max = Some(b);
                self.argmax = other.argmax;
            }
            (None, Some(b)) => {
                self.max = Some(b);
                self.argmax = other.argmax;
            }
            _ => {}
        }
        for (m, r) in other.per_certificate {
            let entry = self.per_certificate.entry(m).or_insert(r);
            if r > *entry {
                *entry = r;
            }
        }
        self.sum_questions += other.sum_questions;
        self.count += other.count;
        self
    }
}

/// Runs the algorithm over `M_n` (or a uniform sample of it) and reports
/// the exact worst ratio with its witnesses. The reduction is associative,
/// so the report is identical for any worker count; ties in the witness
/// list are resolved by truth-table order.
pub fn evaluate_competitivity(
    algorithm: &dyn QueryAlgorithm,
    n: usize,
    mode: EvalMode,
    threads: usize,
) -> Result<CompetitivityReport> {
    let functions = sample_functions(n, mode)?;
    let partial = if threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool");
        pool.install(|| {
            use rayon::prelude::*;
            functions
                .par_iter()
                .map(|f| -> Result<Partial> {
                    let mut p = Partial::default();
                    p.add(f.clone(), algorithm.questions(f)?);
                    Ok(p)
                })
                .try_reduce(Partial::default, |a, b| Ok(a.merge(b)))
        })?
    } else {
        let mut p = Partial::default();
        for f in &functions {
            p.add(f.clone(), algorithm.questions(f)?);
        }
        p
    };

    let mut argmax = partial.argmax;
    argmax.sort();
    Ok(CompetitivityReport {
        n,
        algorithm: algorithm.name(),
        max_ratio: partial.max.ok_or(Error::NoConsistentFunction)?,
        argmax_functions: argmax,
        per_certificate_worst: partial.per_certificate,
        mean_questions: Ratio::new(partial.sum_questions as i64, partial.count as i64),
        functions_evaluated: partial.count,
        sampled: matches!(mode, EvalMode::Sample { .. }),
    })
}

/// The functions an evaluation mode covers: all of `M_n`, or a uniform
/// sample without replacement drawn from the enumeration stream.
pub fn sample_functions(n: usize, mode: EvalMode) -> Result<Vec<MonotoneFn>> {
    match mode {
        EvalMode::Exhaustive => Ok(enumerate_all(n)?.collect()),
        EvalMode::Sample { size, seed } => {
            let total = count_all(n)?.value as usize;
            if size >= total {
                return Ok(enumerate_all(n)?.collect());
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut picks = index_sample(&mut rng, total, size).into_vec();
            picks.sort_unstable();
            let mut out = Vec::with_capacity(size);
            let mut next = picks.iter().peekable();
            for (idx, f) in enumerate_all(n)?.enumerate() {
                match next.peek() {
                    Some(&&want) if want == idx => {
                        out.push(f);
                        next.next();
                    }
                    None => break,
                    _ => {}
                }
            }
            Ok(out)
        }
    }
}

pub(crate) fn ceil_log2(x: u128) -> i64 {
    debug_assert!(x >= 1);
    if x == 1 {
        0
    } else {
        (128 - (x - 1).leading_zeros()) as i64
    }
}

/// The information-theoretic bound: the best ratio is at least
/// `ceil(log2(b_1 + ... + b_i)) / i` for every i, because each answer at
/// best halves the set of candidates with certificate size up to i.
/// Computed from the full profile for n ≤ 6 and from the closed forms
/// (i ≤ 4) beyond.
pub fn log2_lower_bound(n: usize) -> Result<Ratio> {
    Ok(log2_bound_details(n)?
        .into_iter()
        .map(|(_, r)| r)
        .max()
        .expect("at least one i"))
}

/// Per-i values of the information bound, ascending in i.
pub fn log2_bound_details(n: usize) -> Result<Vec<(usize, Ratio)>> {
    if n <= 6 {
        let profile = b_profile(n)?;
        let max_i = profile.max_certificate();
        Ok((1..=max_i)
            .map(|i| (i, Ratio::new(ceil_log2(profile.prefix_sum(i)), i as i64)))
            .collect())
    } else {
        let mut sum: u128 = 0;
        let mut out = Vec::new();
        for i in 1..=4usize {
            sum += closed_form_b(n, i).expect("closed form for i <= 4");
            out.push((i, Ratio::new(ceil_log2(sum), i as i64)));
        }
        Ok(out)
    }
}

/// The unconditional bound of two: any strategy that reconstructs both
/// constant functions spends at least two questions on one of them, and
/// each constant has certificate size one.
pub fn trivial_lower_bound(_n: usize) -> Ratio {
    Ratio::new(2, 1)
}

/// Propagates lower bounds upward in n (lifting preserves certificates, so
/// bounds can only grow): returns the running maximum over ascending n.
pub fn monotone_bound_chain(values: &BTreeMap<usize, Ratio>) -> BTreeMap<usize, Ratio> {
    let mut out = BTreeMap::new();
    let mut best: Option<Ratio> = None;
    for (&n, &r) in values {
        let next = match best {
            Some(b) if b > r => b,
            _ => r,
        };
        best = Some(next);
        out.insert(n, next);
    }
    out
}
