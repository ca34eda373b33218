//! Command-line front end: enumeration dumps, learner runs, bound tables,
//! optimal search, and tree verification. Machine-readable JSON lines go to
//! stdout; human summaries go to stderr.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use monolearn::competitive::{
    evaluate_competitivity, log2_bound_details, log2_lower_bound, sample_functions,
    trivial_lower_bound, EvalMode, Ratio,
};
use monolearn::enumeration::{b_profile, enumerate_all, enumerate_inequivalent};
use monolearn::learners::LearnerKind;
use monolearn::optsearch::{
    compute_optimal, parse_tree, tree_to_dot, tree_to_json, verify_tree, SearchValue,
};
use monolearn::{Error, MonotoneFn};

#[derive(Parser)]
#[command(
    name = "monolearn",
    version,
    about = "Exact reconstruction of monotone Boolean functions: enumeration, learners, competitive ratios, optimal strategies"
)]
struct Cli {
    /// Worker threads for evaluation sweeps (1 = fully sequential).
    #[arg(long, global = true, env = "MONOLEARN_THREADS", default_value_t = 1)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate monotone functions as JSON lines (caps at n = 6).
    Enum(EnumArgs),
    /// Run a learner and report per-function query counts.
    Learn(LearnArgs),
    /// Evaluate an algorithm's competitive ratio over all of M_n.
    Evaluate(EvaluateArgs),
    /// Print the analytic lower bounds on the optimal competitivity.
    Bounds(BoundsArgs),
    /// Determine the optimal competitivity by exhaustive minimax search.
    Optimal(OptimalArgs),
    /// Verify a decision tree from its JSON interchange file.
    VerifyTree(VerifyTreeArgs),
}

#[derive(Args)]
struct EnumArgs {
    /// Number of variables, 1..=6.
    #[arg(long)]
    n: usize,
    /// Emit one canonical representative per equivalence class.
    #[arg(long)]
    inequivalent: bool,
    /// Emit the certificate-size profile instead of per-function records.
    #[arg(long)]
    profile: bool,
}

#[derive(Args)]
struct LearnArgs {
    /// Number of variables, 1..=6.
    #[arg(long)]
    n: usize,
    /// Learner: find-border, find-border-dual, or hansel.
    #[arg(long)]
    algo: String,
    /// Run on one function given by its hex truth table.
    #[arg(long, conflicts_with = "all")]
    function: Option<String>,
    /// Run on every function (sampled at n = 6 unless --sample is given).
    #[arg(long)]
    all: bool,
    /// Sample this many functions uniformly instead of sweeping all.
    #[arg(long)]
    sample: Option<usize>,
    /// RNG seed for sampling.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// With --function: also emit the query transcript records.
    #[arg(long)]
    transcript: bool,
}

#[derive(Args)]
struct EvaluateArgs {
    /// Number of variables (learners: exhaustive to 5, sampled at 6).
    #[arg(long)]
    n: usize,
    /// Algorithm: find-border, find-border-dual, or hansel.
    #[arg(long)]
    algo: String,
    /// Sample this many functions uniformly instead of sweeping all.
    #[arg(long)]
    sample: Option<usize>,
    /// RNG seed for sampling.
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Args)]
struct BoundsArgs {
    /// Number of variables, 1..=16.
    #[arg(long)]
    n: usize,
}

#[derive(Args)]
struct OptimalArgs {
    /// Number of variables: 1..=4 exact, 5 lower-bound mode.
    #[arg(long)]
    n: usize,
    /// Time budget in seconds; expiry yields certified partial bounds.
    /// Defaults to 600 for n = 5, unbounded below that.
    #[arg(long)]
    budget: Option<u64>,
    /// Write the witness strategy as a DOT graph to this file.
    #[arg(long, value_name = "FILE.dot")]
    emit_tree: Option<PathBuf>,
    /// Write the witness strategy in JSON interchange form to this file.
    #[arg(long, value_name = "FILE.json")]
    emit_json: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyTreeArgs {
    /// Number of variables the tree is for.
    #[arg(long)]
    n: usize,
    /// Tree file in the JSON interchange format.
    #[arg(long)]
    file: PathBuf,
    /// Fail (exit 1) if the verified max ratio exceeds this rational.
    #[arg(long)]
    expect: Option<String>,
}

#[derive(Serialize)]
struct FunctionRecord {
    n: usize,
    table_hex: String,
    m: usize,
    #[serde(rename = "size_U")]
    size_u: usize,
    #[serde(rename = "size_L")]
    size_l: usize,
}

impl FunctionRecord {
    fn for_fn(f: &MonotoneFn) -> Self {
        FunctionRecord {
            n: f.n(),
            table_hex: f.to_hex(),
            m: f.certificate_size(),
            size_u: f.minimal_upper_sets().len(),
            size_l: f.maximal_lower_sets().len(),
        }
    }
}

#[derive(Serialize)]
struct LearnRecord {
    table_hex: String,
    m: usize,
    asked: usize,
    ratio: Ratio,
}

#[derive(Serialize)]
struct LearnSummary {
    max_ratio: Ratio,
    mean_asked: Ratio,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            // Failed verification is distinguished from usage errors.
            match e {
                Error::TreeIncomplete { .. } => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let threads = cli.threads.max(1);
    match cli.command {
        Command::Enum(args) => run_enum(args),
        Command::Learn(args) => run_learn(args),
        Command::Evaluate(args) => run_evaluate(args, threads),
        Command::Bounds(args) => run_bounds(args),
        Command::Optimal(args) => run_optimal(args),
        Command::VerifyTree(args) => run_verify_tree(args),
    }
}

fn jsonl<T: Serialize>(out: &mut impl Write, value: &T) {
    serde_json::to_writer(&mut *out, value).expect("serialization");
    out.write_all(b"\n").expect("stdout");
}

fn run_enum(args: EnumArgs) -> Result<ExitCode, Error> {
    let stdout = std::io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    if args.profile {
        let profile = b_profile(args.n)?;
        jsonl(&mut out, &profile);
        out.flush()?;
        eprintln!(
            "n={}: {} functions across {} certificate sizes",
            args.n,
            profile.total(),
            profile.counts.len()
        );
        return Ok(ExitCode::SUCCESS);
    }
    let mut count = 0u64;
    if args.inequivalent {
        for f in enumerate_inequivalent(args.n)? {
            jsonl(&mut out, &FunctionRecord::for_fn(&f));
            count += 1;
        }
    } else {
        for f in enumerate_all(args.n)? {
            jsonl(&mut out, &FunctionRecord::for_fn(&f));
            count += 1;
        }
    }
    out.flush()?;
    eprintln!("n={}: {} functions emitted", args.n, count);
    Ok(ExitCode::SUCCESS)
}

fn parse_learner(name: &str) -> Result<LearnerKind, Error> {
    LearnerKind::from_name(name).ok_or_else(|| Error::BadTableString {
        text: name.to_string(),
        reason: "unknown algorithm; expected find-border, find-border-dual, or hansel".to_string(),
    })
}

fn learn_mode(n: usize, sample: Option<usize>, seed: u64) -> EvalMode {
    match sample {
        Some(size) => EvalMode::Sample { size, seed },
        // Learner sweeps are exhaustive through n = 5; the 7.8M functions
        // of n = 6 default to a labeled uniform sample.
        None if n >= 6 => EvalMode::Sample {
            size: 100_000,
            seed,
        },
        None => EvalMode::Exhaustive,
    }
}

fn run_learn(args: LearnArgs) -> Result<ExitCode, Error> {
    let learner = parse_learner(&args.algo)?;
    let stdout = std::io::stdout();
    let mut out = BufWriter::new(stdout.lock());

    let functions: Vec<MonotoneFn> = if let Some(hex) = &args.function {
        vec![MonotoneFn::from_hex(hex, args.n)?]
    } else if args.all || args.sample.is_some() {
        sample_functions(args.n, learn_mode(args.n, args.sample, args.seed))?
    } else {
        return Err(Error::BadTableString {
            text: String::new(),
            reason: "pass --function HEX or --all".to_string(),
        });
    };

    let mut max_ratio: Option<Ratio> = None;
    let mut total_asked: u128 = 0;
    for f in &functions {
        let result = learner.learn(f)?;
        if args.transcript && args.function.is_some() {
            for record in &result.transcript {
                jsonl(&mut out, &record.to_json());
            }
        }
        let m = f.certificate_size();
        let ratio = Ratio::new(result.questions_asked as i64, m as i64);
        jsonl(
            &mut out,
            &LearnRecord {
                table_hex: f.to_hex(),
                m,
                asked: result.questions_asked,
                ratio,
            },
        );
        max_ratio = Some(max_ratio.map_or(ratio, |r| r.max(ratio)));
        total_asked += result.questions_asked as u128;
    }
    jsonl(
        &mut out,
        &LearnSummary {
            max_ratio: max_ratio.expect("at least one function"),
            mean_asked: Ratio::new(total_asked as i64, functions.len() as i64),
        },
    );
    out.flush()?;
    eprintln!(
        "{} on n={}: {} functions, worst ratio {}",
        learner.name(),
        args.n,
        functions.len(),
        max_ratio.unwrap()
    );
    Ok(ExitCode::SUCCESS)
}

fn run_evaluate(args: EvaluateArgs, threads: usize) -> Result<ExitCode, Error> {
    let learner = parse_learner(&args.algo)?;
    let mode = learn_mode(args.n, args.sample, args.seed);
    let report = evaluate_competitivity(&learner, args.n, mode, threads)?;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    jsonl(&mut out, &report);
    eprintln!(
        "{} on n={}: max ratio {} over {} functions{}",
        report.algorithm,
        report.n,
        report.max_ratio,
        report.functions_evaluated,
        if report.sampled {
            " (sampled lower bound on max ratio)"
        } else {
            ""
        }
    );
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct BoundsReport {
    n: usize,
    trivial: Ratio,
    log2: Ratio,
    binding_i: usize,
    per_i: Vec<BoundEntry>,
    overall: Ratio,
}

#[derive(Serialize)]
struct BoundEntry {
    i: usize,
    bound: Ratio,
}

fn run_bounds(args: BoundsArgs) -> Result<ExitCode, Error> {
    let details = log2_bound_details(args.n)?;
    let log2 = log2_lower_bound(args.n)?;
    let binding_i = details
        .iter()
        .find(|(_, r)| *r == log2)
        .map(|(i, _)| *i)
        .expect("binding index exists");
    let trivial = trivial_lower_bound(args.n);
    let report = BoundsReport {
        n: args.n,
        trivial,
        log2,
        binding_i,
        per_i: details
            .into_iter()
            .map(|(i, bound)| BoundEntry { i, bound })
            .collect(),
        overall: trivial.max(log2),
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    jsonl(&mut out, &report);
    eprintln!(
        "n={}: best analytic lower bound {} (information bound {} binding at i={})",
        args.n, report.overall, report.log2, report.binding_i
    );
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct OptimalReport {
    n: usize,
    exact: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<Ratio>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lower_bound: Option<Ratio>,
    #[serde(skip_serializing_if = "Option::is_none")]
    upper_bound: Option<Ratio>,
    states_expanded: u64,
    memo_hits: u64,
    has_witness: bool,
}

fn run_optimal(args: OptimalArgs) -> Result<ExitCode, Error> {
    // Output paths must be writable before the search starts.
    let dot_file = args.emit_tree.as_ref().map(File::create).transpose()?;
    let json_file = args.emit_json.as_ref().map(File::create).transpose()?;

    let budget = args
        .budget
        .map(Duration::from_secs)
        .or_else(|| (args.n >= 5).then(|| Duration::from_secs(600)));
    let outcome = compute_optimal(args.n, budget)?;

    let report = match &outcome.value {
        SearchValue::Exact(v) => OptimalReport {
            n: outcome.n,
            exact: true,
            value: Some(*v),
            lower_bound: None,
            upper_bound: None,
            states_expanded: outcome.stats.states_expanded,
            memo_hits: outcome.stats.memo_hits,
            has_witness: outcome.tree.is_some(),
        },
        SearchValue::Bounds { lower, upper } => OptimalReport {
            n: outcome.n,
            exact: false,
            value: None,
            lower_bound: Some(*lower),
            upper_bound: *upper,
            states_expanded: outcome.stats.states_expanded,
            memo_hits: outcome.stats.memo_hits,
            has_witness: outcome.tree.is_some(),
        },
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    jsonl(&mut out, &report);
    match &outcome.value {
        SearchValue::Exact(v) => eprintln!(
            "optimal competitivity for n={}: {} (exact; {} states, {} memo hits, {} ms)",
            outcome.n,
            v,
            outcome.stats.states_expanded,
            outcome.stats.memo_hits,
            outcome.stats.elapsed.as_millis()
        ),
        SearchValue::Bounds { lower, upper } => eprintln!(
            "optimal competitivity for n={}: >= {}{} (budget expired after {} ms)",
            outcome.n,
            lower,
            upper.map(|u| format!(", <= {u}")).unwrap_or_default(),
            outcome.stats.elapsed.as_millis()
        ),
    }

    if let Some(tree) = &outcome.tree {
        if let Some(mut f) = dot_file {
            f.write_all(tree_to_dot(tree).as_bytes())?;
            eprintln!("wrote DOT witness to {}", args.emit_tree.unwrap().display());
        }
        if let Some(mut f) = json_file {
            f.write_all(tree_to_json(tree).as_bytes())?;
            f.write_all(b"\n")?;
            eprintln!("wrote JSON witness to {}", args.emit_json.unwrap().display());
        }
    } else if dot_file.is_some() || json_file.is_some() {
        eprintln!("no witness tree available; emit files left empty");
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct VerifyReport {
    n: usize,
    max_ratio: Ratio,
    argmax_functions: Vec<String>,
    mean_questions: Ratio,
    unreasonable_nodes: u64,
}

fn run_verify_tree(args: VerifyTreeArgs) -> Result<ExitCode, Error> {
    let text = std::fs::read_to_string(&args.file)?;
    let tree = parse_tree(&text, args.n)?;
    let verification = verify_tree(&tree, args.n)?;
    let report = VerifyReport {
        n: args.n,
        max_ratio: verification.report.max_ratio,
        argmax_functions: verification
            .report
            .argmax_functions
            .iter()
            .map(|f| f.to_hex())
            .collect(),
        mean_questions: verification.report.mean_questions,
        unreasonable_nodes: verification.unreasonable_nodes,
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    jsonl(&mut out, &report);
    if verification.unreasonable_nodes > 0 {
        eprintln!(
            "warning: {} unreasonable question(s) in the tree",
            verification.unreasonable_nodes
        );
    }
    eprintln!(
        "verified: max ratio {} over all {} functions",
        report.max_ratio, verification.report.functions_evaluated
    );
    if let Some(expect) = &args.expect {
        let bound: Ratio = expect.parse()?;
        if report.max_ratio > bound {
            eprintln!(
                "verification failed: max ratio {} exceeds the claimed {}",
                report.max_ratio, bound
            );
            return Ok(ExitCode::from(1));
        }
    }
    Ok(ExitCode::SUCCESS)
}
