//! Command-line front end: family files in, deterministic reports out.
//!
//! Exit codes: 0 when the verdict holds or a solution exists, 1 when it fails or the
//! system is unsatisfiable, 2 on usage or input errors.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::action::{block_equivalent, blocks, ActionError, PartialPerm};
use crate::closure::{closure, fmt_set, ClosureError};
use crate::conditions::{analyze_theorem, check_corollary, decompose, CheckError, Verdict};
use crate::oracle::{solve, FiniteMap, OracleError, DEFAULT_CAP};
use crate::sequence::{FamilyFile, SequenceError, SequenceFamily};
use crate::witness::{sample_states, verify_witness, TargetFunction, WitnessError, WitnessReport};
use crate::word::Word;

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

const BUILTIN_PREFIX: &str = "builtin:";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Parser)]
#[command(name = "univseq", version, about = "Check sufficient conditions for universal sequences of words")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Number of terms w_1..w_N examined.
    #[arg(long, global = true, default_value_t = 8)]
    pub bound: usize,
    /// Seed for sampled states and seeded target functions.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Sampled states per term for `witness`.
    #[arg(long, global = true, default_value_t = 50)]
    pub samples: usize,
    /// Largest ground set `solve` will search.
    #[arg(long = "max-set-size", global = true, default_value_t = DEFAULT_CAP)]
    pub max_set_size: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

/// `FAMILY` is a path to a family file or one of `builtin:banach`, `builtin:sierpinski`,
/// `builtin:aba-ab-bab`.
#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Compute the closure submonoid of w_1..w_N.
    Closure { family: String },
    /// Check the split, middle-factor and orientation hypotheses on w_1..w_N.
    CheckThm { family: String },
    /// Check the prefix/suffix overlap and subword conditions on w_1..w_N.
    CheckCor { family: String },
    /// Split each w_n into longest submonoid prefix, middle, longest submonoid suffix.
    Decompose { family: String },
    /// Build the witness homomorphism and verify it against seeded targets.
    Witness { family: String },
    /// Solve w_i = f_i for maps a, b on a small set. Targets are comma-separated images.
    Solve {
        #[arg(long = "word", required = true)]
        words: Vec<String>,
        #[arg(long = "target", required = true)]
        targets: Vec<String>,
    },
    /// Orbits and orbit equivalence of partial permutations read from a JSON file.
    Blocks { input: PathBuf },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Closure { .. } => "closure",
            Command::CheckThm { .. } => "check-thm",
            Command::CheckCor { .. } => "check-cor",
            Command::Decompose { .. } => "decompose",
            Command::Witness { .. } => "witness",
            Command::Solve { .. } => "solve",
            Command::Blocks { .. } => "blocks",
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: cannot read: {message}")]
    Io { path: String, message: String },
    #[error("{path}:{line}:{column}: at `{field}`: {message}")]
    ParseError { path: String, line: usize, column: usize, field: String, message: String },
    #[error("unsupported alphabet {0:?}; substitute onto \"ab\" first")]
    UnsupportedAlphabet(String),
    #[error("unknown builtin family {0:?}")]
    UnknownBuiltin(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Sequence(#[from] SequenceError),
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error(transparent)]
    Closure(#[from] ClosureError),
    #[error(transparent)]
    Witness(#[from] WitnessError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Action(#[from] ActionError),
}

fn parse_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let display = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|e| CliError::Io { path: display.clone(), message: e.to_string() })?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let field = e.path().to_string();
        let inner = e.inner();
        CliError::ParseError {
            path: display,
            line: inner.line(),
            column: inner.column(),
            field,
            message: inner.to_string(),
        }
    })
}

/// Reads and validates a family file. Only the alphabet `"ab"` is accepted.
pub fn parse_family_file(path: &Path) -> Result<SequenceFamily, CliError> {
    let file: FamilyFile = parse_json(path)?;
    if file.alphabet != "ab" {
        return Err(CliError::UnsupportedAlphabet(file.alphabet));
    }
    Ok(file.into_family()?)
}

fn load_family(arg: &str) -> Result<SequenceFamily, CliError> {
    match arg.strip_prefix(BUILTIN_PREFIX) {
        Some("banach") => Ok(SequenceFamily::banach()),
        Some("sierpinski") => Ok(SequenceFamily::sierpinski()),
        Some("aba-ab-bab") => Ok(SequenceFamily::aba_ab_bab()),
        Some(other) => Err(CliError::UnknownBuiltin(other.to_string())),
        None => parse_family_file(Path::new(arg)),
    }
}

fn parse_target(s: &str) -> Result<FiniteMap, CliError> {
    let images = s
        .split(',')
        .map(|p| p.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::InvalidArgument(format!("target {s:?}: {e}")))?;
    Ok(FiniteMap::new(images)?)
}

fn parse_word(s: &str) -> Result<Word, CliError> {
    s.parse().map_err(|e| CliError::InvalidArgument(format!("word {s:?}: {e}")))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BlocksFile {
    ground: BTreeSet<usize>,
    generators: Vec<PartialPerm>,
}

/// A finished command: exit code plus report body.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub report: String,
}

struct Report {
    code: i32,
    json: Value,
    text: String,
}

fn verdict_text(out: &mut String, v: &Verdict) {
    let status = match (v.applicable, v.holds) {
        (false, _) => "not applicable",
        (true, true) => "holds",
        (true, false) => "fails",
    };
    let _ = writeln!(out, "verdict: {status} (N = {})", v.bound);
    for viol in &v.violations {
        let _ = writeln!(out, "  violation {:?} at {:?}: {}", viol.condition, viol.indices, fmt_set(viol.witness.iter()));
    }
    for note in &v.notes {
        let _ = writeln!(out, "  note {:?} at {:?}: {}", note.condition, note.indices, fmt_set(note.witness.iter()));
    }
}

fn verdict_code(v: &Verdict) -> i32 {
    if v.holds {
        EXIT_HOLDS
    } else {
        EXIT_FAILS
    }
}

fn run_closure(family: &SequenceFamily, bound: usize) -> Result<Report, CliError> {
    let words = family.prefix(bound)?;
    let c = closure(&words)?;
    let rounds: Vec<Value> = c
        .rounds
        .iter()
        .enumerate()
        .map(|(k, r)| json!({"k": k, "x": r.x, "y": r.y}))
        .collect();
    let json = json!({
        "generators": c.generators,
        "iterations": c.iterations(),
        "pool_size": c.pool.len(),
        "subword_pool_size": c.subword_pool_size,
        "rounds": rounds,
        "trivial": c.is_trivial(),
    });
    let mut text = format!("S_w = <{}>\niterations: {}\n", fmt_set(c.generators.iter()), c.iterations());
    for (k, r) in c.rounds.iter().enumerate() {
        let _ = writeln!(text, "X_{k} = {}\nY_{k} = {}", fmt_set(r.x.iter()), fmt_set(r.y.iter()));
    }
    Ok(Report { code: EXIT_HOLDS, json: json!({"result": json}), text })
}

fn run_check_thm(family: &SequenceFamily, bound: usize) -> Result<Report, CliError> {
    let a = analyze_theorem(family, bound)?;
    let mut text = format!("S_w = <{}>\n", fmt_set(a.closure.generators.iter()));
    verdict_text(&mut text, &a.verdict);
    Ok(Report {
        code: verdict_code(&a.verdict),
        json: json!({
            "verdict": a.verdict,
            "violations": a.verdict.violations,
            "generators": a.closure.generators,
            "decompositions": a.decompositions,
        }),
        text,
    })
}

fn run_check_cor(family: &SequenceFamily, bound: usize) -> Result<Report, CliError> {
    let v = check_corollary(family, bound)?;
    let mut text = String::new();
    verdict_text(&mut text, &v);
    Ok(Report { code: verdict_code(&v), json: json!({"verdict": v, "violations": v.violations}), text })
}

fn run_decompose(family: &SequenceFamily, bound: usize) -> Result<Report, CliError> {
    let words = family.prefix(bound)?;
    let c = closure(&words)?;
    let mut rows = Vec::new();
    let mut text = format!("S_w = <{}>\n", fmt_set(c.generators.iter()));
    let mut code = EXIT_HOLDS;
    for (i, w) in words.iter().enumerate() {
        let n = i + 1;
        match decompose(w, &c.generators, n) {
            Ok(d) => {
                let _ = writeln!(text, "w_{n} = ({}) ({}) ({})", d.p, d.u, d.s);
                rows.push(json!({"n": n, "word": w, "p": d.p, "u": d.u, "s": d.s}));
            }
            Err(CheckError::SplitViolation { .. }) => {
                code = EXIT_FAILS;
                let _ = writeln!(text, "w_{n} = {w}: split condition fails");
                rows.push(json!({"n": n, "word": w, "split": false}));
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(Report { code, json: json!({"result": rows, "generators": c.generators}), text })
}

fn witness_text(r: &WitnessReport) -> String {
    let mut text = format!(
        "generators: {}\norientation: {}\nevaluations: {} over {} samples per n\n",
        fmt_set(r.generators.iter()),
        r.orientation,
        r.evaluations,
        r.samples
    );
    let c = &r.claims;
    for (name, counter) in [
        ("append", c.append),
        ("append_injective", c.append_injective),
        ("phi_equals_psi", c.phi_equals_psi),
        ("delta_inert", c.delta_inert),
        ("prefix_stacking", c.prefix_stacking),
        ("middle_delta", c.middle_delta),
        ("end_to_end", c.end_to_end),
    ] {
        let _ = writeln!(text, "  {name}: {} passed, {} failed", counter.passed, counter.failed);
    }
    if let Some(f) = &r.first_failure {
        let _ = writeln!(text, "first failure: {} at n = {:?}, word {}, state {}", f.claim, f.n, f.word, f.state);
    }
    text
}

fn run_witness(family: &SequenceFamily, config: &RunConfig) -> Result<Report, CliError> {
    let targets = TargetFunction::seeded_family(config.seed, config.bound);
    let samples = sample_states(config.seed, config.samples);
    match verify_witness(family, config.bound, targets, &samples) {
        Ok(r) => Ok(Report {
            code: EXIT_HOLDS,
            text: format!("verdict: holds (N = {})\n{}", config.bound, witness_text(&r)),
            json: json!({"verdict": {"holds": true, "bound": config.bound}, "witness": r}),
        }),
        Err(WitnessError::VerificationFailure { report, .. }) => Ok(Report {
            code: EXIT_FAILS,
            text: format!("verdict: fails (N = {})\n{}", config.bound, witness_text(&report)),
            json: json!({"verdict": {"holds": false, "bound": config.bound}, "witness": report}),
        }),
        Err(WitnessError::HypothesisNotVerified(v)) => {
            let mut text = String::from("hypotheses not met\n");
            verdict_text(&mut text, &v);
            Ok(Report { code: EXIT_FAILS, json: json!({"verdict": v, "violations": v.violations}), text })
        }
        Err(e) => Err(e.into()),
    }
}

fn run_solve(words: &[String], targets: &[String], cap: usize) -> Result<Report, CliError> {
    let words = words.iter().map(|w| parse_word(w)).collect::<Result<Vec<_>, _>>()?;
    let targets = targets.iter().map(|t| parse_target(t)).collect::<Result<Vec<_>, _>>()?;
    let m = targets.first().map(FiniteMap::size).unwrap_or(0);
    match solve(&words, &targets, m, cap)? {
        Some(sol) => Ok(Report {
            code: EXIT_HOLDS,
            text: format!("SAT\na = [{}]\nb = [{}]\n", sol.a, sol.b),
            json: json!({"result": "sat", "set_size": m, "witness": sol}),
        }),
        None => Ok(Report {
            code: EXIT_FAILS,
            text: "UNSAT\n".into(),
            json: json!({"result": "unsat", "set_size": m, "witness": null}),
        }),
    }
}

fn run_blocks(path: &Path) -> Result<Report, CliError> {
    let file: BlocksFile = parse_json(path)?;
    let found = blocks(&file.generators, &file.ground);
    // Classes of equivalent blocks, as lists of block indices.
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, b) in found.iter().enumerate() {
        let mut placed = false;
        for class in classes.iter_mut() {
            if block_equivalent(&found[class[0]], b, &file.generators)?.is_some() {
                class.push(i);
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push(vec![i]);
        }
    }
    let mut text = String::new();
    for (i, b) in found.iter().enumerate() {
        let _ = writeln!(text, "block {i}: {b:?}");
    }
    for class in &classes {
        let _ = writeln!(text, "equivalent: {class:?}");
    }
    Ok(Report { code: EXIT_HOLDS, json: json!({"result": {"blocks": found, "classes": classes}}), text })
}

fn dispatch(config: &RunConfig) -> Result<Report, CliError> {
    let family_bound = |family: &str| -> Result<SequenceFamily, CliError> {
        if config.bound < 2 {
            return Err(CheckError::BoundTooSmall(config.bound).into());
        }
        load_family(family)
    };
    match &config.command {
        Command::Closure { family } => run_closure(&family_bound(family)?, config.bound),
        Command::CheckThm { family } => run_check_thm(&family_bound(family)?, config.bound),
        Command::CheckCor { family } => run_check_cor(&family_bound(family)?, config.bound),
        Command::Decompose { family } => run_decompose(&family_bound(family)?, config.bound),
        Command::Witness { family } => run_witness(&family_bound(family)?, config),
        Command::Solve { words, targets } => run_solve(words, targets, config.max_set_size),
        Command::Blocks { input } => run_blocks(input),
    }
}

/// Runs one command. The report is deterministic in `config` and the input files.
pub fn run(config: &RunConfig) -> Outcome {
    let command = config.command.name();
    match dispatch(config) {
        Ok(report) => {
            let body = match config.format {
                Format::Text => format!("{command}\n{}", report.text),
                Format::Json => {
                    let mut obj = match report.json {
                        Value::Object(map) => map,
                        other => unreachable!("reports are objects, got {other}"),
                    };
                    obj.insert("command".into(), json!(command));
                    obj.entry("bound").or_insert(json!(config.bound));
                    let mut s = serde_json::to_string_pretty(&Value::Object(obj)).expect("report serializes");
                    s.push('\n');
                    s
                }
            };
            Outcome { code: report.code, report: body }
        }
        Err(e) => {
            let report = match config.format {
                Format::Text => format!("error: {e}\n"),
                Format::Json => format!("{}\n", json!({"command": command, "error": e.to_string()})),
            };
            Outcome { code: EXIT_ERROR, report }
        }
    }
}
