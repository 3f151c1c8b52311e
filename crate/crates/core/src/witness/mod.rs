//! Executable witness homomorphisms.
//!
//! Given a family meeting the universality hypotheses and arbitrary targets `f_n`, this
//! module builds the homomorphism `Φ` from words to transformations of the state space
//! and checks `(w_n)Φ = f_n` pointwise on sample states. Letters act by:
//!
//! * opening letter (`a` for families in `aA*b`): push it as a new `x_0`;
//! * closing letter: push it, then collapse a completed generator into the free-group
//!   entry beneath it (`γ`), then, under `Φ` only, fire the target when a middle factor
//!   `u_n` has just been completed (`δ`).
//!
//! `Ψ` is the homomorphism without `δ`.

pub mod free_group;
pub mod state;
pub mod target;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::closure::IrredundantSet;
use crate::conditions::{analyze_theorem, check_sandwich, orientation, CheckError, Decomposition, Verdict};
use crate::sequence::SequenceFamily;
use crate::word::{Letter, Word};

pub use free_group::{GroupWord, Sym};
pub use state::{random_state, sample_states, Entry, StackState, DEFAULT_ATOMS};
pub use target::{SeededTarget, TargetFunction};

#[derive(Debug, Error)]
pub enum WitnessError {
    #[error("{operator} has several matches on {state}: {matches:?}")]
    AmbiguousCollapse { operator: &'static str, state: StackState, matches: Vec<(usize, Word)> },
    #[error("family does not meet the hypotheses at bound {}", .0.bound)]
    HypothesisNotVerified(Box<Verdict>),
    #[error("{claim} failed at n = {n:?} on {state}")]
    VerificationFailure {
        claim: String,
        n: Option<usize>,
        state: StackState,
        report: Box<WitnessReport>,
    },
    #[error("no target function for n = {0}")]
    MissingTarget(usize),
    #[error("inconsistent context: {0}")]
    InvalidContext(String),
    #[error(transparent)]
    Check(#[from] CheckError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Mode {
    Psi,
    Phi,
}

/// How often each operator changed the state during an evaluation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Trace {
    pub collapses: usize,
    pub deltas: usize,
}

pub struct WitnessContext {
    generators: IrredundantSet,
    generator_set: BTreeSet<Word>,
    max_generator_len: usize,
    closing: Letter,
    decompositions: Vec<Decomposition>,
    middles: BTreeMap<Word, usize>,
    max_middle_len: usize,
    targets: Vec<TargetFunction>,
}

impl WitnessContext {
    /// `decompositions[n - 1]` and `targets[n - 1]` belong to `w_n`.
    pub fn new(
        generators: IrredundantSet,
        decompositions: Vec<Decomposition>,
        targets: Vec<TargetFunction>,
    ) -> Result<WitnessContext, WitnessError> {
        let words: Vec<Word> = decompositions.iter().map(Decomposition::word).collect();
        let closing = if words.is_empty() {
            generators.elements().first().and_then(Word::last).unwrap_or(Letter::B)
        } else {
            orientation(&words)
                .ok_or_else(|| {
                    WitnessError::InvalidContext("words do not share an orientation".into())
                })?
                .other()
        };
        if let Some(g) = generators.elements().iter().find(|g| g.last() != Some(closing)) {
            return Err(WitnessError::InvalidContext(format!(
                "generator {g} does not end with {}",
                closing.as_char()
            )));
        }
        let mut middles = BTreeMap::new();
        for (i, d) in decompositions.iter().enumerate() {
            if d.n != i + 1 {
                return Err(WitnessError::InvalidContext(format!(
                    "decomposition {} listed at position {}",
                    d.n,
                    i + 1
                )));
            }
            if middles.insert(d.u.clone(), d.n).is_some() {
                return Err(WitnessError::InvalidContext(format!("middle {} repeats", d.u)));
            }
        }
        if targets.len() < decompositions.len() {
            return Err(WitnessError::MissingTarget(targets.len() + 1));
        }
        Ok(WitnessContext {
            generator_set: generators.elements().iter().cloned().collect(),
            max_generator_len: generators.max_len(),
            generators,
            closing,
            max_middle_len: middles.keys().map(Word::len).max().unwrap_or(0),
            middles,
            decompositions,
            targets,
        })
    }

    /// A context for `Ψ` alone.
    pub fn psi_only(generators: IrredundantSet) -> Result<WitnessContext, WitnessError> {
        WitnessContext::new(generators, Vec::new(), Vec::new())
    }

    pub fn generators(&self) -> &IrredundantSet {
        &self.generators
    }

    pub fn decompositions(&self) -> &[Decomposition] {
        &self.decompositions
    }

    pub fn closing_letter(&self) -> Letter {
        self.closing
    }
}

/// Every `i >= 1` such that `x_{i-1}, ..., x_0` are words of `A+` whose concatenation
/// `lookup` accepts, while `x_i` lies in `F(a,b)`.
fn find_matches<R>(
    x: &StackState,
    max_len: usize,
    lookup: impl Fn(&Word) -> Option<R>,
) -> Vec<(usize, Word, R)> {
    let mut out = Vec::new();
    let mut acc = Word::empty();
    for i in 1.. {
        let Some(top) = x.x(i - 1).as_positive() else { break };
        acc = top.concat(&acc);
        if acc.len() > max_len {
            break;
        }
        if x.x(i).as_group().is_some() {
            if let Some(r) = lookup(&acc) {
                out.push((i, acc.clone(), r));
            }
        }
    }
    out
}

fn gamma(x: StackState, ctx: &WitnessContext, trace: &mut Trace) -> Result<StackState, WitnessError> {
    let mut matches = find_matches(&x, ctx.max_generator_len, |v| ctx.generator_set.contains(v).then_some(()));
    match matches.len() {
        0 => Ok(x),
        1 => {
            let (i, v, ()) = matches.pop().expect("one match");
            trace.collapses += 1;
            Ok(x.replace_top(i, &GroupWord::from(&v)))
        }
        _ => Err(WitnessError::AmbiguousCollapse {
            operator: "gamma",
            state: x,
            matches: matches.into_iter().map(|(i, v, ())| (i, v)).collect(),
        }),
    }
}

fn delta(x: StackState, ctx: &WitnessContext, trace: &mut Trace) -> Result<StackState, WitnessError> {
    let mut matches = find_matches(&x, ctx.max_middle_len, |u| ctx.middles.get(u).copied());
    match matches.len() {
        0 => Ok(x),
        1 => {
            let (i, _, n) = matches.pop().expect("one match");
            trace.deltas += 1;
            let d = &ctx.decompositions[n - 1];
            let target = ctx.targets.get(n - 1).ok_or(WitnessError::MissingTarget(n))?;
            let rewound = x.replace_top(i, &GroupWord::from(&d.p).inverse());
            Ok(target.apply(&rewound).append_to_x0(&GroupWord::from(&d.s).inverse()))
        }
        _ => Err(WitnessError::AmbiguousCollapse {
            operator: "delta",
            state: x,
            matches: matches.into_iter().map(|(i, u, _)| (i, u)).collect(),
        }),
    }
}

/// The `δ` map on its own.
pub fn apply_delta(x: &StackState, ctx: &WitnessContext) -> Result<StackState, WitnessError> {
    delta(x.clone(), ctx, &mut Trace::default())
}

pub fn step(x: &StackState, letter: Letter, mode: Mode, ctx: &WitnessContext) -> Result<StackState, WitnessError> {
    step_traced(x, letter, mode, ctx, &mut Trace::default())
}

pub fn step_traced(
    x: &StackState,
    letter: Letter,
    mode: Mode,
    ctx: &WitnessContext,
    trace: &mut Trace,
) -> Result<StackState, WitnessError> {
    let pushed = x.push(GroupWord::from(letter));
    if letter != ctx.closing {
        return Ok(pushed);
    }
    let collapsed = gamma(pushed, ctx, trace)?;
    match mode {
        Mode::Psi => Ok(collapsed),
        Mode::Phi => delta(collapsed, ctx, trace),
    }
}

/// `x` acted on by the image of `w`, letters applied left to right. The empty word acts
/// as the identity.
pub fn eval_hom(w: &Word, x: &StackState, mode: Mode, ctx: &WitnessContext) -> Result<StackState, WitnessError> {
    eval_hom_traced(w, x, mode, ctx).map(|(s, _)| s)
}

pub fn eval_hom_traced(
    w: &Word,
    x: &StackState,
    mode: Mode,
    ctx: &WitnessContext,
) -> Result<(StackState, Trace), WitnessError> {
    let mut trace = Trace::default();
    let mut state = x.clone();
    for &letter in w.letters() {
        state = step_traced(&state, letter, mode, ctx, &mut trace)?;
    }
    Ok((state, trace))
}

/// If `after` is `before` with positive entries concatenating to `v` pushed on top,
/// returns those entries.
pub fn pushed_entries(after: &StackState, before: &StackState, v: &Word) -> Option<Vec<Word>> {
    let mut acc = Word::empty();
    let mut pushed = Vec::new();
    let mut k = 0;
    while acc.len() < v.len() {
        let top = after.x(k).as_positive()?;
        acc = top.concat(&acc);
        pushed.push(top);
        k += 1;
    }
    pushed.reverse();
    (acc == *v && after.pop(k).as_ref() == Some(before)).then_some(pushed)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counter {
    pub passed: usize,
    pub failed: usize,
}

impl Counter {
    fn record(&mut self, ok: bool) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClaimCounts {
    /// `Ψ` of a submonoid word appends it to `x_0`.
    pub append: Counter,
    /// `Ψ` of a submonoid word is injective on the samples.
    pub append_injective: Counter,
    /// `Φ` and `Ψ` agree on submonoid words.
    pub phi_equals_psi: Counter,
    /// `δ` never fires while `Φ` evaluates a submonoid word.
    pub delta_inert: Counter,
    /// `Ψ` of `u_n` pushes positive entries spelling `u_n`.
    pub prefix_stacking: Counter,
    /// `Φ` of `u_n` is `Ψ` of `u_n` followed by `δ`.
    pub middle_delta: Counter,
    /// `Φ` of `w_n` equals `f_n`.
    pub end_to_end: Counter,
}

impl ClaimCounts {
    pub fn total_failed(&self) -> usize {
        [
            self.append,
            self.append_injective,
            self.phi_equals_psi,
            self.delta_inert,
            self.prefix_stacking,
            self.middle_delta,
            self.end_to_end,
        ]
        .iter()
        .map(|c| c.failed)
        .sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub claim: String,
    pub n: Option<usize>,
    pub word: Word,
    pub state: StackState,
    pub expected: Option<StackState>,
    pub actual: Option<StackState>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub bound: usize,
    pub samples: usize,
    pub orientation: String,
    pub generators: Vec<Word>,
    pub decompositions: Vec<Decomposition>,
    /// Number of `Φ(w_n)` evaluations compared against targets.
    pub evaluations: usize,
    pub claims: ClaimCounts,
    pub first_failure: Option<Failure>,
}

impl WitnessReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none() && self.claims.total_failed() == 0
    }
}

struct Recorder {
    claims: ClaimCounts,
    first_failure: Option<Failure>,
}

impl Recorder {
    fn check(
        &mut self,
        claim: &str,
        ok: bool,
        (n, word, state): (Option<usize>, &Word, &StackState),
        (expected, actual): (Option<&StackState>, Option<&StackState>),
    ) {
        let counter = match claim {
            "append" => &mut self.claims.append,
            "append_injective" => &mut self.claims.append_injective,
            "phi_equals_psi" => &mut self.claims.phi_equals_psi,
            "delta_inert" => &mut self.claims.delta_inert,
            "prefix_stacking" => &mut self.claims.prefix_stacking,
            "middle_delta" => &mut self.claims.middle_delta,
            "end_to_end" => &mut self.claims.end_to_end,
            other => unreachable!("unknown claim {other}"),
        };
        counter.record(ok);
        if !ok && self.first_failure.is_none() {
            self.first_failure = Some(Failure {
                claim: claim.to_string(),
                n,
                word: word.clone(),
                state: state.clone(),
                expected: expected.cloned(),
                actual: actual.cloned(),
            });
        }
    }
}

/// Builds the witness for `w_1..w_bound` and checks it on every sample state.
pub fn verify_witness(
    family: &SequenceFamily,
    bound: usize,
    targets: Vec<TargetFunction>,
    samples: &[StackState],
) -> Result<WitnessReport, WitnessError> {
    let analysis = analyze_theorem(family, bound)?;
    if !analysis.verdict.holds {
        return Err(WitnessError::HypothesisNotVerified(Box::new(analysis.verdict)));
    }
    let sandwich = check_sandwich(&analysis.closure.generators, &analysis.words);
    if !sandwich.holds {
        return Err(WitnessError::HypothesisNotVerified(Box::new(sandwich)));
    }
    let decompositions: Vec<Decomposition> =
        analysis.decompositions.into_iter().map(|d| d.expect("split condition holds")).collect();
    let ctx = WitnessContext::new(analysis.closure.irredundant(), decompositions, targets)?;

    let mut rec = Recorder { claims: ClaimCounts::default(), first_failure: None };

    let submonoid_words: BTreeSet<Word> = ctx
        .generators
        .elements()
        .iter()
        .cloned()
        .chain(ctx.decompositions.iter().flat_map(|d| [d.p.clone(), d.s.clone()]))
        .filter(|v| !v.is_empty())
        .collect();
    for v in &submonoid_words {
        let g = GroupWord::from(v);
        let mut images = BTreeSet::new();
        for x in samples {
            let psi = eval_hom(v, x, Mode::Psi, &ctx)?;
            let appended = x.append_to_x0(&g);
            rec.check("append", psi == appended, (None, v, x), (Some(&appended), Some(&psi)));
            let (phi, trace) = eval_hom_traced(v, x, Mode::Phi, &ctx)?;
            rec.check("phi_equals_psi", phi == psi, (None, v, x), (Some(&psi), Some(&phi)));
            rec.check("delta_inert", trace.deltas == 0, (None, v, x), (None, None));
            images.insert(psi);
        }
        let distinct_samples = samples.iter().collect::<BTreeSet<_>>().len();
        let first = samples.first().cloned().unwrap_or_else(|| StackState::constant(GroupWord::identity()));
        rec.check("append_injective", images.len() == distinct_samples, (None, v, &first), (None, None));
    }

    let mut evaluations = 0;
    for d in &ctx.decompositions {
        let n = Some(d.n);
        let w = d.word();
        for x in samples {
            let psi_u = eval_hom(&d.u, x, Mode::Psi, &ctx)?;
            let stacked = pushed_entries(&psi_u, x, &d.u).is_some();
            rec.check("prefix_stacking", stacked, (n, &d.u, x), (None, Some(&psi_u)));

            let phi_u = eval_hom(&d.u, x, Mode::Phi, &ctx)?;
            let expected_u = apply_delta(&psi_u, &ctx)?;
            rec.check("middle_delta", phi_u == expected_u, (n, &d.u, x), (Some(&expected_u), Some(&phi_u)));

            let phi_w = eval_hom(&w, x, Mode::Phi, &ctx)?;
            let target = ctx.targets[d.n - 1].apply(x);
            rec.check("end_to_end", phi_w == target, (n, &w, x), (Some(&target), Some(&phi_w)));
            evaluations += 1;
        }
    }

    let opening = ctx.closing.other();
    let report = WitnessReport {
        bound,
        samples: samples.len(),
        orientation: format!("{}A*{}", opening.as_char(), ctx.closing.as_char()),
        generators: ctx.generators.elements().to_vec(),
        decompositions: ctx.decompositions.clone(),
        evaluations,
        claims: rec.claims,
        first_failure: rec.first_failure,
    };
    match &report.first_failure {
        None => Ok(report),
        Some(f) => Err(WitnessError::VerificationFailure {
            claim: f.claim.clone(),
            n: f.n,
            state: f.state.clone(),
            report: Box::new(report.clone()),
        }),
    }
}
