//! Bounded checks of the sufficient conditions for universality, plus the
//! `w_n = p_n·u_n·s_n` decomposition and the one-letter orientation check.

use serde::Serialize;
use thiserror::Error;

use crate::closure::{closure, prefix_mask, suffix_mask, Closure, ClosureError, GeneratorSet};
use crate::sequence::{SequenceError, SequenceFamily};
use crate::word::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("bound must be at least 2, got {0}")]
    BoundTooSmall(usize),
    #[error(transparent)]
    Sequence(#[from] SequenceError),
    #[error(transparent)]
    Closure(#[from] ClosureError),
    #[error("w_{n} = {word} splits as s·t·v with s·t and t·v in the submonoid")]
    SplitViolation { n: usize, word: Word },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub n: usize,
    pub p: Word,
    pub u: Word,
    pub s: Word,
}

impl Decomposition {
    pub fn word(&self) -> Word {
        self.p.concat(&self.u).concat(&self.s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Condition {
    /// `w_n = s·t·v` with `s·t` and `t·v` in the submonoid.
    Split,
    /// `u_n` occurs in some `w_m`, `m != n`.
    MiddleRecurs,
    /// `u_n` occurs in `p_n`.
    MiddleInPrefix,
    /// `u_n` occurs in `p_m`, `m != n`. Reported as a note only.
    MiddleInOtherPrefix,
    /// A nonempty proper prefix of `w_n` is a suffix of `w_m`.
    PrefixSuffixOverlap,
    /// `w_n` occurs in `w_m`, `m != n`.
    Subword,
    /// Words do not all start with one letter and end with the other.
    Orientation,
    /// A generator lies outside `xA*y`.
    GeneratorOrientation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub condition: Condition,
    pub indices: Vec<usize>,
    pub witness: Vec<Word>,
}

/// Outcome of a check over `w_1..w_bound`. Never a claim about all `n`.
///
/// `holds` is true exactly when the check applies and `violations` is empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub bound: usize,
    pub applicable: bool,
    pub violations: Vec<Violation>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<Violation>,
}

impl Verdict {
    fn from_violations(bound: usize, violations: Vec<Violation>, notes: Vec<Violation>) -> Verdict {
        Verdict { holds: violations.is_empty(), bound, applicable: true, violations, notes }
    }

    fn not_applicable(bound: usize) -> Verdict {
        Verdict { holds: false, bound, applicable: false, violations: Vec::new(), notes: Vec::new() }
    }
}

/// True iff `w` has no factorization `s·t·v` with `s·t, t·v ∈ <gens>`.
pub fn check_split(w: &Word, gens: &GeneratorSet) -> bool {
    let pre = prefix_mask(gens, w);
    let suf = suffix_mask(gens, w);
    // s·t = w[..i], t·v = w[j..], overlapping or touching when j <= i.
    !(0..=w.len()).any(|i| pre[i] && (0..=i).any(|j| suf[j]))
}

/// Splits `w` into its longest prefix and longest suffix in `<gens>` around a nonempty middle.
pub fn decompose(w: &Word, gens: &GeneratorSet, n: usize) -> Result<Decomposition, CheckError> {
    let pre = prefix_mask(gens, w);
    let suf = suffix_mask(gens, w);
    let p_len = (0..=w.len()).rev().find(|&i| pre[i]).unwrap_or(0);
    let s_start = (0..=w.len()).find(|&j| suf[j]).unwrap_or(w.len());
    if p_len >= s_start {
        return Err(CheckError::SplitViolation { n, word: w.clone() });
    }
    Ok(Decomposition {
        n,
        p: w.prefix(p_len),
        u: w.slice(p_len, s_start),
        s: w.slice(s_start, w.len()),
    })
}

/// Everything computed while checking the theorem's hypotheses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremAnalysis {
    pub verdict: Verdict,
    pub words: Vec<Word>,
    pub closure: Closure,
    /// `decompositions[n - 1]`, absent where the split condition fails.
    pub decompositions: Vec<Option<Decomposition>>,
}

pub fn analyze_theorem(family: &SequenceFamily, bound: usize) -> Result<TheoremAnalysis, CheckError> {
    if bound < 2 {
        return Err(CheckError::BoundTooSmall(bound));
    }
    let words = family.prefix(bound)?;
    let closure = closure(&words)?;
    let gens = &closure.generators;

    let mut violations = Vec::new();
    let mut notes = Vec::new();
    let decompositions: Vec<Option<Decomposition>> = words
        .iter()
        .enumerate()
        .map(|(i, w)| {
            if check_split(w, gens) {
                decompose(w, gens, i + 1).ok()
            } else {
                violations.push(Violation {
                    condition: Condition::Split,
                    indices: vec![i + 1],
                    witness: vec![w.clone()],
                });
                None
            }
        })
        .collect();

    for d in decompositions.iter().flatten() {
        for (j, wm) in words.iter().enumerate() {
            let m = j + 1;
            if m != d.n && d.u.is_subword_of(wm) {
                violations.push(Violation {
                    condition: Condition::MiddleRecurs,
                    indices: vec![d.n, m],
                    witness: vec![d.u.clone(), wm.clone()],
                });
            }
        }
        if d.u.is_subword_of(&d.p) {
            violations.push(Violation {
                condition: Condition::MiddleInPrefix,
                indices: vec![d.n],
                witness: vec![d.u.clone(), d.p.clone()],
            });
        }
        for other in decompositions.iter().flatten().filter(|o| o.n != d.n) {
            if d.u.is_subword_of(&other.p) {
                notes.push(Violation {
                    condition: Condition::MiddleInOtherPrefix,
                    indices: vec![d.n, other.n],
                    witness: vec![d.u.clone(), other.p.clone()],
                });
            }
        }
    }

    Ok(TheoremAnalysis {
        verdict: Verdict::from_violations(bound, violations, notes),
        words,
        closure,
        decompositions,
    })
}

pub fn check_theorem(family: &SequenceFamily, bound: usize) -> Result<Verdict, CheckError> {
    analyze_theorem(family, bound).map(|a| a.verdict)
}

/// No nonempty proper prefix of any `w_n` is a suffix of any `w_m` (including `m = n`),
/// and no `w_n` occurs in a different `w_m`.
pub fn check_corollary(family: &SequenceFamily, bound: usize) -> Result<Verdict, CheckError> {
    if bound < 2 {
        return Err(CheckError::BoundTooSmall(bound));
    }
    let words = family.prefix(bound)?;
    let mut violations = Vec::new();
    for (i, wn) in words.iter().enumerate() {
        for (j, wm) in words.iter().enumerate() {
            if let Some(len) = (1..wn.len()).find(|&len| wn.prefix(len).is_suffix_of(wm)) {
                violations.push(Violation {
                    condition: Condition::PrefixSuffixOverlap,
                    indices: vec![i + 1, j + 1],
                    witness: vec![wn.prefix(len)],
                });
            }
            if i != j && wn.is_subword_of(wm) {
                violations.push(Violation {
                    condition: Condition::Subword,
                    indices: vec![i + 1, j + 1],
                    witness: vec![wn.clone(), wm.clone()],
                });
            }
        }
    }
    Ok(Verdict::from_violations(bound, violations, Vec::new()))
}

/// The common first letter of `words`, when every word starts with it and ends with the
/// other letter.
pub fn orientation(words: &[Word]) -> Option<Letter> {
    let x = words.first()?.first()?;
    words
        .iter()
        .all(|w| w.first() == Some(x) && w.last() == Some(x.other()))
        .then_some(x)
}

/// Confirms that all words lie in `xA*y` and all generators in `xA*y ∪ {ε}` for one
/// orientation `{x, y} = {a, b}`. Not applicable when a single letter is generated.
pub fn check_sandwich(gens: &GeneratorSet, words: &[Word]) -> Verdict {
    let bound = words.len();
    if gens.generates(&Letter::A.into()) || gens.generates(&Letter::B.into()) {
        return Verdict::not_applicable(bound);
    }
    let Some(x) = orientation(words) else {
        return Verdict::from_violations(
            bound,
            vec![Violation {
                condition: Condition::Orientation,
                indices: (1..=bound).collect(),
                witness: words.to_vec(),
            }],
            Vec::new(),
        );
    };
    let violations = gens
        .iter()
        .filter(|g| g.first() != Some(x) || g.last() != Some(x.other()))
        .map(|g| Violation {
            condition: Condition::GeneratorOrientation,
            indices: Vec::new(),
            witness: vec![g.clone()],
        })
        .collect();
    Verdict::from_violations(bound, violations, Vec::new())
}
