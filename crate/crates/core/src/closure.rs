//! The least submonoid `S_w` of `{a,b}*` closed under the repeated-factor rule and the
//! cross-word rule, computed for a finite list of words.
//!
//! Repeated-factor rule: if `w_i = s·v·u·v·s'` with `s, s'` in the submonoid then `v` is in it.
//! Cross-word rule: if `w_i = s·v·t` and `w_j = t'·v·s'` for distinct indices, with `s, s'` in
//! the submonoid, then `v` is in it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::word::{FactorKind, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosureError {
    #[error("closure needs at least one word")]
    EmptyInput,
    #[error("input word {index} is empty")]
    EmptyWord { index: usize },
}

/// A finite set of nonempty words standing for the submonoid they generate.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct GeneratorSet(BTreeSet<Word>);

impl GeneratorSet {
    pub fn empty() -> GeneratorSet {
        GeneratorSet::default()
    }

    pub fn new<I: IntoIterator<Item = Word>>(words: I) -> GeneratorSet {
        GeneratorSet(words.into_iter().filter(|w| !w.is_empty()).collect())
    }

    pub fn iter(&self) -> impl Iterator<Item = &Word> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.0.contains(w)
    }

    pub fn as_set(&self) -> &BTreeSet<Word> {
        &self.0
    }

    /// Whether `w` lies in the generated submonoid.
    pub fn generates(&self, w: &Word) -> bool {
        suffix_mask(self, w)[0]
    }

    pub fn without(&self, w: &Word) -> GeneratorSet {
        GeneratorSet(self.0.iter().filter(|g| *g != w).cloned().collect())
    }
}

impl FromIterator<Word> for GeneratorSet {
    fn from_iter<I: IntoIterator<Item = Word>>(iter: I) -> Self {
        GeneratorSet::new(iter)
    }
}

impl fmt::Display for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_set(self.0.iter()))
    }
}

pub(crate) fn fmt_set<'a>(words: impl Iterator<Item = &'a Word>) -> String {
    let parts: Vec<String> = words
        .map(|w| if w.is_empty() { "ε".to_string() } else { w.to_string() })
        .collect();
    format!("{{{}}}", parts.join(", "))
}

/// `mask[i]` is true iff `w[..i]` lies in `<gens>`.
pub fn prefix_mask(gens: &GeneratorSet, w: &Word) -> Vec<bool> {
    let n = w.len();
    let mut ok = vec![false; n + 1];
    ok[0] = true;
    for end in 1..=n {
        ok[end] = gens
            .iter()
            .any(|g| g.len() <= end && ok[end - g.len()] && g.occurs_at(w, end - g.len()));
    }
    ok
}

/// `mask[i]` is true iff `w[i..]` lies in `<gens>`.
pub fn suffix_mask(gens: &GeneratorSet, w: &Word) -> Vec<bool> {
    let n = w.len();
    let mut ok = vec![false; n + 1];
    ok[n] = true;
    for start in (0..n).rev() {
        ok[start] = gens
            .iter()
            .any(|g| start + g.len() <= n && ok[start + g.len()] && g.occurs_at(w, start));
    }
    ok
}

/// Decides `w ∈ <gens>`. On success returns a factorization into generators, taking at
/// each position the longest generator that still leaves a factorizable remainder.
pub fn membership(gens: &GeneratorSet, w: &Word) -> Option<Vec<Word>> {
    let feasible = suffix_mask(gens, w);
    if !feasible[0] {
        return None;
    }
    let mut pos = 0;
    let mut out = Vec::new();
    while pos < w.len() {
        // Generators iterate shortest-first, so the last hit is the longest.
        let g = gens
            .iter()
            .filter(|g| g.occurs_at(w, pos) && feasible[pos + g.len()])
            .last()
            .expect("feasible position has a generator");
        pos += g.len();
        out.push(g.clone());
    }
    Some(out)
}

/// All `v` with some `w_i = s·v·u·v·s'`, `s, s' ∈ <gens>`. Always contains ε.
pub fn extract_x(gens: &GeneratorSet, words: &[Word]) -> BTreeSet<Word> {
    let per_word: Vec<BTreeSet<Word>> = words
        .par_iter()
        .map(|w| {
            let pre = prefix_mask(gens, w);
            let suf = suffix_mask(gens, w);
            let mut out = BTreeSet::new();
            for start in (0..=w.len()).filter(|&i| pre[i]) {
                for end in (start..=w.len()).filter(|&e| suf[e]) {
                    for len in 0..=(end - start) / 2 {
                        if w.letters()[start..start + len] == w.letters()[end - len..end] {
                            out.insert(w.slice(start, start + len));
                        }
                    }
                }
            }
            out
        })
        .collect();
    let mut out: BTreeSet<Word> = per_word.into_iter().flatten().collect();
    out.insert(Word::empty());
    out
}

/// All `v` with `w_i = s·v·t` and `w_j = t'·v·s'` for distinct `i, j`, `s, s' ∈ <gens>`.
/// Always contains ε.
pub fn extract_y(gens: &GeneratorSet, words: &[Word]) -> BTreeSet<Word> {
    // Factors beginning right after an S-prefix, and factors ending right before an S-suffix.
    let sides: Vec<(BTreeSet<Word>, BTreeSet<Word>)> = words
        .par_iter()
        .map(|w| {
            let pre = prefix_mask(gens, w);
            let suf = suffix_mask(gens, w);
            let n = w.len();
            let mut after_prefix = BTreeSet::new();
            let mut before_suffix = BTreeSet::new();
            for i in 0..=n {
                if pre[i] {
                    after_prefix.extend((i..=n).map(|e| w.slice(i, e)));
                }
                if suf[i] {
                    before_suffix.extend((0..=i).map(|s| w.slice(s, i)));
                }
            }
            (after_prefix, before_suffix)
        })
        .collect();

    let mut starts: BTreeMap<&Word, Vec<usize>> = BTreeMap::new();
    let mut ends: BTreeMap<&Word, Vec<usize>> = BTreeMap::new();
    for (idx, (after, before)) in sides.iter().enumerate() {
        for v in after {
            starts.entry(v).or_default().push(idx);
        }
        for v in before {
            ends.entry(v).or_default().push(idx);
        }
    }
    let mut out: BTreeSet<Word> = starts
        .iter()
        .filter_map(|(v, is)| {
            let js = ends.get(v)?;
            let distinct = is.iter().any(|i| js.iter().any(|j| i != j));
            distinct.then(|| (*v).clone())
        })
        .collect();
    out.insert(Word::empty());
    out
}

/// An irredundant generating set: no element is generated by the others.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct IrredundantSet(Vec<Word>);

impl IrredundantSet {
    pub fn elements(&self) -> &[Word] {
        &self.0
    }

    pub fn to_generator_set(&self) -> GeneratorSet {
        GeneratorSet::new(self.0.iter().cloned())
    }

    pub fn max_len(&self) -> usize {
        self.0.iter().map(Word::len).max().unwrap_or(0)
    }
}

/// Scans `pool` shortest-first and keeps each word not already generated by the kept ones.
///
/// A kept word can never generate an earlier one: every earlier word is no longer than
/// it, and a product involving it is at least as long.
pub fn irredundant_generators(pool: &BTreeSet<Word>) -> IrredundantSet {
    let mut kept = GeneratorSet::empty();
    let mut order = Vec::new();
    for x in pool.iter().filter(|x| !x.is_empty()) {
        if !kept.generates(x) {
            kept.0.insert(x.clone());
            order.push(x.clone());
        }
    }
    IrredundantSet(order)
}

/// One pass of the iteration: the sets extracted against the current submonoid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Round {
    pub x: BTreeSet<Word>,
    pub y: BTreeSet<Word>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Closure {
    /// Irredundant generators of `S_w`.
    pub generators: GeneratorSet,
    /// Union of every extracted set, ε included.
    pub pool: BTreeSet<Word>,
    pub rounds: Vec<Round>,
    /// Number of distinct subwords of the input, ε included.
    pub subword_pool_size: usize,
}

impl Closure {
    pub fn iterations(&self) -> usize {
        self.rounds.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn irredundant(&self) -> IrredundantSet {
        irredundant_generators(&self.pool)
    }
}

/// Iterates `S_{k+1} = <S_k ∪ X_k ∪ Y_k>` from the trivial monoid until it stabilizes.
///
/// Every extracted word is a subword of the input, so the chain stops after at most
/// as many strict increases as there are distinct subwords.
pub fn closure(words: &[Word]) -> Result<Closure, ClosureError> {
    if words.is_empty() {
        return Err(ClosureError::EmptyInput);
    }
    if let Some(index) = words.iter().position(Word::is_empty) {
        return Err(ClosureError::EmptyWord { index: index + 1 });
    }
    let subwords: BTreeSet<Word> = words
        .iter()
        .flat_map(|w| crate::word::factors(w, FactorKind::Subwords, false))
        .collect();

    let mut pool: BTreeSet<Word> = BTreeSet::from([Word::empty()]);
    let mut gens = GeneratorSet::empty();
    let mut rounds = Vec::new();
    loop {
        let x = extract_x(&gens, words);
        let y = extract_y(&gens, words);
        // Candidates are pooled subwords; the monoid grows iff one of them is new to it.
        let grew = x.iter().chain(y.iter()).any(|v| !gens.generates(v));
        pool.extend(x.iter().cloned());
        pool.extend(y.iter().cloned());
        rounds.push(Round { x, y });
        if !grew {
            break;
        }
        gens = irredundant_generators(&pool).to_generator_set();
        debug_assert!(rounds.len() <= subwords.len());
    }
    Ok(Closure { generators: gens, pool, rounds, subword_pool_size: subwords.len() })
}

/// Whether `<gens>` satisfies both closure rules over `words`.
pub fn is_closed(gens: &GeneratorSet, words: &[Word]) -> bool {
    extract_x(gens, words).iter().all(|v| gens.generates(v))
        && extract_y(gens, words).iter().all(|v| gens.generates(v))
}
