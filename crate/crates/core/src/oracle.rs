//! Brute-force solver for `w_i = f_i` in the full transformation monoid on `{0..m-1}`.
//!
//! Maps act on the right: the word `ab` sends `x` to `((x)a)b`.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::word::{Letter, Word};

pub const DEFAULT_CAP: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("set size {m} exceeds the cap {cap}")]
    CapExceeded { m: usize, cap: usize },
    #[error("{words} words but {targets} targets")]
    LengthMismatch { words: usize, targets: usize },
    #[error("target {index} acts on {len} points, expected {m}")]
    TargetSize { index: usize, len: usize, m: usize },
    #[error("image {image} out of range for a map on {m} points")]
    ImageOutOfRange { image: usize, m: usize },
    #[error("equation {0} has an empty word")]
    EmptyWord(usize),
    #[error("set size must be positive")]
    EmptySet,
}

/// A total function on `{0..m-1}`, listed as its images.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct FiniteMap(Vec<usize>);

impl FiniteMap {
    pub fn new(images: Vec<usize>) -> Result<FiniteMap, OracleError> {
        let m = images.len();
        match images.iter().find(|&&i| i >= m) {
            Some(&image) => Err(OracleError::ImageOutOfRange { image, m }),
            None => Ok(FiniteMap(images)),
        }
    }

    pub fn identity(m: usize) -> FiniteMap {
        FiniteMap((0..m).collect())
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    /// `self` first, then `next`.
    pub fn then(&self, next: &FiniteMap) -> FiniteMap {
        FiniteMap(self.0.iter().map(|&x| next.0[x]).collect())
    }

    /// The map whose image list is the base-`m` expansion of `index`, most significant first.
    pub fn from_index(index: usize, m: usize) -> FiniteMap {
        let mut images = vec![0; m];
        let mut rest = index;
        for slot in images.iter_mut().rev() {
            *slot = rest % m;
            rest /= m;
        }
        FiniteMap(images)
    }
}

impl fmt::Debug for FiniteMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for FiniteMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Assignment {
    pub a: FiniteMap,
    pub b: FiniteMap,
}

impl Assignment {
    pub fn image(&self, letter: Letter) -> &FiniteMap {
        match letter {
            Letter::A => &self.a,
            Letter::B => &self.b,
        }
    }
}

/// The image of `w` under the homomorphism fixed by `assignment`. ε maps to the identity.
pub fn evaluate(w: &Word, assignment: &Assignment) -> FiniteMap {
    w.letters()
        .iter()
        .fold(FiniteMap::identity(assignment.a.size()), |acc, &l| acc.then(assignment.image(l)))
}

fn validate(words: &[Word], targets: &[FiniteMap], m: usize, cap: usize) -> Result<(), OracleError> {
    if m == 0 {
        return Err(OracleError::EmptySet);
    }
    if m > cap {
        return Err(OracleError::CapExceeded { m, cap });
    }
    if words.len() != targets.len() {
        return Err(OracleError::LengthMismatch { words: words.len(), targets: targets.len() });
    }
    if let Some(i) = words.iter().position(Word::is_empty) {
        return Err(OracleError::EmptyWord(i + 1));
    }
    if let Some((index, t)) = targets.iter().enumerate().find(|(_, t)| t.size() != m) {
        return Err(OracleError::TargetSize { index: index + 1, len: t.size(), m });
    }
    Ok(())
}

/// Where `x` ends up under `w`, or `None` if the walk reaches an unassigned image of `b`.
fn trace_partial(w: &Word, a: &FiniteMap, b: &[Option<usize>], x: usize) -> Option<usize> {
    w.letters().iter().try_fold(x, |cur, &l| match l {
        Letter::A => Some(a.apply(cur)),
        Letter::B => b[cur],
    })
}

fn consistent(words: &[Word], targets: &[FiniteMap], a: &FiniteMap, b: &[Option<usize>]) -> bool {
    words.iter().zip(targets).all(|(w, t)| {
        (0..t.size()).all(|x| trace_partial(w, a, b, x).is_none_or(|y| y == t.apply(x)))
    })
}

/// Depth-first over the images of `b` in increasing order, pruning on any decided mismatch.
fn search_b(words: &[Word], targets: &[FiniteMap], a: &FiniteMap, b: &mut Vec<Option<usize>>, next: usize) -> bool {
    if next == b.len() {
        return true;
    }
    for image in 0..b.len() {
        b[next] = Some(image);
        if consistent(words, targets, a, b) && search_b(words, targets, a, b, next + 1) {
            return true;
        }
    }
    b[next] = None;
    false
}

/// The lexicographically least `(a, b)` solving every equation, or `None` when unsatisfiable.
pub fn solve(words: &[Word], targets: &[FiniteMap], m: usize, cap: usize) -> Result<Option<Assignment>, OracleError> {
    validate(words, targets, m, cap)?;
    let count = m.pow(m as u32);
    let found = (0..count).into_par_iter().find_map_first(|index| {
        let a = FiniteMap::from_index(index, m);
        let mut b = vec![None; m];
        if !consistent(words, targets, &a, &b) {
            return None;
        }
        search_b(words, targets, &a, &mut b, 0).then(|| Assignment {
            a,
            b: FiniteMap(b.into_iter().map(|i| i.expect("complete")).collect()),
        })
    });
    Ok(found)
}
