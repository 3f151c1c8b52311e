//! Words over the two-letter alphabet `{a, b}` and their factor relations.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// A letter of the alphabet `{a, b}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    A,
    B,
}

impl Letter {
    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'a' => Some(Letter::A),
            'b' => Some(Letter::B),
            _ => None,
        }
    }

    /// The other letter of the alphabet.
    pub fn other(self) -> Letter {
        match self {
            Letter::A => Letter::B,
            Letter::B => Letter::A,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid letter {found:?} at position {position}; words use only 'a' and 'b'")]
pub struct InvalidLetter {
    pub found: char,
    pub position: usize,
}

/// A finite word over `{a, b}`; the empty word is the identity of the free monoid.
///
/// Words order by length first and lexicographically within a length, so sets of
/// words iterate shortest-first.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Word {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    /// The factor occupying positions `start..end`.
    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    pub fn prefix(&self, len: usize) -> Word {
        self.slice(0, len)
    }

    pub fn suffix(&self, len: usize) -> Word {
        self.slice(self.len() - len, self.len())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn repeat(&self, times: usize) -> Word {
        Word(self.0.repeat(times))
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn is_prefix_of(&self, w: &Word) -> bool {
        w.0.starts_with(&self.0)
    }

    pub fn is_suffix_of(&self, w: &Word) -> bool {
        w.0.ends_with(&self.0)
    }

    pub fn is_subword_of(&self, w: &Word) -> bool {
        self.is_empty() || w.0.windows(self.len()).any(|window| window == self.0.as_slice())
    }

    /// Whether this word occurs at position `at` inside `w`.
    pub fn occurs_at(&self, w: &Word, at: usize) -> bool {
        at + self.len() <= w.len() && w.0[at..at + self.len()] == self.0[..]
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for letter in &self.0 {
            write!(f, "{}", letter.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "ε")
        } else {
            write!(f, "\"{self}\"")
        }
    }
}

impl FromStr for Word {
    type Err = InvalidLetter;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .enumerate()
            .map(|(position, found)| Letter::from_char(found).ok_or(InvalidLetter { found, position }))
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }
}

impl From<Letter> for Word {
    fn from(letter: Letter) -> Self {
        Word(vec![letter])
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses a word literal, panicking on letters outside `{a, b}`. Meant for tests and constants.
pub fn w(s: &str) -> Word {
    s.parse().unwrap_or_else(|e| panic!("bad word literal {s:?}: {e}"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorRelation {
    Prefix,
    ProperPrefix,
    Suffix,
    ProperSuffix,
    Subword,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorKind {
    Prefixes,
    Suffixes,
    Subwords,
}

pub fn factor_relation(u: &Word, w: &Word, kind: FactorRelation) -> bool {
    match kind {
        FactorRelation::Prefix => u.is_prefix_of(w),
        FactorRelation::ProperPrefix => u.len() < w.len() && u.is_prefix_of(w),
        FactorRelation::Suffix => u.is_suffix_of(w),
        FactorRelation::ProperSuffix => u.len() < w.len() && u.is_suffix_of(w),
        FactorRelation::Subword => u.is_subword_of(w),
    }
}

/// All factors of `w` of the given kind, including ε. With `proper` set, `w` itself is left out.
pub fn factors(w: &Word, kind: FactorKind, proper: bool) -> BTreeSet<Word> {
    let n = w.len();
    let mut out = BTreeSet::new();
    match kind {
        FactorKind::Prefixes => out.extend((0..=n).map(|len| w.prefix(len))),
        FactorKind::Suffixes => out.extend((0..=n).map(|len| w.suffix(len))),
        FactorKind::Subwords => {
            out.insert(Word::empty());
            for start in 0..n {
                for end in start + 1..=n {
                    out.insert(w.slice(start, end));
                }
            }
        }
    }
    if proper {
        out.remove(w);
    }
    out
}
