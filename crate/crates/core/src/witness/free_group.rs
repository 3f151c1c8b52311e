//! Reduced words in the free group on `{a, b}`.

use std::fmt;
use std::str::FromStr;

use crate::word::{Letter, Word};

/// A generator or its inverse. Written `a`, `b`, `A` (= a⁻¹), `B` (= b⁻¹).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sym {
    pub letter: Letter,
    pub inverse: bool,
}

impl Sym {
    pub fn pos(letter: Letter) -> Sym {
        Sym { letter, inverse: false }
    }

    pub fn inv(self) -> Sym {
        Sym { letter: self.letter, inverse: !self.inverse }
    }

    fn as_char(self) -> char {
        match (self.letter, self.inverse) {
            (Letter::A, false) => 'a',
            (Letter::B, false) => 'b',
            (Letter::A, true) => 'A',
            (Letter::B, true) => 'B',
        }
    }
}

/// An element of the free group `F(a, b)`, always stored freely reduced.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupWord(Vec<Sym>);

impl GroupWord {
    pub fn identity() -> GroupWord {
        GroupWord(Vec::new())
    }

    /// Free reduction by a single stack pass.
    pub fn reduce<I: IntoIterator<Item = Sym>>(syms: I) -> GroupWord {
        let mut out: Vec<Sym> = Vec::new();
        for s in syms {
            if out.last() == Some(&s.inv()) {
                out.pop();
            } else {
                out.push(s);
            }
        }
        GroupWord(out)
    }

    pub fn syms(&self) -> &[Sym] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.is_empty()
    }

    pub fn mul(&self, other: &GroupWord) -> GroupWord {
        GroupWord::reduce(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord(self.0.iter().rev().map(|s| s.inv()).collect())
    }

    /// The word in `A+` this element equals, if it is a nonempty positive word.
    pub fn as_positive(&self) -> Option<Word> {
        if self.0.is_empty() || self.0.iter().any(|s| s.inverse) {
            return None;
        }
        Some(Word::from_letters(self.0.iter().map(|s| s.letter).collect()))
    }
}

impl From<&Word> for GroupWord {
    fn from(w: &Word) -> Self {
        GroupWord(w.letters().iter().map(|&l| Sym::pos(l)).collect())
    }
}

impl From<Letter> for GroupWord {
    fn from(l: Letter) -> Self {
        GroupWord(vec![Sym::pos(l)])
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{self}")
        }
    }
}

impl FromStr for GroupWord {
    type Err = String;

    /// Parses signed-letter notation; the input is reduced.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let syms = s
            .chars()
            .map(|c| match c {
                'a' => Ok(Sym::pos(Letter::A)),
                'b' => Ok(Sym::pos(Letter::B)),
                'A' => Ok(Sym::pos(Letter::A).inv()),
                'B' => Ok(Sym::pos(Letter::B).inv()),
                other => Err(format!("invalid group letter {other:?}")),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GroupWord::reduce(syms))
    }
}
