//! Eventually constant sequences `(..., x_2, x_1, x_0)` over `F(a,b) ∪ Y`, with `x_0` in
//! `F(a,b)`, stored exactly as a constant tail plus finitely many exceptional entries.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::free_group::{GroupWord, Sym};
use crate::word::{Letter, Word};

/// Default size of the atom pool `Y`.
pub const DEFAULT_ATOMS: u32 = 8;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Entry {
    Group(GroupWord),
    /// An element of `Y`, written `y<k>`.
    Atom(u32),
}

impl Entry {
    pub fn as_group(&self) -> Option<&GroupWord> {
        match self {
            Entry::Group(g) => Some(g),
            Entry::Atom(_) => None,
        }
    }

    /// The entry as a word of `A+`, if it is one.
    pub fn as_positive(&self) -> Option<Word> {
        self.as_group().and_then(GroupWord::as_positive)
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Group(g) => write!(f, "{g}"),
            Entry::Atom(k) => write!(f, "y{k}"),
        }
    }
}

impl fmt::Debug for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Group(g) => write!(f, "{g:?}"),
            Entry::Atom(k) => write!(f, "y{k}"),
        }
    }
}

impl FromStr for Entry {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.strip_prefix('y') {
            Some(k) => k.parse().map(Entry::Atom).map_err(|_| format!("invalid atom {s:?}")),
            None => s.parse().map(Entry::Group),
        }
    }
}

/// A canonical element of the state space.
///
/// `entries` lists `x_k, ..., x_1, x_0` top to bottom; every `x_i` with `i > k` equals
/// `tail`. Canonical form: the topmost stored entry differs from the tail. Entries are
/// empty only when the whole sequence is the constant group word `tail`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "StateRepr", into = "StateRepr")]
pub struct StackState {
    tail: Entry,
    entries: Vec<Entry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateRepr {
    tail: String,
    entries: Vec<String>,
}

impl From<StackState> for StateRepr {
    fn from(s: StackState) -> Self {
        StateRepr {
            tail: s.tail.to_string(),
            entries: s.entries.iter().map(Entry::to_string).collect(),
        }
    }
}

impl TryFrom<StateRepr> for StackState {
    type Error = String;

    fn try_from(r: StateRepr) -> Result<Self, Self::Error> {
        let tail = r.tail.parse()?;
        let entries = r.entries.iter().map(|e| e.parse()).collect::<Result<Vec<_>, _>>()?;
        StackState::new(tail, entries)
    }
}

impl StackState {
    /// Builds a state from its tail and entries listed top to bottom.
    pub fn new(tail: Entry, entries: Vec<Entry>) -> Result<StackState, String> {
        let mut s = StackState { tail, entries };
        s.canonicalize();
        match s.x(0) {
            Entry::Group(_) => Ok(s),
            Entry::Atom(_) => Err("x_0 must be a free-group element".into()),
        }
    }

    /// The constant sequence with every entry equal to `g`.
    pub fn constant(g: GroupWord) -> StackState {
        StackState { tail: Entry::Group(g), entries: Vec::new() }
    }

    pub fn tail(&self) -> &Entry {
        &self.tail
    }

    /// Stored entries, top to bottom.
    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    /// `x_i`.
    pub fn x(&self, i: usize) -> &Entry {
        let len = self.entries.len();
        if i < len {
            &self.entries[len - 1 - i]
        } else {
            &self.tail
        }
    }

    pub fn x0(&self) -> &GroupWord {
        self.x(0).as_group().expect("x_0 is always a group element")
    }

    fn canonicalize(&mut self) {
        let keep_from = self.entries.iter().position(|e| *e != self.tail).unwrap_or(self.entries.len());
        self.entries.drain(..keep_from);
    }

    /// Stores explicit copies of the tail until `x_0..=x_i` are all materialized.
    fn materialize(&mut self, i: usize) {
        let missing = (i + 1).saturating_sub(self.entries.len());
        self.entries.splice(0..0, std::iter::repeat_n(self.tail.clone(), missing));
    }

    /// `(..., x_1, x_0) ↦ (..., x_1, x_0, g)`.
    pub fn push(&self, g: GroupWord) -> StackState {
        let mut s = self.clone();
        s.entries.push(Entry::Group(g));
        s.canonicalize();
        s
    }

    /// `(..., x_1, x_0) ↦ (..., x_1, x_0·g)`.
    pub fn append_to_x0(&self, g: &GroupWord) -> StackState {
        self.replace_top(0, g)
    }

    /// `(..., x_1, x_0) ↦ (..., x_{i+1}, x_i·g)`. Requires `x_i` in `F(a,b)`.
    pub fn replace_top(&self, i: usize, g: &GroupWord) -> StackState {
        let mut s = self.clone();
        s.materialize(i);
        let len = s.entries.len();
        let base = s.entries[len - 1 - i].as_group().expect("x_i must be a group element").mul(g);
        s.entries.truncate(len - i);
        *s.entries.last_mut().expect("materialized") = Entry::Group(base);
        s.canonicalize();
        s
    }

    /// Drops `x_0..x_{k-1}`, shifting `x_k` down to position 0. `None` when `x_k` is an atom.
    pub fn pop(&self, k: usize) -> Option<StackState> {
        self.x(k).as_group()?;
        let mut s = self.clone();
        s.materialize(k);
        let len = s.entries.len();
        s.entries.truncate(len - k);
        s.canonicalize();
        Some(s)
    }

    /// Canonical JSON encoding, used as the input of seeded target functions.
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("state serialization cannot fail")
    }
}

impl fmt::Display for StackState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}...", self.tail)?;
        for e in &self.entries {
            write!(f, ", {e:?}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for StackState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn random_group_word<R: Rng>(rng: &mut R, max_len: usize) -> GroupWord {
    let len = rng.random_range(0..=max_len);
    let positive = rng.random_bool(0.5);
    GroupWord::reduce((0..len).map(|_| {
        let letter = if rng.random_bool(0.5) { Letter::A } else { Letter::B };
        let s = Sym::pos(letter);
        if !positive && rng.random_bool(0.5) {
            s.inv()
        } else {
            s
        }
    }))
}

fn random_entry<R: Rng>(rng: &mut R, atoms: u32) -> Entry {
    if atoms > 0 && rng.random_bool(0.3) {
        Entry::Atom(rng.random_range(0..atoms))
    } else {
        Entry::Group(random_group_word(rng, 4))
    }
}

/// A random state: tail and up to five entries drawn from short group words and `atoms` atoms.
/// Half of the group words drawn are positive, so collapse patterns occur often.
pub fn random_state<R: Rng>(rng: &mut R, atoms: u32) -> StackState {
    let tail = random_entry(rng, atoms);
    let depth = rng.random_range(0..=4);
    let mut entries: Vec<Entry> = (0..depth).map(|_| random_entry(rng, atoms)).collect();
    entries.push(Entry::Group(random_group_word(rng, 4)));
    StackState::new(tail, entries).expect("x_0 is a group word")
}

/// `count` reproducible sample states derived from `seed`.
pub fn sample_states(seed: u64, count: usize) -> Vec<StackState> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_state(&mut rng, DEFAULT_ATOMS)).collect()
}
