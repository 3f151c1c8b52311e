//! Target transformations `f_n` of the state space.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use super::state::{random_state, StackState, DEFAULT_ATOMS};

/// A total, deterministic map on states.
pub enum TargetFunction {
    /// Explicit images; states off the table are fixed.
    Table(BTreeMap<StackState, StackState>),
    Seeded(SeededTarget),
}

impl TargetFunction {
    pub fn seeded(seed: u64, n: usize) -> TargetFunction {
        TargetFunction::Seeded(SeededTarget::new(seed, n))
    }

    /// Seeded targets for `n = 1..=bound`.
    pub fn seeded_family(seed: u64, bound: usize) -> Vec<TargetFunction> {
        (1..=bound).map(|n| TargetFunction::seeded(seed, n)).collect()
    }

    pub fn apply(&self, x: &StackState) -> StackState {
        match self {
            TargetFunction::Table(table) => table.get(x).cloned().unwrap_or_else(|| x.clone()),
            TargetFunction::Seeded(s) => s.apply(x),
        }
    }
}

impl fmt::Debug for TargetFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TargetFunction::Table(t) => write!(f, "Table({} entries)", t.len()),
            TargetFunction::Seeded(s) => write!(f, "Seeded(seed={}, n={})", s.seed, s.n),
        }
    }
}

/// `f_n(x)` is a random state drawn from a generator keyed by a SHA-256 digest of
/// `(seed, n, canonical JSON of x)`.
pub struct SeededTarget {
    seed: u64,
    n: usize,
    memo: Mutex<HashMap<StackState, StackState>>,
}

impl SeededTarget {
    pub fn new(seed: u64, n: usize) -> SeededTarget {
        SeededTarget { seed, n, memo: Mutex::new(HashMap::new()) }
    }

    pub fn apply(&self, x: &StackState) -> StackState {
        if let Some(hit) = self.memo.lock().expect("memo lock").get(x) {
            return hit.clone();
        }
        let image = self.compute(x);
        // A racing thread computes the same image, so either insert wins.
        self.memo.lock().expect("memo lock").insert(x.clone(), image.clone());
        image
    }

    fn compute(&self, x: &StackState) -> StackState {
        let mut hasher = Sha256::new();
        hasher.update(b"univseq-target\0");
        hasher.update(self.seed.to_le_bytes());
        hasher.update((self.n as u64).to_le_bytes());
        hasher.update(x.canonical_json().as_bytes());
        let digest: [u8; 32] = hasher.finalize().into();
        let mut rng = ChaCha8Rng::from_seed(digest);
        random_state(&mut rng, DEFAULT_ATOMS)
    }
}

impl Clone for SeededTarget {
    fn clone(&self) -> Self {
        SeededTarget::new(self.seed, self.n)
    }
}
