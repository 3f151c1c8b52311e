//! Partial permutations of finite sets: orbits ("blocks") of the inverse semigroup a list of
//! them generates, action-preserving bijections between blocks, and the lift of an action
//! onto `X ⊔ (Y × U)`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("not injective: two points map to {0}")]
    NotInjective(String),
    #[error("{0} is not a block of the action")]
    BlocksInvalid(String),
    #[error("generator {index} does not permute the block {block}")]
    BlockNotClosed { index: usize, block: String },
    #[error("lifted generator {index} changes the domain deficiency")]
    DeficiencyChanged { index: usize },
}

/// An injective map between two subsets of a ground set. Maps act on the right.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<(P, P)>", into = "Vec<(P, P)>")]
#[serde(bound(
    serialize = "P: Ord + Clone + fmt::Debug + Serialize",
    deserialize = "P: Ord + Clone + fmt::Debug + Deserialize<'de>"
))]
pub struct PartialPerm<P: Ord + Clone + fmt::Debug = usize> {
    map: BTreeMap<P, P>,
}

impl<P: Ord + Clone + fmt::Debug> PartialPerm<P> {
    pub fn new<I: IntoIterator<Item = (P, P)>>(pairs: I) -> Result<Self, ActionError> {
        let mut map = BTreeMap::new();
        let mut seen = BTreeSet::new();
        for (from, to) in pairs {
            if !seen.insert(to.clone()) {
                return Err(ActionError::NotInjective(format!("{to:?}")));
            }
            if map.insert(from.clone(), to).is_some() {
                return Err(ActionError::NotInjective(format!("{from:?} listed twice")));
            }
        }
        Ok(PartialPerm { map })
    }

    pub fn identity_on<'a, I: IntoIterator<Item = &'a P>>(points: I) -> Self
    where
        P: 'a,
    {
        PartialPerm { map: points.into_iter().map(|p| (p.clone(), p.clone())).collect() }
    }

    pub fn apply(&self, x: &P) -> Option<&P> {
        self.map.get(x)
    }

    pub fn domain(&self) -> BTreeSet<P> {
        self.map.keys().cloned().collect()
    }

    pub fn range(&self) -> BTreeSet<P> {
        self.map.values().cloned().collect()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&P, &P)> {
        self.map.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// `self` then `next`, defined where both apply.
    pub fn compose(&self, next: &Self) -> Self {
        PartialPerm {
            map: self
                .map
                .iter()
                .filter_map(|(x, y)| next.map.get(y).map(|z| (x.clone(), z.clone())))
                .collect(),
        }
    }

    pub fn invert(&self) -> Self {
        PartialPerm { map: self.map.iter().map(|(x, y)| (y.clone(), x.clone())).collect() }
    }

    /// Whether this map restricts to a permutation of `set`.
    pub fn permutes(&self, set: &BTreeSet<P>) -> bool {
        set.iter().all(|x| self.map.get(x).is_some_and(|y| set.contains(y)))
    }
}

impl<P: Ord + Clone + fmt::Debug> TryFrom<Vec<(P, P)>> for PartialPerm<P> {
    type Error = ActionError;

    fn try_from(pairs: Vec<(P, P)>) -> Result<Self, Self::Error> {
        PartialPerm::new(pairs)
    }
}

impl<P: Ord + Clone + fmt::Debug> From<PartialPerm<P>> for Vec<(P, P)> {
    fn from(p: PartialPerm<P>) -> Self {
        p.map.into_iter().collect()
    }
}

impl<P: Ord + Clone + fmt::Debug> fmt::Debug for PartialPerm<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.map.iter().map(|(x, y)| format!("{x:?}↦{y:?}")).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// The orbits `{(z)s : s ∈ S¹}` of the inverse semigroup generated by `generators`,
/// found as connected components of the graph with an edge `z -> (z)g` per generator.
/// Blocks come out ordered by least element.
pub fn blocks<P: Ord + Clone + fmt::Debug>(generators: &[PartialPerm<P>], ground: &BTreeSet<P>) -> Vec<BTreeSet<P>> {
    let mut adjacency: BTreeMap<&P, Vec<&P>> = BTreeMap::new();
    for g in generators {
        for (x, y) in g.pairs() {
            adjacency.entry(x).or_default().push(y);
            adjacency.entry(y).or_default().push(x);
        }
    }
    let mut seen: BTreeSet<&P> = BTreeSet::new();
    let mut out = Vec::new();
    for start in ground {
        if !seen.insert(start) {
            continue;
        }
        let mut block = BTreeSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(z) = queue.pop_front() {
            for &next in adjacency.get(z).into_iter().flatten() {
                if seen.insert(next) {
                    block.insert(next.clone());
                    queue.push_back(next);
                }
            }
        }
        out.push(block);
    }
    out
}

fn fmt_points<P: fmt::Debug>(set: &BTreeSet<P>) -> String {
    format!("{set:?}")
}

/// A bijection `φ: U → V` with `s∘φ = φ∘s` for every generator `s`, if one exists.
/// Equivalence is relative to the supplied generators.
pub fn block_equivalent<P: Ord + Clone + fmt::Debug>(
    u: &BTreeSet<P>,
    v: &BTreeSet<P>,
    generators: &[PartialPerm<P>],
) -> Result<Option<BTreeMap<P, P>>, ActionError> {
    let mut ground: BTreeSet<P> = u.union(v).cloned().collect();
    for g in generators {
        ground.extend(g.domain());
        ground.extend(g.range());
    }
    let all = blocks(generators, &ground);
    for set in [u, v] {
        if !all.contains(set) {
            return Err(ActionError::BlocksInvalid(fmt_points(set)));
        }
    }
    if u.len() != v.len() {
        return Ok(None);
    }
    let order: Vec<P> = u.iter().cloned().collect();
    let mut phi = BTreeMap::new();
    let mut used = BTreeSet::new();
    Ok(extend_bijection(&order, v, generators, &mut phi, &mut used).then_some(phi))
}

/// Whether the partial bijection commutes with every generator wherever it is decided.
fn commutes_so_far<P: Ord + Clone + fmt::Debug>(phi: &BTreeMap<P, P>, generators: &[PartialPerm<P>]) -> bool {
    generators.iter().all(|g| {
        phi.iter().all(|(x, y)| match (g.apply(x), g.apply(y)) {
            (None, None) => true,
            (Some(gx), Some(gy)) => phi.get(gx).is_none_or(|img| img == gy),
            _ => false,
        })
    })
}

fn extend_bijection<P: Ord + Clone + fmt::Debug>(
    order: &[P],
    targets: &BTreeSet<P>,
    generators: &[PartialPerm<P>],
    phi: &mut BTreeMap<P, P>,
    used: &mut BTreeSet<P>,
) -> bool {
    let Some(x) = order.get(phi.len()) else { return true };
    for y in targets {
        if used.contains(y) {
            continue;
        }
        phi.insert(x.clone(), y.clone());
        used.insert(y.clone());
        if commutes_so_far(phi, generators) && extend_bijection(order, targets, generators, phi, used) {
            return true;
        }
        phi.remove(x);
        used.remove(y);
    }
    false
}

/// A point of `X ⊔ (Y × U)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum LiftedPoint<P, Q> {
    Base(P),
    Copy(Q, P),
}

pub struct Lift<P: Ord + Clone + fmt::Debug, Q: Ord + Clone + fmt::Debug> {
    pub ground: BTreeSet<LiftedPoint<P, Q>>,
    pub generators: Vec<PartialPerm<LiftedPoint<P, Q>>>,
}

/// Extends each `s` on `X` to `t` on `X ⊔ (Y × U)`: `t = s` on `X` and
/// `(y, z) ↦ (y, (z)s)` on the copies. Every generator must permute `U`.
pub fn lift<P, Q>(
    generators: &[PartialPerm<P>],
    ground: &BTreeSet<P>,
    block: &BTreeSet<P>,
    copies: &BTreeSet<Q>,
) -> Result<Lift<P, Q>, ActionError>
where
    P: Ord + Clone + fmt::Debug,
    Q: Ord + Clone + fmt::Debug,
{
    if let Some(index) = generators.iter().position(|g| !block.is_subset(ground) || !g.permutes(block)) {
        return Err(ActionError::BlockNotClosed { index, block: fmt_points(block) });
    }
    let lifted_ground: BTreeSet<LiftedPoint<P, Q>> = ground
        .iter()
        .map(|x| LiftedPoint::Base(x.clone()))
        .chain(copies.iter().flat_map(|y| block.iter().map(|z| LiftedPoint::Copy(y.clone(), z.clone()))))
        .collect();

    let mut lifted = Vec::with_capacity(generators.len());
    for (index, g) in generators.iter().enumerate() {
        let base = g.pairs().map(|(x, y)| (LiftedPoint::Base(x.clone()), LiftedPoint::Base(y.clone())));
        let on_copies = copies.iter().flat_map(|y| {
            block.iter().map(move |z| {
                let gz = g.apply(z).expect("g permutes the block");
                (LiftedPoint::Copy(y.clone(), z.clone()), LiftedPoint::Copy(y.clone(), gz.clone()))
            })
        });
        let t = PartialPerm::new(base.chain(on_copies))?;

        let missing_lifted: BTreeSet<_> = lifted_ground.difference(&t.domain()).cloned().collect();
        let missing_base: BTreeSet<_> =
            ground.difference(&g.domain()).map(|x| LiftedPoint::Base(x.clone())).collect();
        if missing_lifted != missing_base {
            return Err(ActionError::DeficiencyChanged { index });
        }
        lifted.push(t);
    }
    Ok(Lift { ground: lifted_ground, generators: lifted })
}
