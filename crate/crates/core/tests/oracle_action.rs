mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use univseq::action::{block_equivalent, blocks, lift, ActionError, LiftedPoint, PartialPerm};
use univseq::oracle::{evaluate, solve, FiniteMap, DEFAULT_CAP};
use univseq::word::Word;

fn partial_perm(points: Vec<usize>) -> impl Strategy<Value = Vec<(usize, usize)>> {
    let n = points.len();
    (Just(points.clone()).prop_shuffle(), prop::collection::vec(any::<bool>(), n)).prop_map(move |(images, keep)| {
        points.iter().copied().zip(images).zip(keep).filter(|(_, k)| *k).map(|(pair, _)| pair).collect()
    })
}

fn action() -> impl Strategy<Value = (usize, Vec<Vec<(usize, usize)>>)> {
    (1usize..=8).prop_flat_map(|n| (Just(n), prop::collection::vec(partial_perm((1..=n).collect()), 0..=3)))
}

fn perms(raw: &[Vec<(usize, usize)>]) -> Vec<PartialPerm> {
    raw.iter().map(|g| PartialPerm::new(g.iter().copied()).unwrap()).collect()
}

fn system() -> impl Strategy<Value = (usize, Vec<String>, Vec<Vec<usize>>)> {
    (1usize..=3).prop_flat_map(|m| {
        (1usize..=2).prop_flat_map(move |k| {
            (
                Just(m),
                prop::collection::vec("[ab]{1,5}", k),
                prop::collection::vec(prop::collection::vec(0..m, m), k),
            )
        })
    })
}

fn to_map(v: &[usize]) -> FiniteMap {
    FiniteMap::new(v.to_vec()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn solve_matches_unpruned_enumeration((m, words, targets) in system()) {
        let ws: Vec<Word> = words.iter().map(|w| w.parse().unwrap()).collect();
        let fs: Vec<FiniteMap> = targets.iter().map(|t| to_map(t)).collect();
        let got = solve(&ws, &fs, m, DEFAULT_CAP).unwrap();
        let want = common::solve_unpruned(&words, &targets, m);
        prop_assert_eq!(got.as_ref().map(|s| (s.a.images().to_vec(), s.b.images().to_vec())), want);
        if let Some(sol) = got {
            for (w, f) in ws.iter().zip(&fs) {
                prop_assert_eq!(&evaluate(w, &sol), f);
            }
        }
    }

    #[test]
    fn solve_finds_planted_solutions(
        m in 1usize..=3,
        words in prop::collection::vec("[ab]{1,6}", 1..=2),
        seed in prop::collection::vec(0usize..3, 6),
    ) {
        let a: Vec<usize> = seed[..m].iter().map(|i| i % m).collect();
        let b: Vec<usize> = seed[3..3 + m].iter().map(|i| i % m).collect();
        let targets: Vec<Vec<usize>> = words.iter().map(|w| common::eval_word(w, &a, &b)).collect();
        let ws: Vec<Word> = words.iter().map(|w| w.parse().unwrap()).collect();
        let fs: Vec<FiniteMap> = targets.iter().map(|t| to_map(t)).collect();
        let sol = solve(&ws, &fs, m, DEFAULT_CAP).unwrap().expect("a planted solution exists");
        prop_assert!((sol.a.images(), sol.b.images()) <= (a.as_slice(), b.as_slice()));
    }

    #[test]
    fn blocks_match_union_find((n, raw) in action()) {
        let ground: BTreeSet<usize> = (1..=n).collect();
        let found = blocks(&perms(&raw), &ground);
        let as_set: BTreeSet<BTreeSet<usize>> = found.iter().cloned().collect();
        prop_assert_eq!(as_set, common::union_find_blocks(&(1..=n).collect::<Vec<_>>(), &raw));
        let covered: usize = found.iter().map(BTreeSet::len).sum();
        prop_assert_eq!(covered, n);
    }

    #[test]
    fn block_equivalence_is_an_equivalence((n, raw) in action()) {
        let gens = perms(&raw);
        let ground: BTreeSet<usize> = (1..=n).collect();
        let bs = blocks(&gens, &ground);
        let related = |u: &BTreeSet<usize>, v: &BTreeSet<usize>| block_equivalent(u, v, &gens).unwrap();
        for u in &bs {
            let id = related(u, u).expect("reflexive");
            prop_assert!(id.len() == u.len());
            for v in &bs {
                let uv = related(u, v);
                prop_assert_eq!(uv.is_some(), related(v, u).is_some());
                if let Some(phi) = uv {
                    for g in &gens {
                        for (x, y) in &phi {
                            prop_assert_eq!(g.apply(x).map(|gx| &phi[gx]), g.apply(y));
                        }
                    }
                    for t in &bs {
                        if related(v, t).is_some() {
                            prop_assert!(related(u, t).is_some());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn lift_preserves_deficiency(
        (n, k) in (2usize..=8).prop_flat_map(|n| (Just(n), 1..n)),
        seed in any::<u64>(),
        copies in 1usize..=3,
    ) {
        // Generators permute U = {1..k} and act partially on the rest.
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens: Vec<PartialPerm> = (0..rng.random_range(1..=3)).map(|_| {
            let mut inside: Vec<usize> = (1..=k).collect();
            inside.shuffle(&mut rng);
            let mut outside: Vec<usize> = (k + 1..=n).collect();
            outside.shuffle(&mut rng);
            let kept: Vec<bool> = (k + 1..=n).map(|_| rng.random_bool(0.5)).collect();
            let pairs = (1..=k).zip(inside).chain((k + 1..=n).zip(outside).zip(kept).filter(|(_, k)| *k).map(|(p, _)| p));
            PartialPerm::new(pairs).unwrap()
        }).collect();
        let ground: BTreeSet<usize> = (1..=n).collect();
        let block: BTreeSet<usize> = (1..=k).collect();
        let ys: BTreeSet<usize> = (0..copies).collect();
        let lifted = lift(&gens, &ground, &block, &ys).unwrap();
        prop_assert_eq!(lifted.ground.len(), n + copies * k);
        for (s, t) in gens.iter().zip(&lifted.generators) {
            let missing_t = lifted.ground.iter().filter(|p| t.apply(p).is_none()).count();
            let missing_s = ground.iter().filter(|p| s.apply(p).is_none()).count();
            prop_assert_eq!(missing_t, missing_s);
            for y in &ys {
                for z in &block {
                    let image = t.apply(&LiftedPoint::Copy(*y, *z)).cloned();
                    prop_assert_eq!(image, s.apply(z).map(|sz| LiftedPoint::Copy(*y, *sz)));
                }
            }
        }
    }
}

#[test]
fn squaring_never_gives_a_transposition() {
    let swap = to_map(&[1, 0]);
    assert_eq!(solve(&["aa".parse().unwrap()], &[swap], 2, DEFAULT_CAP).unwrap(), None);
    assert_eq!(common::solve_unpruned(&["aa".into()], &[vec![1, 0]], 2), None);
}

#[test]
fn lift_rejects_blocks_that_are_not_permuted() {
    let s = PartialPerm::new([(1, 2)]).unwrap();
    let err = lift(&[s], &BTreeSet::from([1, 2]), &BTreeSet::from([1, 2]), &BTreeSet::from(['y'])).err();
    assert!(matches!(err, Some(ActionError::BlockNotClosed { index: 0, .. })));
}
