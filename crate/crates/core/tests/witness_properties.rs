use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use univseq::closure::irredundant_generators;
use univseq::conditions::{analyze_theorem, Decomposition};
use univseq::sequence::{Exponent, Segment, SequenceFamily, Template};
use univseq::witness::{
    eval_hom, pushed_entries, sample_states, step, verify_witness, Entry, GroupWord, Mode, StackState,
    TargetFunction, WitnessContext, WitnessError,
};
use univseq::word::{Letter, Word};

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

fn psi_context(gens: &[&str]) -> WitnessContext {
    let pool: BTreeSet<Word> = gens.iter().map(|g| w(g)).collect();
    WitnessContext::psi_only(irredundant_generators(&pool)).unwrap()
}

fn aba_context(bound: usize, seed: u64) -> (WitnessContext, Vec<Decomposition>) {
    let a = analyze_theorem(&SequenceFamily::aba_ab_bab(), bound).unwrap();
    let decs: Vec<Decomposition> = a.decompositions.into_iter().map(Option::unwrap).collect();
    let ctx = WitnessContext::new(a.closure.irredundant(), decs.clone(), TargetFunction::seeded_family(seed, bound))
        .unwrap();
    (ctx, decs)
}

/// `state` with `x_0` replaced by `x0`.
fn with_x0(state: &StackState, x0: GroupWord) -> StackState {
    let mut entries = state.entries().to_vec();
    match entries.last_mut() {
        Some(last) => *last = Entry::Group(x0),
        None => entries.push(Entry::Group(x0)),
    }
    StackState::new(state.tail().clone(), entries).unwrap()
}

fn product(gens: &[&str], picks: &[usize]) -> Word {
    picks.iter().fold(Word::empty(), |acc, &i| acc.concat(&w(gens[i % gens.len()])))
}

/// Generating sets in which no nonempty proper prefix of one word is a suffix of another,
/// the overlap property every closure output has.
const SETS: [&[&str]; 3] = [&["ab"], &["ab", "aabb"], &["ab", "aaabbb"]];

#[test]
fn test_sets_have_no_prefix_suffix_overlap() {
    for set in SETS {
        for v in set {
            for u in set {
                let (v, u) = (w(v), w(u));
                assert!((1..v.len()).all(|k| !v.prefix(k).is_suffix_of(&u)), "{v} overlaps {u}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn psi_appends_submonoid_words(
        set in 0..SETS.len(),
        picks in prop::collection::vec(0usize..4, 0..5),
        seed in any::<u64>(),
    ) {
        let gens = SETS[set];
        let ctx = psi_context(gens);
        let v = product(gens, &picks);
        let xs = sample_states(seed, 12);
        let mut images = BTreeMap::new();
        for x in &xs {
            let image = eval_hom(&v, x, Mode::Psi, &ctx).unwrap();
            prop_assert_eq!(&image, &x.append_to_x0(&GroupWord::from(&v)));
            if let Some(other) = images.insert(image, x) {
                prop_assert_eq!(other, x);
            }
        }
    }

    #[test]
    fn phi_agrees_with_psi_when_x0_is_positive(
        picks in prop::collection::vec(0usize..1, 1..5),
        x0 in "[ab]{0,5}",
        seed in any::<u64>(),
    ) {
        let (ctx, decs) = aba_context(4, seed);
        let mut vs = vec![product(&["ab"], &picks)];
        vs.extend(decs.iter().flat_map(|d| [d.p.clone(), d.s.clone()]));
        let g = GroupWord::from(&w(&x0));
        for x in sample_states(seed, 10) {
            let x = with_x0(&x, g.clone());
            for v in &vs {
                prop_assert_eq!(eval_hom(v, &x, Mode::Phi, &ctx).unwrap(), eval_hom(v, &x, Mode::Psi, &ctx).unwrap());
            }
        }
    }

    #[test]
    fn psi_stacks_prefixes_that_avoid_generator_suffixes(tail in "[ab]{0,8}", seed in any::<u64>()) {
        let gens = ["ab", "aabb"];
        let ctx = psi_context(&gens);
        let v = w(&format!("a{tail}"));
        let clean = (1..=v.len()).all(|k| gens.iter().all(|g| !v.prefix(k).is_suffix_of(&w(g))));
        prop_assume!(clean);
        for x in sample_states(seed, 10) {
            let after = eval_hom(&v, &x, Mode::Psi, &ctx).unwrap();
            prop_assert!(pushed_entries(&after, &x, &v).is_some(), "{} on {} gave {}", v, x, after);
        }
    }

    #[test]
    fn steps_return_canonical_states(letters in "[ab]{1,12}", seed in any::<u64>()) {
        let (ctx, _) = aba_context(3, seed);
        for x in sample_states(seed, 8) {
            let mut s = x;
            for c in letters.chars() {
                s = step(&s, Letter::from_char(c).unwrap(), Mode::Phi, &ctx).unwrap();
                prop_assert!(s.entries().first().is_none_or(|top| top != s.tail()));
                prop_assert!(s.x(0).as_group().is_some());
            }
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism(u in "[ab]{0,8}", v in "[ab]{0,8}", seed in any::<u64>()) {
        let (ctx, _) = aba_context(3, seed);
        for x in sample_states(seed, 6) {
            let whole = eval_hom(&w(&u).concat(&w(&v)), &x, Mode::Phi, &ctx).unwrap();
            let staged = eval_hom(&w(&v), &eval_hom(&w(&u), &x, Mode::Phi, &ctx).unwrap(), Mode::Phi, &ctx).unwrap();
            prop_assert_eq!(whole, staged);
        }
    }
}

/// With `x_0 = a⁻¹`, collapsing `ab` leaves the positive entry `b`, and the entries above
/// it then spell the middle factor of `w_2`. So `δ` fires while reading a submonoid word
/// and `Φ` and `Ψ` disagree there. States with `x_0` in `A*` never show this.
#[test]
fn submonoid_word_can_complete_a_middle_through_cancellation() {
    let (ctx, decs) = aba_context(3, 0);
    let x: StackState = serde_json::from_str(r#"{"tail":"bbaa","entries":["aa","ba","bab","A"]}"#).unwrap();
    let ab = w("ab");
    let psi = eval_hom(&ab, &x, Mode::Psi, &ctx).unwrap();
    assert_eq!(psi, x.append_to_x0(&GroupWord::from(&ab)));
    assert_eq!(decs[1].u, w("aa").concat(&w("ba")).concat(&w("bab")).concat(&w("b")));
    assert_ne!(eval_hom(&ab, &x, Mode::Phi, &ctx).unwrap(), psi);

    // The same word through the whole of w_1 misses the target.
    let f1 = TargetFunction::seeded(0, 1);
    assert_ne!(eval_hom(&decs[0].word(), &x, Mode::Phi, &ctx).unwrap(), f1.apply(&x));
}

#[test]
fn table_targets_are_hit_on_the_aba_family() {
    let family = SequenceFamily::aba_ab_bab();
    let xs = sample_states(21, 100);
    let (states, images) = xs.split_at(50);
    let targets: Vec<TargetFunction> = (0..3)
        .map(|n| {
            let table = states.iter().cloned().zip(images.iter().skip(n).cycle().cloned()).collect();
            TargetFunction::Table(table)
        })
        .collect();
    let report = verify_witness(&family, 3, targets, states).unwrap();
    assert!(report.passed());
    assert_eq!(report.evaluations, 150);
}

#[test]
fn families_outside_the_hypotheses_are_refused() {
    let powers = SequenceFamily::parametric(
        Template::new(vec![Segment::Power { base: w("ab"), exponent: Exponent { c: 1, d: 0 } }]).unwrap(),
    );
    let result = verify_witness(&powers, 3, TargetFunction::seeded_family(0, 3), &sample_states(0, 5));
    assert!(matches!(result, Err(WitnessError::HypothesisNotVerified(_))));
}
