mod common;

use std::collections::BTreeSet;
use std::sync::OnceLock;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use syllogistic::inference::{candidates, check_validity, normalize_chain, Syllogism};
use syllogistic::model::{alpha_equivalent, Atom, ChainDiagram, Mood, Proposition, TermVariable, Word};
use syllogistic::polygraph::{
    applicable_rewrites, critical_pairs, disjoint_commutation, normalize_word, reachable_normal_forms, rewrite_step,
    Measure, RuleSet, Strategy as Rewriting,
};
use syllogistic::semantics::{find_countermodel_with_cap, satisfies, Model};

fn rules() -> &'static RuleSet {
    static RULES: OnceLock<RuleSet> = OnceLock::new();
    RULES.get_or_init(|| RuleSet::new(6))
}

/// Peaks, renamed by rank, whose two rewrites never meet again.
fn non_joinable_peaks() -> &'static BTreeSet<Word> {
    static PEAKS: OnceLock<BTreeSet<Word>> = OnceLock::new();
    PEAKS.get_or_init(|| critical_pairs(4).unwrap().non_joinable().map(|p| p.peak.rank_renamed()).collect())
}

fn contains_peak(w: &Word, peaks: &BTreeSet<Word>) -> bool {
    let atoms = w.atoms();
    (0..atoms.len()).any(|start| {
        (2..=3.min(atoms.len() - start))
            .any(|len| peaks.contains(&Word::new(atoms[start..start + len].to_vec()).unwrap().rank_renamed()))
    })
}

fn reachable_words(w: &Word) -> BTreeSet<Word> {
    let mut seen = BTreeSet::new();
    let mut stack = vec![w.clone()];
    while let Some(current) = stack.pop() {
        if seen.insert(current.clone()) {
            for r in applicable_rewrites(&current, rules()) {
                stack.push(rewrite_step(&current, &r.rule, r.position).unwrap());
            }
        }
    }
    seen
}

fn mood() -> impl Strategy<Value = Mood> {
    prop::sample::select(Mood::ALL.to_vec())
}

fn atom() -> impl Strategy<Value = Atom> {
    (mood(), 1u32..5, 1u32..5, any::<bool>())
        .prop_map(|(m, s, p, dual)| Atom::new(m, TermVariable::canonical(s), TermVariable::canonical(p), dual))
}

fn model(vars: usize) -> impl Strategy<Value = Model> {
    (0usize..4).prop_flat_map(move |size| {
        prop::collection::vec(prop::collection::btree_set(0..size.max(1), 0..=size), vars).prop_map(move |sets| {
            sets.into_iter().enumerate().fold(Model::new(size), |m, (k, set)| {
                m.with(TermVariable::canonical(k as u32 + 1), set.into_iter().filter(|&e| e < size))
            })
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn dualize_is_an_involution(a in atom()) {
        prop_assert_eq!(a.dualize().dualize(), a.clone());
        prop_assert_eq!(a.dualize().chain(), a.chain().mirror());
    }

    #[test]
    fn chain_text_round_trips(c in common::any_chain(5, 6)) {
        prop_assert_eq!(c.render().parse::<ChainDiagram>().unwrap(), c);
    }

    #[test]
    fn word_text_round_trips(w in common::ordered_word(6, 8)) {
        prop_assert_eq!(w.to_string().parse::<Word>().unwrap(), w);
    }

    #[test]
    fn reduction_order_is_irrelevant(c in common::any_chain(6, 8), seed in any::<u64>()) {
        let (nf, steps) = normalize_chain(&c);
        prop_assert_eq!(nf.bullet_count(), c.bullet_count());
        prop_assert_eq!(nf.len() + steps.len(), c.len());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        prop_assert_eq!(common::reduce_in_random_order(&c, &mut rng), nf.clone());
        prop_assert_eq!(normalize_chain(&nf).1.len(), 0);
    }

    #[test]
    fn rewriting_preserves_chain_normal_form(w in common::ordered_word(6, 8)) {
        let target = normalize_chain(&w.chain()).0;
        for r in applicable_rewrites(&w, rules()) {
            let next = rewrite_step(&w, &r.rule, r.position).unwrap();
            prop_assert_eq!(normalize_chain(&next.chain()).0, target.clone(), "{}", r.rule);
            prop_assert!(Measure::of(&next) < Measure::of(&w));
        }
    }

    #[test]
    fn derivations_are_globular_and_bounded(w in common::ordered_word(6, 8), seed in any::<u64>()) {
        for strategy in [Rewriting::LeftmostInnermost, Rewriting::Rightmost, Rewriting::Random(seed)] {
            let (nf, d) = normalize_word(&w, rules(), strategy);
            prop_assert!(d.is_globular());
            prop_assert_eq!(&d.target, &nf);
            prop_assert!(d.len() <= Measure::of(&w).bound());
            prop_assert!(applicable_rewrites(&nf, rules()).is_empty());
        }
    }

    #[test]
    fn word_and_chain_normal_forms_agree(w in common::ordered_word(6, 8)) {
        let target = normalize_chain(&w.chain()).0;
        let reachable = reachable_words(&w).into_iter().any(|v| v.chain() == target);
        if reachable {
            let (nf, _) = normalize_word(&w, rules(), Rewriting::default());
            prop_assert_eq!(nf.chain(), target);
        }
    }

    #[test]
    fn disjoint_redexes_commute(w in common::ordered_word(6, 8)) {
        let redexes = applicable_rewrites(&w, rules());
        for a in &redexes {
            for b in redexes.iter().filter(|b| !a.overlaps(b)) {
                let (x, y, equal) = disjoint_commutation(&w, a, b).unwrap();
                prop_assert!(equal, "{} vs {}", x, y);
            }
        }
    }

    #[test]
    fn satisfaction_ignores_duality(a in atom(), m in model(4)) {
        let dual = a.dualize();
        prop_assert_eq!(satisfies(&m, &a.prop).unwrap(), satisfies(&m, &dual.prop).unwrap());
    }

    #[test]
    fn countermodels_are_genuine(c in (2usize..=4).prop_flat_map(|n| {
        let all: Vec<_> = candidates(n).collect();
        prop::sample::select(all)
    })) {
        let s = c.syllogism();
        if let Some(m) = find_countermodel_with_cap(&s, s.n() + 1, 5).unwrap() {
            for atom in s.premises().atoms() {
                prop_assert!(satisfies(&m, &atom.prop).unwrap());
            }
            prop_assert!(!satisfies(&m, s.conclusion()).unwrap());
            prop_assert!(!check_validity(&s).valid);
        }
    }
}

fn contains_any_peak(w: &Word) -> bool {
    reachable_words(w).iter().any(|v| contains_peak(v, non_joinable_peaks()))
}

// Strategies agree up to renaming exactly on words that can never expose a
// non-joinable overlap.
proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn strategies_agree_unless_a_non_joinable_peak_is_reachable(w in common::ordered_word(6, 8), seed in any::<u64>()) {
        let forms = reachable_normal_forms(&w, rules());
        let classes: BTreeSet<Word> = forms.iter().map(Word::rank_renamed).collect();
        let results: Vec<Word> = [Rewriting::LeftmostInnermost, Rewriting::Rightmost, Rewriting::Random(seed)]
            .into_iter()
            .map(|s| normalize_word(&w, rules(), s).0)
            .collect();
        for nf in &results {
            prop_assert!(forms.contains(nf));
        }
        if classes.len() == 1 {
            prop_assert!(results.iter().all(|nf| alpha_equivalent(nf, &results[0])));
        } else {
            prop_assert!(contains_any_peak(&w), "{} has {} normal forms", w, classes.len());
        }
    }
}

#[test]
fn strategies_disagree_on_a_non_joinable_peak() {
    let w: Word = "I(a4,a4) # A(a4,a3)~ # E(a1,a3)".parse().unwrap();
    let left = normalize_word(&w, rules(), Rewriting::LeftmostInnermost).0;
    let right = normalize_word(&w, rules(), Rewriting::Rightmost).0;
    assert!(!alpha_equivalent(&left, &right));
}

/// Countermodels within `n + 1` elements exist whenever they exist within
/// `n + 3`.
#[test]
fn small_universes_suffice() {
    for n in 1..=4 {
        for c in candidates(n) {
            let s: Syllogism = c.syllogism();
            let small = find_countermodel_with_cap(&s, n + 1, 5).unwrap().is_some();
            let large = find_countermodel_with_cap(&s, n + 3, 5).unwrap().is_some();
            assert_eq!(small, large, "{s}");
        }
    }
}

#[test]
fn conclusions_are_single_atoms() {
    for mood in Mood::ALL {
        let p = Proposition::new(mood, TermVariable::canonical(1), TermVariable::canonical(2));
        assert_eq!(Word::single(Atom::plain(p.clone())).chain(), p.chain());
    }
}
