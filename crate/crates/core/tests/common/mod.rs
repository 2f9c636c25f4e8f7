//! Shared generators for integration tests.
#![allow(dead_code)]

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;
use syllogistic::model::{Atom, ChainDiagram, Mood, TermVariable, Word};

fn var(k: u32) -> TermVariable {
    TermVariable::canonical(k)
}

fn mood(k: usize) -> Mood {
    Mood::ALL[k % 4]
}

/// Words whose chain visits `a1..an` in non-decreasing index order: each
/// atom is `X(ai,aj)` or `X(aj,ai)~` with `i <= j`.
pub fn ordered_word(max_n: u32, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0usize..4, any::<bool>(), 0u32..3), 1..=max_len).prop_map(move |steps| {
        let mut at = 1u32;
        let atoms = steps
            .into_iter()
            .map(|(m, dual, jump)| {
                let next = (at + jump).min(max_n);
                let atom = if dual {
                    Atom::new(mood(m), var(next), var(at), true)
                } else {
                    Atom::new(mood(m), var(at), var(next), false)
                };
                at = next;
                atom
            })
            .collect();
        Word::new(atoms).expect("consecutive atoms share endpoints")
    })
}

/// Chains of arbitrary composable atoms over `a1..an`.
pub fn any_chain(max_n: u32, max_len: usize) -> impl Strategy<Value = ChainDiagram> {
    prop::collection::vec((0usize..4, any::<bool>(), 1..=max_n), 1..=max_len)
        .prop_map(|steps| random_word_from(steps).chain())
}

fn random_word_from(steps: Vec<(usize, bool, u32)>) -> Word {
    let mut at = steps[0].2;
    let atoms = steps
        .into_iter()
        .map(|(m, dual, next)| {
            let atom = if dual {
                Atom::new(mood(m), var(next), var(at), true)
            } else {
                Atom::new(mood(m), var(at), var(next), false)
            };
            at = next;
            atom
        })
        .collect();
    Word::new(atoms).expect("consecutive atoms share endpoints")
}

/// As [`any_chain`], driven by an explicit generator.
pub fn random_chain(rng: &mut impl Rng, max_n: u32, max_len: usize) -> ChainDiagram {
    let n = rng.gen_range(1..=max_n);
    let len = rng.gen_range(1..=max_len);
    let steps = (0..len).map(|_| (rng.gen_range(0..4), rng.gen_bool(0.5), rng.gen_range(1..=n))).collect();
    random_word_from(steps).chain()
}

/// Reduces by repeatedly deleting the first deletable occurrence in the
/// order given by a random permutation of the original positions.
pub fn reduce_in_random_order(chain: &ChainDiagram, rng: &mut impl Rng) -> ChainDiagram {
    let mut order: Vec<usize> = (0..chain.len()).collect();
    order.shuffle(rng);
    // original position of each surviving node
    let mut ids: Vec<usize> = (0..chain.len()).collect();
    let mut current = chain.clone();
    loop {
        let next = order
            .iter()
            .filter_map(|id| ids.iter().position(|x| x == id))
            .find(|&p| current.is_pass_through(p));
        let Some(p) = next else { return current };
        current = syllogistic::inference::reduce_at(&current, p).expect("pass-through");
        ids.remove(p);
    }
}
