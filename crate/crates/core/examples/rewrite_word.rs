//! Rewrites a word to normal form under each strategy and prints the traces.
//!
//! `cargo run --example rewrite_word -- "E(a4,a5) # I(a3,a4) # A(a3,a2)~ # E(a1,a2)"`

use syllogistic::model::Word;
use syllogistic::polygraph::{applicable_rewrites, normalize_word, RuleSet, Strategy};

fn main() {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "A(a5,a4)~ # E(a3,a4) # A(a3,a2)~ # E(a1,a2) # I(a1,a1)".to_string());
    let word: Word = text.parse().expect("a composable word");
    let (word, mapping) = if word.is_canonical() { (word, Vec::new()) } else { word.canonicalize() };
    for (from, to) in &mapping {
        println!("{from} -> {to}");
    }
    let rules = RuleSet::for_word(&word);
    println!("{word}");
    for redex in applicable_rewrites(&word, &rules) {
        println!("  redex {} at {}", redex.rule.family, redex.written_position(word.len()));
    }
    for strategy in [Strategy::LeftmostInnermost, Strategy::Rightmost, Strategy::Random(1)] {
        let (nf, derivation) = normalize_word(&word, &rules, strategy);
        println!("\n{strategy}: {nf}");
        for step in derivation.trace() {
            println!("  {:<18} {:?} at {}: {}", step.rule_family, step.indices, step.position, step.after);
        }
    }
}
