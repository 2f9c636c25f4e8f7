//! Aristotelian diagrams, their duals, and chain reduction step by step.
//!
//! `cargo run --example chain_diagrams`

use syllogistic::inference::{classify, normalize_chain, reduce_once};
use syllogistic::model::{Atom, ChainDiagram, Mood, TermVariable, Word};

fn main() {
    let (x, y) = (TermVariable::parse("x").unwrap(), TermVariable::parse("y").unwrap());
    println!("diagrams and duals:");
    for mood in Mood::ALL {
        let atom = Atom::new(mood, x.clone(), y.clone(), false);
        println!("  {:<8} {:<22} {:<9} {}", atom.to_string(), atom.chain().to_string(), atom.dualize().to_string(), atom.dualize().chain());
    }

    let word: Word = "E(a3,a4) # I(a3,a3) # E(a2,a3) # I(a1,a2)".parse().unwrap();
    let mut chain = word.chain();
    println!("\nreducing {word}:\n  {chain}");
    while let Some((next, position)) = reduce_once(&chain) {
        println!("  {next}    (deleted position {position})");
        chain = next;
    }

    println!("\nshapes:");
    for text in [
        "a1 -> a2 -> a3 -> a4",
        "a1 -> a2 -> * <- a3",
        "a1 <- a2 <- * -> a2 -> a3",
        "a1 <- * -> a2 -> a3 -> * <- a4",
        "a1 -> * <- a2 <- * -> a3",
    ] {
        let chain: ChainDiagram = text.parse().unwrap();
        let (nf, _) = normalize_chain(&chain);
        println!("  {text:<32} case {:<14} normal form {nf}", classify(&chain).to_string());
    }
}
