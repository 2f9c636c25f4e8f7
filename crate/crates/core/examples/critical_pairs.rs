//! Critical-pair analysis of the rewriting system.
//!
//! `cargo run --release --example critical_pairs -- 3`

use syllogistic::polygraph::critical_pairs;

fn main() {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let report = critical_pairs(n).expect("n within the default cap");
    println!(
        "n = {n}: {} overlap families, {} critical pairs, {} joinable up to renaming",
        report.families.len(),
        report.pair_count,
        report.joinable_count
    );
    for family in &report.families {
        let mark = if family.joinable { "ok " } else { "NO " };
        println!("{mark} {}  [{} atoms, {} pairs]", family.peak, family.peak.len(), family.pairs.len());
        for pair in family.pairs.iter().filter(|p| !p.joinable_up_to_renaming) {
            println!(
                "      {} vs {}: {}  /  {}",
                pair.left.rule.family, pair.right.rule.family, pair.left_nf, pair.right_nf
            );
        }
    }
    if n >= 5 {
        println!("peaks not embedding an n = 4 peak: {}", report.not_embedded.len());
    }
}
