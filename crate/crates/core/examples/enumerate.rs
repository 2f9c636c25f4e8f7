//! Lists every valid n-term syllogism grouped by family.
//!
//! `cargo run --example enumerate -- 4`

use syllogistic::inference::{enumerate_valid, Family};

fn main() {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let e = enumerate_valid(n).expect("n within the default cap");
    println!("n = {n}: {} valid syllogisms (3n^2 - n = {})", e.total, 3 * n * n - n);
    for family in Family::ALL {
        let members: Vec<_> = e.family(family).collect();
        if members.is_empty() {
            continue;
        }
        println!("\n[{:>2}] {}  ({})", family.row(), family.description(), members.len());
        for s in members {
            match &s.mood_figure {
                Some(mf) => println!("     {} |= {}    {mf}", s.premises, s.conclusion),
                None => println!("     {} |= {}", s.premises, s.conclusion),
            }
        }
    }
}
