//! Finds the smallest set model that refutes an invalid syllogism.
//!
//! `cargo run --example countermodel -- "A(m,p) # I(s,m) |= A(s,p)"`

use syllogistic::inference::Syllogism;
use syllogistic::semantics::{default_universe, find_countermodel, satisfies};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let inputs = if args.is_empty() {
        vec![
            "O(p,m)~ # E(m,s)~ |= I(s,p)".to_string(),
            "E(m,p) # A(s,m) |= O(s,p)".to_string(),
            "A(m,p) # A(s,m) |= A(s,p)".to_string(),
        ]
    } else {
        args
    };
    for text in inputs {
        let s = Syllogism::parse(&text).expect("a well-formed syllogism");
        let bound = default_universe(s.n());
        match find_countermodel(&s, bound).expect("few enough terms") {
            Some(m) => {
                println!("{s}\n  countermodel {m}");
                for atom in s.premises().atoms() {
                    println!("    {} holds: {}", atom.prop, satisfies(&m, &atom.prop).unwrap());
                }
                println!("    {} holds: {}", s.conclusion(), satisfies(&m, s.conclusion()).unwrap());
            }
            None => println!("{s}\n  no countermodel with at most {bound} elements"),
        }
    }
}
