//! Decides a few classical syllogisms and shows their inference diagrams.
//!
//! `cargo run --example check_validity -- "E(m,p) # I(s,m) |= O(s,p)"`

use syllogistic::inference::{check_validity, mood_and_figure, Syllogism};

fn report(text: &str) {
    let s = match Syllogism::parse(text) {
        Ok(s) => s,
        Err(e) => {
            println!("{text}\n  {e}\n");
            return;
        }
    };
    let v = check_validity(&s);
    let verdict = match &v.reason {
        None => "valid".to_string(),
        Some(reason) => format!("invalid: {reason}"),
    };
    println!("{s}\n  {verdict}");
    println!("     {}\n  |= {}", v.premise_chain, v.conclusion_chain);
    if let Some(mf) = mood_and_figure(&s) {
        println!("  {mf}");
    }
    println!();
}

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if !args.is_empty() {
        args.iter().for_each(|a| report(a));
        return;
    }
    for text in [
        "A(m,p) # A(s,m) |= A(s,p)",
        "A(p,m)~ # E(m,s)~ |= E(s,p)",
        "E(m,p) # A(s,m) # I(s,s) |= O(s,p)",
        "E(m,p) # A(s,m) |= O(s,p)",
        "O(p,m)~ # E(m,s)~ |= I(s,p)",
        "A(a4,a5) # A(a3,a4) # I(a3,a2)~ # A(a1,a2) |= I(a1,a5)",
    ] {
        report(text);
    }
}
