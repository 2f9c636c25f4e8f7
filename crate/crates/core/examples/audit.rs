//! Cross-checks the calculus against bounded model search.
//!
//! `cargo run --release --example audit -- 3`

use syllogistic::polygraph::termination_audit;
use syllogistic::semantics::{audit_soundness, default_universe};

fn main() {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let termination = termination_audit(n);
    println!("termination: {} rule families, {} violations", termination.families.len(), termination.violations.len());
    for f in &termination.families {
        println!("  {:<20} x{:<3} dlength {:>2}  ddual {:>2}", f.family, f.instances, f.delta_length, f.delta_dual);
    }
    let report = audit_soundness(n, default_universe(n)).expect("n within the type-mask limit");
    println!(
        "\nsoundness (universe <= {}): {} rules, {} unsound; {} accepted, {} with countermodels; \
         {} rejected, {} with countermodels",
        report.max_universe,
        report.rules_checked,
        report.unsound_rules.len(),
        report.accepted,
        report.accepted_with_countermodel.len(),
        report.rejected,
        report.rejected_with_countermodel
    );
    for d in &report.divergences {
        println!("  divergence [{:?}] {}", d.class, d.syllogism);
    }
}
