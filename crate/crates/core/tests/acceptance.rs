//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Criteria 5 and 8 do not hold for the calculus as defined and are
//! reported as FAIL without failing the run; every other criterion is
//! asserted. The counterexamples are pinned by regression tests below.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use syllogistic::inference::{
    classify, enumerate_valid, enumerate_vi_vii, normalize_chain, phi, premise_chains, psi, aristotelian_mood,
    Family,
};
use syllogistic::model::{alpha_equivalent, Atom, Word};
use syllogistic::polygraph::{
    applicable_rewrites, critical_pairs, normalize, normalize_word, termination_audit, RuleSet, Strategy,
};
use syllogistic::semantics::{audit_soundness, default_universe, DivergenceClass};

/// Criteria that are reported but not asserted.
const KNOWN_FAILING: [u32; 2] = [5, 8];

const LIMIT_ENUMERATION: Duration = Duration::from_secs(10);
const LIMIT_CRITICAL_PAIRS: Duration = Duration::from_secs(60);
const LIMIT_ORACLE: Duration = Duration::from_secs(300);

struct Outcome {
    id: u32,
    name: &'static str,
    passed: bool,
    detail: String,
}

fn summarize(problems: &[String], ok: &str) -> String {
    if problems.is_empty() {
        ok.to_string()
    } else {
        problems.join("; ")
    }
}

fn word(text: &str) -> Word {
    text.parse().unwrap()
}

fn valid_counts() -> Outcome {
    let start = Instant::now();
    let mut problems = Vec::new();
    let mut totals = Vec::new();
    for n in 1..=6usize {
        let e = enumerate_valid(n).unwrap();
        totals.push(e.total);
        if e.total != 3 * n * n - n {
            problems.push(format!("n={n}: total {}", e.total));
        }
        if n >= 3 {
            for family in Family::ALL {
                let got = e.per_family.get(&family.row()).copied().unwrap_or(0);
                if got != family.expected_count(n) {
                    problems.push(format!("n={n} row {}: {got}", family.row()));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= LIMIT_ENUMERATION {
        problems.push(format!("took {elapsed:?}"));
    }
    Outcome {
        id: 1,
        name: "valid counts",
        passed: problems.is_empty() && totals == [2, 10, 24, 44, 70, 102],
        detail: format!("totals {totals:?} in {:.2}s {}", elapsed.as_secs_f64(), problems.join("; ")),
    }
}

fn classical_tables() -> Outcome {
    // (figure, mood, assumption)
    let plain: BTreeSet<(u8, &str)> = [
        (1, "AAA"),
        (1, "EAE"),
        (1, "AII"),
        (1, "EIO"),
        (2, "EAE"),
        (2, "AEE"),
        (2, "EIO"),
        (2, "AOO"),
        (3, "IAI"),
        (3, "AII"),
        (3, "OAO"),
        (3, "EIO"),
        (4, "AEE"),
        (4, "IAI"),
        (4, "EIO"),
    ]
    .into();
    let existential: BTreeSet<(u8, &str, char)> = [
        (1, "AAI", 'S'),
        (1, "EAO", 'S'),
        (2, "AEO", 'S'),
        (2, "EAO", 'S'),
        (3, "AAI", 'M'),
        (3, "EAO", 'M'),
        (4, "AEO", 'S'),
        (4, "EAO", 'M'),
        (4, "AAI", 'P'),
    ]
    .into();
    let e = enumerate_valid(3).unwrap();
    let mut got_plain = BTreeSet::new();
    let mut got_existential = BTreeSet::new();
    let mut missing_labels = 0;
    for s in &e.syllogisms {
        match &s.mood_figure {
            Some(mf) => match mf.assumption {
                None => {
                    got_plain.insert((mf.figure, mf.mood.clone()));
                }
                Some(term) => {
                    got_existential.insert((mf.figure, mf.mood.clone(), term));
                }
            },
            None => missing_labels += 1,
        }
    }
    let want_plain: BTreeSet<(u8, String)> = plain.iter().map(|(f, m)| (*f, m.to_string())).collect();
    let want_existential: BTreeSet<(u8, String, char)> =
        existential.iter().map(|(f, m, t)| (*f, m.to_string(), *t)).collect();
    Outcome {
        id: 2,
        name: "classical tables",
        passed: missing_labels == 0
            && got_plain == want_plain
            && got_existential == want_existential
            && got_plain.len() + got_existential.len() == e.total,
        detail: format!("{} plain, {} with assumption of existence", got_plain.len(), got_existential.len()),
    }
}

fn golden_examples() -> Outcome {
    let mut problems = Vec::new();
    let example_i = word("E(a1,a2) # A(a1,a1)~");
    if !applicable_rewrites(&example_i, &RuleSet::for_word(&example_i)).is_empty() {
        problems.push("irreducible word has a redex".to_string());
    }
    let example_ii = word("E(a3,a4) # I(a3,a3) # E(a2,a3) # I(a1,a2)");
    if normalize(&example_ii, Strategy::default()).0 != word("O(a3,a4) # O(a1,a3)") {
        problems.push("four-atom O word".to_string());
    }
    let cases = [
        ("E(a4,a5) # I(a3,a4) # A(a3,a2)~ # E(a1,a2)", ["O(a3,a5) # E(a1,a3)", "O(a2,a5) # E(a1,a2)"]),
        ("A(a5,a4)~ # E(a3,a4) # A(a3,a2)~ # E(a1,a2) # I(a1,a1)", ["E(a2,a5) # O(a1,a2)", "E(a3,a5) # O(a1,a3)"]),
    ];
    for (text, expected) in cases {
        for strategy in [Strategy::LeftmostInnermost, Strategy::Rightmost, Strategy::Random(2024)] {
            let (nf, _) = normalize(&word(text), strategy);
            if !expected.iter().any(|e| alpha_equivalent(&nf, &word(e))) {
                problems.push(format!("{text} under {strategy}: {nf}"));
            }
        }
    }
    Outcome {
        id: 3,
        name: "golden rewriting examples",
        passed: problems.is_empty(),
        detail: summarize(&problems, "four golden words under three strategies"),
    }
}

fn termination() -> Outcome {
    let mut problems = Vec::new();
    for n in 1..=5 {
        let report = termination_audit(n);
        problems.extend(report.violations.iter().cloned());
        for f in &report.families {
            let expected = match f.family {
                "conversion-E" | "conversion-I" => Some((0, -1)),
                id if id.starts_with("compose:") => Some((-1, f.delta_dual)),
                _ => None,
            };
            if let Some(want) = expected {
                if (f.delta_length, f.delta_dual) != want {
                    problems.push(format!("{}: ({}, {})", f.family, f.delta_length, f.delta_dual));
                }
            }
        }
    }
    Outcome {
        id: 4,
        name: "termination audit",
        passed: problems.is_empty(),
        detail: summarize(&problems, "n = 1..5, zero violations"),
    }
}

/// Overlap families listed for three terms, with `i,j,k = 1,2,3`. The entry
/// printed as `(E_jk)°♯(I_ji)°` does not compose and is read as
/// `(E_kj)°♯(I_ji)°`.
const THREE_TERM_FAMILIES: [&str; 16] = [
    "E(a3,a2)~ # A(a1,a2)",
    "A(a3,a2)~ # E(a2,a1)~",
    "E(a3,a2)~ # I(a1,a2)",
    "E(a2,a3) # I(a2,a1)~",
    "A(a2,a3) # I(a2,a1)~",
    "E(a3,a2)~ # I(a2,a1)~",
    "I(a3,a2)~ # A(a2,a1)~",
    "E(a2,a1)~ # I(a1,a1)",
    "A(a2,a3) # A(a1,a2) # I(a1,a1)",
    "E(a2,a3) # A(a1,a2) # I(a1,a1)",
    "A(a3,a2)~ # E(a1,a2) # I(a1,a1)",
    "E(a3,a2)~ # A(a1,a2) # I(a1,a1)",
    "E(a2,a3) # I(a2,a2) # A(a2,a1)~",
    "A(a3,a2)~ # E(a2,a1)~ # I(a1,a1)",
    "E(a3,a2)~ # I(a2,a2) # A(a2,a1)~",
    "A(a2,a3) # I(a2,a2) # A(a2,a1)~",
];

fn local_confluence() -> Outcome {
    let start = Instant::now();
    let mut problems = Vec::new();
    let mut summary = Vec::new();
    for n in 2..=4 {
        let report = critical_pairs(n).unwrap();
        summary.push(format!(
            "n={n}: {}/{} pairs joinable in {} families",
            report.joinable_count,
            report.pair_count,
            report.families.len()
        ));
        for pair in report.non_joinable() {
            problems.push(format!("n={n} {} -> {} | {}", pair.peak, pair.left_nf, pair.right_nf));
        }
        if n == 2 && (report.families.len() != 1 || report.family(&word("E(a2,a1)~ # I(a1,a1)")).is_none()) {
            problems.push("n=2 family set".to_string());
        }
        if n == 3 {
            for peak in THREE_TERM_FAMILIES {
                if report.family(&word(peak)).is_none() {
                    problems.push(format!("missing family {peak}"));
                }
            }
        }
        if n == 4 {
            let peak = word("O(a3,a4) # A(a3,a2)~ # E(a2,a1)~");
            match report.family(&peak) {
                Some(f) if f.joinable => {}
                _ => problems.push("n=4 O#A~#E~ family".to_string()),
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= LIMIT_CRITICAL_PAIRS {
        problems.push(format!("took {elapsed:?}"));
    }
    let shown: Vec<String> = problems.iter().take(3).cloned().collect();
    Outcome {
        id: 5,
        name: "local confluence",
        passed: problems.is_empty(),
        detail: format!("{}; {} problems, e.g. {}", summary.join(", "), problems.len(), shown.join("; ")),
    }
}

fn chain_confluence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut divergences = 0;
    for _ in 0..1000 {
        let chain = common::random_chain(&mut rng, 6, 8);
        let (reference, _) = normalize_chain(&chain);
        for _ in 0..10 {
            let nf = common::reduce_in_random_order(&chain, &mut rng);
            if nf != reference || nf.bullet_count() != chain.bullet_count() {
                divergences += 1;
            }
        }
    }
    Outcome {
        id: 6,
        name: "chain-reduction confluence",
        passed: divergences == 0,
        detail: format!("1000 chains x 10 orders, {divergences} divergences"),
    }
}

fn shape_classification() -> Outcome {
    let mut problems = Vec::new();
    for n in 1..=5 {
        for chain in premise_chains(n) {
            let matched = classify(&chain).is_matched();
            let aristotelian = aristotelian_mood(&normalize_chain(&chain).0).is_some();
            if matched != aristotelian {
                problems.push(format!("{chain}"));
            }
        }
    }
    for n in 1..=8 {
        let cases = enumerate_vi_vii(n);
        if cases.vi.len() != phi(n) || cases.vii.len() != psi(n) {
            problems.push(format!("n={n}: {} / {}", cases.vi.len(), cases.vii.len()));
        }
    }
    Outcome {
        id: 7,
        name: "shape classification",
        passed: problems.is_empty(),
        detail: summarize(&problems, "classification exact for n <= 5, case counts exact for n <= 8"),
    }
}

fn oracle_differential() -> Outcome {
    let start = Instant::now();
    let mut problems = Vec::new();
    let mut counts = BTreeMap::new();
    for n in 1..=4 {
        let report = audit_soundness(n, default_universe(n)).unwrap();
        problems.extend(report.unsound_rules.iter().map(|r| format!("unsound {r}")));
        problems.extend(report.accepted_with_countermodel.iter().map(|s| format!("accepted {s}")));
        for d in &report.divergences {
            *counts.entry((n, d.class)).or_insert(0) += 1;
            let whitelisted = n == 1 && d.class == DivergenceClass::SingleTerm;
            if !whitelisted {
                problems.push(format!("n={n} [{:?}] {}", d.class, d.syllogism));
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= LIMIT_ORACLE {
        problems.push(format!("took {elapsed:?}"));
    }
    let counts: Vec<String> = counts.iter().map(|((n, c), k)| format!("n={n} {c:?}: {k}")).collect();
    Outcome {
        id: 8,
        name: "oracle differential",
        passed: problems.is_empty(),
        detail: format!(
            "divergences [{}] in {:.2}s; first: {}",
            counts.join(", "),
            elapsed.as_secs_f64(),
            problems.first().cloned().unwrap_or_default()
        ),
    }
}

fn cross_system() -> Outcome {
    let mut disagreements = Vec::new();
    for n in 1..=4 {
        let rules = RuleSet::new(n);
        for s in enumerate_valid(n).unwrap().syllogisms {
            let (nf, _) = normalize_word(&s.premises, &rules, Strategy::default());
            if nf != Word::single(Atom::plain(s.conclusion.clone())) {
                disagreements.push(format!("{} |= {}: {nf}", s.premises, s.conclusion));
            }
        }
    }
    Outcome {
        id: 9,
        name: "cross-system agreement",
        passed: disagreements.is_empty(),
        detail: summarize(&disagreements, "every valid syllogism for n <= 4 rewrites to its conclusion"),
    }
}

#[test]
fn acceptance() {
    let outcomes = [
        valid_counts(),
        classical_tables(),
        golden_examples(),
        termination(),
        local_confluence(),
        chain_confluence(),
        shape_classification(),
        oracle_differential(),
        cross_system(),
    ];
    for o in &outcomes {
        let status = if o.passed { "PASS" } else { "FAIL" };
        println!("criterion {}: {status} {} -- {}", o.id, o.name, o.detail);
    }
    for o in &outcomes {
        if KNOWN_FAILING.contains(&o.id) {
            assert!(!o.passed, "criterion {} now passes; update KNOWN_FAILING", o.id);
        } else {
            assert!(o.passed, "criterion {} failed: {}", o.id, o.detail);
        }
    }
}

/// Composition with a dual `A` and conversion per accidens overlap on the
/// dual atom; the two reducts have distinct irreducible normal forms.
#[test]
fn non_joinable_overlaps() {
    let report = critical_pairs(3).unwrap();
    let peaks: BTreeSet<String> = report.non_joinable().map(|p| p.peak.to_string()).collect();
    let expected: BTreeSet<String> = [
        "I(a3,a3) # A(a3,a2)~ # E(a1,a2)",
        "I(a3,a3) # A(a3,a2)~ # E(a2,a1)~",
        "I(a3,a3) # A(a3,a2)~ # O(a1,a2)",
    ]
    .map(String::from)
    .into();
    assert_eq!(peaks, expected);
    for pair in report.non_joinable() {
        assert!(!pair.joinable_only_non_monotone);
        assert_ne!(pair.left_nf.variables().len(), pair.right_nf.variables().len());
    }
}

/// A valid syllogism stays semantically valid with an extra premise, but
/// the calculus rejects the longer premise chain.
#[test]
fn redundant_assumption_divergence() {
    let report = audit_soundness(3, default_universe(3)).unwrap();
    assert!(report.all_divergences_explained());
    assert_eq!(report.divergence_count(DivergenceClass::SingleTerm), 0);
    assert_eq!(report.divergence_count(DivergenceClass::RedundantExistence), 45);
    assert!(report
        .divergences
        .iter()
        .any(|d| d.syllogism == "A(a2,a3) # A(a1,a2) # I(a1,a1) |= A(a1,a3)"));
}
