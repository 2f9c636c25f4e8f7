//! The calculus as a word-rewriting system.
//!
//! Rules rewrite contiguous subwords of a [`Word`]. Matching is exact on
//! canonical variable indices, with the order constraints (`i < j < k`) of
//! each schema row checked on the actual indices. Rule schemas are written
//! here in chain order; their identifiers use written order.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::model::{alpha_equivalent, equivalent_under_any_renaming, Atom, Mood, TermVariable, Word};
use crate::ResourceError;

/// Default largest `n` accepted by [`critical_pairs`].
pub const DEFAULT_CRITICAL_PAIR_CAP: usize = 5;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("rule {rule} does not apply at position {position} of {word}")]
pub struct InapplicableError {
    pub rule: String,
    pub position: usize,
    pub word: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    I,
    J,
    K,
}

/// `(mood, subject, predicate, dual)`
type AtomPattern = (Mood, Slot, Slot, bool);

struct Schema {
    family: &'static str,
    /// Number of index slots, with `i < j < k` over the used ones. Identity
    /// laws use a single slot and allow every `i`.
    arity: usize,
    lhs: &'static [AtomPattern],
    rhs: &'static [AtomPattern],
}

impl Schema {
    fn trivial(&self) -> bool {
        self.lhs == self.rhs
    }
}

use Mood::{A, E, I, O};
use Slot::{I as Si, J as Sj, K as Sk};

const SCHEMAS: &[Schema] = &[
    Schema { family: "identity-A", arity: 1, lhs: &[(A, Si, Si, false)], rhs: &[(A, Si, Si, false)] },
    Schema { family: "identity-I", arity: 1, lhs: &[(I, Si, Si, false)], rhs: &[(I, Si, Si, false)] },
    Schema { family: "trivial-A", arity: 2, lhs: &[(A, Si, Sj, false)], rhs: &[(A, Si, Sj, false)] },
    Schema { family: "trivial-I", arity: 2, lhs: &[(I, Si, Sj, false)], rhs: &[(I, Si, Sj, false)] },
    Schema { family: "trivial-E", arity: 2, lhs: &[(E, Si, Sj, false)], rhs: &[(E, Si, Sj, false)] },
    Schema { family: "trivial-O", arity: 2, lhs: &[(O, Si, Sj, false)], rhs: &[(O, Si, Sj, false)] },
    Schema {
        family: "subalternation-AI",
        arity: 2,
        lhs: &[(I, Si, Si, false), (A, Si, Sj, false)],
        rhs: &[(I, Si, Sj, false)],
    },
    Schema {
        family: "subalternation-EO",
        arity: 2,
        lhs: &[(I, Si, Si, false), (E, Si, Sj, false)],
        rhs: &[(O, Si, Sj, false)],
    },
    Schema { family: "conversion-E", arity: 2, lhs: &[(E, Sj, Si, true)], rhs: &[(E, Si, Sj, false)] },
    Schema { family: "conversion-I", arity: 2, lhs: &[(I, Sj, Si, true)], rhs: &[(I, Si, Sj, false)] },
    Schema {
        family: "per-accidens-AI",
        arity: 2,
        lhs: &[(A, Sj, Si, true), (I, Sj, Sj, false)],
        rhs: &[(I, Si, Sj, false)],
    },
    Schema {
        family: "per-accidens-EO",
        arity: 2,
        lhs: &[(I, Si, Si, false), (E, Sj, Si, true)],
        rhs: &[(O, Si, Sj, false)],
    },
    Schema {
        family: "compose:A#A",
        arity: 3,
        lhs: &[(A, Si, Sj, false), (A, Sj, Sk, false)],
        rhs: &[(A, Si, Sk, false)],
    },
    Schema {
        family: "compose:E#A",
        arity: 3,
        lhs: &[(A, Si, Sj, false), (E, Sj, Sk, false)],
        rhs: &[(E, Si, Sk, false)],
    },
    Schema {
        family: "compose:A#I",
        arity: 3,
        lhs: &[(I, Si, Sj, false), (A, Sj, Sk, false)],
        rhs: &[(I, Si, Sk, false)],
    },
    Schema {
        family: "compose:E#I",
        arity: 3,
        lhs: &[(I, Si, Sj, false), (E, Sj, Sk, false)],
        rhs: &[(O, Si, Sk, false)],
    },
    Schema {
        family: "compose:E~#A",
        arity: 3,
        lhs: &[(A, Si, Sj, false), (E, Sk, Sj, true)],
        rhs: &[(E, Si, Sk, false)],
    },
    Schema {
        family: "compose:A~#E",
        arity: 3,
        lhs: &[(E, Si, Sj, false), (A, Sk, Sj, true)],
        rhs: &[(E, Si, Sk, false)],
    },
    Schema {
        family: "compose:E~#I",
        arity: 3,
        lhs: &[(I, Si, Sj, false), (E, Sk, Sj, true)],
        rhs: &[(O, Si, Sk, false)],
    },
    Schema {
        family: "compose:A~#O",
        arity: 3,
        lhs: &[(O, Si, Sj, false), (A, Sk, Sj, true)],
        rhs: &[(O, Si, Sk, false)],
    },
    Schema {
        family: "compose:I#A~",
        arity: 3,
        lhs: &[(A, Sj, Si, true), (I, Sj, Sk, false)],
        rhs: &[(I, Si, Sk, false)],
    },
    Schema {
        family: "compose:A#I~",
        arity: 3,
        lhs: &[(I, Sj, Si, true), (A, Sj, Sk, false)],
        rhs: &[(I, Si, Sk, false)],
    },
    Schema {
        family: "compose:O#A~",
        arity: 3,
        lhs: &[(A, Sj, Si, true), (O, Sj, Sk, false)],
        rhs: &[(O, Si, Sk, false)],
    },
    Schema {
        family: "compose:E#I~",
        arity: 3,
        lhs: &[(I, Sj, Si, true), (E, Sj, Sk, false)],
        rhs: &[(O, Si, Sk, false)],
    },
    Schema {
        family: "compose:A~#E~",
        arity: 3,
        lhs: &[(E, Sj, Si, true), (A, Sk, Sj, true)],
        rhs: &[(E, Si, Sk, false)],
    },
    Schema {
        family: "compose:I~#A~",
        arity: 3,
        lhs: &[(A, Sj, Si, true), (I, Sk, Sj, true)],
        rhs: &[(I, Si, Sk, false)],
    },
    Schema {
        family: "compose:E~#I~",
        arity: 3,
        lhs: &[(I, Sj, Si, true), (E, Sk, Sj, true)],
        rhs: &[(O, Si, Sk, false)],
    },
];

/// Identifiers of every rule family, in table order.
pub fn rule_families() -> impl Iterator<Item = &'static str> {
    SCHEMAS.iter().map(|s| s.family)
}

/// A schema row instantiated at concrete indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RuleInstance {
    pub family: &'static str,
    pub indices: Vec<u32>,
    pub lhs: Word,
    pub rhs: Word,
    pub trivial: bool,
}

impl fmt::Display for RuleInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} |= {}", self.lhs, self.rhs)
    }
}

impl Serialize for RuleInstance {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            family: &'a str,
            indices: &'a [u32],
            lhs: &'a Word,
            rhs: &'a Word,
            trivial: bool,
        }
        Repr { family: self.family, indices: &self.indices, lhs: &self.lhs, rhs: &self.rhs, trivial: self.trivial }
            .serialize(serializer)
    }
}

fn instantiate(patterns: &[AtomPattern], idx: &[u32]) -> Word {
    let var = |slot: Slot| {
        TermVariable::canonical(match slot {
            Slot::I => idx[0],
            Slot::J => idx[1],
            Slot::K => idx[2],
        })
    };
    let atoms = patterns.iter().map(|&(mood, s, p, dual)| Atom::new(mood, var(s), var(p), dual)).collect();
    Word::new(atoms).expect("schema rows compose")
}

fn index_tuples(arity: usize, n: u32) -> Vec<Vec<u32>> {
    match arity {
        1 => (1..=n).map(|i| vec![i]).collect(),
        2 => (1..=n).flat_map(|i| (i + 1..=n).map(move |j| vec![i, j])).collect(),
        3 => (1..=n)
            .flat_map(|i| (i + 1..=n).flat_map(move |j| (j + 1..=n).map(move |k| vec![i, j, k])))
            .collect(),
        _ => unreachable!("schemas use at most three indices"),
    }
}

/// Every schema row at every admissible index tuple over `a1..an`.
pub fn instantiate_rules(n: usize) -> Vec<RuleInstance> {
    SCHEMAS
        .iter()
        .flat_map(|schema| {
            index_tuples(schema.arity, n as u32).into_iter().map(move |idx| RuleInstance {
                family: schema.family,
                lhs: instantiate(schema.lhs, &idx),
                rhs: instantiate(schema.rhs, &idx),
                trivial: schema.trivial(),
                indices: idx,
            })
        })
        .collect()
}

/// Instantiated rules with an index on left-hand sides.
#[derive(Clone, Debug)]
pub struct RuleSet {
    n: usize,
    rules: Vec<RuleInstance>,
    by_lhs: HashMap<Vec<Atom>, Vec<usize>>,
}

impl RuleSet {
    pub fn new(n: usize) -> Self {
        let rules = instantiate_rules(n);
        let mut by_lhs: HashMap<Vec<Atom>, Vec<usize>> = HashMap::new();
        for (k, rule) in rules.iter().enumerate() {
            if !rule.trivial {
                by_lhs.entry(rule.lhs.atoms().to_vec()).or_default().push(k);
            }
        }
        RuleSet { n, rules, by_lhs }
    }

    /// Rules over the largest canonical index occurring in `w`.
    pub fn for_word(w: &Word) -> Self {
        RuleSet::new(max_index(w) as usize)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rules(&self) -> &[RuleInstance] {
        &self.rules
    }

    pub fn non_trivial(&self) -> impl Iterator<Item = &RuleInstance> {
        self.rules.iter().filter(|r| !r.trivial)
    }

    /// Instance count per family, in table order.
    pub fn counts(&self) -> Vec<(&'static str, usize)> {
        SCHEMAS
            .iter()
            .map(|s| (s.family, self.rules.iter().filter(|r| r.family == s.family).count()))
            .collect()
    }

    fn matching(&self, atoms: &[Atom]) -> impl Iterator<Item = &RuleInstance> {
        self.by_lhs.get(atoms).into_iter().flatten().map(|&k| &self.rules[k])
    }
}

fn max_index(w: &Word) -> u32 {
    w.variables().iter().filter_map(TermVariable::index).max().unwrap_or(0)
}

/// A rule application site. `position` is the chain-order index of the
/// first atom of the rewritten subword.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Redex {
    pub rule: RuleInstance,
    pub position: usize,
}

impl Redex {
    pub fn span(&self) -> std::ops::Range<usize> {
        self.position..self.position + self.rule.lhs.len()
    }

    pub fn overlaps(&self, other: &Redex) -> bool {
        let (a, b) = (self.span(), other.span());
        a.start < b.end && b.start < a.end
    }

    /// Position of the redex's leftmost atom in written order.
    pub fn written_position(&self, word_len: usize) -> usize {
        word_len - self.span().end
    }
}

/// Every non-trivial rule application in `w`.
pub fn applicable_rewrites(w: &Word, rules: &RuleSet) -> Vec<Redex> {
    let atoms = w.atoms();
    let mut out = Vec::new();
    for position in 0..atoms.len() {
        for len in 1..=2.min(atoms.len() - position) {
            out.extend(
                rules
                    .matching(&atoms[position..position + len])
                    .map(|rule| Redex { rule: rule.clone(), position }),
            );
        }
    }
    out
}

pub fn rewrite_step(w: &Word, rule: &RuleInstance, position: usize) -> Result<Word, InapplicableError> {
    let len = rule.lhs.len();
    let applies =
        !rule.trivial && position + len <= w.len() && w.atoms()[position..position + len] == *rule.lhs.atoms();
    let inapplicable =
        || InapplicableError { rule: rule.to_string(), position, word: w.to_string() };
    if !applies {
        return Err(inapplicable());
    }
    w.splice(position, len, rule.rhs.atoms()).map_err(|_| inapplicable())
}

/// Lexicographic termination measure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Measure {
    pub length: usize,
    pub dual_count: usize,
}

impl Measure {
    pub fn of(w: &Word) -> Self {
        Measure { length: w.len(), dual_count: w.dual_count() }
    }

    /// Upper bound on the length of any rewrite sequence.
    pub fn bound(self) -> usize {
        self.length + self.dual_count
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub rule: RuleInstance,
    pub position: usize,
}

/// A rewrite sequence, composable when targets and sources agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub source: Word,
    pub target: Word,
    pub steps: Vec<Step>,
}

/// One step of a derivation trace, positions in written order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceRecord {
    pub rule_family: &'static str,
    pub indices: Vec<u32>,
    pub position: usize,
    pub before: Word,
    pub after: Word,
}

impl Derivation {
    pub fn identity(w: Word) -> Self {
        Derivation { source: w.clone(), target: w, steps: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Intermediate words, source first.
    pub fn replay(&self) -> Result<Vec<Word>, InapplicableError> {
        let mut words = vec![self.source.clone()];
        for step in &self.steps {
            let next = rewrite_step(words.last().unwrap(), &step.rule, step.position)?;
            words.push(next);
        }
        Ok(words)
    }

    pub fn is_globular(&self) -> bool {
        matches!(self.replay(), Ok(words) if words.last() == Some(&self.target))
    }

    /// Vertical composition; `None` unless `self.target == next.source`.
    pub fn then(&self, next: &Derivation) -> Option<Derivation> {
        (self.target == next.source).then(|| Derivation {
            source: self.source.clone(),
            target: next.target.clone(),
            steps: self.steps.iter().chain(&next.steps).cloned().collect(),
        })
    }

    pub fn trace(&self) -> Vec<TraceRecord> {
        let words = self.replay().expect("derivations replay");
        self.steps
            .iter()
            .zip(words.windows(2))
            .map(|(step, pair)| TraceRecord {
                rule_family: step.rule.family,
                indices: step.rule.indices.clone(),
                position: pair[0].len() - step.position - step.rule.lhs.len(),
                before: pair[0].clone(),
                after: pair[1].clone(),
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Among redexes containing no other redex, the leftmost in written
    /// order.
    #[default]
    LeftmostInnermost,
    /// The rightmost redex in written order, longest first on ties.
    Rightmost,
    /// Uniform choice among all redexes, seeded.
    Random(u64),
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::LeftmostInnermost => f.write_str("leftmost-innermost"),
            Strategy::Rightmost => f.write_str("rightmost"),
            Strategy::Random(seed) => write!(f, "random({seed})"),
        }
    }
}

fn contains(outer: &Redex, inner: &Redex) -> bool {
    let (o, i) = (outer.span(), inner.span());
    o != i && o.start <= i.start && i.end <= o.end
}

fn choose(redexes: Vec<Redex>, strategy: Strategy, rng: &mut Option<ChaCha8Rng>) -> Redex {
    match strategy {
        Strategy::LeftmostInnermost => {
            let innermost: Vec<&Redex> =
                redexes.iter().filter(|r| !redexes.iter().any(|s| contains(r, s))).collect();
            let best = innermost.iter().max_by_key(|r| (r.span().end, std::cmp::Reverse(r.span().start)));
            (*best.expect("at least one redex")).clone()
        }
        Strategy::Rightmost => redexes
            .into_iter()
            .min_by_key(|r| (r.position, std::cmp::Reverse(r.rule.lhs.len())))
            .expect("at least one redex"),
        Strategy::Random(_) => {
            let rng = rng.as_mut().expect("seeded");
            let k = rng.gen_range(0..redexes.len());
            redexes.into_iter().nth(k).unwrap()
        }
    }
}

/// Rewrites to a normal form with `strategy`.
pub fn normalize_word(w: &Word, rules: &RuleSet, strategy: Strategy) -> (Word, Derivation) {
    let mut rng = match strategy {
        Strategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let mut current = w.clone();
    let mut steps = Vec::new();
    loop {
        let redexes = applicable_rewrites(&current, rules);
        if redexes.is_empty() {
            break;
        }
        let Redex { rule, position } = choose(redexes, strategy, &mut rng);
        current = rewrite_step(&current, &rule, position).expect("chosen redexes apply");
        steps.push(Step { rule, position });
    }
    let derivation = Derivation { source: w.clone(), target: current.clone(), steps };
    (current, derivation)
}

/// [`normalize_word`] with rules over the word's own variables.
pub fn normalize(w: &Word, strategy: Strategy) -> (Word, Derivation) {
    normalize_word(w, &RuleSet::for_word(w), strategy)
}

/// Every normal form reachable from `w`, by exhaustive search.
pub fn reachable_normal_forms(w: &Word, rules: &RuleSet) -> BTreeSet<Word> {
    let mut seen = BTreeSet::new();
    let mut normal = BTreeSet::new();
    let mut stack = vec![w.clone()];
    while let Some(current) = stack.pop() {
        if !seen.insert(current.clone()) {
            continue;
        }
        let redexes = applicable_rewrites(&current, rules);
        if redexes.is_empty() {
            normal.insert(current);
            continue;
        }
        for r in redexes {
            stack.push(rewrite_step(&current, &r.rule, r.position).expect("found redexes apply"));
        }
    }
    normal
}

/// Applies two disjoint redexes in both orders.
pub fn disjoint_commutation(w: &Word, first: &Redex, second: &Redex) -> Result<(Word, Word, bool), InapplicableError> {
    if first.overlaps(second) {
        return Err(InapplicableError {
            rule: format!("{} and {}", first.rule, second.rule),
            position: second.position,
            word: format!("{w} (overlapping redexes)"),
        });
    }
    // a rewrite shifts every later position by its change in length
    let shifted = |moved: &Redex, by: &Redex| {
        if moved.position > by.position {
            moved.position + by.rule.rhs.len() - by.rule.lhs.len()
        } else {
            moved.position
        }
    };
    let one = rewrite_step(w, &first.rule, first.position)?;
    let one = rewrite_step(&one, &second.rule, shifted(second, first))?;
    let two = rewrite_step(w, &second.rule, second.position)?;
    let two = rewrite_step(&two, &first.rule, shifted(first, second))?;
    let equal = one == two;
    Ok((one, two, equal))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyMeasure {
    pub family: &'static str,
    pub instances: usize,
    pub delta_length: i64,
    pub delta_dual: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TerminationReport {
    pub n: usize,
    pub families: Vec<FamilyMeasure>,
    /// Non-trivial instances whose measure does not strictly decrease, or
    /// whose deltas differ from the rest of their family.
    pub violations: Vec<String>,
}

impl TerminationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn family(&self, id: &str) -> Option<&FamilyMeasure> {
        self.families.iter().find(|f| f.family == id)
    }
}

pub fn termination_audit(n: usize) -> TerminationReport {
    let rules = RuleSet::new(n);
    let mut families: Vec<FamilyMeasure> = Vec::new();
    let mut violations = Vec::new();
    for rule in rules.non_trivial() {
        let (before, after) = (Measure::of(&rule.lhs), Measure::of(&rule.rhs));
        let delta_length = after.length as i64 - before.length as i64;
        let delta_dual = after.dual_count as i64 - before.dual_count as i64;
        if after >= before {
            violations.push(format!("{} [{}]: measure {before:?} -> {after:?}", rule, rule.family));
        }
        match families.iter_mut().find(|f| f.family == rule.family) {
            Some(f) => {
                f.instances += 1;
                if (f.delta_length, f.delta_dual) != (delta_length, delta_dual) {
                    violations.push(format!("{} [{}]: inconsistent deltas", rule, rule.family));
                }
            }
            None => families.push(FamilyMeasure { family: rule.family, instances: 1, delta_length, delta_dual }),
        }
    }
    TerminationReport { n, families, violations }
}

/// Two distinct rewrites of the same minimal peak.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPair {
    pub peak: Word,
    pub left: Redex,
    pub right: Redex,
    pub left_reduct: Word,
    pub right_reduct: Word,
    /// Normal forms under the default strategy.
    pub left_nf: Word,
    pub right_nf: Word,
    /// Some normal form reachable from each reduct agrees up to an
    /// order-preserving renaming.
    pub joinable_up_to_renaming: bool,
    /// Not joinable, but the default normal forms agree under some other
    /// bijection of the variables.
    pub joinable_only_non_monotone: bool,
}

impl Serialize for CriticalPair {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            peak: &'a Word,
            left_rule: String,
            right_rule: String,
            left_nf: &'a Word,
            right_nf: &'a Word,
            joinable: bool,
        }
        let rule = |r: &Redex| format!("{}{:?} @ {}", r.rule.family, r.rule.indices, r.written_position(self.peak.len()));
        Repr {
            peak: &self.peak,
            left_rule: rule(&self.left),
            right_rule: rule(&self.right),
            left_nf: &self.left_nf,
            right_nf: &self.right_nf,
            joinable: self.joinable_up_to_renaming,
        }
        .serialize(serializer)
    }
}

/// Critical pairs grouped by peak up to renaming.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OverlapFamily {
    /// Peak with variables renamed by rank.
    pub peak: Word,
    pub pairs: Vec<CriticalPair>,
    pub joinable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalPairReport {
    pub n: usize,
    pub families: Vec<OverlapFamily>,
    pub pair_count: usize,
    pub joinable_count: usize,
    /// For `n >= 5`: families whose peak is not already a peak at `n = 4`.
    pub not_embedded: Vec<Word>,
}

impl CriticalPairReport {
    pub fn all_joinable(&self) -> bool {
        self.joinable_count == self.pair_count
    }

    pub fn non_joinable(&self) -> impl Iterator<Item = &CriticalPair> {
        self.families.iter().flat_map(|f| &f.pairs).filter(|p| !p.joinable_up_to_renaming)
    }

    pub fn family(&self, peak: &Word) -> Option<&OverlapFamily> {
        let key = peak.rank_renamed();
        self.families.iter().find(|f| f.peak == key)
    }
}

/// Superposes every pair of non-trivial left-hand sides at every offset
/// where they share at least one atom, returning each peak with the two
/// redexes as sites in it.
fn superpositions(rules: &RuleSet) -> BTreeSet<(Word, usize, usize, usize, usize)> {
    let non_trivial: Vec<(usize, &RuleInstance)> =
        rules.rules().iter().enumerate().filter(|(_, r)| !r.trivial).collect();
    non_trivial
        .par_iter()
        .flat_map_iter(|&(a, ra)| {
            let mut found = Vec::new();
            for &(b, rb) in &non_trivial {
                let (la, lb) = (ra.lhs.len() as isize, rb.lhs.len() as isize);
                // rb starts `offset` atoms after ra
                for offset in (1 - lb)..la {
                    if a == b && offset == 0 {
                        continue;
                    }
                    let start = offset.min(0);
                    let end = la.max(offset + lb);
                    let mut atoms: Vec<Option<Atom>> = vec![None; (end - start) as usize];
                    let mut consistent = true;
                    for (k, atom) in ra.lhs.atoms().iter().enumerate() {
                        atoms[(k as isize - start) as usize] = Some(atom.clone());
                    }
                    for (k, atom) in rb.lhs.atoms().iter().enumerate() {
                        let slot = &mut atoms[(offset + k as isize - start) as usize];
                        match slot {
                            Some(existing) if existing != atom => consistent = false,
                            _ => *slot = Some(atom.clone()),
                        }
                    }
                    if !consistent {
                        continue;
                    }
                    let Ok(peak) = Word::new(atoms.into_iter().map(Option::unwrap).collect()) else {
                        continue;
                    };
                    let (pa, pb) = ((-start) as usize, (offset - start) as usize);
                    // each unordered pair once
                    if (pa, a) < (pb, b) {
                        found.push((peak, a, pa, b, pb));
                    }
                }
            }
            found
        })
        .collect()
}

pub fn critical_pairs(n: usize) -> Result<CriticalPairReport, ResourceError> {
    critical_pairs_with_cap(n, DEFAULT_CRITICAL_PAIR_CAP)
}

pub fn critical_pairs_with_cap(n: usize, cap: usize) -> Result<CriticalPairReport, ResourceError> {
    if n > cap {
        return Err(ResourceError { what: "n", value: n, cap });
    }
    let rules = RuleSet::new(n);
    let sites: Vec<_> = superpositions(&rules).into_iter().collect();
    let pairs: Vec<CriticalPair> = sites
        .par_iter()
        .map(|(peak, a, pa, b, pb)| {
            let left = Redex { rule: rules.rules()[*a].clone(), position: *pa };
            let right = Redex { rule: rules.rules()[*b].clone(), position: *pb };
            let left_reduct = rewrite_step(peak, &left.rule, left.position).expect("superposed lhs applies");
            let right_reduct = rewrite_step(peak, &right.rule, right.position).expect("superposed lhs applies");
            let (left_nf, _) = normalize_word(&left_reduct, &rules, Strategy::default());
            let (right_nf, _) = normalize_word(&right_reduct, &rules, Strategy::default());
            let left_all = reachable_normal_forms(&left_reduct, &rules);
            let right_all = reachable_normal_forms(&right_reduct, &rules);
            let joinable = left_all.iter().any(|l| right_all.iter().any(|r| alpha_equivalent(l, r)));
            let joinable_only_non_monotone = !joinable && equivalent_under_any_renaming(&left_nf, &right_nf);
            CriticalPair {
                peak: peak.clone(),
                left,
                right,
                left_reduct,
                right_reduct,
                left_nf,
                right_nf,
                joinable_up_to_renaming: joinable,
                joinable_only_non_monotone,
            }
        })
        .collect();

    let mut grouped: BTreeMap<Word, Vec<CriticalPair>> = BTreeMap::new();
    for pair in pairs {
        grouped.entry(pair.peak.rank_renamed()).or_default().push(pair);
    }
    let families: Vec<OverlapFamily> = grouped
        .into_iter()
        .map(|(peak, pairs)| OverlapFamily { joinable: pairs.iter().all(|p| p.joinable_up_to_renaming), peak, pairs })
        .collect();
    let pair_count = families.iter().map(|f| f.pairs.len()).sum();
    let joinable_count = families.iter().flat_map(|f| &f.pairs).filter(|p| p.joinable_up_to_renaming).count();

    let not_embedded = if n >= 5 {
        let base: BTreeSet<Word> = superpositions(&RuleSet::new(4)).into_iter().map(|s| s.0.rank_renamed()).collect();
        families.iter().filter(|f| !base.contains(&f.peak)).map(|f| f.peak.clone()).collect()
    } else {
        Vec::new()
    };
    Ok(CriticalPairReport { n, families, pair_count, joinable_count, not_embedded })
}
