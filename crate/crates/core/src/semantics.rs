//! Finite set models.
//!
//! A term-variable denotes a subset of a finite universe. `A(s,p)` holds
//! when `s ⊆ p`, `E` when `s ∩ p = ∅`, `I` when `s ∩ p ≠ ∅` and `O` when
//! `s \ p ≠ ∅`. Universal propositions carry no existential import, so an
//! empty term satisfies every `A` and `E` with it as subject; inhabitation
//! must be asserted with `I(x,x)`. Atoms are evaluated through their
//! proposition; the dual flag only affects layout.
//!
//! The search describes an element by its membership type (which terms
//! contain it). Truth values only depend on which types are inhabited, so
//! models are enumerated as sets of distinct types.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::inference::{candidates, check_validity, enumerate_valid_with_cap, Candidate, Syllogism};
use crate::model::{Mood, Proposition, TermVariable};
use crate::polygraph::instantiate_rules;
use crate::ResourceError;

/// Default largest number of term-variables for countermodel search.
pub const DEFAULT_VARIABLE_CAP: usize = 5;
/// Membership types are stored in a `u64`, so at most six terms.
const HARD_VARIABLE_LIMIT: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("term-variable {0} has no assignment")]
pub struct UnassignedVariableError(pub TermVariable);

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Model {
    pub universe_size: usize,
    pub assignment: BTreeMap<TermVariable, BTreeSet<usize>>,
}

impl Model {
    pub fn new(universe_size: usize) -> Self {
        Model { universe_size, assignment: BTreeMap::new() }
    }

    pub fn with(mut self, var: TermVariable, elements: impl IntoIterator<Item = usize>) -> Self {
        self.assignment.insert(var, elements.into_iter().collect());
        self
    }

    fn set(&self, var: &TermVariable) -> Result<&BTreeSet<usize>, UnassignedVariableError> {
        self.assignment.get(var).ok_or_else(|| UnassignedVariableError(var.clone()))
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set = |s: &BTreeSet<usize>| {
            if s.is_empty() {
                "{}".to_string()
            } else {
                format!("{{{}}}", s.iter().join(","))
            }
        };
        write!(f, "U = {}", set(&(0..self.universe_size).collect()))?;
        for (var, elements) in &self.assignment {
            write!(f, ", {var} = {}", set(elements))?;
        }
        Ok(())
    }
}

impl Serialize for Model {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            universe_size: usize,
            assignment: BTreeMap<String, Vec<usize>>,
        }
        Repr {
            universe_size: self.universe_size,
            assignment: self
                .assignment
                .iter()
                .map(|(v, s)| (v.to_string(), s.iter().copied().collect()))
                .collect(),
        }
        .serialize(serializer)
    }
}

pub fn satisfies(m: &Model, p: &Proposition) -> Result<bool, UnassignedVariableError> {
    let s = m.set(&p.subject)?;
    let q = m.set(&p.predicate)?;
    Ok(match p.mood {
        Mood::A => s.is_subset(q),
        Mood::E => s.is_disjoint(q),
        Mood::I => !s.is_disjoint(q),
        Mood::O => !s.is_subset(q),
    })
}

/// A proposition compiled against a variable order: masks over the
/// membership types that make it true (`I`, `O`) or false (`A`, `E`).
#[derive(Clone, Copy, Debug)]
struct Compiled {
    existential: bool,
    types: u64,
}

impl Compiled {
    fn new(p: &Proposition, vars: &[TermVariable]) -> Self {
        let bit = |v: &TermVariable| vars.iter().position(|x| x == v).expect("variable is indexed");
        let (s, q) = (bit(&p.subject), bit(&p.predicate));
        let mut types = 0u64;
        for t in 0..1u64 << vars.len() {
            let (in_s, in_q) = (t >> s & 1 == 1, t >> q & 1 == 1);
            let hit = match p.mood {
                Mood::A | Mood::O => in_s && !in_q,
                Mood::E | Mood::I => in_s && in_q,
            };
            if hit {
                types |= 1 << t;
            }
        }
        Compiled { existential: matches!(p.mood, Mood::I | Mood::O), types }
    }

    fn holds(self, inhabited: u64) -> bool {
        (inhabited & self.types != 0) == self.existential
    }
}

/// Premises that must hold and conclusions of which at least one must fail.
struct Problem {
    vars: Vec<TermVariable>,
    premises: Vec<Compiled>,
    conclusions: Vec<Compiled>,
}

impl Problem {
    fn new(premises: &[Proposition], conclusions: &[Proposition], cap: usize) -> Result<Self, ResourceError> {
        let vars: Vec<TermVariable> = premises
            .iter()
            .chain(conclusions)
            .flat_map(|p| [p.subject.clone(), p.predicate.clone()])
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let cap = cap.min(HARD_VARIABLE_LIMIT);
        if vars.len() > cap {
            return Err(ResourceError { what: "term-variables", value: vars.len(), cap });
        }
        let compile = |ps: &[Proposition]| ps.iter().map(|p| Compiled::new(p, &vars)).collect();
        Ok(Problem { premises: compile(premises), conclusions: compile(conclusions), vars })
    }

    fn is_countermodel(&self, inhabited: u64) -> bool {
        self.premises.iter().all(|p| p.holds(inhabited)) && !self.conclusions.iter().all(|c| c.holds(inhabited))
    }

    /// First countermodel by universe size, then lexicographic type order.
    fn search(&self, max_universe: usize) -> Option<Vec<u64>> {
        let type_count = 1u64 << self.vars.len();
        (0..=max_universe.min(type_count as usize)).find_map(|size| {
            (0..type_count).combinations(size).find(|types| {
                let inhabited = types.iter().fold(0u64, |acc, t| acc | 1 << t);
                self.is_countermodel(inhabited)
            })
        })
    }

    fn model(&self, types: &[u64]) -> Model {
        let mut m = Model::new(types.len());
        for (bit, var) in self.vars.iter().enumerate() {
            let elements = types.iter().enumerate().filter(|(_, t)| *t >> bit & 1 == 1).map(|(e, _)| e);
            m = m.with(var.clone(), elements);
        }
        m
    }
}

pub fn find_countermodel(s: &Syllogism, max_universe: usize) -> Result<Option<Model>, ResourceError> {
    find_countermodel_with_cap(s, max_universe, DEFAULT_VARIABLE_CAP)
}

/// Searches universes of size `0..=max_universe` for a model of the
/// premises that falsifies the conclusion.
pub fn find_countermodel_with_cap(s: &Syllogism, max_universe: usize, cap: usize) -> Result<Option<Model>, ResourceError> {
    let premises: Vec<Proposition> = s.premises().atoms().iter().map(|a| a.prop.clone()).collect();
    let problem = Problem::new(&premises, std::slice::from_ref(s.conclusion()), cap)?;
    Ok(problem.search(max_universe).map(|types| problem.model(&types)))
}

/// Default universe bound: one witness per existential premise, plus one.
pub fn default_universe(n: usize) -> usize {
    n + 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DivergenceClass {
    /// One-term candidates such as `E(a1,a1) |= E(a1,a1)`.
    SingleTerm,
    /// An accepted syllogism with an extra `I(ai,ai)` premise it does not
    /// need.
    RedundantExistence,
    Unexplained,
}

/// A rejected candidate with no countermodel within the bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Divergence {
    pub syllogism: String,
    pub class: DivergenceClass,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SoundnessReport {
    pub n: usize,
    pub max_universe: usize,
    pub rules_checked: usize,
    pub unsound_rules: Vec<String>,
    pub accepted: usize,
    /// Accepted syllogisms that have a countermodel.
    pub accepted_with_countermodel: Vec<String>,
    pub rejected: usize,
    pub rejected_with_countermodel: usize,
    pub divergences: Vec<Divergence>,
}

impl SoundnessReport {
    pub fn divergence_count(&self, class: DivergenceClass) -> usize {
        self.divergences.iter().filter(|d| d.class == class).count()
    }

    /// Calculus validity coincides with the absence of a countermodel.
    pub fn exact_agreement(&self) -> bool {
        self.unsound_rules.is_empty() && self.accepted_with_countermodel.is_empty() && self.divergences.is_empty()
    }

    /// As [`exact_agreement`](Self::exact_agreement), tolerating only
    /// single-term divergences.
    pub fn agreement_modulo_single_term(&self) -> bool {
        self.unsound_rules.is_empty()
            && self.accepted_with_countermodel.is_empty()
            && self.divergences.iter().all(|d| d.class == DivergenceClass::SingleTerm)
    }

    /// Every divergence belongs to an explained class.
    pub fn all_divergences_explained(&self) -> bool {
        self.divergences.iter().all(|d| d.class != DivergenceClass::Unexplained)
    }
}

fn has_countermodel(s: &Syllogism, max_universe: usize) -> bool {
    find_countermodel_with_cap(s, max_universe, HARD_VARIABLE_LIMIT)
        .expect("audited sizes fit the type mask")
        .is_some()
}

fn classify_divergence(c: &Candidate, max_universe: usize) -> DivergenceClass {
    if c.n == 1 {
        return DivergenceClass::SingleTerm;
    }
    match c.without_insertion() {
        Some(base) if check_validity(&base.syllogism()).valid && !has_countermodel(&base.syllogism(), max_universe) => {
            DivergenceClass::RedundantExistence
        }
        _ => DivergenceClass::Unexplained,
    }
}

/// Cross-checks the rules, the accepted syllogisms and the rejected
/// candidates for `n` terms against bounded model search.
pub fn audit_soundness(n: usize, max_universe: usize) -> Result<SoundnessReport, ResourceError> {
    if n > HARD_VARIABLE_LIMIT {
        return Err(ResourceError { what: "n", value: n, cap: HARD_VARIABLE_LIMIT });
    }
    let rules = instantiate_rules(n);
    let unsound_rules: Vec<String> = rules
        .par_iter()
        .filter_map(|r| {
            let lhs: Vec<Proposition> = r.lhs.atoms().iter().map(|a| a.prop.clone()).collect();
            let rhs: Vec<Proposition> = r.rhs.atoms().iter().map(|a| a.prop.clone()).collect();
            let problem = Problem::new(&lhs, &rhs, HARD_VARIABLE_LIMIT).expect("rules use at most three terms");
            problem.search(max_universe).map(|_| format!("{r} [{}]", r.family))
        })
        .collect();

    let enumeration = enumerate_valid_with_cap(n, HARD_VARIABLE_LIMIT)?;
    let accepted_with_countermodel: Vec<String> = enumeration
        .syllogisms
        .par_iter()
        .filter(|v| has_countermodel(&v.syllogism(), max_universe))
        .map(|v| v.syllogism().to_string())
        .collect();

    let all: Vec<Candidate> = candidates(n).collect();
    let rejected: Vec<&Candidate> = all.par_iter().filter(|c| !check_validity(&c.syllogism()).valid).collect();
    let mut divergences: Vec<Divergence> = rejected
        .par_iter()
        .filter(|c| !has_countermodel(&c.syllogism(), max_universe))
        .map(|c| Divergence { syllogism: c.syllogism().to_string(), class: classify_divergence(c, max_universe) })
        .collect();
    divergences.sort_by(|a, b| (a.class, &a.syllogism).cmp(&(b.class, &b.syllogism)));

    Ok(SoundnessReport {
        n,
        max_universe,
        rules_checked: rules.len(),
        unsound_rules,
        accepted: enumeration.total,
        accepted_with_countermodel,
        rejected: rejected.len(),
        rejected_with_countermodel: rejected.len() - divergences.len(),
        divergences,
    })
}
