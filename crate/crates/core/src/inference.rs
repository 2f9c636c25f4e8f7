//! Syllogistic inference on chain diagrams.
//!
//! Reduction deletes an interior term-variable occurrence that has one
//! incoming and one outgoing edge, composing the two arrows. Bullets are
//! never deleted, so the bullet count of a chain is invariant. A syllogism
//! is valid when its premise chain reduces to exactly the conclusion's
//! diagram.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::model::{Atom, ChainDiagram, Mood, Proposition, TermVariable, Word};
use crate::ResourceError;

/// Default largest `n` accepted by [`enumerate_valid`].
pub const DEFAULT_ENUMERATION_CAP: usize = 8;

/// One reduction step: the occurrence of `variable` at `position` was deleted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Deletion {
    pub position: usize,
    pub variable: TermVariable,
}

/// Positions of every deletable occurrence, left to right.
pub fn reducible_positions(chain: &ChainDiagram) -> Vec<usize> {
    (1..chain.len().saturating_sub(1)).filter(|&p| chain.is_pass_through(p)).collect()
}

/// Deletes the occurrence at `position` if it is a pass-through variable.
pub fn reduce_at(chain: &ChainDiagram, position: usize) -> Option<ChainDiagram> {
    chain.is_pass_through(position).then(|| chain.delete_occurrence(position))
}

/// Deletes the leftmost pass-through occurrence.
pub fn reduce_once(chain: &ChainDiagram) -> Option<(ChainDiagram, usize)> {
    let position = (1..chain.len().saturating_sub(1)).find(|&p| chain.is_pass_through(p))?;
    Some((chain.delete_occurrence(position), position))
}

pub fn normalize_chain(chain: &ChainDiagram) -> (ChainDiagram, Vec<Deletion>) {
    let mut current = chain.clone();
    let mut steps = Vec::new();
    while let Some((next, position)) = reduce_once(&current) {
        let variable = current.nodes()[position].var().cloned().expect("only variables are deleted");
        steps.push(Deletion { position, variable });
        current = next;
    }
    (current, steps)
}

/// The mood whose diagram, subject on the left, equals `chain`.
pub fn aristotelian_mood(chain: &ChainDiagram) -> Option<Mood> {
    Mood::ALL
        .into_iter()
        .find(|&mood| Proposition::new(mood, chain.left().clone(), chain.right().clone()).chain() == *chain)
}

/// The shapes of premise chains that reduce to an Aristotelian diagram.
/// `i` counts the variable occurrences left of the first bullet; `j` is the
/// index of the first variable right of the sink bullet in the closing O
/// cases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChainCase {
    /// (i) `a1 -> ... -> an`
    AllForward,
    /// (ii) `a1 -> ... -> ai -> * <- ... <- an`
    PeakE { i: usize },
    /// (iii) `a1 <- ... <- ai <- * -> a(i+1) -> ... -> an`
    ValleyI { i: usize },
    /// (iv) as (iii) with `ai` on both sides of the bullet
    ValleyIRepeated { i: usize },
    /// (v) `a1 <- ... <- ai <- * -> * <- a(i+1) <- ... <- an`
    ValleyO { i: usize },
    /// (vi) `... ai <- * -> a(i+1) -> ... -> a(j-1) -> * <- aj ...`
    ValleyPeakO { i: usize, j: usize },
    /// (vii) as (vi) with `ai` on both sides of the first bullet
    ValleyPeakORepeated { i: usize, j: usize },
    Unmatched,
}

impl ChainCase {
    pub fn label(&self) -> &'static str {
        match self {
            ChainCase::AllForward => "i",
            ChainCase::PeakE { .. } => "ii",
            ChainCase::ValleyI { .. } => "iii",
            ChainCase::ValleyIRepeated { .. } => "iv",
            ChainCase::ValleyO { .. } => "v",
            ChainCase::ValleyPeakO { .. } => "vi",
            ChainCase::ValleyPeakORepeated { .. } => "vii",
            ChainCase::Unmatched => "none",
        }
    }

    pub fn indices(&self) -> (Option<usize>, Option<usize>) {
        match *self {
            ChainCase::AllForward | ChainCase::Unmatched => (None, None),
            ChainCase::PeakE { i }
            | ChainCase::ValleyI { i }
            | ChainCase::ValleyIRepeated { i }
            | ChainCase::ValleyO { i } => (Some(i), None),
            ChainCase::ValleyPeakO { i, j } | ChainCase::ValleyPeakORepeated { i, j } => (Some(i), Some(j)),
        }
    }

    pub fn is_matched(&self) -> bool {
        *self != ChainCase::Unmatched
    }
}

impl fmt::Display for ChainCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.label())?;
        match self.indices() {
            (Some(i), Some(j)) => write!(f, " i={i} j={j}"),
            (Some(i), None) => write!(f, " i={i}"),
            _ => Ok(()),
        }
    }
}

impl Serialize for ChainCase {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            case: &'static str,
            #[serde(skip_serializing_if = "Option::is_none")]
            i: Option<usize>,
            #[serde(skip_serializing_if = "Option::is_none")]
            j: Option<usize>,
        }
        let (i, j) = self.indices();
        Repr { case: self.label(), i, j }.serialize(serializer)
    }
}

/// Matches a premise chain against the seven reducible shapes.
pub fn classify(chain: &ChainDiagram) -> ChainCase {
    use crate::model::Dir::{Left, Right};
    let nodes = chain.nodes();
    let edges = chain.edge_dirs();
    let bullets: Vec<usize> = (0..nodes.len()).filter(|&p| nodes[p].is_bullet()).collect();
    let all = |range: std::ops::Range<usize>, dir| edges[range].iter().all(|&d| d == dir);
    let vars_before = |p: usize| nodes[..p].iter().filter(|n| !n.is_bullet()).count();

    match bullets[..] {
        [] if all(0..edges.len(), Right) => ChainCase::AllForward,
        [b] if edges[b - 1] == Right => {
            if all(0..b, Right) && all(b..edges.len(), Left) {
                ChainCase::PeakE { i: vars_before(b) }
            } else {
                ChainCase::Unmatched
            }
        }
        [b] => {
            if all(0..b, Left) && all(b..edges.len(), Right) {
                let i = vars_before(b);
                if nodes[b - 1] == nodes[b + 1] {
                    ChainCase::ValleyIRepeated { i }
                } else {
                    ChainCase::ValleyI { i }
                }
            } else {
                ChainCase::Unmatched
            }
        }
        [b1, b2] => {
            if !(all(0..b1, Left) && all(b1..b2, Right) && all(b2..edges.len(), Left)) {
                return ChainCase::Unmatched;
            }
            let i = vars_before(b1);
            if b2 == b1 + 1 {
                ChainCase::ValleyO { i }
            } else if nodes[b1 - 1] == nodes[b1 + 1] {
                ChainCase::ValleyPeakORepeated { i, j: vars_before(b2) }
            } else {
                ChainCase::ValleyPeakO { i, j: vars_before(b2) + 1 }
            }
        }
        _ => ChainCase::Unmatched,
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("ill-formed syllogism: {0}")]
pub struct WellFormednessError(pub String);

/// Premises (a word) and a conclusion.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Syllogism {
    premises: Word,
    conclusion: Proposition,
    n: usize,
}

impl Syllogism {
    pub fn new(premises: Word, conclusion: Proposition) -> Result<Self, WellFormednessError> {
        let existentials = premises.atoms().iter().filter(|a| a.mood() == Mood::I && a.is_reflexive()).count();
        if existentials > 1 {
            return Err(WellFormednessError(format!(
                "{existentials} reflexive I premises; at most one assumption of existence is allowed"
            )));
        }
        let mut vars = premises.variables();
        vars.push(conclusion.subject.clone());
        vars.push(conclusion.predicate.clone());
        vars.sort();
        vars.dedup();
        Ok(Syllogism { premises, conclusion, n: vars.len() })
    }

    pub fn parse(text: &str) -> Result<Self, crate::Error> {
        let (premises, conclusion) = crate::parse::parse_syllogism(text)?;
        Ok(Syllogism::new(premises, conclusion)?)
    }

    pub fn premises(&self) -> &Word {
        &self.premises
    }

    pub fn conclusion(&self) -> &Proposition {
        &self.conclusion
    }

    /// Number of distinct term-variables.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The reflexive `I` premise, if any.
    pub fn existential(&self) -> Option<&Atom> {
        self.premises.atoms().iter().find(|a| a.mood() == Mood::I && a.is_reflexive())
    }

    /// All propositions involved, premises in chain order then conclusion.
    pub fn variables(&self) -> Vec<TermVariable> {
        let mut vars = self.premises.variables();
        vars.push(self.conclusion.subject.clone());
        vars.push(self.conclusion.predicate.clone());
        vars.sort();
        vars.dedup();
        vars
    }
}

impl fmt::Display for Syllogism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} |= {}", self.premises, self.conclusion)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rejection {
    BulletCount { premises: usize, conclusion: usize },
    NormalFormMismatch,
    /// `E(a,a) |= E(a,a)` and `O(a,a) |= O(a,a)` are not laws of identity.
    IdentityLaw(Mood),
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::BulletCount { premises, conclusion } => {
                write!(f, "bullet count ({premises} vs {conclusion})")
            }
            Rejection::NormalFormMismatch => f.write_str("normal form mismatch"),
            Rejection::IdentityLaw(mood) => {
                write!(f, "{mood}(x,x) |= {mood}(x,x) is not a law of identity (only A and I are)")
            }
        }
    }
}

impl Serialize for Rejection {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub valid: bool,
    pub reason: Option<Rejection>,
    pub premise_chain: ChainDiagram,
    pub normal_form: ChainDiagram,
    pub conclusion_chain: ChainDiagram,
    pub matched_case: ChainCase,
    pub derivation: Vec<Deletion>,
}

pub fn check_validity(s: &Syllogism) -> Verdict {
    let premise_chain = s.premises.chain();
    let conclusion_chain = s.conclusion.chain();
    let (normal_form, derivation) = normalize_chain(&premise_chain);
    let matched_case = classify(&premise_chain);

    let premise_bullets = premise_chain.bullet_count();
    let conclusion_bullets = conclusion_chain.bullet_count();
    let reason = if premise_bullets != conclusion_bullets {
        Some(Rejection::BulletCount { premises: premise_bullets, conclusion: conclusion_bullets })
    } else if normal_form != conclusion_chain {
        Some(Rejection::NormalFormMismatch)
    } else {
        match s.premises.atoms() {
            [only] if only.is_reflexive() && only.prop == s.conclusion && matches!(only.mood(), Mood::E | Mood::O) => {
                Some(Rejection::IdentityLaw(only.mood()))
            }
            _ => None,
        }
    };
    Verdict {
        valid: reason.is_none(),
        reason,
        premise_chain,
        normal_form,
        conclusion_chain,
        matched_case,
        derivation,
    }
}

/// Traditional mood (three letters) and figure of a 3-term syllogism.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MoodFigure {
    pub mood: String,
    pub figure: u8,
    /// `S`, `M` or `P` when an assumption of existence is present.
    pub assumption: Option<char>,
}

impl fmt::Display for MoodFigure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "mood {} figure {}", self.mood, self.figure)?;
        if let Some(term) = self.assumption {
            write!(f, " assuming I({term},{term})")?;
        }
        Ok(())
    }
}

/// `S` is the conclusion's subject, `P` its predicate and `M` the third
/// term; the first premise is the one relating `M` and `P`.
pub fn mood_and_figure(s: &Syllogism) -> Option<MoodFigure> {
    if s.n != 3 {
        return None;
    }
    let subject = &s.conclusion.subject;
    let predicate = &s.conclusion.predicate;
    let existential = s.existential();
    let proper: Vec<&Atom> = s.premises.atoms().iter().filter(|a| Some(*a) != existential).collect();
    if proper.len() != 2 || proper.iter().any(|a| a.is_reflexive()) {
        return None;
    }
    let middle = s.variables().into_iter().find(|v| v != subject && v != predicate)?;
    let relates = |a: &Atom, x: &TermVariable, y: &TermVariable| {
        (&a.prop.subject == x && &a.prop.predicate == y) || (&a.prop.subject == y && &a.prop.predicate == x)
    };
    let first = proper.iter().find(|a| relates(a, &middle, predicate))?;
    let second = proper.iter().find(|a| relates(a, subject, &middle))?;
    let figure = match (first.prop.subject == middle, &second.prop.subject == subject) {
        (true, true) => 1,
        (false, true) => 2,
        (true, false) => 3,
        (false, false) => 4,
    };
    let assumption = existential.map(|a| {
        let v = &a.prop.subject;
        if v == subject {
            'S'
        } else if v == predicate {
            'P'
        } else {
            'M'
        }
    });
    Some(MoodFigure {
        mood: format!("{}{}{}", first.mood(), second.mood(), s.conclusion.mood),
        figure,
        assumption,
    })
}

/// Rows of the table of valid n-term syllogism families, numbered 1..=13
/// in table order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// all `A`, conclusion `A`
    AllA = 1,
    /// `E(ai,ai+1)`, conclusion `E`
    E = 2,
    /// `E(ai+1,ai)~`
    EConverse = 3,
    /// `I(ai,ai+1)`, conclusion `I`
    I = 4,
    /// `I(ai+1,ai)~`
    IConverse = 5,
    /// `I(ai,ai)` assumption, conclusion `I`
    IExistential = 6,
    /// `O(ai,ai+1)`, conclusion `O`
    O = 7,
    EI = 8,
    EIConverse = 9,
    EConverseI = 10,
    EConverseIConverse = 11,
    /// `E(aj-1,aj)` with assumption `I(ai,ai)`
    EExistential = 12,
    EConverseExistential = 13,
}

impl Family {
    pub const ALL: [Family; 13] = [
        Family::AllA,
        Family::E,
        Family::EConverse,
        Family::I,
        Family::IConverse,
        Family::IExistential,
        Family::O,
        Family::EI,
        Family::EIConverse,
        Family::EConverseI,
        Family::EConverseIConverse,
        Family::EExistential,
        Family::EConverseExistential,
    ];

    pub fn row(self) -> u8 {
        self as u8
    }

    /// Closed-form size of the family.
    pub fn expected_count(self, n: usize) -> usize {
        match self {
            Family::AllA => 1,
            Family::E | Family::EConverse | Family::I | Family::IConverse | Family::O => n - 1,
            Family::IExistential => n,
            Family::EI | Family::EIConverse | Family::EConverseI | Family::EConverseIConverse => phi(n),
            Family::EExistential | Family::EConverseExistential => psi(n),
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Family::AllA => "A...A |= A",
            Family::E => "A.. E(ai,ai+1) ..A |= E",
            Family::EConverse => "A.. E(ai+1,ai) ..A |= E",
            Family::I => "A.. I(ai,ai+1) ..A |= I",
            Family::IConverse => "A.. I(ai+1,ai) ..A |= I",
            Family::IExistential => "A.. I(ai,ai) ..A |= I",
            Family::O => "A.. O(ai,ai+1) ..A |= O",
            Family::EI => "A.. E(aj-1,aj) .. I(ai,ai+1) ..A |= O",
            Family::EIConverse => "A.. E(aj-1,aj) .. I(ai+1,ai) ..A |= O",
            Family::EConverseI => "A.. E(aj,aj-1) .. I(ai,ai+1) ..A |= O",
            Family::EConverseIConverse => "A.. E(aj,aj-1) .. I(ai+1,ai) ..A |= O",
            Family::EExistential => "A.. E(aj-1,aj) .. I(ai,ai) ..A |= O",
            Family::EConverseExistential => "A.. E(aj,aj-1) .. I(ai,ai) ..A |= O",
        }
    }

    /// Family of a valid syllogism from its chain case and the orientation
    /// of its bullet-carrying premises.
    pub fn of(s: &Syllogism, case: ChainCase) -> Option<Family> {
        let unique = |mood: Mood| {
            let mut it = s.premises.atoms().iter().filter(|a| a.mood() == mood && !a.is_reflexive());
            match (it.next(), it.next()) {
                (Some(a), None) => Some(a.dual),
                _ => None,
            }
        };
        Some(match case {
            ChainCase::AllForward => Family::AllA,
            ChainCase::PeakE { .. } => {
                if unique(Mood::E)? {
                    Family::EConverse
                } else {
                    Family::E
                }
            }
            ChainCase::ValleyI { .. } => {
                if unique(Mood::I)? {
                    Family::IConverse
                } else {
                    Family::I
                }
            }
            ChainCase::ValleyIRepeated { .. } => Family::IExistential,
            ChainCase::ValleyO { .. } => Family::O,
            ChainCase::ValleyPeakO { .. } => match (unique(Mood::E)?, unique(Mood::I)?) {
                (false, false) => Family::EI,
                (false, true) => Family::EIConverse,
                (true, false) => Family::EConverseI,
                (true, true) => Family::EConverseIConverse,
            },
            ChainCase::ValleyPeakORepeated { .. } => {
                if unique(Mood::E)? {
                    Family::EConverseExistential
                } else {
                    Family::EExistential
                }
            }
            ChainCase::Unmatched => return None,
        })
    }
}

impl Serialize for Family {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_u8(self.row())
    }
}

/// Number of case-(vi) diagrams over `n` variables.
pub fn phi(n: usize) -> usize {
    if n < 2 {
        0
    } else {
        (n - 1) * (n - 2) / 2
    }
}

/// Number of case-(vii) diagrams over `n` variables.
pub fn psi(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// One link `a_k -- a_(k+1)` of a candidate premise chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Link {
    pub mood: Mood,
    /// `X(a(k+1), a_k)~` instead of `X(a_k, a(k+1))`.
    pub reversed: bool,
}

impl Link {
    pub const ALL: [Link; 8] = [
        Link { mood: Mood::A, reversed: false },
        Link { mood: Mood::A, reversed: true },
        Link { mood: Mood::E, reversed: false },
        Link { mood: Mood::E, reversed: true },
        Link { mood: Mood::I, reversed: false },
        Link { mood: Mood::I, reversed: true },
        Link { mood: Mood::O, reversed: false },
        Link { mood: Mood::O, reversed: true },
    ];

    fn atom(self, k: u32) -> Atom {
        let (x, y) = (TermVariable::canonical(k), TermVariable::canonical(k + 1));
        if self.reversed {
            Atom::new(self.mood, y, x, true)
        } else {
            Atom::new(self.mood, x, y, false)
        }
    }
}

/// A point of the enumeration space: links between consecutive canonical
/// variables, an optional assumption of existence and a conclusion mood
/// (subject `a1`, predicate `an`). For `n = 1` the premise is a single
/// reflexive atom instead.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Candidate {
    pub n: u32,
    pub links: Vec<Link>,
    pub reflexive: Option<Mood>,
    pub insertion: Option<u32>,
    pub conclusion: Mood,
}

impl Candidate {
    pub fn premise_bullets(&self) -> usize {
        self.links.iter().map(|l| l.mood.bullets()).sum::<usize>()
            + self.reflexive.map_or(0, Mood::bullets)
            + usize::from(self.insertion.is_some())
    }

    pub fn premises(&self) -> Word {
        let mut atoms = Vec::with_capacity(self.links.len() + 1);
        if let Some(mood) = self.reflexive {
            atoms.push(Atom::new(mood, TermVariable::canonical(1), TermVariable::canonical(1), false));
        }
        for k in 1..=self.n {
            if self.insertion == Some(k) {
                let v = TermVariable::canonical(k);
                atoms.push(Atom::new(Mood::I, v.clone(), v, false));
            }
            if let Some(link) = self.links.get(k as usize - 1) {
                atoms.push(link.atom(k));
            }
        }
        Word::new(atoms).expect("candidate links compose")
    }

    pub fn syllogism(&self) -> Syllogism {
        let conclusion =
            Proposition::new(self.conclusion, TermVariable::canonical(1), TermVariable::canonical(self.n));
        Syllogism::new(self.premises(), conclusion).expect("at most one assumption of existence")
    }

    /// The same candidate without its assumption of existence.
    pub fn without_insertion(&self) -> Option<Candidate> {
        self.insertion.map(|_| Candidate { insertion: None, ..self.clone() })
    }

    /// Index of the variable asserted inhabited, if any.
    pub fn existential_index(&self) -> Option<u32> {
        match self.reflexive {
            Some(Mood::I) => Some(1),
            _ => self.insertion,
        }
    }
}

/// Size of the candidate space for `n` variables.
pub fn candidate_count(n: usize) -> usize {
    match n {
        0 => 0,
        1 => 16,
        _ => 8usize.pow(n as u32 - 1) * (n + 1) * 4,
    }
}

fn links_from_code(mut code: usize, len: usize) -> Vec<Link> {
    let mut links = Vec::with_capacity(len);
    for _ in 0..len {
        links.push(Link::ALL[code % 8]);
        code /= 8;
    }
    links
}

/// Candidates sharing the link pattern `code`.
fn candidates_for_code(n: usize, code: usize) -> impl Iterator<Item = Candidate> {
    let links = links_from_code(code, n - 1);
    (0..=n as u32).flat_map(move |ins| {
        let links = links.clone();
        Mood::ALL.into_iter().map(move |conclusion| Candidate {
            n: n as u32,
            links: links.clone(),
            reflexive: None,
            insertion: (ins > 0).then_some(ins),
            conclusion,
        })
    })
}

/// Every candidate for `n`, in a fixed order.
pub fn candidates(n: usize) -> Box<dyn Iterator<Item = Candidate>> {
    match n {
        0 => Box::new(std::iter::empty()),
        1 => Box::new(Mood::ALL.into_iter().flat_map(|premise| {
            Mood::ALL.into_iter().map(move |conclusion| Candidate {
                n: 1,
                links: Vec::new(),
                reflexive: Some(premise),
                insertion: None,
                conclusion,
            })
        })),
        _ => Box::new((0..8usize.pow(n as u32 - 1)).flat_map(move |code| candidates_for_code(n, code))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidSyllogism {
    pub premises: Word,
    pub conclusion: Proposition,
    pub family: Family,
    #[serde(skip)]
    pub case: ChainCase,
    pub existential_index: Option<u32>,
    pub mood_figure: Option<MoodFigure>,
}

impl ValidSyllogism {
    pub fn syllogism(&self) -> Syllogism {
        Syllogism::new(self.premises.clone(), self.conclusion.clone()).expect("enumerated syllogisms are well formed")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Enumeration {
    pub n: usize,
    pub total: usize,
    pub per_family: BTreeMap<u8, usize>,
    pub syllogisms: Vec<ValidSyllogism>,
}

impl Enumeration {
    pub fn family(&self, family: Family) -> impl Iterator<Item = &ValidSyllogism> {
        self.syllogisms.iter().filter(move |s| s.family == family)
    }
}

fn accept(candidate: &Candidate) -> Option<ValidSyllogism> {
    if candidate.premise_bullets() != candidate.conclusion.bullets() {
        return None;
    }
    let s = candidate.syllogism();
    let verdict = check_validity(&s);
    if !verdict.valid {
        return None;
    }
    let family = Family::of(&s, verdict.matched_case)?;
    Some(ValidSyllogism {
        mood_figure: mood_and_figure(&s),
        existential_index: candidate.existential_index(),
        family,
        case: verdict.matched_case,
        premises: s.premises,
        conclusion: s.conclusion,
    })
}

pub fn enumerate_valid(n: usize) -> Result<Enumeration, ResourceError> {
    enumerate_valid_with_cap(n, DEFAULT_ENUMERATION_CAP)
}

/// Brute force over the candidate space, keeping what [`check_validity`]
/// accepts. Sorted by family row, then case indices, then premises.
pub fn enumerate_valid_with_cap(n: usize, cap: usize) -> Result<Enumeration, ResourceError> {
    if n > cap {
        return Err(ResourceError { what: "n", value: n, cap });
    }
    let mut syllogisms: Vec<ValidSyllogism> = if n <= 1 {
        candidates(n).filter_map(|c| accept(&c)).collect()
    } else {
        (0..8usize.pow(n as u32 - 1))
            .into_par_iter()
            .flat_map_iter(|code| candidates_for_code(n, code).filter_map(|c| accept(&c)))
            .collect()
    };
    syllogisms.sort_by(|a, b| {
        (a.family, a.case.indices(), &a.premises).cmp(&(b.family, b.case.indices(), &b.premises))
    });
    let mut per_family = BTreeMap::new();
    for s in &syllogisms {
        *per_family.entry(s.family.row()).or_insert(0) += 1;
    }
    Ok(Enumeration { n, total: syllogisms.len(), per_family, syllogisms })
}

/// Distinct premise-chain segment shapes of a link.
const LINK_SHAPES: [Link; 6] = [
    Link { mood: Mood::A, reversed: false },
    Link { mood: Mood::A, reversed: true },
    Link { mood: Mood::E, reversed: false },
    Link { mood: Mood::I, reversed: false },
    Link { mood: Mood::O, reversed: false },
    Link { mood: Mood::O, reversed: true },
];

/// Every distinct premise chain over `a1..an`: one segment shape per link
/// and at most one `I(ai,ai)` insertion.
pub fn premise_chains(n: usize) -> Vec<ChainDiagram> {
    if n == 0 {
        return Vec::new();
    }
    let codes = 6usize.pow(n as u32 - 1);
    (0..codes)
        .into_par_iter()
        .flat_map_iter(|mut code| {
            let links: Vec<Link> = (1..n)
                .map(|_| {
                    let link = LINK_SHAPES[code % 6];
                    code /= 6;
                    link
                })
                .collect();
            (0..=n as u32).filter_map(move |ins| {
                let c = Candidate {
                    n: n as u32,
                    links: links.clone(),
                    reflexive: None,
                    insertion: (ins > 0).then_some(ins),
                    conclusion: Mood::A,
                };
                // a lone variable has no premise chain
                (!c.links.is_empty() || c.insertion.is_some()).then(|| c.premises().chain())
            })
        })
        .collect()
}

#[derive(Clone, Debug, Default)]
pub struct CaseChains {
    pub vi: Vec<ChainDiagram>,
    pub vii: Vec<ChainDiagram>,
}

/// Generates all premise chains and keeps those classified as case (vi)
/// or (vii).
pub fn enumerate_vi_vii(n: usize) -> CaseChains {
    let mut out = CaseChains::default();
    for chain in premise_chains(n) {
        match classify(&chain) {
            ChainCase::ValleyPeakO { .. } => out.vi.push(chain),
            ChainCase::ValleyPeakORepeated { .. } => out.vii.push(chain),
            _ => {}
        }
    }
    out
}
