//! Propositions, atoms, words and their chain diagrams.
//!
//! A [`Word`] is stored in chain order: its first atom is the leftmost
//! segment of the chain diagram. The textual `#` notation prints the atoms
//! the other way round (first premise leftmost), see [`Word::written`].

use std::borrow::Cow;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Serialize, Serializer};
use thiserror::Error;

/// A term-variable. Canonical variables `a1, a2, ...` carry their index and
/// are ordered by it; any other identifier is a named variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TermVariable {
    Canonical(u32),
    Named(Arc<str>),
}

impl TermVariable {
    pub fn canonical(index: u32) -> Self {
        assert!(index >= 1, "canonical variables start at a1");
        TermVariable::Canonical(index)
    }

    /// Builds a variable from an identifier (`[A-Za-z][A-Za-z0-9_]*`).
    /// `a<k>` with `k >= 1` and no leading zero becomes canonical.
    pub fn parse(name: &str) -> Option<Self> {
        let mut chars = name.chars();
        let first = chars.next()?;
        if !first.is_ascii_alphabetic() || !chars.all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return None;
        }
        if let Some(digits) = name.strip_prefix('a') {
            if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) && !digits.starts_with('0') {
                if let Ok(index) = digits.parse::<u32>() {
                    return Some(TermVariable::Canonical(index));
                }
            }
        }
        Some(TermVariable::Named(Arc::from(name)))
    }

    pub fn index(&self) -> Option<u32> {
        match self {
            TermVariable::Canonical(k) => Some(*k),
            TermVariable::Named(_) => None,
        }
    }

    pub fn name(&self) -> Cow<'_, str> {
        match self {
            TermVariable::Canonical(k) => Cow::Owned(format!("a{k}")),
            TermVariable::Named(name) => Cow::Borrowed(name),
        }
    }

    pub fn is_canonical(&self) -> bool {
        matches!(self, TermVariable::Canonical(_))
    }
}

impl fmt::Display for TermVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermVariable::Canonical(k) => write!(f, "a{k}"),
            TermVariable::Named(name) => f.write_str(name),
        }
    }
}

impl Serialize for TermVariable {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Mood {
    A,
    E,
    I,
    O,
}

impl Mood {
    pub const ALL: [Mood; 4] = [Mood::A, Mood::E, Mood::I, Mood::O];

    /// Number of bullets in the diagram of a proposition of this mood.
    pub fn bullets(self) -> usize {
        match self {
            Mood::A => 0,
            Mood::E | Mood::I => 1,
            Mood::O => 2,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Mood::A => 'A',
            Mood::E => 'E',
            Mood::I => 'I',
            Mood::O => 'O',
        }
    }

    pub fn from_letter(c: char) -> Option<Mood> {
        match c {
            'A' => Some(Mood::A),
            'E' => Some(Mood::E),
            'I' => Some(Mood::I),
            'O' => Some(Mood::O),
            _ => None,
        }
    }
}

impl fmt::Display for Mood {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A categorical proposition `X(subject, predicate)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Proposition {
    pub mood: Mood,
    pub subject: TermVariable,
    pub predicate: TermVariable,
}

impl Proposition {
    pub fn new(mood: Mood, subject: TermVariable, predicate: TermVariable) -> Self {
        Proposition { mood, subject, predicate }
    }

    pub fn is_reflexive(&self) -> bool {
        self.subject == self.predicate
    }

    /// The Aristotelian diagram, subject on the left.
    pub fn chain(&self) -> ChainDiagram {
        Atom::plain(self.clone()).chain()
    }

    fn rename(&self, map: &BTreeMap<TermVariable, TermVariable>) -> Proposition {
        Proposition {
            mood: self.mood,
            subject: map.get(&self.subject).cloned().unwrap_or_else(|| self.subject.clone()),
            predicate: map.get(&self.predicate).cloned().unwrap_or_else(|| self.predicate.clone()),
        }
    }
}

impl fmt::Display for Proposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({},{})", self.mood, self.subject, self.predicate)
    }
}

impl Serialize for Proposition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl FromStr for Proposition {
    type Err = crate::parse::ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        crate::parse::parse_proposition(s)
    }
}

/// A generator of the word calculus: an Aristotelian diagram or its dual
/// (mirrored) layout.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub prop: Proposition,
    pub dual: bool,
}

impl Atom {
    pub fn new(mood: Mood, subject: TermVariable, predicate: TermVariable, dual: bool) -> Self {
        Atom { prop: Proposition::new(mood, subject, predicate), dual }
    }

    pub fn plain(prop: Proposition) -> Self {
        Atom { prop, dual: false }
    }

    pub fn mood(&self) -> Mood {
        self.prop.mood
    }

    pub fn dualize(&self) -> Atom {
        Atom { prop: self.prop.clone(), dual: !self.dual }
    }

    pub fn left(&self) -> &TermVariable {
        if self.dual {
            &self.prop.predicate
        } else {
            &self.prop.subject
        }
    }

    pub fn right(&self) -> &TermVariable {
        if self.dual {
            &self.prop.subject
        } else {
            &self.prop.predicate
        }
    }

    pub fn is_reflexive(&self) -> bool {
        self.prop.is_reflexive()
    }

    pub fn chain(&self) -> ChainDiagram {
        let x = Node::Var(self.prop.subject.clone());
        let y = Node::Var(self.prop.predicate.clone());
        use Dir::{Left, Right};
        let (nodes, edges) = match self.prop.mood {
            Mood::A => (vec![x, y], vec![Right]),
            Mood::E => (vec![x, Node::Bullet, y], vec![Right, Left]),
            Mood::I => (vec![x, Node::Bullet, y], vec![Left, Right]),
            Mood::O => (vec![x, Node::Bullet, Node::Bullet, y], vec![Left, Right, Left]),
        };
        let chain = ChainDiagram { nodes, edges };
        if self.dual {
            chain.mirror()
        } else {
            chain
        }
    }

    fn rename(&self, map: &BTreeMap<TermVariable, TermVariable>) -> Atom {
        Atom { prop: self.prop.rename(map), dual: self.dual }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.prop)?;
        if self.dual {
            f.write_str("~")?;
        }
        Ok(())
    }
}

impl Serialize for Atom {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

pub fn chain_of_atom(atom: &Atom) -> ChainDiagram {
    atom.chain()
}

/// Orientation of the edge between two adjacent chain positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dir {
    /// `x -> y`: from the left node to the right node.
    Right,
    /// `x <- y`
    Left,
}

impl Dir {
    fn flip(self) -> Dir {
        match self {
            Dir::Right => Dir::Left,
            Dir::Left => Dir::Right,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    Var(TermVariable),
    Bullet,
}

impl Node {
    pub fn var(&self) -> Option<&TermVariable> {
        match self {
            Node::Var(v) => Some(v),
            Node::Bullet => None,
        }
    }

    pub fn is_bullet(&self) -> bool {
        matches!(self, Node::Bullet)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChainError {
    #[error("a chain needs at least one node")]
    Empty,
    #[error("{nodes} nodes need {} edges, got {edges}", nodes - 1)]
    EdgeCount { nodes: usize, edges: usize },
    #[error("chain endpoint at position {position} is a bullet")]
    BulletEndpoint { position: usize },
    #[error("bullet at position {position} is neither a source nor a sink")]
    BulletPassThrough { position: usize },
    #[error("cannot fuse chains: {left} does not meet {right}")]
    JunctionMismatch { left: TermVariable, right: TermVariable },
    #[error("cannot read chain at token {token}: {message}")]
    Syntax { token: usize, message: String },
}

/// A path-shaped diagram: term-variable occurrences and bullets joined by
/// oriented edges between adjacent positions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChainDiagram {
    nodes: Vec<Node>,
    edges: Vec<Dir>,
}

impl ChainDiagram {
    pub fn new(nodes: Vec<Node>, edges: Vec<Dir>) -> Result<Self, ChainError> {
        if nodes.is_empty() {
            return Err(ChainError::Empty);
        }
        if edges.len() + 1 != nodes.len() {
            return Err(ChainError::EdgeCount { nodes: nodes.len(), edges: edges.len() });
        }
        let last = nodes.len() - 1;
        for position in [0, last] {
            if nodes[position].is_bullet() {
                return Err(ChainError::BulletEndpoint { position });
            }
        }
        for position in 1..last {
            if nodes[position].is_bullet() && edges[position - 1] == edges[position] {
                return Err(ChainError::BulletPassThrough { position });
            }
        }
        Ok(ChainDiagram { nodes, edges })
    }

    /// Single-node chain (the empty concatenation at a variable).
    pub fn point(var: TermVariable) -> Self {
        ChainDiagram { nodes: vec![Node::Var(var)], edges: Vec::new() }
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn edge_dirs(&self) -> &[Dir] {
        &self.edges
    }

    /// Edges as `(from, to)` position pairs.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().enumerate().map(|(k, dir)| match dir {
            Dir::Right => (k, k + 1),
            Dir::Left => (k + 1, k),
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn left(&self) -> &TermVariable {
        self.nodes[0].var().expect("endpoint is a variable")
    }

    pub fn right(&self) -> &TermVariable {
        self.nodes[self.nodes.len() - 1].var().expect("endpoint is a variable")
    }

    pub fn bullet_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.is_bullet()).count()
    }

    pub fn mirror(&self) -> ChainDiagram {
        ChainDiagram {
            nodes: self.nodes.iter().rev().cloned().collect(),
            edges: self.edges.iter().rev().map(|d| d.flip()).collect(),
        }
    }

    /// Fuses `self`'s right endpoint with `other`'s left endpoint.
    pub fn concat(&self, other: &ChainDiagram) -> Result<ChainDiagram, ChainError> {
        if self.right() != other.left() {
            return Err(ChainError::JunctionMismatch {
                left: self.right().clone(),
                right: other.left().clone(),
            });
        }
        let mut nodes = self.nodes.clone();
        nodes.extend(other.nodes[1..].iter().cloned());
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Ok(ChainDiagram { nodes, edges })
    }

    /// An interior variable occurrence with one incoming and one outgoing
    /// edge (`x -> v -> y` or `x <- v <- y`).
    pub fn is_pass_through(&self, position: usize) -> bool {
        position > 0
            && position + 1 < self.nodes.len()
            && !self.nodes[position].is_bullet()
            && self.edges[position - 1] == self.edges[position]
    }

    /// Removes the occurrence at `position`, fusing its two edges.
    /// Caller guarantees [`is_pass_through`](Self::is_pass_through).
    pub(crate) fn delete_occurrence(&self, position: usize) -> ChainDiagram {
        debug_assert!(self.is_pass_through(position));
        let mut nodes = self.nodes.clone();
        nodes.remove(position);
        let mut edges = self.edges.clone();
        edges.remove(position);
        ChainDiagram { nodes, edges }
    }

    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for ChainDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, node) in self.nodes.iter().enumerate() {
            if k > 0 {
                f.write_str(match self.edges[k - 1] {
                    Dir::Right => " -> ",
                    Dir::Left => " <- ",
                })?;
            }
            match node {
                Node::Var(v) => write!(f, "{v}")?,
                Node::Bullet => f.write_str("*")?,
            }
        }
        Ok(())
    }
}

impl Serialize for ChainDiagram {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl FromStr for ChainDiagram {
    type Err = ChainError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut nodes = Vec::new();
        let mut edges = Vec::new();
        for (token, text) in s.split_whitespace().enumerate() {
            if token % 2 == 1 {
                edges.push(match text {
                    "->" => Dir::Right,
                    "<-" => Dir::Left,
                    _ => {
                        return Err(ChainError::Syntax { token, message: format!("expected an arrow, found {text:?}") })
                    }
                });
            } else if text == "*" {
                nodes.push(Node::Bullet);
            } else {
                let var = TermVariable::parse(text).ok_or_else(|| ChainError::Syntax {
                    token,
                    message: format!("expected a variable or `*`, found {text:?}"),
                })?;
                nodes.push(Node::Var(var));
            }
        }
        if nodes.len() == edges.len() && !edges.is_empty() {
            return Err(ChainError::Syntax { token: nodes.len() * 2, message: "chain ends with an arrow".into() });
        }
        ChainDiagram::new(nodes, edges)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompositionError {
    #[error("a word needs at least one atom")]
    Empty,
    #[error("junction {junction}: {left} does not meet {right}")]
    Mismatch { junction: usize, left: TermVariable, right: TermVariable },
}

/// A composable sequence of atoms, in chain order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    atoms: Vec<Atom>,
}

impl Word {
    /// `atoms` in chain order. Junctions are numbered from 1 in that order.
    pub fn new(atoms: Vec<Atom>) -> Result<Self, CompositionError> {
        if atoms.is_empty() {
            return Err(CompositionError::Empty);
        }
        for (k, pair) in atoms.windows(2).enumerate() {
            if pair[0].right() != pair[1].left() {
                return Err(CompositionError::Mismatch {
                    junction: k + 1,
                    left: pair[0].right().clone(),
                    right: pair[1].left().clone(),
                });
            }
        }
        Ok(Word { atoms })
    }

    /// `atoms` in written order (first premise first).
    pub fn from_written(mut atoms: Vec<Atom>) -> Result<Self, CompositionError> {
        atoms.reverse();
        Word::new(atoms)
    }

    pub fn single(atom: Atom) -> Self {
        Word { atoms: vec![atom] }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn left(&self) -> &TermVariable {
        self.atoms[0].left()
    }

    pub fn right(&self) -> &TermVariable {
        self.atoms[self.atoms.len() - 1].right()
    }

    /// Atoms in written order.
    pub fn written(&self) -> impl Iterator<Item = &Atom> {
        self.atoms.iter().rev()
    }

    pub fn dual_count(&self) -> usize {
        self.atoms.iter().filter(|a| a.dual).count()
    }

    pub fn bullet_count(&self) -> usize {
        self.atoms.iter().map(|a| a.mood().bullets()).sum()
    }

    /// Distinct variables in ascending order.
    pub fn variables(&self) -> Vec<TermVariable> {
        let mut vars: Vec<TermVariable> = self
            .atoms
            .iter()
            .flat_map(|a| [a.prop.subject.clone(), a.prop.predicate.clone()])
            .collect();
        vars.sort();
        vars.dedup();
        vars
    }

    /// Variables in order of first occurrence along the chain.
    pub fn variables_by_position(&self) -> Vec<TermVariable> {
        let mut seen = Vec::new();
        for atom in &self.atoms {
            for v in [atom.left(), atom.right()] {
                if !seen.contains(v) {
                    seen.push(v.clone());
                }
            }
        }
        seen
    }

    pub fn is_canonical(&self) -> bool {
        self.atoms.iter().all(|a| a.prop.subject.is_canonical() && a.prop.predicate.is_canonical())
    }

    pub fn chain(&self) -> ChainDiagram {
        chain_of_atoms(&self.atoms).expect("words are composable")
    }

    pub fn rename(&self, map: &BTreeMap<TermVariable, TermVariable>) -> Word {
        Word { atoms: self.atoms.iter().map(|a| a.rename(map)).collect() }
    }

    /// Renames variables to `a1..an` by order of first occurrence along the
    /// chain; returns the word and the `(original, canonical)` mapping.
    pub fn canonicalize(&self) -> (Word, Vec<(TermVariable, TermVariable)>) {
        let mapping: Vec<(TermVariable, TermVariable)> = self
            .variables_by_position()
            .into_iter()
            .enumerate()
            .map(|(k, v)| (v, TermVariable::canonical(k as u32 + 1)))
            .collect();
        let map = mapping.iter().cloned().collect();
        (self.rename(&map), mapping)
    }

    /// Renames variables by rank: the smallest occurring variable becomes
    /// `a1`, the next `a2`, and so on.
    pub fn rank_renamed(&self) -> Word {
        let map = self
            .variables()
            .into_iter()
            .enumerate()
            .map(|(k, v)| (v, TermVariable::canonical(k as u32 + 1)))
            .collect();
        self.rename(&map)
    }

    /// Replaces `len` atoms starting at chain position `position`.
    pub fn splice(&self, position: usize, len: usize, replacement: &[Atom]) -> Result<Word, CompositionError> {
        let mut atoms = Vec::with_capacity(self.atoms.len() - len + replacement.len());
        atoms.extend_from_slice(&self.atoms[..position]);
        atoms.extend_from_slice(replacement);
        atoms.extend_from_slice(&self.atoms[position + len..]);
        Word::new(atoms)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, atom) in self.written().enumerate() {
            if k > 0 {
                f.write_str(" # ")?;
            }
            write!(f, "{atom}")?;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl FromStr for Word {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        crate::parse::parse_word(s)
    }
}

/// Concatenates atom diagrams in chain order.
pub fn chain_of_atoms(atoms: &[Atom]) -> Result<ChainDiagram, CompositionError> {
    let (first, rest) = atoms.split_first().ok_or(CompositionError::Empty)?;
    let mut chain = first.chain();
    for (k, atom) in rest.iter().enumerate() {
        chain = chain.concat(&atom.chain()).map_err(|_| CompositionError::Mismatch {
            junction: k + 1,
            left: chain.right().clone(),
            right: atom.left().clone(),
        })?;
    }
    Ok(chain)
}

pub fn chain_of_word(word: &Word) -> ChainDiagram {
    word.chain()
}

/// Equality up to an order-preserving bijection of the occurring variables.
pub fn alpha_equivalent(w1: &Word, w2: &Word) -> bool {
    w1.len() == w2.len() && w1.variables().len() == w2.variables().len() && w1.rank_renamed() == w2.rank_renamed()
}

/// Equality up to some bijection of the occurring variables, monotone or
/// not. Used to flag joins that only hold under a non-monotone renaming.
pub fn equivalent_under_any_renaming(w1: &Word, w2: &Word) -> bool {
    if w1.len() != w2.len() {
        return false;
    }
    let mut forward: BTreeMap<&TermVariable, &TermVariable> = BTreeMap::new();
    let mut backward: BTreeMap<&TermVariable, &TermVariable> = BTreeMap::new();
    for (a, b) in w1.atoms().iter().zip(w2.atoms()) {
        if a.prop.mood != b.prop.mood || a.dual != b.dual {
            return false;
        }
        for (x, y) in [(&a.prop.subject, &b.prop.subject), (&a.prop.predicate, &b.prop.predicate)] {
            if *forward.entry(x).or_insert(y) != y || *backward.entry(y).or_insert(x) != x {
                return false;
            }
        }
    }
    true
}
