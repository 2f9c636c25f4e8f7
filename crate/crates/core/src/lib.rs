//! Diagrammatic calculus of n-term syllogisms.
//!
//! Categorical propositions are drawn as small oriented chains
//! (`A: x -> y`, `E: x -> * <- y`, `I: x <- * -> y`, `O: x <- * -> * <- y`).
//! Premises concatenate into one chain, and a syllogism is valid exactly when
//! deleting the pass-through term-variables leaves the conclusion's chain.
//!
//! The crate provides:
//!
//! - [`model`]: propositions, atoms, words and chain diagrams;
//! - [`inference`]: chain reduction, case classification, validity and the
//!   enumeration of all valid n-term syllogisms;
//! - [`polygraph`]: the same calculus as a word-rewriting system, with
//!   derivation traces, a termination audit and critical-pair analysis;
//! - [`semantics`]: a finite set-model oracle used to cross-check the rest;
//! - [`cli`]: the command-line front end used by the `syllogistic` binary.
//!
//! ```
//! use syllogistic::inference::{check_validity, Syllogism};
//!
//! let barbara = Syllogism::parse("A(m,p) # A(s,m) |= A(s,p)").unwrap();
//! assert!(check_validity(&barbara).valid);
//! ```

pub mod cli;
pub mod inference;
pub mod model;
pub mod parse;
pub mod polygraph;
pub mod semantics;

use thiserror::Error;

pub use inference::{check_validity, Syllogism, Verdict};
pub use model::{Atom, ChainDiagram, Mood, Proposition, TermVariable, Word};

/// A configured size limit was exceeded.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{what} = {value} exceeds the cap of {cap} (raise it with --cap)")]
pub struct ResourceError {
    pub what: &'static str,
    pub value: usize,
    pub cap: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] parse::ParseError),
    #[error(transparent)]
    Composition(#[from] model::CompositionError),
    #[error(transparent)]
    Chain(#[from] model::ChainError),
    #[error(transparent)]
    WellFormedness(#[from] inference::WellFormednessError),
    #[error(transparent)]
    Resource(#[from] ResourceError),
    #[error(transparent)]
    Inapplicable(#[from] polygraph::InapplicableError),
    #[error(transparent)]
    Unassigned(#[from] semantics::UnassignedVariableError),
}
