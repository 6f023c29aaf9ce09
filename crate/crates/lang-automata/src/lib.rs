//! Finite-automaton algebra over arbitrary finite alphabets, plus the exact
//! generating-function side: boolean operations, canonical minimization,
//! letter homomorphisms in both directions, subword closure, oracle learning
//! of subword-closed languages, and transfer-matrix rational series over
//! arbitrary-precision arithmetic.
//!
//! Automata are immutable after construction; every operation builds a new
//! value.

use thiserror::Error;

mod dfa;
pub mod format;
mod gf;
mod learn;
mod nfa;
mod ratfun;

pub use dfa::{Dfa, Letter};
pub use gf::{gf_of_dfa, weighted_gf};
pub use learn::{is_subword, learn_subword_closed, subword_avoidance_dfa};
pub use nfa::{hom_image, inverse_hom, subword_closure, Nfa};
pub use ratfun::{Polynomial, RationalGf};

#[derive(Debug, Error)]
pub enum AutomatonError {
    #[error("automata are over different alphabets")]
    AlphabetMismatch,
    #[error("malformed automaton: {0}")]
    Malformed(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("power series undefined: denominator vanishes at 0")]
    PoleAtZero,
    #[error("series has non-integer coefficients")]
    NonIntegerSeries,
    #[error("letter weight {0} has a nonzero constant term")]
    NonzeroConstantWeight(String),
    #[error("linear system is singular")]
    SingularSystem,
    #[error("oracle is not subword closed: accepts {word} but rejects its subword {subword}")]
    NotSubwordClosed { word: String, subword: String },
}
