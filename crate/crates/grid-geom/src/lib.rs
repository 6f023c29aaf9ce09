//! Geometric grid classes of permutations: 0/±1 matrices in Cartesian
//! orientation, the word encoding of drawings on the standard figure, exact
//! membership by gridding search, and bounded-certified automata for the
//! encoding languages.

use thiserror::Error;

mod automaton;
mod decode;
mod matrix;
mod member;
mod word;

pub use automaton::{
    normal_form_automaton, simple_encoding_language, subclass_language, Certification, NormalFormAutomaton,
    SubclassLanguage,
};
pub use decode::decode;
pub use matrix::{is_forest, row_column_graph, GridMatrix, RowColumnGraph};
pub use member::{geom_class_members, geom_member, grid_member, lexmin_word};
pub use word::{format_word, parse_word, CellLetter, IndexCorrespondence};

#[derive(Debug, Error)]
pub enum GridError {
    #[error("malformed matrix: {0}")]
    Malformed(String),
    #[error("line {line}: {message}")]
    ParseAt { line: usize, message: String },
    #[error("matrix is not a partial multiplication matrix")]
    NotPartialMultiplication,
    #[error("column and row signs required for word operations")]
    SignsRequired,
    #[error("letter {0} names a zero cell")]
    ZeroCell(CellLetter),
    #[error("encoding certification failed at length {length}")]
    CertificationFailed { length: usize },
    #[error("bound {bound} is smaller than a basis permutation of length {needed}")]
    BoundTooSmall { bound: usize, needed: usize },
    #[error(transparent)]
    Automaton(#[from] lang_automata::AutomatonError),
}
