//! Permutation-class machinery above the raw permutation layer: class
//! expressions with exact membership, enumeration by insertion trees,
//! U-profiles and left-greedy decompositions, substitution-closure bases,
//! query-complete property families, and frameworks.

use thiserror::Error;

mod basis;
mod enumerate;
mod framework;
mod profile;
mod properties;
mod spec;

pub use basis::{closure_basis, relative_basis, ClosureBasis};
pub use enumerate::{enumerate, enumerate_naive, Enumeration, ENUMERATION_CAP, FACTORIAL_CAP};
pub use framework::{
    describes, framework_is_left_greedy, framework_properties, simple_framework_of, simple_frameworks_over,
    threatening_check, Framework,
};
pub use profile::{is_left_greedy, left_greedy, u_decompositions, u_profile};
pub use properties::{ProfileCatalogue, Property, PropertyFamily, PropertySet};
pub use spec::{parse_class_spec, ClassSpec, Evaluator};

#[derive(Debug, Error)]
pub enum ClassError {
    #[error("position {pos}: {message}")]
    ParseAt { pos: usize, message: String },
    #[error("the class does not contain the length-one permutation")]
    PointNotInClass,
    #[error("block {index} lies outside the block class")]
    BlockOutsideClass { index: usize },
    #[error("cell {index} is not realizable by any catalogued permutation")]
    UnrealizableCell { index: usize },
    #[error("skeleton has {skeleton} entries but {cells} cells were given")]
    CellMismatch { skeleton: usize, cells: usize },
    #[error("family is missing the property {0}")]
    MissingProperty(String),
    #[error("resource cap exceeded at length {length}")]
    ResourceLimit { length: usize },
    #[error(transparent)]
    Perm(#[from] perm_core::PermError),
    #[error(transparent)]
    Grid(#[from] grid_geom::GridError),
}
