//! Permutations in one-line notation and the combinatorics built directly on
//! them: pattern containment, intervals, the substitution decomposition,
//! simple permutations, parallel alternations, oscillations, and the
//! increasing oscillating antichain.
//!
//! Everything here is a pure function on immutable values; there is no shared
//! state and all types are `Send + Sync`.

mod alternations;
mod decompose;
mod oscillations;
mod perm;
mod simples;

pub use alternations::{
    is_parallel_alternation, parallel_alternation_census, parallel_alternations, simple_parallel_alternations,
};
pub use decompose::{inflate, substitution_decompose, Decomposition};
pub use oscillations::{
    antichain_element, increasing_oscillating_sequence, increasing_oscillation, increasing_oscillations,
    oscillation_census, oscillations,
};
pub use perm::{all_permutations, PermError, Permutation};
pub use simples::{simple_permutations, simple_permutations_brute_force, simple_permutations_up_to};
