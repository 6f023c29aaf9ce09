use std::collections::BTreeSet;

use crate::alternations::parallel_alternations;
use crate::perm::{all_permutations, Permutation};

/// Simple permutations of each length 0..=max_len.
///
/// Grown by one-point extensions: a simple permutation that is not a parallel
/// alternation contains a simple permutation one shorter, so extending the
/// previous generation and adding the parallel alternations of the new length
/// is exhaustive.
pub fn simple_permutations_up_to(max_len: usize) -> Vec<Vec<Permutation>> {
    let mut by_len: Vec<Vec<Permutation>> = vec![Vec::new(); max_len + 1];
    if max_len >= 2 {
        by_len[2] = vec![Permutation::identity(2), Permutation::decreasing(2)];
    }
    for n in 3..=max_len {
        let mut candidates: BTreeSet<Permutation> = parallel_alternations(n).into_iter().collect();
        for q in &by_len[n - 1] {
            candidates.extend(q.one_point_extensions());
        }
        by_len[n] = candidates.into_iter().filter(Permutation::is_simple).collect();
    }
    by_len
}

pub fn simple_permutations(n: usize) -> Vec<Permutation> {
    simple_permutations_up_to(n).pop().unwrap_or_default()
}

/// Filter of the full symmetric group; the independent oracle for the
/// extension-based generator.
pub fn simple_permutations_brute_force(n: usize) -> Vec<Permutation> {
    all_permutations(n).into_iter().filter(Permutation::is_simple).collect()
}
