use std::collections::BTreeSet;

use crate::perm::Permutation;

/// Canonical shape: a vertical split with both sides increasing whose value
/// sets alternate between the sides.  Every parallel alternation is a
/// symmetry image of this shape.
fn is_canonical(p: &Permutation) -> bool {
    let n = p.len();
    if n == 1 {
        return true;
    }
    'split: for cut in 1..n {
        let left = &p.values()[..cut];
        let right = &p.values()[cut..];
        if left.windows(2).any(|w| w[0] > w[1]) || right.windows(2).any(|w| w[0] > w[1]) {
            continue;
        }
        // side of each value, in value order, must alternate
        let mut side = vec![false; n + 1];
        for &v in left {
            side[v as usize] = true;
        }
        for v in 2..=n {
            if side[v] == side[v - 1] {
                continue 'split;
            }
        }
        return true;
    }
    false
}

/// A permutation whose plot splits along one horizontal or vertical line into
/// two parts, both increasing or both decreasing, every same-side pair
/// separated by a point of the other side.
pub fn is_parallel_alternation(p: &Permutation) -> bool {
    if p.is_empty() {
        return false;
    }
    p.symmetries().iter().any(is_canonical)
}

/// All parallel alternations of length n, in lexicographic order.
pub fn parallel_alternations(n: usize) -> Vec<Permutation> {
    let mut out = BTreeSet::new();
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![Permutation::one()];
    }
    // canonical representatives: split sizes (p, q) with |p - q| ≤ 1 and the
    // forced value alternation; symmetries supply the other orientations
    let mut canonical = Vec::new();
    for first_left in [true, false] {
        let (mut lv, mut rv) = (Vec::new(), Vec::new());
        let mut to_left = first_left;
        for v in 1..=n as u32 {
            if to_left {
                lv.push(v);
            } else {
                rv.push(v);
            }
            to_left = !to_left;
        }
        if !lv.is_empty() && !rv.is_empty() {
            let mut vals = lv;
            vals.extend(rv);
            canonical.push(Permutation::new(vals).unwrap());
        }
    }
    for c in canonical {
        for s in c.symmetries() {
            out.insert(s);
        }
    }
    out.into_iter().collect()
}

/// The simple parallel alternations of length n, in lexicographic order.
pub fn simple_parallel_alternations(n: usize) -> Vec<Permutation> {
    parallel_alternations(n).into_iter().filter(|p| p.is_simple()).collect()
}

/// Count of simple parallel alternations of length n, with the explicit list.
pub fn parallel_alternation_census(n: usize) -> (usize, Vec<Permutation>) {
    let list = simple_parallel_alternations(n);
    (list.len(), list)
}
