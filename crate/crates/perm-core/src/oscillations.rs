use std::collections::BTreeSet;

use crate::decompose::inflate;
use crate::perm::Permutation;

/// Prefix of the increasing oscillating sequence 4, 1, 6, 3, 8, 5, …, which
/// contains every positive integer except 2.
pub fn increasing_oscillating_sequence(len: usize) -> Vec<u32> {
    (1..=len as u32).map(|j| if j % 2 == 1 { j + 3 } else { j - 1 }).collect()
}

/// All sum indecomposable length-n patterns of the increasing oscillating
/// sequence.  Brute force over subsequences of a prefix; the prefix length
/// carries enough slack that the answer is stable (checked in tests).
pub fn increasing_oscillations(n: usize) -> BTreeSet<Permutation> {
    increasing_oscillations_with_margin(n, 6)
}

fn increasing_oscillations_with_margin(n: usize, margin: usize) -> BTreeSet<Permutation> {
    let mut out = BTreeSet::new();
    if n == 0 {
        return out;
    }
    let omega = increasing_oscillating_sequence(2 * n + margin);
    let mut patterns = BTreeSet::new();
    let mut chosen: Vec<u32> = Vec::with_capacity(n);
    fn rec(omega: &[u32], n: usize, start: usize, chosen: &mut Vec<u32>, patterns: &mut BTreeSet<Permutation>) {
        if chosen.len() == n {
            patterns.insert(Permutation::pattern_of(chosen));
            return;
        }
        let needed = n - chosen.len();
        for i in start..omega.len() {
            if omega.len() - i < needed {
                break;
            }
            chosen.push(omega[i]);
            rec(omega, n, i + 1, chosen, patterns);
            chosen.pop();
        }
    }
    rec(&omega, n, 0, &mut chosen, &mut patterns);
    for q in patterns {
        if q.len() == 1 || !q.is_sum_decomposable() {
            out.insert(q);
        }
    }
    out
}

/// All oscillations (increasing and decreasing) of length n, sorted.
pub fn oscillations(n: usize) -> Vec<Permutation> {
    let inc = increasing_oscillations(n);
    let mut all: BTreeSet<Permutation> = inc.iter().map(|q| q.reverse()).collect();
    all.extend(inc);
    all.into_iter().collect()
}

pub fn oscillation_census(n: usize) -> usize {
    oscillations(n).len()
}

/// The canonical increasing oscillation of length n.  For odd lengths this is
/// the orientation used by the antichain construction (2 4 1 6 3 … with the
/// greatest entry second to last); for even lengths it is the pattern of the
/// prefix of the oscillating sequence.
pub fn increasing_oscillation(n: usize) -> Permutation {
    assert!(n >= 1);
    match n {
        1 => return Permutation::one(),
        2 => return Permutation::decreasing(2),
        _ => {}
    }
    if n % 2 == 1 {
        let k = n / 2;
        let mut v = vec![2u32];
        for i in 1..k {
            v.push(2 * i as u32 + 2);
            v.push(2 * i as u32 - 1);
        }
        v.push(2 * k as u32 + 1);
        v.push(2 * k as u32 - 1);
        Permutation::new(v).expect("oscillation construction")
    } else {
        Permutation::pattern_of(&increasing_oscillating_sequence(n))
    }
}

/// The k-th member of the increasing oscillating antichain: the odd
/// increasing oscillation of length 2k+1 with its first and greatest entries
/// inflated by 12.
pub fn antichain_element(k: usize) -> Permutation {
    assert!(k >= 1);
    let osc = increasing_oscillation(2 * k + 1);
    let max_pos = osc
        .values()
        .iter()
        .position(|&v| v == osc.len() as u32)
        .expect("nonempty");
    let blocks: Vec<Permutation> = (0..osc.len())
        .map(|i| {
            if i == 0 || i == max_pos {
                Permutation::identity(2)
            } else {
                Permutation::one()
            }
        })
        .collect();
    inflate(&osc, &blocks).expect("arity matches")
}
