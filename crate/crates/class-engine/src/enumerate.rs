use perm_core::{all_permutations, Permutation};

use crate::spec::{ClassSpec, Evaluator};
use crate::ClassError;

/// Hard cap on the length of factorial-scale oracles.
pub const FACTORIAL_CAP: usize = 12;
/// Hard cap on class enumeration length.
pub const ENUMERATION_CAP: usize = 16;

#[derive(Clone, Debug)]
pub struct Enumeration {
    /// counts[n] = number of members of length n, for n = 0..=n_max
    pub counts: Vec<u64>,
    /// members by length when requested
    pub members: Option<Vec<Vec<Permutation>>>,
}

impl Enumeration {
    /// Counts for lengths 1..=n_max, the usual report form.
    pub fn positive_counts(&self) -> &[u64] {
        &self.counts[1..]
    }
}

/// Exact counts by the insert-maximum generation tree: every member of
/// length n arises from exactly one member of length n-1 by inserting a new
/// maximum, because deleting the maximum of a member stays in the class.
pub fn enumerate(spec: &ClassSpec, n_max: usize, collect_members: bool) -> Result<Enumeration, ClassError> {
    if n_max > ENUMERATION_CAP {
        return Err(ClassError::ResourceLimit { length: ENUMERATION_CAP + 1 });
    }
    let mut eval = Evaluator::new(spec);
    let mut counts = vec![1u64];
    let mut members: Vec<Vec<Permutation>> = vec![vec![Permutation::empty()]];
    let mut level = vec![Permutation::one()];
    level.retain(|q| eval.member(q));
    for n in 1..=n_max {
        counts.push(level.len() as u64);
        let next = if n < n_max {
            let mut next = Vec::new();
            for q in &level {
                for pos in 1..=n + 1 {
                    let cand = q.insert_max(pos);
                    if eval.member(&cand) {
                        next.push(cand);
                    }
                }
            }
            next.sort();
            next
        } else {
            Vec::new()
        };
        if collect_members {
            let mut done = std::mem::replace(&mut level, next);
            done.sort();
            members.push(done);
        } else {
            level = next;
        }
    }
    Ok(Enumeration { counts, members: collect_members.then_some(members) })
}

/// The filter-everything oracle for cross-checking `enumerate`.
pub fn enumerate_naive(spec: &ClassSpec, n_max: usize) -> Result<Vec<u64>, ClassError> {
    if n_max > 9 {
        return Err(ClassError::ResourceLimit { length: 10 });
    }
    let mut eval = Evaluator::new(spec);
    let mut counts = vec![1u64];
    for n in 1..=n_max {
        counts.push(all_permutations(n).iter().filter(|q| eval.member(q)).count() as u64);
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monotone_class() {
        let e = enumerate(&ClassSpec::avoid(&["21"]), 7, false).unwrap();
        assert_eq!(e.positive_counts(), &[1, 1, 1, 1, 1, 1, 1]);
    }

    #[test]
    fn separable_counts() {
        // the substitution closure of {12, 21} is Av(2413, 3142)
        let closure = ClassSpec::SubstClosure(Box::new(ClassSpec::downset(&["12", "21"])));
        let e = enumerate(&closure, 7, false).unwrap();
        assert_eq!(e.positive_counts(), &[1, 2, 6, 22, 90, 394, 1806]);
        let direct = enumerate_naive(&ClassSpec::avoid(&["2413", "3142"]), 7).unwrap();
        assert_eq!(e.counts, direct);
    }

    #[test]
    fn layered_counts() {
        let layered =
            ClassSpec::Inflation(Box::new(ClassSpec::avoid(&["21"])), Box::new(ClassSpec::avoid(&["12"])));
        let e = enumerate(&layered, 6, true).unwrap();
        assert_eq!(e.positive_counts(), &[1, 2, 4, 8, 16, 32]);
        let members = e.members.unwrap();
        assert!(members[3].contains(&"132".parse().unwrap()));
        assert_eq!(enumerate_naive(&layered, 6).unwrap()[1..], [1, 2, 4, 8, 16, 32]);
    }

    #[test]
    fn caps_are_enforced() {
        assert!(matches!(
            enumerate(&ClassSpec::universe(), 17, false),
            Err(ClassError::ResourceLimit { .. })
        ));
        assert!(enumerate_naive(&ClassSpec::universe(), 10).is_err());
    }
}
