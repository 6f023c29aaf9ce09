use perm_core::{all_permutations, is_parallel_alternation, simple_permutations_up_to, Permutation};

use crate::spec::{ClassSpec, Evaluator};
use crate::ClassError;

#[derive(Clone, Debug)]
pub struct ClosureBasis {
    /// Minimal simple non-members up to the searched length, sorted.
    pub basis: Vec<Permutation>,
    /// How many of them are parallel alternations (at most four can be
    /// minimal).
    pub parallel_alternations: usize,
    pub searched_len: usize,
}

/// The basis of the substitution closure ⟨C⟩ restricted to lengths up to
/// `max_len`: all minimal simple permutations not contained in C.  Results
/// above `max_len` are not claimed complete.
pub fn closure_basis(c: &ClassSpec, max_len: usize) -> Result<ClosureBasis, ClassError> {
    if max_len > 10 {
        return Err(ClassError::ResourceLimit { length: 11 });
    }
    let mut eval = Evaluator::new(c);
    let simples = simple_permutations_up_to(max_len);
    let mut basis = Vec::new();
    for level in &simples {
        for q in level {
            if eval.member(q) {
                continue;
            }
            // minimal: every proper simple subpermutation is a member
            let minimal = q
                .all_patterns()
                .into_iter()
                .filter(|s| s.len() < q.len() && s.is_simple())
                .all(|s| eval.member(&s));
            if minimal {
                basis.push(q.clone());
            }
        }
    }
    basis.sort_by(|a, b| (a.len(), a.values()).cmp(&(b.len(), b.values())));
    let parallel_alternations = basis.iter().filter(|q| is_parallel_alternation(q)).count();
    Ok(ClosureBasis { basis, parallel_alternations, searched_len: max_len })
}

/// Minimal permutations of the ambient class outside D, up to `max_len`:
/// the relative basis of D in the ambient class.
pub fn relative_basis(
    d: &ClassSpec,
    ambient: &ClassSpec,
    max_len: usize,
) -> Result<Vec<Permutation>, ClassError> {
    if max_len > 9 {
        return Err(ClassError::ResourceLimit { length: 10 });
    }
    let mut in_d = Evaluator::new(d);
    let mut in_ambient = Evaluator::new(ambient);
    let mut out = Vec::new();
    for n in 1..=max_len {
        for q in all_permutations(n) {
            if in_d.member(&q) || !in_ambient.member(&q) {
                continue;
            }
            if q.one_point_deletions().iter().all(|s| in_d.member(s)) {
                out.push(q);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn closure_basis_of_the_separables() {
        let got = closure_basis(&ClassSpec::downset(&["12", "21"]), 6).unwrap();
        assert_eq!(got.basis, vec![p("2413"), p("3142")]);
        assert_eq!(got.parallel_alternations, 2);
    }

    #[test]
    fn universal_class_has_no_basis() {
        let got = closure_basis(&ClassSpec::universe(), 7).unwrap();
        assert!(got.basis.is_empty());
    }

    #[test]
    fn returned_elements_are_minimal_simple_non_members() {
        let c = ClassSpec::downset(&["2413"]);
        let got = closure_basis(&c, 6).unwrap();
        let mut eval = Evaluator::new(&c);
        for q in &got.basis {
            assert!(q.is_simple());
            assert!(!eval.member(q));
            for s in q.all_patterns() {
                if s.len() < q.len() && s.is_simple() {
                    assert!(eval.member(&s), "{q} has simple non-member pattern {s}");
                }
            }
        }
    }

    #[test]
    fn relative_bases() {
        assert_eq!(
            relative_basis(&ClassSpec::avoid(&["21"]), &ClassSpec::universe(), 4).unwrap(),
            vec![p("21")]
        );
        let layered =
            ClassSpec::Inflation(Box::new(ClassSpec::avoid(&["21"])), Box::new(ClassSpec::avoid(&["12"])));
        let got = relative_basis(&layered, &ClassSpec::universe(), 4).unwrap();
        assert_eq!(got, vec![p("231"), p("312")]);
        // minimality restated
        let mut in_d = Evaluator::new(&layered);
        for q in &got {
            for s in q.one_point_deletions() {
                assert!(in_d.member(&s));
            }
        }
    }
}
