use class_engine::{
    describes, enumerate, is_left_greedy, simple_framework_of, u_decompositions, u_profile, ClassSpec, Evaluator,
    PropertyFamily,
};
use perm_core::{all_permutations, Permutation};

fn p(s: &str) -> Permutation {
    s.parse().unwrap()
}

fn closure_of_monotone_pair() -> ClassSpec {
    ClassSpec::SubstClosure(Box::new(ClassSpec::downset(&["12", "21"])))
}

#[test]
fn closure_membership_is_separability() {
    // both routes: every simple pattern in {12, 21} vs avoidance of 2413/3142
    let mut closure = Evaluator::new(&closure_of_monotone_pair());
    let b1 = p("2413");
    let b2 = p("3142");
    for n in 1..=8 {
        for q in all_permutations(n) {
            let sep = q.avoids(&b1) && q.avoids(&b2);
            assert_eq!(closure.member(&q), sep, "{q}");
        }
    }
}

#[test]
fn layered_membership_examples() {
    let layered = ClassSpec::Inflation(Box::new(ClassSpec::avoid(&["21"])), Box::new(ClassSpec::avoid(&["12"])));
    assert!(layered.member(&p("21")));
    assert!(!layered.member(&p("231")));
    assert!(layered.member(&p("3215476")));
}

#[test]
fn iterated_inflation_stabilizes_to_the_closure() {
    // the substitution tree of a length-n permutation has depth below n, so
    // the chain C ⊆ C[C] ⊆ … reaches its fixed point, the closure, by depth
    // n-1 on each length
    let c = ClassSpec::downset(&["12", "21"]);
    let n_max = 8;
    let closure_counts = enumerate(&closure_of_monotone_pair(), n_max, false).unwrap().counts;
    let counts_at = |depth: usize| {
        let it = ClassSpec::IteratedInflation(Box::new(c.clone()), depth);
        enumerate(&it, n_max, false).unwrap().counts
    };
    let mut prev = counts_at(1);
    for depth in 2..n_max {
        let cur = counts_at(depth);
        for n in 0..=n_max {
            assert!(prev[n] <= cur[n], "depth {depth} shrank at length {n}");
            if n <= (1 << depth.min(4)) && depth >= n.saturating_sub(1) {
                assert_eq!(cur[n], closure_counts[n], "depth {depth}, length {n}");
            }
        }
        prev = cur;
    }
    assert_eq!(counts_at(n_max - 1), closure_counts);
}

#[test]
fn closures_preserve_simple_permutations() {
    let c = ClassSpec::downset(&["12", "21"]);
    let mut in_c = Evaluator::new(&c);
    let mut in_closure = Evaluator::new(&closure_of_monotone_pair());
    for n in 2..=8 {
        for q in perm_core::simple_permutations(n) {
            assert_eq!(in_c.member(&q), in_closure.member(&q), "{q}");
        }
    }
}

#[test]
fn left_greedy_decomposition_is_unique_in_inflations() {
    // every layered permutation has exactly one left-greedy U-decomposition
    // over its profile
    let u = ClassSpec::avoid(&["12"]);
    let layered = ClassSpec::Inflation(Box::new(ClassSpec::avoid(&["21"])), Box::new(u.clone()));
    let mut member = Evaluator::new(&layered);
    for n in 1..=7 {
        for q in all_permutations(n) {
            if !member.member(&q) {
                continue;
            }
            let profile = u_profile(&q, &u).unwrap();
            let over: Vec<_> =
                u_decompositions(&q, &u).into_iter().filter(|d| d.skeleton == profile).collect();
            let greedy: Vec<_> =
                over.iter().filter(|d| is_left_greedy(d, &u).unwrap()).collect();
            assert_eq!(greedy.len(), 1, "{q}: {over:?}");
        }
    }
}

#[test]
fn inflation_membership_agrees_with_exhaustive_search() {
    let c = ClassSpec::avoid(&["21"]);
    let u = ClassSpec::avoid(&["12"]);
    let inflation = ClassSpec::Inflation(Box::new(c.clone()), Box::new(u.clone()));
    let mut member = Evaluator::new(&inflation);
    let mut in_c = Evaluator::new(&c);
    for n in 1..=9 {
        for q in all_permutations(n) {
            let direct = u_decompositions(&q, &u).iter().any(|d| in_c.member(&d.skeleton));
            assert_eq!(member.member(&q), direct, "{q}");
        }
    }
}

#[test]
fn every_permutation_matches_its_own_framework() {
    let fam = PropertyFamily::p_b(&[p("2413")]);
    for n in 2..=8 {
        for q in all_permutations(n) {
            let f = simple_framework_of(&q, &fam).unwrap();
            assert!(describes(&f, &q, &fam), "{q}");
        }
    }
}
