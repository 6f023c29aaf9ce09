use class_engine::{enumerate, ClassSpec};
use gf_engine::{fit_rational, Series};
use grid_geom::{normal_form_automaton, GridMatrix};
use lang_automata::{weighted_gf, Polynomial, RationalGf};
use num_bigint::BigInt;
use rand::prelude::*;

fn rational(num: &[i64], den: &[i64]) -> RationalGf {
    RationalGf::new(Polynomial::from_i64(num), Polynomial::from_i64(den)).unwrap()
}

/// The layered pipeline in miniature: substituting the decreasing-block
/// generating function into the encoding automaton of the increasing class
/// reproduces the enumeration of inflate(avoid(21), avoid(12)).
#[test]
fn weighted_substitution_matches_layered_enumeration() {
    let single = GridMatrix::new(1, 1, vec![1]).unwrap();
    let nf = normal_form_automaton(&single, 6).unwrap();
    // blocks: nonempty decreasing permutations, one per length
    let block_gf = rational(&[0, 1], &[1, -1]);
    let composed = weighted_gf(&nf.dfa, |_| block_gf.clone()).unwrap();
    assert_eq!(composed, rational(&[1, -1], &[1, -2]));

    let layered =
        ClassSpec::Inflation(Box::new(ClassSpec::avoid(&["21"])), Box::new(ClassSpec::avoid(&["12"])));
    let counts = enumerate(&layered, 10, false).unwrap();
    let series = composed.integer_series(10).unwrap();
    for n in 1..=10 {
        assert_eq!(series[n], BigInt::from(counts.counts[n]), "n={n}");
        assert_eq!(counts.counts[n], 1 << (n - 1), "n={n}");
    }

    // the class series (zero constant term) fits to x/(1-2x)
    let fit = fit_rational(&Series::from_positive_counts(counts.positive_counts()), 3)
        .unwrap()
        .expect("layered counts are rational");
    assert_eq!(fit, rational(&[0, 1], &[1, -2]));
}

#[test]
fn fitter_recovers_random_rational_series() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2026);
    let mut done = 0;
    while done < 100 {
        // random denominator with constant term 1, degree <= 3
        let d = rng.gen_range(0..=3usize);
        let mut den = vec![1i64];
        for _ in 0..d {
            den.push(rng.gen_range(-3..=3));
        }
        let p = rng.gen_range(0..=4usize);
        let mut num = Vec::new();
        for _ in 0..=p {
            num.push(rng.gen_range(-4..=4));
        }
        let gf = rational(&num, &den);
        if gf.is_zero() || gf.denominator().degree().unwrap_or(0) > 3 {
            continue;
        }
        let series = Series::new(gf.integer_series(20).unwrap());
        let fitted = fit_rational(&series, 3).unwrap().expect("rational input must fit");
        assert_eq!(fitted, gf, "series {series}");
        done += 1;
    }
}

#[test]
fn schroeder_prefix_has_no_small_fit() {
    // the separable class is algebraic, not rational; the tail check must
    // refuse every denominator of degree <= 3
    let counts = enumerate(&ClassSpec::avoid(&["2413", "3142"]), 11, false).unwrap();
    let series = Series::from_positive_counts(counts.positive_counts());
    assert_eq!(series.coeffs()[7], BigInt::from(1806));
    assert_eq!(fit_rational(&series, 3).unwrap(), None);
}

#[test]
fn closure_system_with_a_length_four_skeleton() {
    // the closure of {12, 21, 2413}: frameworks now range over a simple
    // skeleton of length four, and the system must still reproduce the
    // enumeration route
    use class_engine::PropertyFamily;
    use gf_engine::{class_series, closure_system, solve_series};

    let c = ClassSpec::downset(&["12", "21", "2413"]);
    let closure = ClassSpec::SubstClosure(Box::new(c.clone()));
    let counts = enumerate(&closure, 8, false).unwrap();

    let sys = closure_system(&c, &PropertyFamily::p_b(&[]), 6, 8).unwrap();
    let sol = solve_series(&sys, 8).unwrap();
    let total = class_series(&sys, &sol, &[], 8).unwrap();
    for n in 1..=8 {
        assert_eq!(total.coeff(n), &BigInt::from(counts.counts[n]), "length {n}");
    }
}

#[test]
fn closure_system_with_an_avoidance_restriction() {
    // summing the solution over property sets containing Av(123) counts the
    // subclass of the closure avoiding 123
    use class_engine::PropertyFamily;
    use gf_engine::{class_series, closure_system, solve_series};
    use perm_core::Permutation;

    let c = ClassSpec::downset(&["12", "21"]);
    let beta: Permutation = "123".parse().unwrap();
    let restricted = ClassSpec::Intersection(
        Box::new(ClassSpec::SubstClosure(Box::new(c.clone()))),
        Box::new(ClassSpec::Avoid(vec![beta.clone()])),
    );
    let counts = enumerate(&restricted, 8, false).unwrap();

    let sys = closure_system(&c, &PropertyFamily::p_b(&[beta.clone()]), 6, 8).unwrap();
    let sol = solve_series(&sys, 8).unwrap();
    let total = class_series(&sys, &sol, &[beta], 8).unwrap();
    for n in 1..=8 {
        assert_eq!(total.coeff(n), &BigInt::from(counts.counts[n]), "length {n}");
    }
}
