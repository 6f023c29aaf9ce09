use std::collections::BTreeMap;

use lang_automata::RationalGf;

use class_engine::{PropertyFamily, PropertySet};

use crate::GfError;

/// From at-least counts to exact counts: g_Q is the alternating sum of f_R
/// over the supersets R of Q within the family.
pub fn inclusion_exclusion(
    fam: &PropertyFamily,
    at_least: &BTreeMap<PropertySet, RationalGf>,
    q: &PropertySet,
) -> Result<RationalGf, GfError> {
    let full = fam.full_set();
    if !q.is_subset_of(&full) {
        return Err(GfError::MissingVariable(fam.format_set(q)));
    }
    let complement = full.0 & !q.0;
    let mut acc = RationalGf::zero();
    // iterate the submasks of the complement
    let mut extra = complement;
    loop {
        let r = PropertySet(q.0 | extra);
        let f_r = at_least
            .get(&r)
            .ok_or_else(|| GfError::MissingVariable(fam.format_set(&r)))?;
        if extra.count_ones() % 2 == 0 {
            acc = acc.add(f_r);
        } else {
            acc = acc.sub(f_r);
        }
        if extra == 0 {
            break;
        }
        extra = (extra - 1) & complement;
    }
    Ok(acc)
}

/// The Möbius inverse direction: summing the exact counts over supersets
/// recovers the at-least count.
pub fn sum_over_supersets(
    fam: &PropertyFamily,
    exact: &BTreeMap<PropertySet, RationalGf>,
    q: &PropertySet,
) -> Result<RationalGf, GfError> {
    let full = fam.full_set();
    let complement = full.0 & !q.0;
    let mut acc = RationalGf::zero();
    let mut extra = complement;
    loop {
        let r = PropertySet(q.0 | extra);
        let g_r = exact.get(&r).ok_or_else(|| GfError::MissingVariable(fam.format_set(&r)))?;
        acc = acc.add(g_r);
        if extra == 0 {
            break;
        }
        extra = (extra - 1) & complement;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use lang_automata::Polynomial;

    fn rational(num: &[i64], den: &[i64]) -> RationalGf {
        RationalGf::new(Polynomial::from_i64(num), Polynomial::from_i64(den)).unwrap()
    }

    #[test]
    fn indecomposables_of_the_increasing_class() {
        // over {D+, D-} inside Av(21): total x/(1-x), sum-decomposable
        // x^2/(1-x), nothing skew decomposable; the exact count of doubly
        // indecomposable members is the single point
        let fam = PropertyFamily::p_b(&[]);
        let empty = PropertySet::EMPTY;
        let dp = empty.with(fam.index_of(&class_engine::Property::SumDecomposable).unwrap());
        let dm = empty.with(fam.index_of(&class_engine::Property::SkewDecomposable).unwrap());
        let both = PropertySet(dp.0 | dm.0);
        let mut at_least = BTreeMap::new();
        at_least.insert(empty, rational(&[0, 1], &[1, -1]));
        at_least.insert(dp, rational(&[0, 0, 1], &[1, -1]));
        at_least.insert(dm, RationalGf::zero());
        at_least.insert(both, RationalGf::zero());
        let g_empty = inclusion_exclusion(&fam, &at_least, &empty).unwrap();
        assert_eq!(g_empty, rational(&[0, 1], &[1]));
        // Q = full family: empty alternating tail
        assert_eq!(inclusion_exclusion(&fam, &at_least, &both).unwrap(), RationalGf::zero());
    }

    #[test]
    fn moebius_round_trip() {
        let fam = PropertyFamily::p_b(&[]);
        let full = fam.full_set();
        // arbitrary polynomial data on every subset
        let mut at_least = BTreeMap::new();
        let mut bump = 1i64;
        let mut mask = 0u64;
        loop {
            at_least.insert(PropertySet(mask), rational(&[bump, bump + 1], &[1]));
            bump += 2;
            if mask == full.0 {
                break;
            }
            mask += 1;
        }
        let mut exact = BTreeMap::new();
        for (&q, _) in &at_least {
            exact.insert(q, inclusion_exclusion(&fam, &at_least, &q).unwrap());
        }
        for (&q, f) in &at_least {
            let back = sum_over_supersets(&fam, &exact, &q).unwrap();
            assert_eq!(&back, f);
        }
    }

    #[test]
    fn missing_superset_is_an_error() {
        let fam = PropertyFamily::p_b(&[]);
        let at_least = BTreeMap::new();
        assert!(matches!(
            inclusion_exclusion(&fam, &at_least, &PropertySet::EMPTY),
            Err(GfError::MissingVariable(_))
        ));
    }
}
