use std::collections::{BTreeSet, HashMap};
use std::fmt;

use perm_core::{all_permutations, Permutation};

/// A property a permutation may satisfy.  Avoidance properties are downward
/// closed; the decomposability properties drive the skeleton cases of the
/// combination rules.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Property {
    SumDecomposable,
    SkewDecomposable,
    Avoids(Permutation),
    FirstComponentAvoids(Permutation),
}

impl Property {
    pub fn holds_for(&self, perm: &Permutation) -> bool {
        match self {
            Property::SumDecomposable => perm.is_sum_decomposable(),
            Property::SkewDecomposable => perm.is_skew_decomposable(),
            Property::Avoids(delta) => perm.avoids(delta),
            Property::FirstComponentAvoids(delta) => perm.first_component().avoids(delta),
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Property::SumDecomposable => write!(f, "D+"),
            Property::SkewDecomposable => write!(f, "D-"),
            Property::Avoids(d) => write!(f, "Av({d})"),
            Property::FirstComponentAvoids(d) => write!(f, "Av#1({d})"),
        }
    }
}

impl fmt::Debug for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// An ordered, deduplicated list of properties; sets over it are bitmasks.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PropertyFamily {
    props: Vec<Property>,
}

/// A subset of a property family, as a bitmask in the family's order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PropertySet(pub u64);

impl PropertySet {
    pub const EMPTY: PropertySet = PropertySet(0);

    pub fn contains(&self, bit: usize) -> bool {
        self.0 >> bit & 1 == 1
    }

    pub fn with(&self, bit: usize) -> PropertySet {
        PropertySet(self.0 | 1 << bit)
    }

    pub fn is_subset_of(&self, other: &PropertySet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }
}

fn downward_closure(basis: &[Permutation]) -> Vec<Permutation> {
    let mut all: BTreeSet<Permutation> = BTreeSet::new();
    for beta in basis {
        for q in beta.all_patterns() {
            if !q.is_empty() {
                all.insert(q);
            }
        }
    }
    let mut v: Vec<Permutation> = all.into_iter().collect();
    v.sort_by(|a, b| (a.len(), a.values()).cmp(&(b.len(), b.values())));
    v
}

impl PropertyFamily {
    fn from_props(mut props: Vec<Property>) -> PropertyFamily {
        let mut seen = BTreeSet::new();
        props.retain(|p| seen.insert(p.clone()));
        assert!(props.len() <= 64, "property families are bitmask-sized");
        PropertyFamily { props }
    }

    /// P_B: sum and skew decomposability together with Av(δ) for every
    /// nonempty δ contained in a basis element.
    pub fn p_b(basis: &[Permutation]) -> PropertyFamily {
        let mut props = vec![Property::SumDecomposable, Property::SkewDecomposable];
        props.extend(downward_closure(basis).into_iter().map(Property::Avoids));
        PropertyFamily::from_props(props)
    }

    /// The extension of P_B by the first-component avoidance properties.
    pub fn p_b_extended(basis: &[Permutation]) -> PropertyFamily {
        let mut props = vec![Property::SumDecomposable, Property::SkewDecomposable];
        let closure = downward_closure(basis);
        props.extend(closure.iter().cloned().map(Property::Avoids));
        props.extend(closure.into_iter().map(Property::FirstComponentAvoids));
        PropertyFamily::from_props(props)
    }

    /// Add Av(21) and Av(12), the extension used by the closure systems.
    pub fn with_monotone(self) -> PropertyFamily {
        let mut props = self.props;
        props.push(Property::Avoids(Permutation::decreasing(2)));
        props.push(Property::Avoids(Permutation::identity(2)));
        PropertyFamily::from_props(props)
    }

    pub fn len(&self) -> usize {
        self.props.len()
    }

    pub fn is_empty(&self) -> bool {
        self.props.is_empty()
    }

    pub fn props(&self) -> &[Property] {
        &self.props
    }

    pub fn index_of(&self, p: &Property) -> Option<usize> {
        self.props.iter().position(|q| q == p)
    }

    pub fn full_set(&self) -> PropertySet {
        PropertySet(if self.props.len() == 64 { u64::MAX } else { (1 << self.props.len()) - 1 })
    }

    /// The collection of properties in the family satisfied by `perm`.
    pub fn profile(&self, perm: &Permutation) -> PropertySet {
        let mut set = PropertySet::EMPTY;
        for (i, p) in self.props.iter().enumerate() {
            if p.holds_for(perm) {
                set = set.with(i);
            }
        }
        set
    }

    /// The profile of the length-one permutation: all avoidance properties
    /// except Av(1), plus their first-component twins.
    pub fn q_bullet(&self) -> PropertySet {
        self.profile(&Permutation::one())
    }

    pub fn format_set(&self, set: &PropertySet) -> String {
        let names: Vec<String> = self
            .props
            .iter()
            .enumerate()
            .filter(|&(i, _)| set.contains(i))
            .map(|(_, p)| p.to_string())
            .collect();
        format!("{{{}}}", names.join(","))
    }

    /// All subsets of the family, in mask order.
    pub fn all_subsets(&self) -> impl Iterator<Item = PropertySet> {
        (0..(1u64 << self.props.len())).map(PropertySet)
    }
}

/// Which profiles are realized by small permutations, and by which smallest
/// witness.  Frameworks check their cells against this; profiles with no
/// witness up to the catalogue length are indeterminate rather than assumed
/// empty.
#[derive(Clone, Debug)]
pub struct ProfileCatalogue {
    pub max_len: usize,
    witnesses: HashMap<PropertySet, Permutation>,
}

impl ProfileCatalogue {
    pub fn build(family: &PropertyFamily, max_len: usize) -> ProfileCatalogue {
        let mut witnesses = HashMap::new();
        for n in 1..=max_len {
            for q in all_permutations(n) {
                witnesses.entry(family.profile(&q)).or_insert(q);
            }
        }
        ProfileCatalogue { max_len, witnesses }
    }

    pub fn witness(&self, set: &PropertySet) -> Option<&Permutation> {
        self.witnesses.get(set)
    }

    pub fn is_realizable(&self, set: &PropertySet) -> bool {
        self.witnesses.contains_key(set)
    }

    pub fn realizable_profiles(&self) -> Vec<PropertySet> {
        let mut v: Vec<PropertySet> = self.witnesses.keys().copied().collect();
        v.sort();
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn p_b_contents() {
        let fam = PropertyFamily::p_b(&[p("2413")]);
        // D+, D-, and Av(δ) for the 8 nonempty patterns of 2413
        assert_eq!(fam.len(), 10);
        assert!(fam.index_of(&Property::Avoids(p("132"))).is_some());
        assert!(fam.index_of(&Property::Avoids(p("123"))).is_none());
        let ext = PropertyFamily::p_b_extended(&[p("2413")]);
        assert_eq!(ext.len(), 18);
    }

    #[test]
    fn profiles() {
        let fam = PropertyFamily::p_b(&[p("2413")]).with_monotone();
        let q1 = fam.profile(&p("1"));
        assert_eq!(q1, fam.q_bullet());
        // the only permutation with profile Q• is 1
        for n in 1..=5 {
            for q in all_permutations(n) {
                assert_eq!(fam.profile(&q) == fam.q_bullet(), q == p("1"), "{q}");
            }
        }
        let q12 = fam.profile(&p("12"));
        assert!(q12.contains(fam.index_of(&Property::SumDecomposable).unwrap()));
        assert!(!q12.contains(fam.index_of(&Property::SkewDecomposable).unwrap()));
    }

    #[test]
    fn first_component_property() {
        let fam = PropertyFamily::p_b_extended(&[p("12")]);
        let idx = fam.index_of(&Property::FirstComponentAvoids(p("12"))).unwrap();
        // the first component of 12345 is 1, which avoids 12
        assert!(fam.profile(&p("12345")).contains(idx));
        assert!(!fam.profile(&p("123")).contains(fam.index_of(&Property::Avoids(p("12"))).unwrap()));
    }

    #[test]
    fn catalogue_has_witnesses() {
        let fam = PropertyFamily::p_b(&[p("12")]).with_monotone();
        let cat = ProfileCatalogue::build(&fam, 5);
        assert!(cat.is_realizable(&fam.q_bullet()));
        assert_eq!(cat.witness(&fam.q_bullet()), Some(&p("1")));
        for set in cat.realizable_profiles() {
            let w = cat.witness(&set).unwrap();
            assert_eq!(fam.profile(w), set);
        }
    }
}
