use std::collections::BTreeSet;
use std::fmt;

use perm_core::{inflate, substitution_decompose, Permutation};

use crate::properties::{ProfileCatalogue, Property, PropertyFamily, PropertySet};
use crate::spec::{ClassSpec, Evaluator};
use crate::ClassError;

/// A skeleton permutation with one property set per entry.  It describes the
/// permutations obtained by inflating the skeleton with blocks whose profiles
/// are exactly the cell sets.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Framework {
    pub skeleton: Permutation,
    pub cells: Vec<PropertySet>,
}

impl Framework {
    pub fn new(skeleton: Permutation, cells: Vec<PropertySet>) -> Result<Framework, ClassError> {
        if skeleton.len() != cells.len() {
            return Err(ClassError::CellMismatch { skeleton: skeleton.len(), cells: cells.len() });
        }
        Ok(Framework { skeleton, cells })
    }

    pub fn display_with(&self, fam: &PropertyFamily) -> String {
        let cells: Vec<String> = self.cells.iter().map(|c| fam.format_set(c)).collect();
        format!("{}[{}]", self.skeleton, cells.join(","))
    }

    /// A canonical described permutation, built from the smallest witnesses.
    pub fn witness(&self, cat: &ProfileCatalogue) -> Result<Permutation, ClassError> {
        let blocks = self.witness_blocks(cat)?;
        Ok(inflate(&self.skeleton, &blocks)?)
    }

    fn witness_blocks(&self, cat: &ProfileCatalogue) -> Result<Vec<Permutation>, ClassError> {
        self.cells
            .iter()
            .enumerate()
            .map(|(i, q)| cat.witness(q).cloned().ok_or(ClassError::UnrealizableCell { index: i + 1 }))
            .collect()
    }
}

impl fmt::Display for Framework {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.cells.iter().map(|c| format!("{:#x}", c.0)).collect();
        write!(f, "{}[{}]", self.skeleton, cells.join(","))
    }
}

/// The unique simple framework describing a nontrivial permutation: the
/// skeleton of its substitution decomposition with the blocks' profiles.
pub fn simple_framework_of(perm: &Permutation, fam: &PropertyFamily) -> Result<Framework, ClassError> {
    if fam.index_of(&Property::SumDecomposable).is_none() || fam.index_of(&Property::SkewDecomposable).is_none() {
        return Err(ClassError::MissingProperty("D+ and D- are required".into()));
    }
    let d = substitution_decompose(perm)?;
    let cells = d.blocks.iter().map(|b| fam.profile(b)).collect();
    Ok(Framework { skeleton: d.skeleton, cells })
}

/// Does the framework describe the permutation?  Simple frameworks match the
/// canonical decomposition; uniqueness makes this a plain comparison.
pub fn describes(f: &Framework, perm: &Permutation, fam: &PropertyFamily) -> bool {
    perm.len() >= 2 && simple_framework_of(perm, fam).is_ok_and(|g| g == *f)
}

/// Containment combination rule: the described permutations contain δ
/// exactly when δ splits into consecutive segments with uniform pairwise
/// value order, whose quotient embeds in the skeleton with each segment
/// pattern contained in the matching cell.
fn framework_contains(f: &Framework, delta: &Permutation, fam: &PropertyFamily) -> Result<bool, ClassError> {
    let d = delta.len();
    let m = f.skeleton.len();
    if d == 0 {
        return Ok(true);
    }
    // cell contains a nonempty pattern iff the avoidance bit is clear; the
    // length-one pattern is contained in everything
    let cell_contains = |cell: &PropertySet, patt: &Permutation| -> Result<bool, ClassError> {
        if patt.len() == 1 {
            return Ok(true);
        }
        let idx = fam
            .index_of(&Property::Avoids(patt.clone()))
            .ok_or_else(|| ClassError::MissingProperty(format!("Av({patt})")))?;
        Ok(!cell.contains(idx))
    };
    // enumerate segmentations of delta by boundary bitmask
    for cuts in 0..(1u32 << (d - 1)) {
        let mut segs: Vec<(usize, usize)> = Vec::new();
        let mut start = 0usize;
        for i in 0..d {
            if i + 1 == d || cuts >> i & 1 == 1 {
                segs.push((start, i));
                start = i + 1;
            }
        }
        if segs.len() > m {
            continue;
        }
        // pairwise uniform comparability gives a quotient pattern
        let mut reps = Vec::with_capacity(segs.len());
        let mut uniform = true;
        'segpairs: for (a, &(s1, e1)) in segs.iter().enumerate() {
            for &(s2, e2) in &segs[a + 1..] {
                let below = delta.values()[s1..=e1]
                    .iter()
                    .all(|v| delta.values()[s2..=e2].iter().all(|w| v < w));
                let above = delta.values()[s1..=e1]
                    .iter()
                    .all(|v| delta.values()[s2..=e2].iter().all(|w| v > w));
                if !below && !above {
                    uniform = false;
                    break 'segpairs;
                }
            }
            reps.push(delta.values()[s1]);
        }
        if !uniform {
            continue;
        }
        let quotient = Permutation::pattern_of(&reps);
        let seg_patterns: Vec<Permutation> =
            segs.iter().map(|&(s, e)| Permutation::pattern_of(&delta.values()[s..=e])).collect();
        // embed the quotient into the skeleton with cellwise containment
        let found = embed_with_cells(&quotient, f, &seg_patterns, &cell_contains)?;
        if found {
            return Ok(true);
        }
    }
    Ok(false)
}

fn embed_with_cells(
    quotient: &Permutation,
    f: &Framework,
    seg_patterns: &[Permutation],
    cell_contains: &impl Fn(&PropertySet, &Permutation) -> Result<bool, ClassError>,
) -> Result<bool, ClassError> {
    fn rec(
        quotient: &[u32],
        skeleton: &[u32],
        f: &Framework,
        seg_patterns: &[Permutation],
        cell_contains: &impl Fn(&PropertySet, &Permutation) -> Result<bool, ClassError>,
        chosen: &mut Vec<usize>,
        start: usize,
    ) -> Result<bool, ClassError> {
        let k = chosen.len();
        if k == quotient.len() {
            return Ok(true);
        }
        for p in start..skeleton.len() {
            if skeleton.len() - p < quotient.len() - k {
                break;
            }
            let ok_order = chosen
                .iter()
                .enumerate()
                .all(|(j, &q)| (skeleton[q] < skeleton[p]) == (quotient[j] < quotient[k]));
            if !ok_order {
                continue;
            }
            if !cell_contains(&f.cells[p], &seg_patterns[k])? {
                continue;
            }
            chosen.push(p);
            if rec(quotient, skeleton, f, seg_patterns, cell_contains, chosen, p + 1)? {
                return Ok(true);
            }
            chosen.pop();
        }
        Ok(false)
    }
    let mut chosen = Vec::with_capacity(quotient.len());
    rec(quotient.values(), f.skeleton.values(), f, seg_patterns, cell_contains, &mut chosen, 0)
}

/// The common property set of every permutation described by the framework,
/// per the query-complete combination rules.  Every cell must be realizable
/// in the catalogue.
pub fn framework_properties(
    f: &Framework,
    fam: &PropertyFamily,
    cat: &ProfileCatalogue,
) -> Result<PropertySet, ClassError> {
    for (i, cell) in f.cells.iter().enumerate() {
        if !cat.is_realizable(cell) {
            return Err(ClassError::UnrealizableCell { index: i + 1 });
        }
    }
    if f.skeleton.len() == 1 {
        return Ok(f.cells[0]);
    }
    let mut out = PropertySet::EMPTY;
    for (i, prop) in fam.props().iter().enumerate() {
        let holds = match prop {
            Property::SumDecomposable => f.skeleton.is_sum_decomposable(),
            Property::SkewDecomposable => f.skeleton.is_skew_decomposable(),
            Property::Avoids(delta) => !framework_contains(f, delta, fam)?,
            Property::FirstComponentAvoids(delta) => first_component_avoids(f, delta, fam)?,
        };
        if holds {
            out = out.with(i);
        }
    }
    Ok(out)
}

/// The first component of an inflation is the head block's first component
/// when the head of the skeleton is a single entry, and otherwise the
/// inflation of the skeleton's own first component.
fn first_component_avoids(f: &Framework, delta: &Permutation, fam: &PropertyFamily) -> Result<bool, ClassError> {
    let sigma = &f.skeleton;
    let (components, sum_side) = if sigma.is_sum_decomposable() {
        (sigma.sum_components(), true)
    } else if sigma.is_skew_decomposable() {
        (sigma.skew_components(), false)
    } else {
        return Ok(!framework_contains(f, delta, fam)?);
    };
    let tau = &components[0];
    if tau.len() == 1 {
        let cell = &f.cells[0];
        let head_decomposable = if sum_side { Property::SumDecomposable } else { Property::SkewDecomposable };
        let idx_dec = fam
            .index_of(&head_decomposable)
            .ok_or_else(|| ClassError::MissingProperty(head_decomposable.to_string()))?;
        let wanted = if cell.contains(idx_dec) {
            Property::FirstComponentAvoids(delta.clone())
        } else {
            Property::Avoids(delta.clone())
        };
        let idx = fam.index_of(&wanted).ok_or_else(|| ClassError::MissingProperty(wanted.to_string()))?;
        Ok(cell.contains(idx))
    } else {
        let head = Framework::new(tau.clone(), f.cells[..tau.len()].to_vec())?;
        Ok(!framework_contains(&head, delta, fam)?)
    }
}

/// Do all permutations described by the sub-framework on skeleton positions
/// lo..=hi lie in the class?  Evaluated through the smallest witnesses; the
/// family is assumed to separate the class (all-or-none).
fn subframework_in_class(
    f: &Framework,
    lo: usize,
    hi: usize,
    class: &mut Evaluator,
    cat: &ProfileCatalogue,
) -> Result<bool, ClassError> {
    let tau = Permutation::pattern_of(&f.skeleton.values()[lo..=hi]);
    let sub = Framework::new(tau, f.cells[lo..=hi].to_vec())?;
    let w = sub.witness(cat)?;
    Ok(class.member(&w))
}

/// Can the first sum (skew) component of the right cell slide onto the left
/// cell inside the class?  The (G2)/(G3) merge test at framework level.
fn pair_merge_in_class(
    f: &Framework,
    i: usize,
    class: &mut Evaluator,
    fam: &PropertyFamily,
    cat: &ProfileCatalogue,
) -> Result<bool, ClassError> {
    let left = cat.witness(&f.cells[i]).cloned().ok_or(ClassError::UnrealizableCell { index: i + 1 })?;
    let right = cat.witness(&f.cells[i + 1]).cloned().ok_or(ClassError::UnrealizableCell { index: i + 2 })?;
    let _ = fam;
    let ascending = f.skeleton.values()[i] < f.skeleton.values()[i + 1];
    let slide = if ascending {
        left.direct_sum(&right.sum_components()[0])
    } else {
        left.skew_sum(&right.skew_components()[0])
    };
    Ok(class.member(&slide))
}

/// Is a marking of the framework threatening?  Markings with zero, one, or
/// all entries marked are threatening outright; otherwise the marked entries
/// must form an interval of the skeleton that either describes permutations
/// of the class (the merge of several blocks) or, for a pair, admits the
/// first-component slide.
pub fn threatening_check(
    f: &Framework,
    marked: &BTreeSet<usize>,
    u: &ClassSpec,
    fam: &PropertyFamily,
    cat: &ProfileCatalogue,
) -> Result<bool, ClassError> {
    let m = f.skeleton.len();
    let k = marked.len();
    if k <= 1 || k == m {
        return Ok(true);
    }
    let lo = *marked.iter().next().expect("nonempty");
    let hi = *marked.iter().last().expect("nonempty");
    if hi - lo + 1 != k || hi >= m {
        return Ok(false);
    }
    let vals = &f.skeleton.values()[lo..=hi];
    let vmin = *vals.iter().min().expect("nonempty");
    let vmax = *vals.iter().max().expect("nonempty");
    if (vmax - vmin + 1) as usize != k {
        return Ok(false);
    }
    let mut eval = Evaluator::new(u);
    if subframework_in_class(f, lo, hi, &mut eval, cat)? {
        return Ok(true);
    }
    if k == 2 {
        return pair_merge_in_class(f, lo, &mut eval, fam, cat);
    }
    Ok(false)
}

/// Does every U-inflation described by the framework give a left-greedy
/// U-decomposition?  False exactly when some skeleton interval of length at
/// least two merges into the class or admits the pair slide.
pub fn framework_is_left_greedy(
    f: &Framework,
    u: &ClassSpec,
    fam: &PropertyFamily,
    cat: &ProfileCatalogue,
) -> Result<bool, ClassError> {
    let m = f.skeleton.len();
    let mut eval = Evaluator::new(u);
    for i in 0..m {
        let mut lo = f.skeleton.values()[i];
        let mut hi = f.skeleton.values()[i];
        for j in i + 1..m {
            lo = lo.min(f.skeleton.values()[j]);
            hi = hi.max(f.skeleton.values()[j]);
            if (hi - lo + 1) as usize != j - i + 1 {
                continue;
            }
            if subframework_in_class(f, i, j, &mut eval, cat)? {
                return Ok(false);
            }
            if j == i + 1 && pair_merge_in_class(f, i, &mut eval, fam, cat)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// All simple frameworks over the given skeletons with cells drawn from the
/// realizable profiles, honouring the first-cell restriction for skeletons
/// 12 and 21.
pub fn simple_frameworks_over(
    skeletons: &[Permutation],
    fam: &PropertyFamily,
    cat: &ProfileCatalogue,
) -> Vec<Framework> {
    let profiles = cat.realizable_profiles();
    let d_plus = fam.index_of(&Property::SumDecomposable);
    let d_minus = fam.index_of(&Property::SkewDecomposable);
    let mut out = Vec::new();
    for sigma in skeletons {
        if !sigma.is_simple() {
            continue;
        }
        let m = sigma.len();
        let mut cells: Vec<PropertySet> = Vec::with_capacity(m);
        fn rec(
            sigma: &Permutation,
            profiles: &[PropertySet],
            forbidden_first: Option<usize>,
            cells: &mut Vec<PropertySet>,
            out: &mut Vec<Framework>,
        ) {
            if cells.len() == sigma.len() {
                out.push(Framework { skeleton: sigma.clone(), cells: cells.clone() });
                return;
            }
            for q in profiles {
                if cells.is_empty() {
                    if let Some(bit) = forbidden_first {
                        if q.contains(bit) {
                            continue;
                        }
                    }
                }
                cells.push(*q);
                rec(sigma, profiles, forbidden_first, cells, out);
                cells.pop();
            }
        }
        let forbidden_first = if *sigma == Permutation::identity(2) {
            d_plus
        } else if *sigma == Permutation::decreasing(2) {
            d_minus
        } else {
            None
        };
        rec(sigma, &profiles, forbidden_first, &mut cells, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use perm_core::all_permutations;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn simple_framework_of_the_inflation_example() {
        let fam = PropertyFamily::p_b(&[p("2413")]);
        let f = simple_framework_of(&p("479832156"), &fam).unwrap();
        assert_eq!(f.skeleton, p("2413"));
        assert_eq!(f.cells[0], fam.profile(&p("1")));
        assert_eq!(f.cells[1], fam.profile(&p("132")));
        assert_eq!(f.cells[2], fam.profile(&p("321")));
        assert_eq!(f.cells[3], fam.profile(&p("12")));
        assert!(describes(&f, &p("479832156"), &fam));
    }

    #[test]
    fn first_cell_restriction_holds() {
        let fam = PropertyFamily::p_b(&[p("12")]);
        let dp = fam.index_of(&Property::SumDecomposable).unwrap();
        let dm = fam.index_of(&Property::SkewDecomposable).unwrap();
        for n in 2..=6 {
            for q in all_permutations(n) {
                let f = simple_framework_of(&q, &fam).unwrap();
                if f.skeleton == p("12") {
                    assert!(!f.cells[0].contains(dp), "{q}");
                } else if f.skeleton == p("21") {
                    assert!(!f.cells[0].contains(dm), "{q}");
                }
            }
        }
    }

    #[test]
    fn combination_rules_match_direct_profiles() {
        // exhaustive block substitution at small sizes: the framework
        // properties must equal the profile of every inflation realizing it
        let fams = [
            PropertyFamily::p_b(&[p("2413")]).with_monotone(),
            PropertyFamily::p_b_extended(&[p("132")]),
        ];
        let blocks_pool: Vec<Permutation> = (1..=3).flat_map(all_permutations).collect();
        for fam in &fams {
            let cat = ProfileCatalogue::build(fam, 6);
            let skeletons: Vec<Permutation> =
                (2..=3).flat_map(all_permutations).chain([p("2413")]).collect();
            for sigma in &skeletons {
                let m = sigma.len();
                let mut idx = vec![0usize; m];
                loop {
                    let blocks: Vec<Permutation> = idx.iter().map(|&i| blocks_pool[i].clone()).collect();
                    let total: usize = blocks.iter().map(Permutation::len).sum();
                    if total <= 9 {
                        let pi = inflate(sigma, &blocks).unwrap();
                        let cells: Vec<PropertySet> = blocks.iter().map(|b| fam.profile(b)).collect();
                        let f = Framework::new(sigma.clone(), cells).unwrap();
                        let combined = framework_properties(&f, fam, &cat).unwrap();
                        assert_eq!(
                            combined,
                            fam.profile(&pi),
                            "skeleton {sigma}, blocks {blocks:?} -> {pi}: {} vs {}",
                            fam.format_set(&combined),
                            fam.format_set(&fam.profile(&pi)),
                        );
                    }
                    // odometer
                    let mut k = 0;
                    loop {
                        if k == m {
                            break;
                        }
                        idx[k] += 1;
                        if idx[k] < blocks_pool.len() {
                            break;
                        }
                        idx[k] = 0;
                        k += 1;
                    }
                    if k == m {
                        break;
                    }
                }
            }
        }
    }

    #[test]
    fn sums_of_avoiders() {
        // skeleton 12 with both cells avoiding 21 describes increasing
        // permutations only
        let fam = PropertyFamily::p_b(&[p("21")]);
        let cat = ProfileCatalogue::build(&fam, 5);
        let av21 = fam.index_of(&Property::Avoids(p("21"))).unwrap();
        let cell = fam.profile(&p("1")); // avoids 21, indecomposable both ways
        let f = Framework::new(p("12"), vec![cell, cell]).unwrap();
        let props = framework_properties(&f, &fam, &cat).unwrap();
        assert!(props.contains(av21));
    }

    #[test]
    fn witness_check_for_the_skew_pair() {
        // skeleton 21 with both cells containing 12: the combination rule
        // must answer the 2143 question exactly as a witness inflation does
        let fam = PropertyFamily::p_b(&[p("2143")]);
        let cat = ProfileCatalogue::build(&fam, 6);
        let cell = fam.profile(&p("12"));
        let f = Framework::new(p("21"), vec![cell, cell]).unwrap();
        let props = framework_properties(&f, &fam, &cat).unwrap();
        let witness = inflate(&p("21"), &[p("12"), p("12")]).unwrap();
        let av = fam.index_of(&Property::Avoids(p("2143"))).unwrap();
        assert_eq!(props.contains(av), fam.profile(&witness).contains(av));
    }

    #[test]
    fn frameworks_partition_small_permutations() {
        use std::collections::BTreeMap;
        let fam = PropertyFamily::p_b(&[p("2413")]);
        let mut groups: BTreeMap<String, Vec<Permutation>> = BTreeMap::new();
        for n in 2..=8 {
            for q in all_permutations(n) {
                let f = simple_framework_of(&q, &fam).unwrap();
                groups.entry(f.display_with(&fam)).or_default().push(q);
            }
        }
        for (_, members) in groups {
            let profiles: BTreeSet<PropertySet> = members.iter().map(|q| fam.profile(q)).collect();
            assert_eq!(profiles.len(), 1);
        }
    }

    #[test]
    fn threatening_markings() {
        let u = ClassSpec::avoid(&["123"]);
        let fam = PropertyFamily::p_b_extended(&[p("123")]);
        let cat = ProfileCatalogue::build(&fam, 6);
        // the framework of 12345 = 123[12, 1, 12] over Av(123): skeleton 123
        // with cells the profiles of (12, 1, 12)
        let cells = vec![fam.profile(&p("12")), fam.profile(&p("1")), fam.profile(&p("12"))];
        let f = Framework::new(p("123"), cells).unwrap();
        for trivial in [vec![], vec![0], vec![0, 1, 2]] {
            let marked: BTreeSet<usize> = trivial.into_iter().collect();
            assert!(threatening_check(&f, &marked, &u, &fam, &cat).unwrap());
        }
        // the pair {2, 3} admits the (G2) slide: 1 ⊕ first component of 12
        // is 12, inside Av(123)
        let marked: BTreeSet<usize> = [1, 2].into_iter().collect();
        assert!(threatening_check(&f, &marked, &u, &fam, &cat).unwrap());
        assert!(!framework_is_left_greedy(&f, &u, &fam, &cat).unwrap());
        // non-interval markings are not threatening
        let marked: BTreeSet<usize> = [0, 2].into_iter().collect();
        assert!(!threatening_check(&f, &marked, &u, &fam, &cat).unwrap());
        // the greedy framework of 123[12,12,1] is left greedy
        let greedy = Framework::new(
            p("123"),
            vec![fam.profile(&p("12")), fam.profile(&p("12")), fam.profile(&p("1"))],
        )
        .unwrap();
        assert!(framework_is_left_greedy(&greedy, &u, &fam, &cat).unwrap());
    }
}
