use std::fmt;

use crate::perm::{PermError, Permutation};

/// A skeleton together with one block per skeleton entry.  Inflating the
/// skeleton by the blocks reproduces the source permutation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Decomposition {
    pub skeleton: Permutation,
    pub blocks: Vec<Permutation>,
}

impl Decomposition {
    pub fn new(skeleton: Permutation, blocks: Vec<Permutation>) -> Result<Self, PermError> {
        if skeleton.len() != blocks.len() {
            return Err(PermError::ArityMismatch(skeleton.len(), blocks.len()));
        }
        if let Some(i) = blocks.iter().position(|b| b.is_empty()) {
            return Err(PermError::EmptyBlock(i + 1));
        }
        Ok(Decomposition { skeleton, blocks })
    }

    pub fn inflate(&self) -> Permutation {
        inflate(&self.skeleton, &self.blocks).expect("validated at construction")
    }

    pub fn block_lengths(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.len()).collect()
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self.blocks.iter().map(|b| b.to_string()).collect();
        write!(f, "{}[{}]", self.skeleton, blocks.join(","))
    }
}

impl fmt::Debug for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The inflation σ[α_1,…,α_m]: replace each entry of σ by an interval order
/// isomorphic to the corresponding block.
pub fn inflate(sigma: &Permutation, blocks: &[Permutation]) -> Result<Permutation, PermError> {
    if sigma.len() != blocks.len() {
        return Err(PermError::ArityMismatch(sigma.len(), blocks.len()));
    }
    if let Some(i) = blocks.iter().position(|b| b.is_empty()) {
        return Err(PermError::EmptyBlock(i + 1));
    }
    // value offset of block i = total length of blocks at entries with
    // smaller skeleton value
    let m = sigma.len();
    let mut offsets = vec![0u32; m];
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&i| sigma.values()[i]);
    let mut acc = 0u32;
    for &i in &order {
        offsets[i] = acc;
        acc += blocks[i].len() as u32;
    }
    let mut values = Vec::with_capacity(acc as usize);
    for i in 0..m {
        values.extend(blocks[i].values().iter().map(|&v| v + offsets[i]));
    }
    Ok(Permutation::new(values).expect("inflation of valid permutations is valid"))
}

/// The substitution decomposition: every permutation of length at least two
/// is the inflation of a unique simple permutation.  For a sum (resp. skew)
/// decomposable permutation the skeleton is 12 (resp. 21) and the first block
/// is the unique sum (resp. skew) indecomposable choice; otherwise the blocks
/// are the maximal proper intervals.
pub fn substitution_decompose(pi: &Permutation) -> Result<Decomposition, PermError> {
    if pi.len() < 2 {
        return Err(PermError::Empty);
    }
    if pi.is_simple() {
        let blocks = vec![Permutation::one(); pi.len()];
        return Decomposition::new(pi.clone(), blocks);
    }
    let sum = pi.sum_components();
    if sum.len() >= 2 {
        let first = sum[0].clone();
        let mut rest = sum[1].clone();
        for c in &sum[2..] {
            rest = rest.direct_sum(c);
        }
        return Decomposition::new(Permutation::identity(2), vec![first, rest]);
    }
    let skew = pi.skew_components();
    if skew.len() >= 2 {
        let first = skew[0].clone();
        let mut rest = skew[1].clone();
        for c in &skew[2..] {
            rest = rest.skew_sum(c);
        }
        return Decomposition::new(Permutation::decreasing(2), vec![first, rest]);
    }

    // Neither sum nor skew decomposable: the maximal proper intervals are
    // pairwise disjoint and contracting them yields a simple skeleton of
    // length at least four.
    let n = pi.len();
    let proper = pi.proper_intervals();
    let maximal: Vec<(usize, usize)> = proper
        .iter()
        .copied()
        .filter(|&(a, b)| !proper.iter().any(|&(c, d)| (c, d) != (a, b) && c <= a && b <= d))
        .collect();
    let mut covered = vec![false; n + 1];
    for &(a, b) in &maximal {
        for i in a..=b {
            assert!(!covered[i], "maximal proper intervals must be disjoint");
            covered[i] = true;
        }
    }
    let mut ranges: Vec<(usize, usize)> = maximal;
    for i in 1..=n {
        if !covered[i] {
            ranges.push((i, i));
        }
    }
    ranges.sort();
    let reps: Vec<u32> = ranges.iter().map(|&(a, _)| pi.at(a)).collect();
    let skeleton = Permutation::pattern_of(&reps);
    let blocks: Vec<Permutation> = ranges
        .iter()
        .map(|&(a, b)| Permutation::pattern_of(&pi.values()[a - 1..b]))
        .collect();
    assert!(skeleton.is_simple() && skeleton.len() >= 4);
    Decomposition::new(skeleton, blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::all_permutations;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn inflate_worked_examples() {
        assert_eq!(
            inflate(&p("2413"), &[p("1"), p("132"), p("321"), p("12")]).unwrap(),
            p("479832156")
        );
        assert_eq!(inflate(&p("231"), &[p("12"), p("12"), p("1")]).unwrap(), p("23451"));
        let sigma = p("35142");
        let ones = vec![Permutation::one(); 5];
        assert_eq!(inflate(&sigma, &ones).unwrap(), sigma);
    }

    #[test]
    fn inflate_errors() {
        assert!(matches!(
            inflate(&p("12"), &[p("1")]),
            Err(PermError::ArityMismatch(2, 1))
        ));
        assert!(matches!(
            inflate(&p("12"), &[p("1"), Permutation::empty()]),
            Err(PermError::EmptyBlock(2))
        ));
    }

    #[test]
    fn decompose_worked_examples() {
        let d = substitution_decompose(&p("479832156")).unwrap();
        assert_eq!(d.skeleton, p("2413"));
        assert_eq!(d.blocks, vec![p("1"), p("132"), p("321"), p("12")]);

        let d = substitution_decompose(&p("12345")).unwrap();
        assert_eq!(d.skeleton, p("12"));
        assert_eq!(d.blocks, vec![p("1"), p("1234")]);

        let d = substitution_decompose(&p("3142")).unwrap();
        assert_eq!(d.skeleton, p("3142"));
        assert_eq!(d.blocks, vec![Permutation::one(); 4]);

        assert!(substitution_decompose(&p("1")).is_err());
    }

    #[test]
    fn decompose_round_trips() {
        for n in 2..=7 {
            for pi in all_permutations(n) {
                let d = substitution_decompose(&pi).unwrap();
                assert_eq!(d.inflate(), pi, "{pi}");
                assert!(d.skeleton.is_simple(), "{pi} -> {d}");
                if d.skeleton.len() == 2 {
                    if d.skeleton == p("12") {
                        assert!(!d.blocks[0].is_sum_decomposable(), "{pi} -> {d}");
                    } else {
                        assert!(!d.blocks[0].is_skew_decomposable(), "{pi} -> {d}");
                    }
                }
            }
        }
    }

    /// Interval-structure oracle: every proper interval of an inflation that
    /// is not inside a single block must be a skeleton-interval inflation,
    /// optionally extended by a sum/skew suffix of the preceding block and
    /// prefix of the following block.
    fn interval_shape_ok(pi: &Permutation, d: &Decomposition, a: usize, b: usize) -> bool {
        // block span of positions: block i covers [starts[i], ends[i]]
        let mut starts = Vec::new();
        let mut pos = 1usize;
        for bl in &d.blocks {
            starts.push(pos);
            pos += bl.len();
        }
        let ends: Vec<usize> = starts
            .iter()
            .zip(&d.blocks)
            .map(|(&s, bl)| s + bl.len() - 1)
            .collect();
        let m = d.blocks.len();
        // inside a single block?
        if (0..m).any(|i| starts[i] <= a && b <= ends[i]) {
            return true;
        }
        // wholly-contained blocks form the core [i..j]
        let core: Vec<usize> = (0..m).filter(|&i| a <= starts[i] && ends[i] <= b).collect();
        let touch: Vec<usize> = (0..m).filter(|&i| starts[i] <= b && ends[i] >= a).collect();
        if core.is_empty() {
            // must straddle exactly two consecutive blocks
            if touch.len() != 2 || touch[1] != touch[0] + 1 {
                return false;
            }
        } else {
            let (i, j) = (core[0], *core.last().unwrap());
            if core != (i..=j).collect::<Vec<_>>() {
                return false;
            }
            // the skeleton indices i..j must form an interval of the skeleton
            let vals: Vec<u32> = d.skeleton.values()[i..=j].to_vec();
            let lo = *vals.iter().min().unwrap();
            let hi = *vals.iter().max().unwrap();
            if (hi - lo + 1) as usize != j - i + 1 {
                return false;
            }
            // partial overlaps only with the immediate neighbours
            for &t in &touch {
                if !(core.contains(&t) || (t + 1 == i) || (t == j + 1)) {
                    return false;
                }
            }
        }
        // the interval decomposes as suffix ⊕ core ⊕ prefix or the skew
        // analogue: partial blocks overlap at one end, and their values sit
        // uniformly below or above the core with matching orientation
        let mut left_vals: Vec<u32> = Vec::new();
        let mut right_vals: Vec<u32> = Vec::new();
        let mut core_vals: Vec<u32> = Vec::new();
        for i in 0..m {
            let (s, e) = (starts[i], ends[i]);
            let overlap_lo = s.max(a);
            let overlap_hi = e.min(b);
            if overlap_lo > overlap_hi {
                continue;
            }
            let vals = pi.values()[overlap_lo - 1..overlap_hi].to_vec();
            if a <= s && e <= b {
                core_vals.extend(vals);
            } else if overlap_hi == e {
                // a positional suffix of the left neighbour
                left_vals = vals;
            } else if overlap_lo == s {
                right_vals = vals;
            } else {
                return false;
            }
        }
        let below = |xs: &[u32], ys: &[u32]| xs.iter().all(|x| ys.iter().all(|y| x < y));
        let sum_shape = below(&left_vals, &core_vals)
            && below(&core_vals, &right_vals)
            && below(&left_vals, &right_vals);
        let skew_shape = below(&core_vals, &left_vals)
            && below(&right_vals, &core_vals)
            && below(&right_vals, &left_vals);
        sum_shape || skew_shape
    }

    #[test]
    fn intervals_of_inflations_have_the_predicted_shape() {
        let skeletons: Vec<Permutation> = (1..=3)
            .flat_map(all_permutations)
            .chain([p("2413"), p("3142")])
            .collect();
        let small = [p("1"), p("12"), p("21"), p("132"), p("231")];
        for sigma in &skeletons {
            let m = sigma.len();
            // all block tuples from `small` with total length ≤ 10
            let mut stack: Vec<Vec<Permutation>> = vec![Vec::new()];
            while let Some(tup) = stack.pop() {
                if tup.len() == m {
                    let pi = inflate(sigma, &tup).unwrap();
                    if pi.len() > 10 || tup.iter().all(|b| b.len() == 1) {
                        continue;
                    }
                    let d = Decomposition::new(sigma.clone(), tup.clone()).unwrap();
                    for (a, b) in pi.proper_intervals() {
                        assert!(
                            interval_shape_ok(&pi, &d, a, b),
                            "{pi} = {d}, interval [{a}..{b}]"
                        );
                    }
                    continue;
                }
                let used: usize = tup.iter().map(|b| b.len()).sum();
                if used > 10 {
                    continue;
                }
                for bl in &small {
                    let mut next = tup.clone();
                    next.push(bl.clone());
                    stack.push(next);
                }
            }
        }
    }
}
