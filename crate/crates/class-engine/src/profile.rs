use perm_core::{Decomposition, Permutation};

use crate::spec::{ClassSpec, Evaluator};
use crate::ClassError;

/// All U-decompositions of a permutation: interval partitions whose blocks
/// lie in U, as skeleton/blocks pairs.  Exhaustive over the 2^(n-1)
/// compositions of the positions.
pub(crate) fn u_decompositions_with(
    perm: &Permutation,
    is_in_u: &mut impl FnMut(&Permutation) -> bool,
) -> Vec<Decomposition> {
    let n = perm.len();
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    // bits of `cuts` mark a boundary after each position
    for cuts in 0..(1u32 << (n - 1)) {
        let mut blocks: Vec<Permutation> = Vec::new();
        let mut reps: Vec<u32> = Vec::new();
        let mut start = 0usize;
        let mut ok = true;
        for i in 0..n {
            let boundary = i + 1 == n || cuts >> i & 1 == 1;
            if boundary {
                let seg = &perm.values()[start..=i];
                let lo = *seg.iter().min().expect("nonempty");
                let hi = *seg.iter().max().expect("nonempty");
                if (hi - lo + 1) as usize != seg.len() {
                    ok = false;
                    break;
                }
                let block = Permutation::pattern_of(seg);
                if !is_in_u(&block) {
                    ok = false;
                    break;
                }
                blocks.push(block);
                reps.push(lo);
                start = i + 1;
            }
        }
        if ok {
            let skeleton = Permutation::pattern_of(&reps);
            out.push(Decomposition::new(skeleton, blocks).expect("structurally valid"));
        }
    }
    out
}

/// All U-decompositions of `perm` with blocks in the given class.
pub fn u_decompositions(perm: &Permutation, u: &ClassSpec) -> Vec<Decomposition> {
    let mut eval = Evaluator::new(u);
    u_decompositions_with(perm, &mut |q| eval.member(q))
}

pub(crate) fn u_profile_with(
    perm: &Permutation,
    is_in_u: &mut impl FnMut(&Permutation) -> bool,
) -> Result<Permutation, ClassError> {
    if !is_in_u(&Permutation::one()) {
        return Err(ClassError::PointNotInClass);
    }
    let all = u_decompositions_with(perm, is_in_u);
    let minimal: Vec<&Decomposition> = all
        .iter()
        .filter(|d| !all.iter().any(|e| e.skeleton != d.skeleton && d.skeleton.contains(&e.skeleton)))
        .collect();
    let first = minimal.first().expect("the all-singleton decomposition always exists");
    // the minimal quotient is unique
    assert!(
        minimal.iter().all(|d| d.skeleton == first.skeleton),
        "minimal U-quotient of {perm} is not unique"
    );
    Ok(first.skeleton.clone())
}

/// The U-profile: the unique minimal quotient over which `perm` is an
/// inflation with blocks in U.  Requires 1 ∈ U.
pub fn u_profile(perm: &Permutation, u: &ClassSpec) -> Result<Permutation, ClassError> {
    let mut eval = Evaluator::new(u);
    u_profile_with(perm, &mut |q| eval.member(q))
}

/// The left-greedy U-decomposition: skeleton is the U-profile, blocks chosen
/// left to right as long as possible.
pub fn left_greedy(perm: &Permutation, u: &ClassSpec) -> Result<Decomposition, ClassError> {
    let mut eval = Evaluator::new(u);
    let profile = u_profile_with(perm, &mut |q| eval.member(q))?;
    let all = u_decompositions_with(perm, &mut |q| eval.member(q));
    all.into_iter()
        .filter(|d| d.skeleton == profile)
        .max_by(|a, b| a.block_lengths().cmp(&b.block_lengths()))
        .ok_or(ClassError::PointNotInClass)
}

/// Is a U-decomposition the left-greedy one?  False exactly when some
/// interval of the skeleton admits (G1) a merge of consecutive blocks into a
/// single U-block, or (G2)/(G3) the first sum (skew) component of a block
/// sliding onto its left neighbour within U.
pub fn is_left_greedy(d: &Decomposition, u: &ClassSpec) -> Result<bool, ClassError> {
    let mut eval = Evaluator::new(u);
    for (i, block) in d.blocks.iter().enumerate() {
        if !eval.member(block) {
            return Err(ClassError::BlockOutsideClass { index: i + 1 });
        }
    }
    let theta = &d.skeleton;
    let m = theta.len();
    for i in 0..m {
        let mut lo = theta.values()[i];
        let mut hi = theta.values()[i];
        for j in i + 1..m {
            lo = lo.min(theta.values()[j]);
            hi = hi.max(theta.values()[j]);
            if (hi - lo + 1) as usize != j - i + 1 {
                continue;
            }
            // [i..j] is an interval of the skeleton of length >= 2
            let tau = Permutation::pattern_of(&theta.values()[i..=j]);
            let merged = perm_core::inflate(&tau, &d.blocks[i..=j])?;
            if eval.member(&merged) {
                return Ok(false); // (G1)
            }
            if j == i + 1 {
                if tau == Permutation::identity(2) {
                    let slide = d.blocks[i].direct_sum(&d.blocks[i + 1].sum_components()[0]);
                    if eval.member(&slide) {
                        return Ok(false); // (G2)
                    }
                } else {
                    let slide = d.blocks[i].skew_sum(&d.blocks[i + 1].skew_components()[0]);
                    if eval.member(&slide) {
                        return Ok(false); // (G3)
                    }
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn profile_of_the_staircase() {
        let u = ClassSpec::avoid(&["123"]);
        assert_eq!(u_profile(&p("12345"), &u).unwrap(), p("123"));
        let universe = ClassSpec::universe();
        assert_eq!(u_profile(&p("35142"), &universe).unwrap(), p("1"));
    }

    #[test]
    fn profile_requires_the_point() {
        let empty_u = ClassSpec::ExplicitDownset(Vec::new());
        assert!(matches!(u_profile(&p("12"), &empty_u), Err(ClassError::PointNotInClass)));
    }

    #[test]
    fn exactly_three_decompositions_over_the_profile() {
        let u = ClassSpec::avoid(&["123"]);
        let all = u_decompositions(&p("12345"), &u);
        let profile = p("123");
        let over: Vec<_> = all.into_iter().filter(|d| d.skeleton == profile).collect();
        assert_eq!(over.len(), 3);
        let greedy = left_greedy(&p("12345"), &u).unwrap();
        assert_eq!(greedy.blocks, vec![p("12"), p("12"), p("1")]);
        let mut passing = 0;
        for d in &over {
            if is_left_greedy(d, &u).unwrap() {
                assert_eq!(d, &greedy);
                passing += 1;
            }
        }
        assert_eq!(passing, 1);
    }

    #[test]
    fn g2_detects_the_slide() {
        let u = ClassSpec::avoid(&["123"]);
        let d = Decomposition::new(p("123"), vec![p("12"), p("1"), p("12")]).unwrap();
        assert!(!is_left_greedy(&d, &u).unwrap());
    }

    #[test]
    fn single_block_is_greedy() {
        let u = ClassSpec::universe();
        let d = Decomposition::new(p("1"), vec![p("35142")]).unwrap();
        assert!(is_left_greedy(&d, &u).unwrap());
    }

    #[test]
    fn blocks_outside_u_are_an_error() {
        let u = ClassSpec::avoid(&["12"]);
        let d = Decomposition::new(p("12"), vec![p("12"), p("1")]).unwrap();
        assert!(matches!(is_left_greedy(&d, &u), Err(ClassError::BlockOutsideClass { index: 1 })));
    }

    #[test]
    fn profile_uniqueness_exhaustive() {
        // every minimal quotient is unique: checked against U = Av(123)
        let u = ClassSpec::avoid(&["123"]);
        let mut eval = Evaluator::new(&u);
        for n in 1..=8 {
            for perm in perm_core::all_permutations(n) {
                let all = u_decompositions_with(&perm, &mut |q| eval.member(q));
                let minimal: Vec<&Decomposition> = all
                    .iter()
                    .filter(|d| !all.iter().any(|e| e.skeleton != d.skeleton && d.skeleton.contains(&e.skeleton)))
                    .collect();
                assert!(minimal.windows(2).all(|w| w[0].skeleton == w[1].skeleton), "{perm}");
            }
        }
    }
}
