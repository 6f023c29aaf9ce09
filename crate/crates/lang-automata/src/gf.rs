use crate::dfa::{Dfa, Letter};
use crate::ratfun::RationalGf;
use crate::AutomatonError;

/// Solve A·f = b over the rational-function field by Gauss-Jordan
/// elimination.  A is consumed as an augmented matrix.
fn solve_linear(mut a: Vec<Vec<RationalGf>>, mut b: Vec<RationalGf>) -> Result<Vec<RationalGf>, AutomatonError> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or(AutomatonError::SingularSystem)?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = RationalGf::one().div(&a[col][col].clone())?;
        for c in col..n {
            a[col][c] = a[col][c].mul(&inv);
        }
        b[col] = b[col].mul(&inv);
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in col..n {
                    let t = a[col][c].mul(&factor);
                    a[r][c] = a[r][c].sub(&t);
                }
                let t = b[col].mul(&factor);
                b[r] = b[r].sub(&t);
            }
        }
    }
    Ok(b)
}

/// The generating function of an accepted-word count by letter weights: the
/// transfer system f_q = [q accepting] + Σ_a w(a)·f_{δ(q,a)} solved exactly.
/// Every weight must have a zero constant term, which makes the system
/// well-founded (the matrix is the identity at x = 0).
pub fn weighted_gf<L: Letter>(
    dfa: &Dfa<L>,
    weight: impl Fn(&L) -> RationalGf,
) -> Result<RationalGf, AutomatonError> {
    let n = dfa.state_count();
    let weights: Vec<RationalGf> = dfa.alphabet().iter().map(&weight).collect();
    for (l, w) in dfa.alphabet().iter().zip(&weights) {
        if !w.has_zero_constant_term() {
            return Err(AutomatonError::NonzeroConstantWeight(format!("{l:?}")));
        }
    }
    // A = I - W, b = accepting indicator
    let mut a = vec![vec![RationalGf::zero(); n]; n];
    for (q, row) in a.iter_mut().enumerate() {
        row[q] = RationalGf::one();
        for (i, w) in weights.iter().enumerate() {
            let t = dfa.step(q, i);
            row[t] = row[t].sub(w);
        }
    }
    let b: Vec<RationalGf> = (0..n)
        .map(|q| if dfa.is_accepting(q) { RationalGf::one() } else { RationalGf::zero() })
        .collect();
    let f = solve_linear(a, b)?;
    Ok(f[dfa.initial()].clone())
}

/// The ordinary generating function Σ x^|w| over accepted words.
pub fn gf_of_dfa<L: Letter>(dfa: &Dfa<L>) -> RationalGf {
    weighted_gf(dfa, |_| RationalGf::x()).expect("x has zero constant term and the system is nonsingular at 0")
}
