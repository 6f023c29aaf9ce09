use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use lang_automata::{Polynomial, RationalGf};

use crate::series::Series;
use crate::GfError;

/// Exact rational reconstruction: the minimal rational function with
/// denominator degree at most `max_deg` that reproduces every known
/// coefficient, where the recurrence is fitted without the last four
/// coefficients and must predict them.  Returns None when no such function
/// exists at the bound.
///
/// Minimality is denominator degree first, then numerator degree; the result
/// is in lowest terms.
pub fn fit_rational(series: &Series, max_deg: usize) -> Result<Option<RationalGf>, GfError> {
    if series.horizon() < 2 * max_deg + 4 {
        return Err(GfError::InsufficientHorizon { have: series.horizon(), need: 2 * max_deg + 4 });
    }
    let h = series.len();
    let c: Vec<BigRational> = series.coeffs().iter().map(|x| BigRational::from(x.clone())).collect();
    let train_end = h - 1 - 4;
    for d in 0..=max_deg {
        for p in 0..=train_end.saturating_sub(d) {
            if let Some(gf) = try_fit(&c, d, p, train_end)? {
                return Ok(Some(gf));
            }
        }
    }
    Ok(None)
}

/// Solve for a monic-at-x^0 denominator of degree d and numerator degree at
/// most p, training on coefficients up to `train_end` and verifying against
/// the whole series.
fn try_fit(c: &[BigRational], d: usize, p: usize, train_end: usize) -> Result<Option<RationalGf>, GfError> {
    // unknowns den_1..den_d with den_0 = 1:
    //   sum_{k=0}^{d} den_k c_{n-k} = 0  for n = p+1 ..= train_end
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for n in p + 1..=train_end {
        let mut row: Vec<BigRational> = Vec::with_capacity(d + 1);
        for k in 1..=d {
            row.push(if k <= n { c[n - k].clone() } else { BigRational::zero() });
        }
        row.push(-c[n].clone());
        rows.push(row);
    }
    let Some(x) = solve_exact(rows, d) else { return Ok(None) };

    // clear denominators to integer coefficients
    let mut den_scale = BigInt::one();
    for v in &x {
        den_scale = num_integer::lcm(den_scale, v.denom().clone());
    }
    let mut den_coeffs = vec![den_scale.clone()];
    for v in &x {
        den_coeffs.push((v * BigRational::from(den_scale.clone())).to_integer());
    }
    let den = Polynomial::new(den_coeffs);

    // numerator = den * series, which must die out at degree p
    let mut num_coeffs: Vec<BigInt> = Vec::with_capacity(c.len());
    for n in 0..c.len() {
        let mut acc = BigRational::zero();
        for k in 0..=d.min(n) {
            acc += BigRational::from(den.coeff(k)) * &c[n - k];
        }
        if !acc.is_integer() {
            return Ok(None);
        }
        num_coeffs.push(acc.to_integer());
    }
    if num_coeffs.iter().skip(p + 1).any(|x| !x.is_zero()) {
        return Ok(None);
    }
    num_coeffs.truncate(p + 1);
    let gf = RationalGf::new(Polynomial::new(num_coeffs), den)?;
    Ok(Some(gf))
}

/// Row-echelon solve of an exact overdetermined system; inconsistency gives
/// None, free variables are pinned to zero.
fn solve_exact(mut rows: Vec<Vec<BigRational>>, unknowns: usize) -> Option<Vec<BigRational>> {
    let mut pivot_row = 0usize;
    let mut pivot_cols = Vec::new();
    for col in 0..unknowns {
        let Some(r) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else { continue };
        rows.swap(pivot_row, r);
        let inv = rows[pivot_row][col].recip();
        for v in rows[pivot_row].iter_mut() {
            *v *= &inv;
        }
        for r in 0..rows.len() {
            if r != pivot_row && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for cidx in 0..=unknowns {
                    let t = &rows[pivot_row][cidx] * &factor;
                    rows[r][cidx] -= t;
                }
            }
        }
        pivot_cols.push(col);
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    // inconsistent rows: all-zero coefficients with nonzero rhs
    for r in pivot_row..rows.len() {
        if rows[r][..unknowns].iter().all(Zero::is_zero) && !rows[r][unknowns].is_zero() {
            return None;
        }
    }
    let mut x = vec![BigRational::zero(); unknowns];
    for (r, &col) in pivot_cols.iter().enumerate() {
        x[col] = rows[r][unknowns].clone();
    }
    Some(x)
}

/// A coarse growth-rate interval from the series tail: the extreme values of
/// successive ratios and of n-th roots over the last few terms.
pub fn growth_rate(series: &Series) -> Result<(f64, f64), GfError> {
    if series.horizon() < 8 {
        return Err(GfError::InsufficientHorizon { have: series.horizon(), need: 8 });
    }
    if series.coeffs().iter().all(Zero::is_zero) {
        return Err(GfError::ZeroSeries);
    }
    let to_f64 = |x: &BigInt| -> f64 {
        let s = x.to_string();
        s.parse::<f64>().unwrap_or(f64::MAX)
    };
    let tail = 5.min(series.len() - 1);
    let start = series.len() - tail;
    let mut stats = Vec::new();
    for n in start.max(1)..series.len() {
        let cur = series.coeff(n);
        let prev = series.coeff(n - 1);
        if cur.is_positive() && prev.is_positive() {
            stats.push(to_f64(cur) / to_f64(prev));
        }
        if cur.is_positive() {
            stats.push(to_f64(cur).powf(1.0 / n as f64));
        }
    }
    if stats.is_empty() {
        return Err(GfError::ZeroSeries);
    }
    let lo = stats.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = stats.iter().copied().fold(0.0f64, f64::max);
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fit_str(counts: &[u64], max_deg: usize) -> Option<String> {
        fit_rational(&Series::from_u64(counts), max_deg).unwrap().map(|gf| gf.to_string())
    }

    #[test]
    fn powers_of_two() {
        // 1, 2, 4, ..., 512 at n >= 1 is x/(1-2x)
        let counts: Vec<u64> = (0..=10).map(|n| if n == 0 { 0 } else { 1 << (n - 1) }).collect();
        assert_eq!(fit_str(&counts, 3).unwrap(), "(x) / (1 - 2x)");
    }

    #[test]
    fn polynomial_series() {
        let gf = fit_rational(&Series::from_u64(&[1, 3, 0, 0, 0, 0, 0, 0, 0, 0, 0]), 3).unwrap().unwrap();
        assert_eq!(gf.to_string(), "1 + 3x");
    }

    #[test]
    fn catalan_has_no_small_rational_fit() {
        // independent oracle: the Catalan recurrence
        let mut cat = vec![1u64];
        for n in 1..=12 {
            let c: u64 = (0..n).map(|k| cat[k] * cat[n - 1 - k]).sum();
            cat.push(c);
        }
        // class-style series: counts for n >= 1 are 1, 2, 5, 14, ...
        let series = Series::from_positive_counts(&cat[1..]);
        assert_eq!(fit_rational(&series, 3).unwrap(), None);
    }

    #[test]
    fn horizon_is_enforced() {
        let err = fit_rational(&Series::from_u64(&[1, 2, 3]), 3).unwrap_err();
        assert!(matches!(err, GfError::InsufficientHorizon { .. }));
    }

    #[test]
    fn growth_of_powers() {
        let counts: Vec<u64> = (0..=10).map(|n| if n == 0 { 0 } else { 1 << (n - 1) }).collect();
        let (lo, hi) = growth_rate(&Series::from_u64(&counts)).unwrap();
        assert!(lo <= 2.0 && 2.0 <= hi, "[{lo}, {hi}]");
        assert!(growth_rate(&Series::from_u64(&[0; 12])).is_err());
    }
}
