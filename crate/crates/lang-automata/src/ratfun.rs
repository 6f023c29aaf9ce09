//! Dense integer polynomials in one variable and rational functions over
//! them.  All arithmetic is exact; rational functions are kept in lowest
//! terms with a sign-normalised denominator.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::AutomatonError;

/// Coefficients in ascending order; no trailing zeros; zero is the empty
/// vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial { coeffs: vec![BigInt::one()] }
    }

    pub fn x() -> Self {
        Polynomial { coeffs: vec![BigInt::zero(), BigInt::one()] }
    }

    pub fn constant(c: BigInt) -> Self {
        Polynomial::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn scale(&self, c: &BigInt) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by x^k.
    pub fn shift(&self, k: usize) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut v = vec![BigInt::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Polynomial::new(v)
    }

    /// Gcd of the coefficients, nonnegative.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Content removed and leading coefficient made positive.
    pub fn primitive(&self) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        Polynomial::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    /// Exact division; panics if the division leaves a remainder.
    pub fn div_exact(&self, d: &Polynomial) -> Polynomial {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut rem = self.coeffs.clone();
        let dd = d.degree().unwrap();
        let nd = self.degree().unwrap();
        assert!(nd >= dd, "non-exact polynomial division");
        let mut q = vec![BigInt::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let (quot, r) = rem[k + dd].div_rem(&d.coeffs[dd]);
            assert!(r.is_zero(), "non-exact polynomial division");
            for i in 0..=dd {
                let t = &quot * &d.coeffs[i];
                rem[k + i] -= t;
            }
            q[k] = quot;
        }
        assert!(rem.iter().all(Zero::is_zero), "non-exact polynomial division");
        Polynomial::new(q)
    }

    /// Pseudo-remainder of self by d (self scaled by a power of d's leading
    /// coefficient so the division stays integral).
    fn pseudo_rem(&self, d: &Polynomial) -> Polynomial {
        let dd = d.degree().expect("nonzero divisor");
        let mut rem = self.coeffs.clone();
        let lc = d.leading();
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let top = rem.last().unwrap().clone();
            for c in rem.iter_mut() {
                *c *= &lc;
            }
            for i in 0..=dd {
                let t = &top * &d.coeffs[i];
                rem[k + i] -= t;
            }
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
            if rem.len() <= dd {
                break;
            }
        }
        Polynomial::new(rem)
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() {
            return other.primitive();
        }
        if other.is_zero() {
            return self.primitive();
        }
        let mut a = self.primitive();
        let mut b = other.primitive();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a.primitive()
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from(c.clone());
        }
        acc
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(self.coeff(i) + rhs.coeff(i));
        }
        Polynomial::new(v)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(self.coeff(i) - rhs.coeff(i));
        }
        Polynomial::new(v)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Polynomial::new(v)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Polynomial {
    /// Ascending powers: `1 - 2x + x^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A ratio of integer polynomials in lowest terms.  The denominator is
/// nonzero with its lowest-order nonzero coefficient positive; generating
/// functions additionally have a nonzero denominator constant term, which
/// `series` checks.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalGf {
    num: Polynomial,
    den: Polynomial,
}

impl RationalGf {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, AutomatonError> {
        if den.is_zero() {
            return Err(AutomatonError::ZeroDenominator);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return RationalGf { num, den: Polynomial::one() };
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g);
        let mut den = den.div_exact(&g);
        let c = num.content().gcd(&den.content());
        if !c.is_one() {
            num = Polynomial::new(num.coeffs.iter().map(|a| a / &c).collect());
            den = Polynomial::new(den.coeffs.iter().map(|a| a / &c).collect());
        }
        let low = den.coeffs.iter().find(|c| !c.is_zero()).expect("nonzero denominator");
        if low.is_negative() {
            num = -&num;
            den = -&den;
        }
        RationalGf { num, den }
    }

    pub fn zero() -> Self {
        RationalGf { num: Polynomial::zero(), den: Polynomial::one() }
    }

    pub fn one() -> Self {
        RationalGf { num: Polynomial::one(), den: Polynomial::one() }
    }

    pub fn x() -> Self {
        RationalGf { num: Polynomial::x(), den: Polynomial::one() }
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalGf { num: p, den: Polynomial::one() }
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the power-series expansion exists and starts with 0, i.e.
    /// den(0) ≠ 0 and num(0) = 0.
    pub fn has_zero_constant_term(&self) -> bool {
        !self.den.constant_term().is_zero() && self.num.constant_term().is_zero()
    }

    pub fn add(&self, rhs: &RationalGf) -> RationalGf {
        RationalGf::reduced(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }

    pub fn sub(&self, rhs: &RationalGf) -> RationalGf {
        RationalGf::reduced(&(&self.num * &rhs.den) - &(&rhs.num * &self.den), &self.den * &rhs.den)
    }

    pub fn mul(&self, rhs: &RationalGf) -> RationalGf {
        RationalGf::reduced(&self.num * &rhs.num, &self.den * &rhs.den)
    }

    pub fn div(&self, rhs: &RationalGf) -> Result<RationalGf, AutomatonError> {
        if rhs.is_zero() {
            return Err(AutomatonError::ZeroDenominator);
        }
        Ok(RationalGf::reduced(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn neg(&self) -> RationalGf {
        RationalGf { num: -&self.num, den: self.den.clone() }
    }

    /// First n+1 power-series coefficients.  Fails when x = 0 is a pole.
    pub fn series(&self, n: usize) -> Result<Vec<BigRational>, AutomatonError> {
        let d0 = self.den.constant_term();
        if d0.is_zero() {
            return Err(AutomatonError::PoleAtZero);
        }
        let d0 = BigRational::from(d0);
        let mut out: Vec<BigRational> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = BigRational::from(self.num.coeff(k));
            for j in 1..=k.min(self.den.coeffs.len().saturating_sub(1)) {
                acc -= BigRational::from(self.den.coeff(j)) * &out[k - j];
            }
            out.push(acc / &d0);
        }
        Ok(out)
    }

    /// Series coefficients as integers; fails if any coefficient is
    /// fractional.
    pub fn integer_series(&self, n: usize) -> Result<Vec<BigInt>, AutomatonError> {
        self.series(n)?
            .into_iter()
            .map(|c| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(AutomatonError::NonIntegerSeries)
                }
            })
            .collect()
    }
}

impl fmt::Display for RationalGf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Polynomial::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalGf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
