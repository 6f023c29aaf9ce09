use num_bigint::BigInt;

use lang_automata::RationalGf;

use crate::GfError;

/// Exact counting-series coefficients c_0..c_horizon.  Coefficients beyond
/// the horizon are never fabricated.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Series {
    coeffs: Vec<BigInt>,
}

impl Series {
    pub fn new(coeffs: Vec<BigInt>) -> Series {
        Series { coeffs }
    }

    pub fn from_u64(coeffs: &[u64]) -> Series {
        Series { coeffs: coeffs.iter().map(|&c| BigInt::from(c)).collect() }
    }

    /// Class counts for lengths 1..=n as produced by enumeration, with the
    /// conventional zero constant term.
    pub fn from_positive_counts(counts: &[u64]) -> Series {
        let mut coeffs = vec![BigInt::from(0)];
        coeffs.extend(counts.iter().map(|&c| BigInt::from(c)));
        Series { coeffs }
    }

    pub fn from_gf(gf: &RationalGf, horizon: usize) -> Result<Series, GfError> {
        Ok(Series { coeffs: gf.integer_series(horizon)? })
    }

    /// The highest index with a known coefficient.
    pub fn horizon(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &BigInt {
        &self.coeffs[n]
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn truncated(&self, horizon: usize) -> Series {
        Series { coeffs: self.coeffs[..=horizon.min(self.horizon())].to_vec() }
    }
}

impl std::fmt::Display for Series {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(BigInt::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}
