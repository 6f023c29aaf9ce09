use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

/// κ, the unique real root of x^3 - 2x^2 - 1, computed by bracketing plus
/// Newton iteration in exact rational arithmetic.
#[derive(Clone, Debug)]
pub struct Kappa {
    value: BigRational,
}

fn cubic(x: &BigRational) -> BigRational {
    x * x * x - BigRational::from(BigInt::from(2)) * x * x - BigRational::one()
}

fn cubic_derivative(x: &BigRational) -> BigRational {
    BigRational::from(BigInt::from(3)) * x * x - BigRational::from(BigInt::from(4)) * x
}

/// Round to `digits` decimal digits to keep numerators small between steps.
fn round_decimal(x: &BigRational, digits: u32) -> BigRational {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = x * BigRational::from(scale.clone());
    BigRational::new(scaled.round().to_integer(), scale)
}

pub fn kappa() -> Kappa {
    // bracket: f(2) = -1 < 0 < f(3) = 8
    let mut lo = BigRational::from(BigInt::from(2));
    let mut hi = BigRational::from(BigInt::from(3));
    for _ in 0..8 {
        let mid = (&lo + &hi) / BigRational::from(BigInt::from(2));
        if cubic(&mid).is_negative() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // Newton from the bracket midpoint; quadratic convergence reaches 1e-40
    // comfortably within a handful of steps
    let mut x = (&lo + &hi) / BigRational::from(BigInt::from(2));
    let target = BigRational::new(BigInt::one(), BigInt::from(10u32).pow(40));
    for _ in 0..40 {
        let f = cubic(&x);
        if f.abs() < target {
            break;
        }
        x = &x - f / cubic_derivative(&x);
        x = round_decimal(&x, 60);
    }
    Kappa { value: x }
}

impl Kappa {
    pub fn value(&self) -> &BigRational {
        &self.value
    }

    /// |x^3 - 2x^2 - 1| at the computed root, exactly.
    pub fn residual(&self) -> BigRational {
        cubic(&self.value).abs()
    }

    /// The root rounded to `digits` digits after the decimal point.
    pub fn decimal(&self, digits: u32) -> String {
        let scale = BigInt::from(10u32).pow(digits);
        let scaled = (&self.value * BigRational::from(scale.clone())).round().to_integer();
        let whole = &scaled / &scale;
        let frac = &scaled % &scale;
        format!("{whole}.{:0width$}", frac, width = digits as usize)
    }
}
