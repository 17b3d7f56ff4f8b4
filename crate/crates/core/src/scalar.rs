//! Scalar types used for weights, probabilities and flows.
//!
//! Everything that is a field computation (hard-core weights, transition
//! probabilities, partition functions, flow values) is generic over
//! [`Scalar`], so the same code runs in `f32`, `f64` or exact rational
//! arithmetic.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A numeric field usable for hard-core computations.
pub trait Scalar: Clone + Debug + Display + PartialOrd + Num + Send + Sync + 'static {
    /// True when arithmetic is exact (no rounding).
    const EXACT: bool;

    fn from_u64(n: u64) -> Self;

    /// Lossy conversion used for diagnostics and float kernels.
    fn to_f64(&self) -> f64;

    fn from_ratio(r: &BigRational) -> Self;

    fn powu(&self, k: usize) -> Self {
        num_traits::pow(self.clone(), k)
    }

    fn abs_value(&self) -> Self {
        if *self < Self::zero() {
            Self::zero() - self.clone()
        } else {
            self.clone()
        }
    }
}

macro_rules! impl_float_scalar {
    ($f:ty) => {
        impl Scalar for $f {
            const EXACT: bool = false;

            fn from_u64(n: u64) -> Self {
                n as $f
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }

            fn from_ratio(r: &BigRational) -> Self {
                ratio_to_f64(r) as $f
            }

            fn powu(&self, k: usize) -> Self {
                self.powi(k as i32)
            }
        }
    };
}

impl_float_scalar!(f32);
impl_float_scalar!(f64);

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_u64(n: u64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn to_f64(&self) -> f64 {
        ratio_to_f64(self)
    }

    fn from_ratio(r: &BigRational) -> Self {
        r.clone()
    }
}

/// Nearest-ish `f64` for a big rational, robust to numerators and
/// denominators that overflow `f64` on their own.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    let shift = r.numer().bits() as i64 - r.denom().bits() as i64;
    let num = r.numer().abs();
    let den = r.denom().clone();
    // Scale to keep ~64 significant bits in the quotient.
    let (n2, d2) = if shift > 0 {
        (num, den << (shift as usize))
    } else {
        (num << ((-shift) as usize), den)
    };
    let q = (n2 << 64usize) / d2;
    let mag = q.to_f64().unwrap_or(f64::INFINITY) * 2f64.powi(shift as i32 - 64);
    if r.is_negative() {
        -mag
    } else {
        mag
    }
}

/// A positive rational parameter parsed from `p/q`, a decimal, or
/// scientific notation. Decimals are converted exactly (`0.1` is `1/10`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct ExactParam(BigRational);

impl ExactParam {
    pub fn new(value: BigRational) -> Self {
        ExactParam(value)
    }

    pub fn from_integer(n: i64) -> Self {
        ExactParam(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_fraction(numer: i64, denom: i64) -> Self {
        ExactParam(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn ratio(&self) -> &BigRational {
        &self.0
    }

    pub fn to_f64(&self) -> f64 {
        ratio_to_f64(&self.0)
    }

    pub fn as_scalar<S: Scalar>(&self) -> S {
        S::from_ratio(&self.0)
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }
}

impl Display for ExactParam {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<ExactParam> for String {
    fn from(p: ExactParam) -> String {
        p.to_string()
    }
}

impl TryFrom<String> for ExactParam {
    type Error = Error;

    fn try_from(s: String) -> Result<Self, Error> {
        s.parse()
    }
}

impl FromStr for ExactParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a rational or decimal number: {s:?}"));
        if let Some((p, q)) = s.split_once('/') {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            return Ok(ExactParam(BigRational::new(p, q)));
        }
        let (mantissa, exponent) = match s.find(['e', 'E']) {
            Some(pos) => {
                let e: i32 = s[pos + 1..].parse().map_err(|_| bad())?;
                if e.abs() > 4096 {
                    return Err(bad());
                }
                (&s[..pos], e)
            }
            None => (s, 0),
        };
        let (negative, mantissa) = match mantissa.strip_prefix('-') {
            Some(m) => (true, m),
            None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
        };
        let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if !int_part
            .chars()
            .chain(frac_part.chars())
            .all(|c| c.is_ascii_digit())
        {
            return Err(bad());
        }
        let digits = format!("{int_part}{frac_part}");
        let mut numer: BigInt = digits.parse().map_err(|_| bad())?;
        if negative {
            numer = -numer;
        }
        let scale = exponent - frac_part.len() as i32;
        let ten = BigInt::from(10);
        let value = if scale >= 0 {
            BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
        } else {
            BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
        };
        Ok(ExactParam(value))
    }
}

/// Rational string plus decimal approximation, the emitted form of exact
/// quantities. The rational is authoritative.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactValue {
    pub rational: String,
    pub decimal: f64,
}

impl From<&BigRational> for ExactValue {
    fn from(r: &BigRational) -> Self {
        ExactValue {
            rational: r.to_string(),
            decimal: ratio_to_f64(r),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals_exactly() {
        let third: ExactParam = "1/3".parse().unwrap();
        assert_eq!(third, ExactParam::from_fraction(1, 3));
        let tenth: ExactParam = "0.1".parse().unwrap();
        assert_eq!(tenth, ExactParam::from_fraction(1, 10));
        let sci: ExactParam = "2.5e-2".parse().unwrap();
        assert_eq!(sci, ExactParam::from_fraction(1, 40));
        let int: ExactParam = "4".parse().unwrap();
        assert_eq!(int, ExactParam::from_integer(4));
        assert!("abc".parse::<ExactParam>().is_err());
        assert!("1/0".parse::<ExactParam>().is_err());
        assert!(".".parse::<ExactParam>().is_err());
    }

    #[test]
    fn big_ratio_to_f64_handles_huge_parts() {
        let big = BigInt::from(10).pow(400u32);
        let r = BigRational::new(big.clone() * BigInt::from(3), big * BigInt::from(7));
        assert!((ratio_to_f64(&r) - 3.0 / 7.0).abs() < 1e-15);
    }

    #[test]
    fn scalar_pow_agrees_across_types() {
        let q = <BigRational as Scalar>::from_u64(3).powu(4);
        assert_eq!(q, <BigRational as Scalar>::from_u64(81));
        assert_eq!(3f64.powu(4), 81.0);
        assert_eq!(3f32.powu(4), 81.0);
    }
}
