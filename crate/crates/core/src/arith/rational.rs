use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Rounding direction for decimal rendering.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rounding {
    /// toward −∞
    Down,
    /// toward +∞
    Up,
    /// half away from zero
    Nearest,
}

/// Arbitrary-precision fraction, always in lowest terms with a positive
/// denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ExactRational(BigRational);

impl ExactRational {
    /// `None` when `den == 0`.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Option<Self> {
        let den = den.into();
        if den.is_zero() {
            return None;
        }
        Some(ExactRational(BigRational::new(num.into(), den)))
    }

    pub fn zero() -> Self {
        ExactRational(BigRational::zero())
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        ExactRational(BigRational::from_integer(n.into()))
    }

    /// `sign / den` for a nonzero natural `den`.
    pub fn signed_unit_fraction(negative: bool, den: BigUint) -> Self {
        let sign = if negative { Sign::Minus } else { Sign::Plus };
        ExactRational(BigRational::new(BigInt::from_biguint(sign, BigUint::one()), BigInt::from(den)))
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }

    /// Decimal string with exactly `digits` fractional digits.
    pub fn to_decimal(&self, digits: usize, rounding: Rounding) -> String {
        let scale = BigInt::from(10u32).pow(digits as u32);
        let scaled = self.0.numer() * &scale;
        let den = self.0.denom();
        let q = match rounding {
            Rounding::Down => scaled.div_floor(den),
            Rounding::Up => -((-scaled).div_floor(den)),
            Rounding::Nearest => {
                // round(|x|) = floor((2|x| + 1) / 2), then reapply the sign
                let twice = scaled.abs() * 2u32 + den;
                let mag = twice.div_floor(&(den * 2u32));
                if scaled.is_negative() {
                    -mag
                } else {
                    mag
                }
            }
        };
        let negative = q.is_negative();
        let mut body = q.abs().to_string();
        if body.len() <= digits {
            body = format!("{}{}", "0".repeat(digits + 1 - body.len()), body);
        }
        let split = body.len() - digits;
        let (int_part, frac_part) = body.split_at(split);
        let sign = if negative { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac_part}")
        }
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl Add for ExactRational {
    type Output = ExactRational;
    fn add(self, rhs: Self) -> Self {
        ExactRational(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a ExactRational> for &'a ExactRational {
    type Output = ExactRational;
    fn add(self, rhs: &ExactRational) -> ExactRational {
        ExactRational(&self.0 + &rhs.0)
    }
}

impl AddAssign<&ExactRational> for ExactRational {
    fn add_assign(&mut self, rhs: &ExactRational) {
        self.0 += &rhs.0;
    }
}

impl Sub for ExactRational {
    type Output = ExactRational;
    fn sub(self, rhs: Self) -> Self {
        ExactRational(self.0 - rhs.0)
    }
}

impl<'a> Sub<&'a ExactRational> for &'a ExactRational {
    type Output = ExactRational;
    fn sub(self, rhs: &ExactRational) -> ExactRational {
        ExactRational(&self.0 - &rhs.0)
    }
}

impl Neg for ExactRational {
    type Output = ExactRational;
    fn neg(self) -> Self {
        ExactRational(-self.0)
    }
}

impl std::iter::Sum for ExactRational {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(ExactRational::zero(), |acc, x| acc + x)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

/// Parses `a/b`, integers, and finite decimals such as `0.00082` exactly.
impl FromStr for ExactRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::InvalidInput(format!("not a rational literal: {s:?}"));
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
            let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
            return ExactRational::new(num, den).ok_or_else(bad);
        }
        let (negative, unsigned) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        let (int_part, frac_part) = unsigned.split_once('.').unwrap_or((unsigned, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{int_part}{frac_part}");
        let num = BigInt::from_str(&digits).map_err(|_| bad())?;
        let den = BigInt::from(10u32).pow(frac_part.len() as u32);
        let value = ExactRational::new(num, den).ok_or_else(bad)?;
        Ok(if negative { -value } else { value })
    }
}

impl PartialEq<BigRational> for ExactRational {
    fn eq(&self, other: &BigRational) -> bool {
        self.0 == *other
    }
}

pub fn compare(a: &ExactRational, b: &ExactRational) -> Ordering {
    a.cmp(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n, d).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(r(1, 12) + r(1, 40) - r(1, 120), r(1, 10));
        let a = r(-7, 33);
        assert_eq!(a.clone() + (-a), ExactRational::zero());
        assert_eq!(ExactRational::zero().denominator(), &BigInt::one());
        assert_eq!(compare(&r(1, 3), &r(1, 2)), Ordering::Less);
    }

    #[test]
    fn always_reduced() {
        let x = r(6, -8);
        assert_eq!(x.numerator(), &BigInt::from(-3));
        assert_eq!(x.denominator(), &BigInt::from(4));
        assert!(ExactRational::new(1, 0).is_none());
    }

    #[test]
    fn decimal_rounding() {
        assert_eq!(r(1, 3).to_decimal(6, Rounding::Down), "0.333333");
        assert_eq!(r(1, 3).to_decimal(6, Rounding::Up), "0.333334");
        assert_eq!(r(2, 3).to_decimal(6, Rounding::Nearest), "0.666667");
        assert_eq!(r(-1, 3).to_decimal(6, Rounding::Down), "-0.333334");
        assert_eq!(r(-1, 3).to_decimal(6, Rounding::Up), "-0.333333");
        assert_eq!(r(1, 2).to_decimal(0, Rounding::Nearest), "1");
        assert_eq!(r(5, 1).to_decimal(2, Rounding::Down), "5.00");
        assert_eq!(r(1, 1000).to_decimal(3, Rounding::Up), "0.001");
        assert_eq!(r(-1, 200).to_decimal(2, Rounding::Nearest), "-0.01");
    }

    #[test]
    fn parse_literals() {
        assert_eq!("0.00082".parse::<ExactRational>().unwrap(), r(41, 50_000));
        assert_eq!("1/2".parse::<ExactRational>().unwrap(), r(1, 2));
        assert_eq!("3".parse::<ExactRational>().unwrap(), r(3, 1));
        assert_eq!(".5".parse::<ExactRational>().unwrap(), r(1, 2));
        assert_eq!("-0.25".parse::<ExactRational>().unwrap(), r(-1, 4));
        for bad in ["", ".", "1/0", "abc", "1e-3", "0.1.2"] {
            assert!(bad.parse::<ExactRational>().is_err(), "{bad}");
        }
    }
}
