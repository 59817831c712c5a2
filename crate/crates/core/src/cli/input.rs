use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::arith::Factorization;
use crate::error::{Error, Result};

/// Upper bound on exponents accepted in `b^e` literals.
const MAX_EXPONENT: u32 = 1 << 20;

/// An integer given on the command line as a decimal literal, `2^m+1`,
/// or `p^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumberInput {
    pub value: BigUint,
    /// Known factorization when the input was `p^k` with `p` prime.
    pub factorization: Option<Factorization>,
}

fn parse_natural(s: &str) -> Result<BigUint> {
    let s = s.trim();
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::InvalidInput(format!("not a decimal integer: {s:?}")));
    }
    BigUint::from_str(s).map_err(|e| Error::InvalidInput(e.to_string()))
}

fn parse_exponent(s: &str) -> Result<u32> {
    let e = parse_natural(s)?;
    u32::try_from(e)
        .ok()
        .filter(|&e| e <= MAX_EXPONENT)
        .ok_or_else(|| Error::InvalidInput(format!("exponent {s} exceeds {MAX_EXPONENT}")))
}

impl FromStr for NumberInput {
    type Err = Error;

    fn from_str(raw: &str) -> Result<Self> {
        let s: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
        let Some((base, rest)) = s.split_once('^') else {
            return Ok(NumberInput { value: parse_natural(&s)?, factorization: None });
        };
        let (exponent, plus_one) = match rest.strip_suffix("+1") {
            Some(e) => (e, true),
            None => (rest, false),
        };
        let base = parse_natural(base)?;
        let exponent = parse_exponent(exponent)?;
        let power = base.pow(exponent);
        if plus_one {
            return Ok(NumberInput { value: power + BigUint::one(), factorization: None });
        }
        let factorization = if exponent > 0 { Factorization::prime_power(base, exponent) } else { None };
        Ok(NumberInput { value: power, factorization })
    }
}
