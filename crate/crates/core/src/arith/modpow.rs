use num_bigint::BigUint;
use num_traits::Zero;

#[inline]
pub fn mul_mod(a: u64, b: u64, modulus: u64) -> u64 {
    ((a as u128 * b as u128) % modulus as u128) as u64
}

/// `base^exponent mod modulus` by right-to-left square-and-multiply.
///
/// Panics if `modulus == 0`.
pub fn pow_mod(base: u64, mut exponent: u64, modulus: u64) -> u64 {
    assert!(modulus >= 1, "modulus must be positive");
    if modulus == 1 {
        return 0;
    }
    let mut result = 1u64;
    let mut b = base % modulus;
    while exponent > 0 {
        if exponent & 1 == 1 {
            result = mul_mod(result, b, modulus);
        }
        b = mul_mod(b, b, modulus);
        exponent >>= 1;
    }
    result
}

pub fn pow_mod_big(base: &BigUint, exponent: &BigUint, modulus: &BigUint) -> BigUint {
    assert!(!modulus.is_zero(), "modulus must be positive");
    base.modpow(exponent, modulus)
}
