//! Number-theoretic primitives shared by the rest of the crate.

mod factor;
mod modpow;
mod primes;
mod rational;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

pub use factor::{factorize, factorize_u64, FactorConfig, Factorization};
pub use modpow::{mul_mod, pow_mod, pow_mod_big};
pub use primes::{is_prime, is_prime_u64, odd_primes, primes_up_to, small_primes, PROBABILISTIC_ROUNDS, TRIAL_LIMIT};
pub use rational::{compare, ExactRational, Rounding};

/// Euler's totient `∏ p^(e-1) (p - 1)`.
pub fn euler_phi(f: &Factorization) -> BigUint {
    f.factors()
        .iter()
        .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(e - 1) * (p - 1u32))
}

/// Carmichael's function: the exponent of `(Z/nZ)^*`.
pub fn carmichael_lambda(f: &Factorization) -> BigUint {
    f.factors().iter().fold(BigUint::one(), |acc, (p, e)| {
        let part = if *p == BigUint::from(2u32) {
            match e {
                1 => BigUint::one(),
                2 => BigUint::from(2u32),
                _ => BigUint::one() << (e - 2),
            }
        } else {
            p.pow(e - 1) * (p - 1u32)
        };
        acc.lcm(&part)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(n: u64) -> Factorization {
        factorize(&BigUint::from(n), &FactorConfig::default()).unwrap()
    }

    fn phi_brute(n: u64) -> u64 {
        (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
    }

    fn lambda_brute(n: u64) -> u64 {
        // smallest e with a^e = 1 for all units a
        (1..=n)
            .find(|&e| (1..=n).filter(|a| a.gcd(&n) == 1).all(|a| pow_mod(a, e, n) == 1 % n))
            .unwrap()
    }

    #[test]
    fn phi_examples() {
        assert_eq!(euler_phi(&f(15)), BigUint::from(8u32));
        assert_eq!(euler_phi(&f(1)), BigUint::one());
        assert_eq!(euler_phi(&f(2021)), BigUint::from(1932u32));
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(carmichael_lambda(&f(15)), BigUint::from(4u32));
        assert_eq!(carmichael_lambda(&f(1)), BigUint::one());
        assert_eq!(carmichael_lambda(&f(105)), BigUint::from(12u32));
        assert_eq!(carmichael_lambda(&f(8)), BigUint::from(2u32));
        assert_eq!(carmichael_lambda(&f(4)), BigUint::from(2u32));
        assert_eq!(carmichael_lambda(&f(2)), BigUint::one());
        assert_eq!(carmichael_lambda(&f(64)), BigUint::from(16u32));
    }

    #[test]
    fn against_brute_force() {
        for n in 1..=300u64 {
            assert_eq!(euler_phi(&f(n)), BigUint::from(phi_brute(n)), "phi({n})");
            assert_eq!(carmichael_lambda(&f(n)), BigUint::from(lambda_brute(n)), "lambda({n})");
        }
    }

    #[test]
    fn lambda_divides_phi() {
        for n in 1..=100_000u64 {
            let fact = f(n);
            let (l, p) = (carmichael_lambda(&fact), euler_phi(&fact));
            assert!(p.is_multiple_of(&l), "lambda({n}) = {l} does not divide phi = {p}");
        }
    }
}
