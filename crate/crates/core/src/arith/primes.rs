use std::sync::OnceLock;

use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::SeedableRng;

use super::modpow::{mul_mod, pow_mod};

/// Upper end of the cached trial-division table.
pub const TRIAL_LIMIT: u32 = 1_000_000;

/// Miller-Rabin rounds above the deterministic range.
pub const PROBABILISTIC_ROUNDS: usize = 64;

static SMALL_PRIMES: OnceLock<Vec<u32>> = OnceLock::new();

/// All primes `<= TRIAL_LIMIT`, built once and shared between threads.
pub fn small_primes() -> &'static [u32] {
    SMALL_PRIMES.get_or_init(|| primes_up_to(TRIAL_LIMIT as u64).into_iter().map(|p| p as u32).collect())
}

/// Sieve of Eratosthenes over odd numbers only.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    // slot i stands for 2i + 1
    let slots = limit.div_ceil(2) as usize;
    let mut composite = vec![false; slots];
    let mut i = 1usize;
    while (2 * i + 1) * (2 * i + 1) <= limit as usize {
        if !composite[i] {
            let p = 2 * i + 1;
            let mut j = (p * p) / 2;
            while j < slots {
                composite[j] = true;
                j += p;
            }
        }
        i += 1;
    }
    let mut out = vec![2];
    out.extend((1..slots).filter(|&i| !composite[i]).map(|i| 2 * i as u64 + 1));
    out
}

/// The first `count` odd primes: 3, 5, 7, ...
pub fn odd_primes(count: usize) -> Vec<u64> {
    if count == 0 {
        return Vec::new();
    }
    // p_n < n (ln n + ln ln n) for n >= 6; one extra prime covers the skipped 2
    let n = (count + 1) as f64;
    let mut bound = if count < 6 { 15 } else { (n * (n.ln() + n.ln().ln())).ceil() as u64 + 1 };
    loop {
        let primes = primes_up_to(bound);
        if primes.len() > count {
            return primes[1..=count].to_vec();
        }
        bound *= 2;
    }
}

/// Deterministic Miller-Rabin; the first twelve prime bases are sufficient
/// for every `n < 3.3 * 10^24`, so in particular for all of `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn seeded_rng(n: &BigUint) -> StdRng {
    let seed = n.iter_u64_digits().fold(0x9e37_79b9_7f4a_7c15u64, |acc, d| acc.rotate_left(7) ^ d);
    StdRng::seed_from_u64(seed)
}

/// Primality for arbitrary size: exact below 2^64, otherwise trial division
/// by small primes followed by [`PROBABILISTIC_ROUNDS`] random-base
/// Miller-Rabin rounds. The bases are seeded from `n`, so verdicts are
/// reproducible.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for &p in small_primes().iter().take(200) {
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let mut rng = seeded_rng(n);
    'witness: for _ in 0..PROBABILISTIC_ROUNDS {
        let a = rng.gen_biguint_range(&two, &n_minus_1);
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub(crate) fn rng_for(n: &BigUint) -> StdRng {
    seeded_rng(n)
}
