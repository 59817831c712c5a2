use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::{BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::modpow::mul_mod;
use super::primes::{is_prime, is_prime_u64, rng_for, small_primes};
use crate::error::{Error, Result};

/// Prime factorization `value = ∏ prime^exponent` with primes ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    factors: Vec<(BigUint, u32)>,
    value: BigUint,
}

impl Factorization {
    /// Builds from arbitrary (prime, exponent) pairs: merges repeats,
    /// sorts, and drops zero exponents. Primality is the caller's promise.
    pub(crate) fn from_pairs(mut pairs: Vec<(BigUint, u32)>) -> Self {
        pairs.retain(|(_, e)| *e > 0);
        pairs.sort();
        let mut factors: Vec<(BigUint, u32)> = Vec::with_capacity(pairs.len());
        for (p, e) in pairs {
            match factors.last_mut() {
                Some((q, f)) if *q == p => *f += e,
                _ => factors.push((p, e)),
            }
        }
        let value = factors.iter().fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e));
        Factorization { factors, value }
    }

    /// `p^k` for a prime `p`; `None` if `p` fails the primality check or `k == 0`.
    pub fn prime_power(p: BigUint, k: u32) -> Option<Self> {
        if k == 0 || !is_prime(&p) {
            return None;
        }
        Some(Self::from_pairs(vec![(p, k)]))
    }

    pub fn one() -> Self {
        Factorization { factors: Vec::new(), value: BigUint::one() }
    }

    pub fn factors(&self) -> &[(BigUint, u32)] {
        &self.factors
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigUint> {
        self.factors.iter().map(|(p, _)| p)
    }

    /// Number of distinct prime factors.
    pub fn omega(&self) -> usize {
        self.factors.len()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, e)| *e == 1)
    }

    /// `p^{r_p}`, the exact power of `p` dividing the value.
    pub fn prime_power_part(&self, index: usize) -> BigUint {
        let (p, e) = &self.factors[index];
        p.pow(*e)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct FactorConfig {
    /// Wall-clock budget for splitting cofactors above 2^64.
    pub budget: Duration,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig { budget: Duration::from_secs(10) }
    }
}

/// Factorizes `n >= 1`.
///
/// Trial division by the primes below 10^6, then Brent's variant of
/// Pollard rho. Cofactors below 2^64 always split; larger ones are
/// subject to `config.budget`.
pub fn factorize(n: &BigUint, config: &FactorConfig) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::InvalidInput("cannot factorize 0".into()));
    }
    if let Some(small) = n.to_u64() {
        let pairs = factorize_u64(small).into_iter().map(|(p, e)| (BigUint::from(p), e)).collect();
        return Ok(Factorization::from_pairs(pairs));
    }

    let mut pairs = Vec::new();
    let mut rest = n.clone();
    for &p in small_primes() {
        if (&rest % p).is_zero() {
            let mut e = 0;
            while (&rest % p).is_zero() {
                rest /= p;
                e += 1;
            }
            pairs.push((BigUint::from(p), e));
            if let Some(small) = rest.to_u64() {
                break_small(small, &mut pairs);
                return Ok(Factorization::from_pairs(pairs));
            }
        }
    }

    let deadline = Instant::now() + config.budget;
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if let Some(small) = m.to_u64() {
            break_small(small, &mut pairs);
        } else if is_prime(&m) {
            pairs.push((m, 1));
        } else {
            let d = rho_big(&m, deadline).ok_or_else(|| Error::FactorizationTimeout {
                n: n.clone(),
                budget: config.budget,
            })?;
            let other = &m / &d;
            stack.push(d);
            stack.push(other);
        }
    }
    Ok(Factorization::from_pairs(pairs))
}

fn break_small(small: u64, pairs: &mut Vec<(BigUint, u32)>) {
    pairs.extend(factorize_u64(small).into_iter().map(|(p, e)| (BigUint::from(p), e)));
}

/// Factorization of a machine word as ascending `(prime, exponent)` pairs.
pub fn factorize_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n <= 1 {
        return out;
    }
    for &p in small_primes() {
        let p = p as u64;
        if p * p > n {
            break;
        }
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
    }
    if n > 1 {
        let mut stack = vec![n];
        while let Some(m) = stack.pop() {
            if is_prime_u64(m) {
                match out.iter_mut().find(|(q, _)| *q == m) {
                    Some((_, e)) => *e += 1,
                    None => out.push((m, 1)),
                }
            } else {
                let d = rho_u64(m);
                stack.push(d);
                stack.push(m / d);
            }
        }
        out.sort_unstable();
    }
    out
}

/// A nontrivial divisor of the odd composite `n`.
fn rho_u64(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    if let Some(r) = exact_sqrt(n) {
        return r;
    }
    for c in 1u64.. {
        if let Some(d) = brent_u64(n, c) {
            return d;
        }
    }
    unreachable!()
}

fn exact_sqrt(n: u64) -> Option<u64> {
    let r = (n as f64).sqrt() as u64;
    (r.saturating_sub(1)..=r + 1).find(|&s| s.checked_mul(s) == Some(n))
}

fn brent_u64(n: u64, c: u64) -> Option<u64> {
    const BATCH: u64 = 128;
    let f = |x: u64| (mul_mod(x, x, n) + c) % n;
    let (mut x, mut y, mut ys) = (0u64, 2u64, 2u64);
    let mut q = 1u64;
    let mut g = 1u64;
    let mut r = 1u64;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..BATCH.min(r - k) {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = q.gcd(&n);
            k += BATCH;
        }
        r *= 2;
    }
    if g == n {
        loop {
            ys = f(ys);
            g = x.abs_diff(ys).gcd(&n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

fn rho_big(n: &BigUint, deadline: Instant) -> Option<BigUint> {
    const BATCH: u64 = 64;
    let mut rng = rng_for(n);
    let one = BigUint::one();
    loop {
        let c = rng.gen_biguint_below(n);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = rng.gen_biguint_below(n);
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut q = one.clone();
        let mut g = one.clone();
        let mut r = 1u64;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                if Instant::now() > deadline {
                    return None;
                }
                ys = y.clone();
                for _ in 0..BATCH.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += BATCH;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return Some(g);
        }
    }
}
