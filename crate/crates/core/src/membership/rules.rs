//! Sufficient conditions for membership, each usable on its own.
//!
//! Every rule returns `None` when it has nothing to say. Only
//! [`rule_prime_power`] and [`rule_fermat_form`] can reject.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{carmichael_lambda, euler_phi, is_prime_u64, mul_mod, Factorization};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Member,
    NonMember,
}

/// `n ≡ 3 (mod 4)` forces membership: `(n-1)/2` is odd, so no even `p - 1` divides it.
pub fn rule_mod4(n: &BigUint) -> Option<Verdict> {
    let r = (n % 4u32).to_u32().unwrap_or(0);
    (r == 3).then_some(Verdict::Member)
}

/// `p^k` with `p` odd is a member iff `k` is odd.
pub fn rule_prime_power(f: &Factorization) -> Option<Verdict> {
    match f.factors() {
        [(p, k)] if p.is_odd() => Some(if k % 2 == 1 { Verdict::Member } else { Verdict::NonMember }),
        _ => None,
    }
}

fn half_pred(f: &Factorization) -> Option<BigUint> {
    let n = f.value();
    if n.is_even() || *n < BigUint::from(3u32) {
        return None;
    }
    Some((n - 1u32) >> 1)
}

/// `gcd((n-1)/2, φ(n))` odd.
pub fn rule_gcd_phi_odd(f: &Factorization) -> Option<Verdict> {
    let h = half_pred(f)?;
    h.gcd(&euler_phi(f)).is_odd().then_some(Verdict::Member)
}

/// `gcd((n-1)/2, λ(n))` odd.
pub fn rule_gcd_lambda_odd(f: &Factorization) -> Option<Verdict> {
    let h = half_pred(f)?;
    h.gcd(&carmichael_lambda(f)).is_odd().then_some(Verdict::Member)
}

/// Either of the two gcd-parity conditions.
pub fn rule_gcd_parity(f: &Factorization) -> Option<Verdict> {
    rule_gcd_phi_odd(f).or_else(|| rule_gcd_lambda_odd(f))
}

/// Member if `p - 1 ∤ n / p^{r_p} - 1` for every prime power `p^{r_p} ∥ n`.
pub fn rule_cofactor(f: &Factorization) -> Option<Verdict> {
    let n = f.value();
    if n.is_even() || *n < BigUint::from(3u32) {
        return None;
    }
    let blocked = f.factors().iter().enumerate().any(|(i, (p, _))| {
        let cofactor = n / f.prime_power_part(i) - 1u32;
        (cofactor % (p - 1u32)).is_zero()
    });
    (!blocked).then_some(Verdict::Member)
}

/// `m` when `n = 2^m + 1` with `m >= 1`.
pub fn fermat_exponent(n: &BigUint) -> Option<u64> {
    if *n < BigUint::from(3u32) {
        return None;
    }
    let m = n - 1u32;
    let bits = m.bits() - 1;
    (m == BigUint::one() << bits).then_some(bits)
}

/// Largest 2-adic order of a Fermat number tested directly with Pépin's test.
const PEPIN_MAX_ALPHA: u32 = 13;
/// Multipliers `t` tried for factors `t·2^(α+2) + 1` of larger Fermat numbers.
const FERMAT_FACTOR_SEARCH: u64 = 1 << 20;

/// Primality of `F_α = 2^(2^α) + 1`, when it can be settled quickly.
pub fn fermat_number_is_prime(alpha: u32) -> Option<bool> {
    if alpha <= 4 {
        let f = (1u64 << (1u32 << alpha)) + 1;
        return Some(is_prime_u64(f));
    }
    if alpha <= PEPIN_MAX_ALPHA {
        let f = (BigUint::one() << (1usize << alpha)) + 1u32;
        let e = (&f - 1u32) >> 1;
        let r = BigUint::from(3u32).modpow(&e, &f);
        return Some(r == &f - 1u32);
    }
    if alpha >= 63 {
        return None;
    }
    // every prime factor of F_α is ≡ 1 (mod 2^(α+2))
    let step = 1u64 << (alpha + 2);
    for t in 1..=FERMAT_FACTOR_SEARCH {
        let Some(q) = t.checked_mul(step).and_then(|v| v.checked_add(1)) else { break };
        let mut x = 2 % q;
        for _ in 0..alpha {
            x = mul_mod(x, x, q);
        }
        if x == q - 1 {
            return Some(false);
        }
    }
    None
}

/// Verdict for `n = 2^m + 1` without factoring `n`.
///
/// Writing `m = 2^α m₁` with `m₁ > 1` odd, `n` is a member unless
/// `2^(2^α) + 1` is prime. No verdict when `m` is a power of two or the
/// Fermat number is out of reach.
pub fn rule_fermat_form(m: u64) -> Option<Verdict> {
    if m == 0 {
        return None;
    }
    let alpha = m.trailing_zeros();
    if m >> alpha == 1 {
        return None;
    }
    let prime = fermat_number_is_prime(alpha)?;
    Some(if prime { Verdict::NonMember } else { Verdict::Member })
}

/// Fermat prime `2^(2^α) + 1` dividing `2^m + 1` when [`rule_fermat_form`] rejects.
pub fn fermat_witness(m: u64) -> Option<BigUint> {
    match rule_fermat_form(m)? {
        Verdict::NonMember => Some((BigUint::one() << (1u64 << m.trailing_zeros())) + 1u32),
        Verdict::Member => None,
    }
}
