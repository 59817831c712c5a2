use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{euler_phi, factorize, ExactRational, FactorConfig};
use crate::error::Result;

/// The residue class `residue mod modulus`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Progression {
    pub residue: BigUint,
    pub modulus: BigUint,
}

impl Progression {
    pub fn new(residue: BigUint, modulus: BigUint) -> Self {
        assert!(!modulus.is_zero(), "modulus must be positive");
        let residue = residue % &modulus;
        Progression { residue, modulus }
    }

    pub fn contains(&self, n: &BigUint) -> bool {
        n % &self.modulus == self.residue
    }

    pub fn contains_u64(&self, n: u64) -> bool {
        BigUint::from(n) % &self.modulus == self.residue
    }

    /// Natural density, `1 / modulus`.
    pub fn density(&self) -> ExactRational {
        ExactRational::signed_unit_fraction(false, self.modulus.clone())
    }

    /// Least positive element.
    pub fn least_positive(&self) -> BigUint {
        if self.residue.is_zero() {
            self.modulus.clone()
        } else {
            self.residue.clone()
        }
    }
}

/// The odd multiples of `p` that `p` blocks from membership:
/// `p² mod 2p(p-1)`.
pub fn progression_for_prime(p: u64) -> Progression {
    assert!(p >= 3 && p % 2 == 1, "expected an odd prime, got {p}");
    let p = BigUint::from(p);
    let modulus = BigUint::from(2u32) * &p * (&p - 1u32);
    Progression::new(&p * &p, modulus)
}

/// `m > 2` with `gcd(m, φ(m)) = 1`.
pub fn in_m(m: &BigUint, config: &FactorConfig) -> Result<bool> {
    if *m <= BigUint::from(2u32) {
        return Ok(false);
    }
    let f = factorize(m, config)?;
    Ok(m.gcd(&euler_phi(&f)).is_one())
}

/// Solution of `x ≡ r1 (mod m1)`, `x ≡ r2 (mod m2)` as `(x, lcm)`, or
/// `None` when the system is inconsistent.
pub fn crt(r1: &BigUint, m1: &BigUint, r2: &BigUint, m2: &BigUint) -> Option<(BigUint, BigUint)> {
    let (m1i, m2i) = (BigInt::from(m1.clone()), BigInt::from(m2.clone()));
    let ext = m1i.extended_gcd(&m2i);
    let g = ext.gcd;
    let diff = BigInt::from(r2.clone()) - BigInt::from(r1.clone());
    if !(&diff % &g).is_zero() {
        return None;
    }
    let lcm = &m1i / &g * &m2i;
    // x = r1 + m1 * ((r2 - r1)/g * inv(m1/g) mod m2/g)
    let step = (&diff / &g * ext.x).mod_floor(&(&m2i / &g));
    let x = (BigInt::from(r1.clone()) + &m1i * step).mod_floor(&lcm);
    Some((to_natural(x), to_natural(lcm)))
}

fn to_natural(x: BigInt) -> BigUint {
    let (sign, mag) = x.into_parts();
    debug_assert!(sign != Sign::Minus);
    mag
}

/// `⋂_{p ∈ primes} F_p`, computed as `n ≡ 1 (mod 2λ(m))`, `n ≡ 0 (mod m)`
/// with `m = ∏ primes`. Empty exactly when `gcd(m, 2λ(m)) > 1`.
pub fn intersect_progressions(primes: &[u64]) -> Option<Progression> {
    assert!(!primes.is_empty(), "need at least one prime");
    let mut m = BigUint::one();
    let mut lambda = BigUint::one();
    for &p in primes {
        assert!(p >= 3 && p % 2 == 1, "expected odd primes, got {p}");
        m *= p;
        lambda = lambda.lcm(&BigUint::from(p - 1));
    }
    let two_lambda = lambda << 1u32;
    if !m.gcd(&two_lambda).is_one() {
        return None;
    }
    let (residue, modulus) = crt(&BigUint::one(), &two_lambda, &BigUint::zero(), &m)?;
    Some(Progression { residue, modulus })
}
