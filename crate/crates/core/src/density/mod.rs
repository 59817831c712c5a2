//! Exact density of the member set.
//!
//! An odd `n` fails membership iff it lies in some `F_p = p² mod 2p(p-1)`.
//! The density of `⋃_{j<k} F_{p_j}` is summed by inclusion-exclusion over
//! the cliques of the [`CompatibilityGraph`], since a family of `F_p`'s
//! meets iff the primes are pairwise compatible. The density of the member
//! set is then `1/2` minus that union, up to the tail beyond `p_{k-1}`.

mod graph;
mod progression;
mod truncation;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::arith::{odd_primes, primes_up_to, ExactRational, Rounding};

pub use graph::{compatible, CompatibilityGraph};
pub use progression::{crt, in_m, intersect_progressions, progression_for_prime, Progression};
pub use truncation::{tail_bounds, truncation_index, TailBounds};

/// Digits printed for interval endpoints.
pub const DECIMAL_DIGITS: usize = 6;

/// Density of `⋃_{p ∈ primes} F_p` for distinct odd primes.
///
/// All terms are brought to the common denominator
/// `2 · ∏ p · lcm(p - 1)`, summed as integers, and reduced once.
pub fn union_density_of(primes: &[u64]) -> ExactRational {
    if primes.is_empty() {
        return ExactRational::zero();
    }
    let graph = CompatibilityGraph::new(primes);
    let product: BigUint = primes.iter().map(|&p| BigUint::from(p)).product();
    let lcm = primes.iter().fold(BigUint::one(), |acc, &p| acc.lcm(&BigUint::from(p - 1)));
    let common = (product * lcm) << 1u32;

    let partials: Vec<BigInt> = (0..graph.len())
        .into_par_iter()
        .map(|first| {
            let mut acc = BigInt::zero();
            graph.for_each_clique_from(first, &mut |clique, m, lambda| {
                let term = BigInt::from(&common / ((m * lambda) << 1u32));
                if clique.len() % 2 == 1 {
                    acc += term;
                } else {
                    acc -= term;
                }
            });
            acc
        })
        .collect();
    let total: BigInt = partials.into_iter().sum();
    ExactRational::new(total, BigInt::from(common)).expect("nonzero denominator")
}

/// Density of `⋃_{j<k} F_{p_j}`, i.e. the union over the first `k - 1`
/// odd primes.
pub fn union_density(k: usize) -> ExactRational {
    assert!(k >= 1, "k starts at 1");
    union_density_of(&odd_primes(k - 1))
}

/// `Σ (-1)^ω(m) / (2 m λ(m))` over `m = 1` and every `m ∈ M` built from odd
/// primes below `prime_bound`.
///
/// Subsets are grown one prime at a time and pruned as soon as
/// `gcd(m, φ(m)) > 1`, which no superset can repair.
pub fn series_partial_sum(prime_bound: u64) -> ExactRational {
    assert!(prime_bound >= 2, "prime_bound must be at least 2");
    let primes: Vec<u64> = primes_up_to(prime_bound - 1).into_iter().filter(|&p| p > 2).collect();
    let head = ExactRational::new(1, 2).expect("nonzero");
    let rest: Vec<ExactRational> = (0..primes.len())
        .into_par_iter()
        .map(|i| {
            let p = primes[i];
            series_subtree(&primes[i + 1..], &BigUint::from(p), &BigUint::from(p - 1), &BigUint::from(p - 1), 1)
        })
        .collect();
    rest.into_iter().fold(head, |acc, x| acc + x)
}

fn series_subtree(later: &[u64], m: &BigUint, phi: &BigUint, lambda: &BigUint, omega: usize) -> ExactRational {
    let den = (m * lambda) << 1u32;
    let mut sum = ExactRational::signed_unit_fraction(omega % 2 == 1, den);
    for (i, &q) in later.iter().enumerate() {
        let m_next = m * q;
        let phi_next = phi * (q - 1);
        if !m_next.gcd(&phi_next).is_one() {
            continue;
        }
        let lambda_next = lambda.lcm(&BigUint::from(q - 1));
        sum += &series_subtree(&later[i + 1..], &m_next, &phi_next, &lambda_next, omega + 1);
    }
    sum
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityReport {
    pub epsilon: ExactRational,
    pub k: usize,
    /// `p_1 ..= p_{k-1}`
    pub primes_used: Vec<u64>,
    pub union_density: ExactRational,
    pub lower: ExactRational,
    pub upper: ExactRational,
    pub decimal_lower: String,
    pub decimal_upper: String,
}

/// Interval `[1/2 - union - eps, 1/2 - union]` containing the density of
/// the member set, with `union` taken over the primes before `p_k`,
/// `k = truncation_index(eps)`.
pub fn density_interval(eps: &ExactRational) -> DensityReport {
    let k = truncation_index(eps);
    let primes_used = odd_primes(k - 1);
    let union = union_density_of(&primes_used);
    let half = ExactRational::new(1, 2).expect("nonzero");
    let upper = &half - &union;
    let lower = &upper - eps;
    DensityReport {
        epsilon: eps.clone(),
        k,
        primes_used,
        decimal_lower: lower.to_decimal(DECIMAL_DIGITS, Rounding::Down),
        decimal_upper: upper.to_decimal(DECIMAL_DIGITS, Rounding::Up),
        union_density: union,
        lower,
        upper,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n, d).unwrap()
    }

    #[test]
    fn small_unions() {
        assert_eq!(union_density(1), ExactRational::zero());
        assert_eq!(union_density(2), r(1, 12));
        assert_eq!(union_density(3), r(1, 10));
        // 1/12 + 1/40 + 1/84 - 1/120 - 1/840
        assert_eq!(union_density(4), r(93, 840));
    }

    #[test]
    fn small_series() {
        assert_eq!(series_partial_sum(2), r(1, 2));
        assert_eq!(series_partial_sum(3), r(1, 2));
        assert_eq!(series_partial_sum(7), r(2, 5));
        assert_eq!(series_partial_sum(6), r(2, 5));
    }

    #[test]
    fn interval_with_maximal_slack() {
        let rep = density_interval(&r(1, 2));
        assert_eq!(rep.k, 1);
        assert!(rep.primes_used.is_empty());
        assert_eq!(rep.lower, ExactRational::zero());
        assert_eq!(rep.upper, r(1, 2));
        assert_eq!((rep.decimal_lower.as_str(), rep.decimal_upper.as_str()), ("0.000000", "0.500000"));
    }

    #[test]
    fn interval_one_percent() {
        let eps = r(1, 100);
        let rep = density_interval(&eps);
        assert_eq!(&rep.upper - &rep.lower, eps);
        let target = r(3798, 10_000);
        assert!(rep.lower < target && target < rep.upper);
        assert_eq!(rep.k, truncation_index(&eps));
    }
}
