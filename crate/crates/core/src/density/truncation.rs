//! Rigorous evaluation of the prime tail `Σ_{j ≥ k} 1/(2 p_j (p_j - 1))`.
//!
//! Terms for primes up to a cutoff `X` are accumulated in fixed point with
//! separate floor and ceiling sums; everything beyond `X` is bounded above
//! by the integer telescoping sum `Σ_{n > X} 1/(2n(n-1)) = 1/(2X)`.

use num_bigint::BigInt;

use crate::arith::{primes_up_to, ExactRational};

/// Fixed-point scale, `10^30`; partial sums stay far below `u128::MAX`.
const SCALE: u128 = 1_000_000_000_000_000_000_000_000_000_000;
const INITIAL_CUTOFF: u64 = 1 << 16;

/// Bracket `[low, high]` (scaled by `SCALE`) around a tail sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TailBounds {
    pub low: u128,
    pub high: u128,
}

/// Tail brackets for every index `k = 1 ..= K + 1`, where `K` is the number
/// of odd primes `<= cutoff`. Entry `k - 1` brackets the tail starting at
/// `p_k`; the last entry covers primes beyond the cutoff only.
pub fn tail_bounds(cutoff: u64) -> Vec<TailBounds> {
    let primes: Vec<u64> = primes_up_to(cutoff).into_iter().skip(1).collect();
    let beyond = SCALE.div_ceil(2 * cutoff as u128);
    let mut out = vec![TailBounds { low: 0, high: beyond }; primes.len() + 1];
    for (i, &p) in primes.iter().enumerate().rev() {
        let den = 2 * p as u128 * (p as u128 - 1);
        let next = out[i + 1];
        out[i] = TailBounds { low: next.low + SCALE / den, high: next.high + SCALE.div_ceil(den) };
    }
    out
}

fn below(scaled: u128, eps: &ExactRational) -> bool {
    // scaled / SCALE < num / den
    BigInt::from(scaled) * eps.denominator() < eps.numerator() * BigInt::from(SCALE)
}

/// Minimal `k` with `Σ_{j ≥ k} 1/(2 p_j (p_j - 1)) < eps`, odd primes
/// indexed from `p_1 = 3`.
///
/// Doubles the cutoff until the bracket for `k` lies below `eps` and the
/// bracket for `k - 1` lies at or above it.
pub fn truncation_index(eps: &ExactRational) -> usize {
    assert!(eps.is_positive(), "epsilon must be positive");
    let mut cutoff = INITIAL_CUTOFF;
    loop {
        let bounds = tail_bounds(cutoff);
        if let Some(pos) = bounds.iter().position(|b| below(b.high, eps)) {
            if pos == 0 || !below(bounds[pos - 1].low, eps) {
                return pos + 1;
            }
        }
        cutoff *= 2;
    }
}
