//! Complement sieve: marks every odd `n <= N` lying in some
//! `F_p = p² mod 2p(p-1)`. Unmarked odd numbers are exactly the members.
//!
//! Only primes `p <= √N` contribute because `min F_p = p²`. Bit `i` of a
//! bitmap stands for the odd number `2i + 1`; `F_p` becomes the slot
//! progression `(p² - 1)/2 + t · p(p-1)`.

use std::io::{self, Write};

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::arith::{primes_up_to, FactorConfig};
use crate::membership::{g_mod, is_member};

/// Odd slots per segment.
pub const DEFAULT_SEGMENT_SLOTS: usize = 1 << 24;
/// Largest `N` accepted by [`cross_validate`].
pub const CROSS_VALIDATE_LIMIT: u64 = 100_000;
/// Largest `n` compared against the power-sum oracle.
pub const ORACLE_CROSS_LIMIT: u64 = 10_000;

#[derive(Debug, Clone)]
pub struct SieveConfig {
    pub segment_slots: usize,
}

impl Default for SieveConfig {
    fn default() -> Self {
        SieveConfig { segment_slots: DEFAULT_SEGMENT_SLOTS }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SieveResult {
    pub limit: u64,
    pub member_count: u64,
    /// `member_count / limit`
    pub density: f64,
    pub marked_complement_count: u64,
}

impl SieveResult {
    fn new(limit: u64, member_count: u64) -> Self {
        SieveResult {
            limit,
            member_count,
            density: member_count as f64 / limit as f64,
            marked_complement_count: odd_count(limit) - member_count,
        }
    }
}

/// Number of odd integers in `1..=n`.
pub fn odd_count(n: u64) -> u64 {
    n.div_ceil(2)
}

fn blocking_primes(limit: u64) -> Vec<u64> {
    primes_up_to(limit.isqrt()).into_iter().filter(|&p| p > 2).collect()
}

/// Marks slots `lo..hi` into `words` (bit 0 of `words[0]` is slot `lo`).
fn mark_segment(words: &mut [u64], lo: u64, hi: u64, primes: &[u64]) {
    for &p in primes {
        let first = (p * p - 1) / 2;
        if first >= hi {
            break;
        }
        let step = p * (p - 1);
        let mut slot = if first >= lo { first } else { first + (lo - first).div_ceil(step) * step };
        while slot < hi {
            let off = (slot - lo) as usize;
            words[off / 64] |= 1 << (off % 64);
            slot += step;
        }
    }
}

/// Membership bitmap over the odd numbers up to `limit`.
#[derive(Debug, Clone)]
pub struct MembershipBitmap {
    limit: u64,
    marked: Vec<u64>,
}

impl MembershipBitmap {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// `true` if odd `n <= limit` lies in some `F_p`.
    pub fn is_marked(&self, n: u64) -> bool {
        assert!(n % 2 == 1 && n <= self.limit, "{n} is outside the bitmap");
        let slot = (n / 2) as usize;
        self.marked[slot / 64] >> (slot % 64) & 1 == 1
    }

    pub fn is_member(&self, n: u64) -> bool {
        !self.is_marked(n)
    }

    pub fn marked(&self) -> impl Iterator<Item = u64> + '_ {
        (1..=self.limit).step_by(2).filter(|&n| self.is_marked(n))
    }

    pub fn members(&self) -> impl Iterator<Item = u64> + '_ {
        (1..=self.limit).step_by(2).filter(|&n| self.is_member(n))
    }
}

/// Full (unsegmented) bitmap; meant for moderate `limit`.
pub fn complement_sieve(limit: u64) -> MembershipBitmap {
    let slots = odd_count(limit);
    let mut marked = vec![0u64; (slots as usize).div_ceil(64)];
    mark_segment(&mut marked, 0, slots, &blocking_primes(limit));
    MembershipBitmap { limit, marked }
}

/// Member count up to `limit` with the default segment size.
pub fn empirical_density(limit: u64) -> SieveResult {
    empirical_density_with(limit, &SieveConfig::default())
}

/// Member count up to `limit`; segments are sieved independently and in
/// parallel, so memory stays at one segment bitmap per worker.
pub fn empirical_density_with(limit: u64, config: &SieveConfig) -> SieveResult {
    assert!(config.segment_slots > 0, "segment size must be positive");
    let slots = odd_count(limit);
    let primes = blocking_primes(limit);
    let seg = config.segment_slots as u64;
    let segments = slots.div_ceil(seg);
    let marked: u64 = (0..segments)
        .into_par_iter()
        .map(|s| {
            let lo = s * seg;
            let hi = (lo + seg).min(slots);
            let mut words = vec![0u64; ((hi - lo) as usize).div_ceil(64)];
            mark_segment(&mut words, lo, hi, &primes);
            words.iter().map(|w| w.count_ones() as u64).sum::<u64>()
        })
        .sum();
    SieveResult::new(limit, slots - marked)
}

/// One [`SieveResult`] per checkpoint, in the order given.
pub fn checkpoint_counts(checkpoints: &[u64], config: &SieveConfig) -> Vec<SieveResult> {
    checkpoints.iter().map(|&n| empirical_density_with(n, config)).collect()
}

/// CSV with header `N,member_count,density`.
pub fn write_checkpoints_csv<W: Write>(results: &[SieveResult], mut out: W) -> io::Result<()> {
    writeln!(out, "N,member_count,density")?;
    for r in results {
        writeln!(out, "{},{},{:.6}", r.limit, r.member_count, r.density)?;
    }
    Ok(())
}

/// An odd `n` on which the three membership tests disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub n: u64,
    /// `g_mod(n) == 0`, evaluated only for `n <= ORACLE_CROSS_LIMIT`.
    pub oracle: Option<bool>,
    pub theorem: bool,
    pub sieve: bool,
}

/// Compares the power-sum oracle, the factorization test and the sieve on
/// every odd `n <= limit`.
pub fn cross_validate(limit: u64) -> Result<Vec<Mismatch>, crate::Error> {
    if limit > CROSS_VALIDATE_LIMIT {
        return Err(crate::Error::InvalidInput(format!("cross validation is limited to N <= {CROSS_VALIDATE_LIMIT}")));
    }
    let bitmap = complement_sieve(limit);
    let oracle_limit = limit.min(ORACLE_CROSS_LIMIT);
    let cfg = FactorConfig::default();
    let odds: Vec<u64> = (1..=limit).step_by(2).collect();
    let mismatches = odds
        .par_iter()
        .filter_map(|&n| {
            let theorem = is_member(&BigUint::from(n), &cfg).expect("odd input below 2^64").member;
            let sieve = bitmap.is_member(n);
            let oracle = (n <= oracle_limit).then(|| g_mod(n) == 0);
            let consistent = theorem == sieve && oracle.is_none_or(|o| o == theorem);
            (!consistent).then_some(Mismatch { n, oracle, theorem, sieve })
        })
        .collect();
    Ok(mismatches)
}
