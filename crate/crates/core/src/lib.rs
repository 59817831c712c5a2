//! Decide membership in the set of odd integers `n` for which
//!
//! ```text
//! G(n) = 1^((n-1)/2) + 2^((n-1)/2) + ... + (n-1)^((n-1)/2) ≡ 0 (mod n)
//! ```
//!
//! and compute the asymptotic density of that set.
//!
//! Every odd prime belongs to the set (Euler's criterion makes the sum of
//! Legendre symbols vanish). In general an odd `n` is a member iff no prime
//! `p | n` has `p - 1 | (n - 1)/2`, which turns the complement into a union
//! of residue classes `p² mod 2p(p-1)`. The [`density`] module sums that
//! union exactly by inclusion-exclusion; [`sieve`] counts it empirically.
//!
//! ```
//! use giuga_half::membership::{classify, ClassifyConfig};
//! use num_bigint::BigUint;
//!
//! let rec = classify(&BigUint::from(2021u32), &ClassifyConfig::default()).unwrap();
//! assert!(rec.member);
//! let rec = classify(&BigUint::from(25u32), &ClassifyConfig::default()).unwrap();
//! assert_eq!(rec.witness_prime, Some(BigUint::from(5u32)));
//! ```

pub mod arith;
pub mod cli;
pub mod density;
pub mod error;
pub mod membership;
pub mod sieve;

pub use error::{Error, Result};
