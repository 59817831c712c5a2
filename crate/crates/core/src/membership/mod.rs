//! Membership of odd `n` in the set defined by `G(n) ≡ 0 (mod n)`.
//!
//! [`g_mod`] evaluates the power sum directly and serves as the oracle.
//! [`is_member`] uses the factorization: `n` is a member iff
//! `gcd((n-1)/2, p-1) < p-1` for every prime `p | n`, i.e. no prime factor
//! has `p - 1 | (n-1)/2`. The smallest prime violating this is reported as
//! the witness.

mod rules;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{factorize, pow_mod, FactorConfig, Factorization};
use crate::error::{Error, Result};

pub use rules::{
    fermat_exponent, fermat_number_is_prime, fermat_witness, rule_cofactor, rule_fermat_form, rule_gcd_lambda_odd,
    rule_gcd_parity, rule_gcd_phi_odd, rule_mod4, rule_prime_power, Verdict,
};

/// `G(n) mod n` with exponent `⌊(n-1)/2⌋`, summed term by term.
///
/// One modular exponentiation per term; intended for `n` up to about 10^6.
pub fn g_mod(n: u64) -> u64 {
    assert!(n >= 1, "g_mod is defined for n >= 1");
    let e = (n - 1) / 2;
    (1..n).fold(0u64, |acc, j| {
        let s = acc + pow_mod(j, e, n);
        if s >= n {
            s - n
        } else {
            s
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    pub witness_prime: Option<BigUint>,
}

fn ensure_odd(n: &BigUint) -> Result<()> {
    if n.is_even() {
        return Err(Error::EvenInput(n.clone()));
    }
    Ok(())
}

/// Smallest prime `p | n` with `p - 1 | (n-1)/2`, if any.
pub fn witness_from_factorization(f: &Factorization) -> Option<BigUint> {
    let half: BigUint = (f.value() - 1u32) >> 1u32;
    f.primes().find(|&p| {
        let order: BigUint = p - 1u32;
        (&half % order).is_zero()
    })
    .cloned()
}

/// Membership of an odd `n` whose factorization is already known.
pub fn is_member_factored(f: &Factorization) -> Result<Membership> {
    ensure_odd(f.value())?;
    let witness_prime = witness_from_factorization(f);
    Ok(Membership { member: witness_prime.is_none(), witness_prime })
}

/// Membership of an odd `n >= 1`; `n = 1` is a member by vacuity.
pub fn is_member(n: &BigUint, config: &FactorConfig) -> Result<Membership> {
    ensure_odd(n)?;
    is_member_factored(&factorize(n, config)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    Mod4,
    PrimePower,
    GcdPhiOdd,
    GcdLambdaOdd,
    Cofactor,
    FermatForm,
}

impl Rule {
    pub const ALL: [Rule; 6] =
        [Rule::Mod4, Rule::PrimePower, Rule::GcdPhiOdd, Rule::GcdLambdaOdd, Rule::Cofactor, Rule::FermatForm];

    pub fn tag(self) -> &'static str {
        match self {
            Rule::Mod4 => "mod4",
            Rule::PrimePower => "prime_power",
            Rule::GcdPhiOdd => "gcd_phi_odd",
            Rule::GcdLambdaOdd => "gcd_lambda_odd",
            Rule::Cofactor => "cofactor",
            Rule::FermatForm => "fermat_form",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Rule> {
        Rule::ALL.into_iter().find(|r| r.tag() == tag)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// How the final verdict was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Theorem1,
    Oracle,
    FermatForm,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::Theorem1 => "theorem1",
            Method::Oracle => "oracle",
            Method::FermatForm => "fermat_form",
        }
    }
}

/// A rule that fired together with what it said.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FiredRule {
    pub rule: Rule,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationRecord {
    pub n: BigUint,
    pub member: bool,
    /// Present iff `member` is false.
    pub witness_prime: Option<BigUint>,
    pub rules_fired: BTreeSet<Rule>,
    pub method: Method,
    /// `n = 1`, a member only by vacuity.
    pub trivial: bool,
}

#[derive(Debug, Clone, Default)]
pub struct ClassifyConfig {
    pub factor: FactorConfig,
}

type FactoredRule = fn(&Factorization) -> Option<Verdict>;

/// Every rule applicable to a factored `n`, in evaluation order.
pub fn factored_rules(f: &Factorization) -> Vec<FiredRule> {
    let checks: [(Rule, FactoredRule); 4] = [
        (Rule::PrimePower, rule_prime_power),
        (Rule::GcdPhiOdd, rule_gcd_phi_odd),
        (Rule::GcdLambdaOdd, rule_gcd_lambda_odd),
        (Rule::Cofactor, rule_cofactor),
    ];
    checks
        .into_iter()
        .filter_map(|(rule, check)| check(f).map(|verdict| FiredRule { rule, verdict }))
        .collect()
}

/// Classifies an odd `n`, factoring it unless a cheap rule settles a
/// verdict for an `n` beyond 64 bits.
pub fn classify(n: &BigUint, config: &ClassifyConfig) -> Result<ClassificationRecord> {
    classify_with_hint(n, None, config)
}

/// As [`classify`], but reuses `hint` when the caller already knows the
/// factorization of `n` (e.g. input written as `p^k`).
pub fn classify_with_hint(
    n: &BigUint,
    hint: Option<Factorization>,
    config: &ClassifyConfig,
) -> Result<ClassificationRecord> {
    ensure_odd(n)?;
    if let Some(h) = &hint {
        if h.value() != n {
            return Err(Error::InvalidInput(format!("factorization hint {h} does not multiply to {n}")));
        }
    }
    if n.is_one() {
        return Ok(ClassificationRecord {
            n: n.clone(),
            member: true,
            witness_prime: None,
            rules_fired: BTreeSet::new(),
            method: Method::Theorem1,
            trivial: true,
        });
    }

    let mut fired = Vec::new();
    if let Some(v) = rule_mod4(n) {
        fired.push(FiredRule { rule: Rule::Mod4, verdict: v });
    }
    let fermat_m = fermat_exponent(n);
    let fermat = fermat_m.and_then(rule_fermat_form);
    if let Some(v) = fermat {
        fired.push(FiredRule { rule: Rule::FermatForm, verdict: v });
    }

    let cheap_decision = fermat.map(|v| (v, Method::FermatForm)).or_else(|| {
        fired.iter().find(|r| r.rule == Rule::Mod4).map(|r| (r.verdict, Method::Theorem1))
    });

    let factorization = match hint {
        Some(h) => Some(h),
        None if cheap_decision.is_some() && n.bits() > 64 => None,
        None => match factorize(n, &config.factor) {
            Ok(f) => Some(f),
            Err(e @ Error::FactorizationTimeout { .. }) => {
                if cheap_decision.is_none() {
                    return Err(e);
                }
                None
            }
            Err(e) => return Err(e),
        },
    };

    let (member, witness_prime, method) = match &factorization {
        Some(f) => {
            fired.extend(factored_rules(f));
            let w = witness_from_factorization(f);
            (w.is_none(), w, Method::Theorem1)
        }
        None => {
            let (verdict, method) = cheap_decision.expect("checked above");
            let witness = match verdict {
                Verdict::Member => None,
                Verdict::NonMember => fermat_m.and_then(fermat_witness),
            };
            (verdict == Verdict::Member, witness, method)
        }
    };

    for r in &fired {
        assert_eq!(r.verdict == Verdict::Member, member, "rule {} contradicts the verdict for {n}", r.rule);
    }

    Ok(ClassificationRecord {
        n: n.clone(),
        member,
        witness_prime,
        rules_fired: fired.into_iter().map(|r| r.rule).collect(),
        method,
        trivial: false,
    })
}

/// Classification decided by the power-sum oracle, for `n <= 10^6`.
/// Rules and witness still come from the factorization.
pub fn classify_oracle(n: u64, config: &ClassifyConfig) -> Result<ClassificationRecord> {
    if n > ORACLE_LIMIT {
        return Err(Error::InvalidInput(format!("oracle evaluation is limited to n <= {ORACLE_LIMIT}")));
    }
    let mut rec = classify(&BigUint::from(n), config)?;
    let oracle_member = g_mod(n) == 0;
    if oracle_member != rec.member {
        return Err(Error::InvalidInput(format!("oracle disagrees with factorization for {n}")));
    }
    rec.method = Method::Oracle;
    Ok(rec)
}

/// Largest `n` accepted by [`classify_oracle`].
pub const ORACLE_LIMIT: u64 = 1_000_000;

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn member(n: u64) -> Membership {
        is_member(&big(n), &FactorConfig::default()).unwrap()
    }

    /// Direct summation with exact integers, independent of `pow_mod`.
    fn g_exact(n: u64) -> u64 {
        let e = ((n - 1) / 2) as u32;
        let total: BigUint = (1..n).map(|j| BigUint::from(j).pow(e)).sum();
        (total % n).try_into().unwrap()
    }

    #[test]
    fn g_mod_examples() {
        assert_eq!(g_mod(1), 0);
        assert_eq!(g_mod(7), 0);
        assert_eq!(g_mod(9), 6);
        assert_eq!(g_mod(15), 0);
        assert_ne!(g_mod(21), 0);
        for n in 1..120 {
            assert_eq!(g_mod(n), g_exact(n), "n = {n}");
        }
    }

    #[test]
    fn is_member_examples() {
        assert_eq!(member(2021), Membership { member: true, witness_prime: None });
        assert_eq!(member(2021 * 2021), Membership { member: true, witness_prime: None });
        assert_eq!(member(9), Membership { member: false, witness_prime: Some(big(3)) });
        assert_eq!(member(85), Membership { member: true, witness_prime: None });
        assert_eq!(g_mod(85), 0);
        assert_eq!(member(1), Membership { member: true, witness_prime: None });
    }

    #[test]
    fn smallest_witness_is_reported() {
        // 3 * 5 * 7 * 13 = 1365: (n-1)/2 = 682 = 2 * 11 * 31; only 3 has p-1 | 682
        assert_eq!(member(1365).witness_prime, Some(big(3)));
        // 5 * 13 * 17 = 1105: (n-1)/2 = 552 = 8 * 69; 5-1 = 4 divides it
        assert_eq!(member(1105).witness_prime, Some(big(5)));
        // 13 * 17: (n-1)/2 = 110; 12 ∤ 110, 16 ∤ 110
        assert!(member(221).member);
    }

    #[test]
    fn even_input_rejected() {
        assert_eq!(is_member(&big(10), &FactorConfig::default()), Err(Error::EvenInput(big(10))));
        assert!(matches!(classify(&big(4), &ClassifyConfig::default()), Err(Error::EvenInput(_))));
    }

    #[test]
    fn classify_examples() {
        let cfg = ClassifyConfig::default();
        let r = classify(&big(2021), &cfg).unwrap();
        assert!(r.member && r.rules_fired.contains(&Rule::Cofactor));
        let r = classify(&big(27), &cfg).unwrap();
        assert!(r.member && r.rules_fired.contains(&Rule::Mod4) && r.rules_fired.contains(&Rule::PrimePower));
        let r = classify(&big(25), &cfg).unwrap();
        assert!(!r.member);
        assert_eq!(r.witness_prime, Some(big(5)));
        assert!(r.rules_fired.contains(&Rule::PrimePower));
        let r = classify(&big(1), &cfg).unwrap();
        assert!(r.member && r.trivial);
    }

    #[test]
    fn classify_fermat_form_big() {
        let n = (BigUint::one() << 96u32) + 1u32;
        let r = classify(&n, &ClassifyConfig::default()).unwrap();
        assert!(r.member);
        assert_eq!(r.method, Method::FermatForm);
        assert!(r.rules_fired.contains(&Rule::FermatForm));

        // 2^98 + 1: α = 1, F_1 = 5 prime, so 5 is the witness
        let n = (BigUint::one() << 98u32) + 1u32;
        let r = classify(&n, &ClassifyConfig::default()).unwrap();
        assert!(!r.member);
        assert_eq!(r.witness_prime, Some(big(5)));
    }

    #[test]
    fn classify_small_fermat_form_uses_factorization() {
        let cfg = ClassifyConfig::default();
        for (m, member, witness) in [(5u32, false, Some(3u64)), (6, false, Some(5)), (3, false, Some(3))] {
            let n = (BigUint::one() << m) + 1u32;
            let r = classify(&n, &cfg).unwrap();
            assert_eq!(r.member, member, "2^{m}+1");
            assert_eq!(r.witness_prime, witness.map(big));
            assert_eq!(r.method, Method::Theorem1);
            assert!(r.rules_fired.contains(&Rule::FermatForm));
        }
    }

    #[test]
    fn hint_must_match() {
        let hint = Factorization::prime_power(big(3), 2).unwrap();
        assert!(classify_with_hint(&big(27), Some(hint.clone()), &ClassifyConfig::default()).is_err());
        let r = classify_with_hint(&big(9), Some(hint), &ClassifyConfig::default()).unwrap();
        assert!(!r.member);
    }

    #[test]
    fn timeout_only_when_undecided() {
        let cfg = ClassifyConfig { factor: FactorConfig { budget: std::time::Duration::ZERO } };
        let p = BigUint::from(18_446_744_073_709_551_557u64);
        let q = BigUint::from(18_446_744_073_709_551_533u64);
        // p ≡ 1, q ≡ 1 (mod 4): nothing cheap applies
        let n = &p * &q;
        assert!(matches!(classify(&n, &cfg), Err(Error::FactorizationTimeout { .. })));
        // p * q * 3 ≡ 3 (mod 4) is decided without factoring
        let n3 = &n * 3u32;
        let r = classify(&n3, &cfg).unwrap();
        assert!(r.member);
        assert_eq!(r.rules_fired.iter().copied().collect::<Vec<_>>(), vec![Rule::Mod4]);
    }

    #[test]
    fn oracle_classification() {
        let r = classify_oracle(2021, &ClassifyConfig::default()).unwrap();
        assert_eq!(r.method, Method::Oracle);
        assert!(classify_oracle(ORACLE_LIMIT + 2, &ClassifyConfig::default()).is_err());
    }

    #[test]
    fn rule_tags_round_trip() {
        for r in Rule::ALL {
            assert_eq!(Rule::from_tag(r.tag()), Some(r));
            assert_eq!(serde_json::to_string(&r).unwrap(), format!("\"{}\"", r.tag()));
        }
    }
}
