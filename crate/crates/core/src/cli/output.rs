use std::collections::BTreeSet;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::membership::{ClassificationRecord, Method, Rule};

pub const CSV_HEADER: &str = "n,member,witness,rules";

/// Wire form of a [`ClassificationRecord`]. Integers travel as decimal
/// strings so arbitrarily large values survive any JSON consumer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub n: String,
    pub member: bool,
    pub witness: Option<String>,
    pub rules: Vec<Rule>,
    pub method: Method,
    pub trivial: bool,
}

impl From<&ClassificationRecord> for OutputRecord {
    fn from(r: &ClassificationRecord) -> Self {
        OutputRecord {
            n: r.n.to_string(),
            member: r.member,
            witness: r.witness_prime.as_ref().map(|w| w.to_string()),
            rules: r.rules_fired.iter().copied().collect(),
            method: r.method,
            trivial: r.trivial,
        }
    }
}

impl OutputRecord {
    pub fn to_record(&self) -> Option<ClassificationRecord> {
        Some(ClassificationRecord {
            n: BigUint::from_str(&self.n).ok()?,
            member: self.member,
            witness_prime: match &self.witness {
                Some(w) => Some(BigUint::from_str(w).ok()?),
                None => None,
            },
            rules_fired: self.rules.iter().copied().collect::<BTreeSet<_>>(),
            method: self.method,
            trivial: self.trivial,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    /// `n,member,witness,rules` with rules separated by `;`.
    pub fn to_csv(&self) -> String {
        let rules: Vec<&str> = self.rules.iter().map(|r| r.tag()).collect();
        format!("{},{},{},{}", self.n, self.member, self.witness.as_deref().unwrap_or(""), rules.join(";"))
    }

    /// `key=value` line for terminals.
    pub fn to_text(&self) -> String {
        let rules: Vec<&str> = self.rules.iter().map(|r| r.tag()).collect();
        let mut line = format!(
            "n={} member={} witness={} method={} rules={}",
            self.n,
            self.member,
            self.witness.as_deref().unwrap_or("none"),
            self.method.tag(),
            if rules.is_empty() { "none".to_string() } else { rules.join(",") },
        );
        if self.trivial {
            line.push_str(" trivial");
        }
        line
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::membership::{classify, ClassifyConfig};

    #[test]
    fn json_shape_is_stable() {
        let rec = classify(&BigUint::from(25u32), &ClassifyConfig::default()).unwrap();
        let out = OutputRecord::from(&rec);
        assert_eq!(
            out.to_json(),
            r#"{"n":"25","member":false,"witness":"5","rules":["prime_power"],"method":"theorem1","trivial":false}"#
        );
        assert_eq!(out.to_csv(), "25,false,5,prime_power");
        assert_eq!(out.to_text(), "n=25 member=false witness=5 method=theorem1 rules=prime_power");
    }
}
