//! Check reports and their stable JSON shape.
//!
//! Reports serialize as `{group: {degree, name, order}, lemma, verdict,
//! witness}` with keys sorted (serde_json maps are BTree-backed), orders as
//! decimal strings, and float bounds rendered with 12 significant digits so
//! identical runs produce byte-identical output.

use num_bigint::BigUint;
use serde_json::{json, Map, Value};

use crate::group::PermGroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Skipped(String),
}

impl Verdict {
    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail)
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Skipped(_) => "SKIPPED",
        }
    }
}

/// Result of running one lemma check against one group, with enough payload
/// to re-run the single instance by hand.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub lemma: String,
    pub group_name: String,
    pub degree: usize,
    pub order: BigUint,
    pub verdict: Verdict,
    pub witness: Value,
}

impl CheckReport {
    pub fn new(
        lemma: &str,
        group_name: &str,
        group: &PermGroup,
        verdict: Verdict,
        witness: Value,
    ) -> CheckReport {
        CheckReport {
            lemma: lemma.to_string(),
            group_name: group_name.to_string(),
            degree: group.degree(),
            order: group.order().clone(),
            verdict,
            witness,
        }
    }

    pub fn skipped(lemma: &str, group_name: &str, group: &PermGroup, reason: &str) -> CheckReport {
        CheckReport::new(
            lemma,
            group_name,
            group,
            Verdict::Skipped(reason.to_string()),
            Value::Object(Map::new()),
        )
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("lemma".into(), json!(self.lemma));
        obj.insert(
            "group".into(),
            json!({
                "name": self.group_name,
                "degree": self.degree,
                "order": self.order.to_string(),
            }),
        );
        obj.insert("verdict".into(), json!(self.verdict.label()));
        if let Verdict::Skipped(reason) = &self.verdict {
            obj.insert("reason".into(), json!(reason));
        }
        obj.insert("witness".into(), self.witness.clone());
        Value::Object(obj)
    }
}

/// Renders a float with 12 significant digits, the only way floats ever
/// appear in certificates.
pub fn fmt_bound(x: f64) -> String {
    if x == 0.0 {
        return "0.00000000000".to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

pub fn json_biguint(x: &BigUint) -> Value {
    Value::String(x.to_string())
}

pub fn json_primes(set: &std::collections::BTreeSet<u64>) -> Value {
    Value::Array(set.iter().map(|p| json!(p)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds_carry_twelve_significant_digits() {
        assert_eq!(fmt_bound(8.0), "8.00000000000");
        assert_eq!(fmt_bound(0.0), "0.00000000000");
        assert_eq!(fmt_bound(11.035_216_604_07), "11.0352166041");
        assert_eq!(fmt_bound(1.584962500721156), "1.58496250072");
        assert_eq!(fmt_bound(123456.0), "123456.000000");
    }

    #[test]
    fn json_keys_are_sorted() {
        let g = PermGroup::trivial(3);
        let r = CheckReport::new("demo", "triv", &g, Verdict::Pass, json!({"b": 1, "a": 2}));
        let s = serde_json::to_string(&r.to_json()).unwrap();
        assert!(s.find("\"group\"").unwrap() < s.find("\"lemma\"").unwrap());
        assert!(s.find("\"lemma\"").unwrap() < s.find("\"verdict\"").unwrap());
        assert!(s.find("\"a\"").unwrap() < s.find("\"b\"").unwrap());
    }
}
