use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use quadzeta::arith::rational_string;
use quadzeta::Rational;

use crate::config::Format;

/// Integers that fit in 64 bits are emitted as JSON numbers, larger ones as
/// decimal strings.
pub fn int_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

pub fn rat_json(r: &Rational) -> Value {
    json!(rational_string(r))
}

/// One line of a verification report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub ok: bool,
}

impl Check {
    pub fn new(
        suite: &'static str,
        name: impl Into<String>,
        expected: impl ToString,
        actual: impl ToString,
    ) -> Self {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        let ok = expected == actual;
        Self {
            suite,
            name: name.into(),
            expected,
            actual,
            ok,
        }
    }

    /// A check whose pass condition is not plain string equality.
    pub fn with_status(
        suite: &'static str,
        name: impl Into<String>,
        expected: impl ToString,
        actual: impl ToString,
        ok: bool,
    ) -> Self {
        Self {
            suite,
            name: name.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
            ok,
        }
    }

    pub fn failed(
        suite: &'static str,
        name: impl Into<String>,
        expected: impl ToString,
        err: impl ToString,
    ) -> Self {
        Self::with_status(
            suite,
            name,
            expected,
            format!("error: {}", err.to_string()),
            false,
        )
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn render_checks(checks: &[Check], format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = String::from("suite,check,expected,actual,status\n");
            for c in checks {
                let status = if c.ok { "pass" } else { "FAIL" };
                let cols = [c.suite, &c.name, &c.expected, &c.actual, status];
                out.push_str(
                    &cols
                        .iter()
                        .map(|s| csv_field(s))
                        .collect::<Vec<_>>()
                        .join(","),
                );
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let failed = checks.iter().filter(|c| !c.ok).count();
            let items: Vec<Value> = checks
                .iter()
                .map(|c| {
                    json!({
                        "suite": c.suite,
                        "check": c.name,
                        "expected": c.expected,
                        "actual": c.actual,
                        "pass": c.ok,
                    })
                })
                .collect();
            let doc = json!({ "checks": items, "total": checks.len(), "failed": failed });
            serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
        }
    }
}
