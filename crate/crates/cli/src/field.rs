//! Single-field report for `quadzeta field`.

use num_bigint::BigInt;
use serde_json::{json, Value};

use quadzeta::arith::factorize;
use quadzeta::field::{prime_splitting, IdealBasis, QuadField, Splitting};
use quadzeta::forms::{class_number, narrow_class_number};
use quadzeta::units::{family_unit, fundamental_unit};
use quadzeta::zeta::{lang_partial_zeta, zagier_zeta};
use quadzeta::Result;

use crate::report::{int_json, rat_json};

pub fn field_report(field: &QuadField) -> Result<Value> {
    let d = field.d();
    let eps = fundamental_unit(field)?;
    let h = class_number(field)?;
    let h_plus = narrow_class_number(field.discriminant())?;

    let mut primes: Vec<BigInt> = factorize(d)?.primes().cloned().collect();
    if !primes.contains(&BigInt::from(3)) {
        primes.insert(0, BigInt::from(3));
    }
    primes.sort();

    let mut splitting = Vec::new();
    let mut classes = vec![("(1)".to_string(), IdealBasis::unit_ideal(field))];
    for p in &primes {
        let s = prime_splitting(field, p)?;
        let mut entry = json!({ "p": int_json(p), "type": s.kind() });
        if let Splitting::Split(b) | Splitting::Ramified(b) = &s {
            let ideal = format!("<{}, {}>", p, b.r1());
            entry["ideal"] = json!(ideal.clone());
            classes.push((ideal, b.clone()));
        }
        splitting.push(entry);
    }

    let (zeta, partial) = if field.is_one_mod_four() {
        let total = rat_json(&zagier_zeta(field)?);
        let mut parts = Vec::new();
        for (ideal, basis) in &classes {
            parts.push(
                json!({ "ideal": ideal, "value": rat_json(&lang_partial_zeta(basis, &eps)?) }),
            );
        }
        (total, Value::Array(parts))
    } else {
        (Value::Null, Value::Null)
    };

    let mut report = json!({
        "D": int_json(d),
        "discriminant": int_json(field.discriminant()),
        "unit": {
            "t": int_json(eps.t()),
            "u": int_json(eps.u()),
            "norm": eps.norm(),
            "period_length": eps.period_length(),
            "text": eps.to_string(),
        },
        "h": int_json(&h),
        "h_plus": int_json(&h_plus),
        "zeta_minus_1": zeta,
        "partial_zeta": partial,
        "splitting": splitting,
    });
    if let Some(m) = field.m() {
        report["m"] = int_json(m);
        let fam = family_unit(m)?;
        report["family_unit"] = json!({
            "text": fam.unit.to_string(),
            "fundamental": fam.fundamental,
        });
    }
    Ok(report)
}
