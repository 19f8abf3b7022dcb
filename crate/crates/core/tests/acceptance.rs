//! Acceptance suite: one check per criterion, each printing a single
//! PASS/FAIL line. Run with `cargo test -p quadzeta --test acceptance -- --nocapture`
//! to see the lines.

use std::panic::{catch_unwind, AssertUnwindSafe};

use num_traits::{One, Signed, ToPrimitive, Zero};
use quadzeta::arith::{factorize, int, is_prime, modulo};
use quadzeta::dedekind::{
    closed_s2_family, closed_s2_unit, closed_s3_unit, dedekind_sum, s3_family_candidate,
    S3_FAMILY_Q2_COEFF, S3_FAMILY_Q2_COEFF_REJECTED,
};
use quadzeta::field::{prime_splitting, IdealBasis, QuadField, Splitting};
use quadzeta::forms::{
    class_lower_bound, class_number, prime_factor_floor, shipped_rows, verify_tables,
};
use quadzeta::pell::{family_solution, ramified_prime_is_principal, solve_pell, unit_equivalent};
use quadzeta::units::{family_unit, fundamental_unit};
use quadzeta::zeta::{
    c3_lower_bound, lang_partial_zeta, partial_zeta_p, partial_zeta_q, partial_zeta_ramified3,
    partial_zeta_split3, partial_zeta_trivial, zagier_zeta,
};
use quadzeta::{Integer, Rational};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn family_params(lo: i64, hi: i64) -> impl Iterator<Item = (i64, QuadField)> {
    (lo..=hi)
        .filter(|m| m % 2 != 0)
        .filter_map(|m| QuadField::family(int(m)).ok().map(|f| (m, f)))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(int(n), int(d))
}

fn table_reproduction() -> Outcome {
    let rows = shipped_rows().map_err(|e| e.to_string())?;
    ensure(rows.len() == 119, || {
        format!("corpus has {} rows, expected 119", rows.len())
    })?;
    let report = verify_tables(&rows);
    let bad: Vec<String> = report
        .mismatches()
        .map(|c| format!("m={}: {}", c.row.m, c.problem.clone().unwrap_or_default()))
        .collect();
    ensure(bad.is_empty(), || bad.join("; "))?;
    Ok(format!("{} rows match", rows.len()))
}

fn dedekind_closed_forms() -> Outcome {
    for c in 1..=300i64 {
        let ci = int(c);
        for sign in [1i32, -1] {
            let a = int(sign as i64);
            let s3 = dedekind_sum(3, &a, &ci).map_err(|e| e.to_string())?;
            let s2 = dedekind_sum(2, &a, &ci).map_err(|e| e.to_string())?;
            ensure(s3 == closed_s3_unit(sign, &ci).unwrap(), || {
                format!("S3({sign},{c}) = {s3}")
            })?;
            ensure(s2 == closed_s2_unit(&ci).unwrap(), || {
                format!("S2({sign},{c}) = {s2}")
            })?;
            // any representative of the residue class gives the same sum
            let shifted = int(sign as i64 + 7 * c);
            ensure(dedekind_sum(3, &shifted, &ci).unwrap() == s3, || {
                format!("S3 not periodic at c={c}")
            })?;
        }
    }
    let primes: Vec<i64> = (7..=200)
        .filter(|p| p % 3 == 1 && is_prime(&int(*p)))
        .collect();
    let mut winners = Vec::new();
    for &p in &primes {
        let qi = int(p);
        let (a, c) = (int(2 * p - 1), int(3 * p));
        let direct = dedekind_sum(3, &a, &c).unwrap();
        let accepted = s3_family_candidate(&qi, S3_FAMILY_Q2_COEFF).unwrap() == direct;
        let rejected = s3_family_candidate(&qi, S3_FAMILY_Q2_COEFF_REJECTED).unwrap() == direct;
        ensure(accepted != rejected, || {
            format!("q={p}: candidates match {accepted}/{rejected}")
        })?;
        winners.push(if accepted {
            S3_FAMILY_Q2_COEFF
        } else {
            S3_FAMILY_Q2_COEFF_REJECTED
        });
        let s2 = dedekind_sum(2, &a, &c).unwrap();
        ensure(s2 == closed_s2_family(&qi).unwrap(), || {
            format!("S2(2q-1,3q) mismatch at q={p}")
        })?;
    }
    ensure(winners.iter().all(|w| *w == winners[0]), || {
        "winning coefficient varies with q".into()
    })?;
    Ok(format!(
        "c <= 300 and {} primes q; q^2 coefficient {} matches",
        primes.len(),
        winners[0]
    ))
}

fn lemma_basis(
    field: &QuadField,
    p: i64,
    expect_ramified: bool,
    b: i64,
) -> Result<IdealBasis, String> {
    let split = prime_splitting(field, &int(p)).map_err(|e| e.to_string())?;
    let basis = match (&split, expect_ramified) {
        (Splitting::Ramified(bs), true) | (Splitting::Split(bs), false) => bs.clone(),
        _ => return Err(format!("{p} is {} in Q(sqrt({}))", split.kind(), field.d())),
    };
    ensure(
        basis.r1().x() == &int(b) && basis.r1().y().is_one() && basis.r2().x() == &int(2 * p),
        || format!("unexpected basis for {p} in Q(sqrt({}))", field.d()),
    )?;
    Ok(basis)
}

fn proposition_identities() -> Outcome {
    let mut checked = 0;
    for (m, field) in family_params(3, 99) {
        let mi = int(m);
        let eps = family_unit(&mi).map_err(|e| e.to_string())?.unit;
        let lang = |b: &IdealBasis| lang_partial_zeta(b, &eps).map_err(|e| e.to_string());
        let mut compare = |name: &str, got: Rational, want: Rational| {
            checked += 1;
            ensure(got == want, || {
                format!("m={m} {name}: formula {got}, closed form {want}")
            })
        };
        compare(
            "principal",
            lang(&IdealBasis::unit_ideal(&field))?,
            partial_zeta_trivial(&mi).unwrap(),
        )?;
        if m % 3 == 0 {
            let b = lemma_basis(&field, 3, true, 3)?;
            compare(
                "ramified 3",
                lang(&b)?,
                partial_zeta_ramified3(&mi).unwrap(),
            )?;
        }
        if m % 3 == 1 {
            let b = lemma_basis(&field, 3, false, 1)?;
            compare("split 3", lang(&b)?, partial_zeta_split3(&mi).unwrap())?;
        }
        for p in factorize(&mi).unwrap().primes().filter(|p| *p > &int(3)) {
            let pv = p.to_i64().unwrap();
            let b = lemma_basis(&field, pv, true, pv)?;
            compare(
                &format!("p={pv}"),
                lang(&b)?,
                partial_zeta_p(&mi, p).unwrap(),
            )?;
        }
        let qv = 9 * m + 4;
        if is_prime(&int(qv)) {
            let b = lemma_basis(&field, qv, true, qv)?;
            compare(
                &format!("q={qv}"),
                lang(&b)?,
                partial_zeta_q(&mi).map_err(|e| e.to_string())?,
            )?;
        }
    }
    Ok(format!("{checked} identities"))
}

fn zagier_consistency() -> Outcome {
    let rows = shipped_rows().map_err(|e| e.to_string())?;
    let mut n = 0;
    for row in rows.iter().filter(|r| r.h.is_one() && r.m.abs() >= int(3)) {
        let field = QuadField::family(row.m.clone()).map_err(|e| e.to_string())?;
        let eps = family_unit(&row.m).unwrap().unit;
        let total = zagier_zeta(&field).unwrap();
        let principal = lang_partial_zeta(&IdealBasis::unit_ideal(&field), &eps).unwrap();
        ensure(total == principal, || {
            format!("m={}: zeta {total}, principal class {principal}", row.m)
        })?;
        n += 1;
    }
    ensure(n > 0, || "no class-number-one rows with |m| >= 3".into())?;
    let f93 = QuadField::new(int(93)).unwrap();
    ensure(zagier_zeta(&f93).unwrap() == q(3, 1), || {
        "zeta(93) != 3".into()
    })?;
    let f469 = QuadField::new(int(469)).unwrap();
    let total = zagier_zeta(&f469).unwrap();
    let parts =
        partial_zeta_trivial(&int(7)).unwrap() + partial_zeta_split3(&int(7)).unwrap() * q(2, 1);
    ensure(total == q(40, 1) && total == parts, || {
        format!("zeta(469) = {total}, classes sum to {parts}")
    })?;
    Ok(format!("{n} rows, zeta(93) = 3, zeta(469) = 40"))
}

fn class_number_one() -> Outcome {
    let mut ones = Vec::new();
    let mut swept = 0;
    for (m, field) in family_params(-160, 160) {
        if modulo(&int(m), &int(3)) == int(2) {
            continue;
        }
        swept += 1;
        if class_number(&field).map_err(|e| e.to_string())?.is_one() {
            ones.push(m);
        }
    }
    ensure(ones == vec![-3, 1, 3], || format!("h = 1 at {ones:?}"))?;
    Ok(format!("{swept} fields, h = 1 exactly at m in {ones:?}"))
}

fn three_classes() -> Outcome {
    let mut swept = 0;
    for (m, field) in family_params(-160, 160) {
        if modulo(&int(m), &int(3)) != int(1) || m == -5 || m == 1 {
            continue;
        }
        swept += 1;
        let h = class_number(&field).map_err(|e| e.to_string())?;
        ensure(h >= int(3), || format!("m={m}: h = {h}"))?;
        if m > 4 {
            let mi = int(m);
            let bound = c3_lower_bound(&mi).unwrap();
            let two = partial_zeta_trivial(&mi).unwrap() + partial_zeta_split3(&mi).unwrap();
            ensure(bound > two, || format!("m={m}: bound {bound} <= {two}"))?;
            let total = zagier_zeta(&field).unwrap();
            ensure(total >= bound, || {
                format!("m={m}: zeta {total} below bound {bound}")
            })?;
        }
    }
    Ok(format!("{swept} fields with h >= 3"))
}

fn prime_factor_bound() -> Outcome {
    let rows = shipped_rows().map_err(|e| e.to_string())?;
    let mut seen = Vec::new();
    for row in &rows {
        let Some(floor) = prime_factor_floor(&row.m).unwrap() else {
            continue;
        };
        let bound = class_lower_bound(&row.m).map_err(|e| e.to_string())?.bound;
        ensure(bound <= row.h, || {
            format!("m={}: bound {bound} exceeds h = {}", row.m, row.h)
        })?;
        ensure(bound >= floor, || {
            format!("m={}: bound {bound} below floor {floor}", row.m)
        })?;
        seen.push(format!(
            "m={} bound {bound} floor {floor} h {}",
            row.m, row.h
        ));
    }
    ensure(!seen.is_empty(), || {
        "no rows with three prime factors".into()
    })?;
    Ok(seen.join(", "))
}

fn pell_family() -> Outcome {
    let mut n = 0;
    for m in (1..=500i64).step_by(2) {
        let mi = int(m);
        let qv = 9 * m + 4;
        if !is_prime(&int(qv)) || QuadField::family(mi.clone()).is_err() {
            continue;
        }
        let is_sqfree_m = factorize(&mi)
            .unwrap()
            .factors()
            .iter()
            .all(|(_, e)| *e == 1);
        if !is_sqfree_m {
            continue;
        }
        let d = int(9 * m * m + 4 * m);
        let sols = solve_pell(&d, &int(4 * qv)).map_err(|e| e.to_string())?;
        ensure(!sols.is_empty(), || {
            format!("m={m}: x^2 - {d} y^2 = {} has no solution", 4 * qv)
        })?;
        let fam = family_solution(&mi).map_err(|e| e.to_string())?;
        ensure(fam.holds(), || format!("m={m}: family solution fails"))?;
        ensure(sols.iter().any(|s| unit_equivalent(s, &fam)), || {
            format!("m={m}: family solution unmatched")
        })?;
        let (ok, w) = ramified_prime_is_principal(&mi).map_err(|e| e.to_string())?;
        ensure(ok && w.generator.norm() == int(qv), || {
            format!("m={m}: no generator of norm {qv}")
        })?;
        n += 1;
    }
    ensure(n > 0, || "no parameters in range".into())?;
    Ok(format!("{n} equations soluble"))
}

fn unit_agreement() -> Outcome {
    let mut n = 0;
    for (m, field) in family_params(-160, 160) {
        if m.abs() < 3 {
            continue;
        }
        let fam = family_unit(&int(m)).map_err(|e| e.to_string())?;
        let cf = fundamental_unit(&field).unwrap();
        ensure(
            fam.fundamental && cf.t() == fam.unit.t() && cf.u() == fam.unit.u(),
            || {
                format!(
                    "m={m}: continued fraction gives {cf}, family unit {}",
                    fam.unit
                )
            },
        )?;
        ensure(cf.norm() == 1, || format!("m={m}: norm -1"))?;
        n += 1;
    }
    for (m, d, t, u) in [(1i64, 13i64, 3i64, 1i64), (-1, 5, 1, 1)] {
        let cf = fundamental_unit(&QuadField::new(int(d)).unwrap()).unwrap();
        ensure(
            cf.t() == &int(t) && cf.u() == &int(u) && cf.norm() == -1,
            || format!("D={d}: unit {cf}"),
        )?;
        ensure(!family_unit(&int(m)).unwrap().fundamental, || {
            format!("m={m}: family unit reported fundamental")
        })?;
    }
    Ok(format!("{n} fields agree; m = 1, -1 have norm -1 units"))
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 9] = [
        ("table reproduction", table_reproduction),
        ("Dedekind-sum closed forms", dedekind_closed_forms),
        ("proposition identities", proposition_identities),
        ("Zagier consistency", zagier_consistency),
        ("class number one", class_number_one),
        ("three classes for m = 1 (mod 3)", three_classes),
        ("prime-factor bound", prime_factor_bound),
        ("Pell family sweep", pell_family),
        ("unit agreement", unit_agreement),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                println!("criterion {}: FAIL  {name}: {detail}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn lower_bound_never_exceeds_class_number() {
    for row in shipped_rows().unwrap().iter().filter(|r| r.m.is_positive()) {
        let bound = class_lower_bound(&row.m).unwrap().bound;
        assert!(
            bound <= row.h && !bound.is_zero(),
            "m={}: bound {bound}, h {}",
            row.m,
            row.h
        );
    }
}

#[test]
fn class_number_one_rows_pass_the_shape_test() {
    use quadzeta::forms::hasse_h1_necessary;
    for row in shipped_rows().unwrap().iter().filter(|r| r.h.is_one()) {
        assert!(hasse_h1_necessary(&row.d).unwrap(), "D = {}", row.d);
    }
}

#[test]
fn three_class_bound_for_positive_m() {
    for (m, _) in family_params(5, 160).filter(|(m, _)| m % 3 == 1) {
        let bound: Integer = class_lower_bound(&int(m)).unwrap().bound;
        assert!(bound >= int(3), "m={m}: bound {bound}");
    }
}
