//! Verification suites behind `quadzeta verify`.

use clap::ValueEnum;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use quadzeta::arith::{factorize, is_prime, rational_string};
use quadzeta::dedekind::{
    closed_s2_family, closed_s2_unit, closed_s3_family, closed_s3_unit, dedekind_sum,
    s3_family_candidate, S3_FAMILY_Q2_COEFF_REJECTED,
};
use quadzeta::field::{prime_splitting, IdealBasis, QuadField, Splitting};
use quadzeta::forms::{
    check_row, class_lower_bound, class_number, hasse_h1_necessary, prime_factor_floor, TableRow,
};
use quadzeta::pell::{family_solution, ramified_prime_is_principal, solve_pell, unit_equivalent};
use quadzeta::units::{family_unit, fundamental_unit};
use quadzeta::zeta::{
    c3_lower_bound, lang_partial_zeta, partial_zeta_p, partial_zeta_q, partial_zeta_ramified3,
    partial_zeta_split3, partial_zeta_trivial, zagier_zeta,
};
use quadzeta::Rational;

use crate::config::SweepConfig;
use crate::report::Check;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Dedekind,
    Props,
    Units,
    Tables,
    Theorems,
    Pell,
    All,
}

impl Suite {
    /// Default `(min, max)` sweep range of each suite.
    pub fn default_range(self) -> (i64, i64) {
        match self {
            Suite::Dedekind => (1, 300),
            Suite::Props => (3, 99),
            Suite::Units | Suite::Theorems | Suite::Tables | Suite::All => (-160, 160),
            Suite::Pell => (1, 500),
        }
    }

    pub const EACH: [Suite; 6] = [
        Suite::Dedekind,
        Suite::Props,
        Suite::Units,
        Suite::Tables,
        Suite::Theorems,
        Suite::Pell,
    ];
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

fn rs(r: &Rational) -> String {
    rational_string(r)
}

/// Runs `f` on each parameter in the pool, keeping parameter order.
fn sweep<F>(config: &SweepConfig, params: Vec<i64>, f: F) -> Vec<Check>
where
    F: Fn(i64) -> Vec<Check> + Sync + Send,
{
    config
        .pool()
        .install(|| params.par_iter().map(|&m| f(m)).collect::<Vec<_>>())
        .into_iter()
        .flatten()
        .collect()
}

pub fn dedekind(config: &SweepConfig) -> Vec<Check> {
    const S: &str = "dedekind";
    let moduli: Vec<i64> = (config.m_min.max(1)..=config.m_max).collect();
    let mut checks = sweep(config, moduli, |c| {
        let ci = big(c);
        let mut out = Vec::new();
        for sign in [1i32, -1] {
            let a = big(sign as i64);
            let s3 = dedekind_sum(3, &a, &ci).expect("valid modulus");
            let s2 = dedekind_sum(2, &a, &ci).expect("valid modulus");
            out.push(Check::new(
                S,
                format!("S3({sign},{c})"),
                rs(&closed_s3_unit(sign, &ci).unwrap()),
                rs(&s3),
            ));
            out.push(Check::new(
                S,
                format!("S2({sign},{c})"),
                rs(&closed_s2_unit(&ci).unwrap()),
                rs(&s2),
            ));
        }
        out
    });
    let primes: Vec<i64> = (7..=config.m_max.max(7))
        .filter(|p| p % 3 == 1 && is_prime(&big(*p)))
        .filter(|p| *p >= config.m_min)
        .collect();
    checks.extend(sweep(config, primes, |q| {
        let qi = big(q);
        let (a, c) = (big(2 * q - 1), big(3 * q));
        let s3 = dedekind_sum(3, &a, &c).unwrap();
        let s2 = dedekind_sum(2, &a, &c).unwrap();
        let rejected = s3_family_candidate(&qi, S3_FAMILY_Q2_COEFF_REJECTED).unwrap() == s3;
        vec![
            Check::new(
                S,
                format!("S3(2q-1,3q) q={q}"),
                rs(&closed_s3_family(&qi).unwrap()),
                rs(&s3),
            ),
            Check::new(
                S,
                format!("S2(2q-1,3q) q={q}"),
                rs(&closed_s2_family(&qi).unwrap()),
                rs(&s2),
            ),
            Check::new(
                S,
                format!("S3(2q-1,3q) q={q} coefficient {S3_FAMILY_Q2_COEFF_REJECTED}"),
                "mismatch",
                if rejected { "match" } else { "mismatch" },
            ),
        ]
    }));
    checks
}

fn basis_of(field: &QuadField, p: i64) -> Option<IdealBasis> {
    match prime_splitting(field, &big(p)).ok()? {
        Splitting::Split(b) | Splitting::Ramified(b) => Some(b),
        Splitting::Inert => None,
    }
}

pub fn props(config: &SweepConfig) -> Vec<Check> {
    const S: &str = "props";
    let params: Vec<i64> = config
        .parameters()
        .into_iter()
        .filter(|m| *m >= 3)
        .collect();
    sweep(config, params, |m| {
        let mi = big(m);
        let Ok(field) = QuadField::family(mi.clone()) else {
            return Vec::new();
        };
        let eps = family_unit(&mi).expect("family unit").unit;
        let mut out = Vec::new();
        let mut push =
            |name: String, basis: Option<IdealBasis>, closed: Result<Rational, quadzeta::Error>| {
                let expected = match &closed {
                    Ok(v) => rs(v),
                    Err(e) => format!("error: {e}"),
                };
                match basis.map(|b| lang_partial_zeta(&b, &eps)) {
                    Some(Ok(v)) => out.push(Check::new(S, name, expected, rs(&v))),
                    Some(Err(e)) => out.push(Check::failed(S, name, expected, e)),
                    None => out.push(Check::failed(S, name, expected, "no prime ideal")),
                }
            };
        push(
            format!("m={m} principal"),
            Some(IdealBasis::unit_ideal(&field)),
            partial_zeta_trivial(&mi),
        );
        match m.rem_euclid(3) {
            0 => push(
                format!("m={m} ramified 3"),
                basis_of(&field, 3),
                partial_zeta_ramified3(&mi),
            ),
            1 => push(
                format!("m={m} split 3"),
                basis_of(&field, 3),
                partial_zeta_split3(&mi),
            ),
            _ => {}
        }
        for p in factorize(&mi).unwrap().primes().filter(|p| *p > &big(3)) {
            let pv = p.to_i64().expect("small prime");
            push(
                format!("m={m} p={pv}"),
                basis_of(&field, pv),
                partial_zeta_p(&mi, p),
            );
        }
        let q = 9 * m + 4;
        if is_prime(&big(q)) {
            push(
                format!("m={m} q={q}"),
                basis_of(&field, q),
                partial_zeta_q(&mi),
            );
        }
        out
    })
}

pub fn units(config: &SweepConfig) -> Vec<Check> {
    const S: &str = "units";
    sweep(config, config.parameters(), |m| {
        let mi = big(m);
        let Ok(field) = QuadField::family(mi.clone()) else {
            return Vec::new();
        };
        let cf = match fundamental_unit(&field) {
            Ok(u) => u,
            Err(e) => return vec![Check::failed(S, format!("m={m}"), "unit", e)],
        };
        let actual = format!("{cf} norm {}", cf.norm());
        match m {
            1 => vec![Check::new(
                S,
                "m=1 exception",
                "(3 + 1*sqrt(13))/2 norm -1",
                actual,
            )],
            -1 => vec![Check::new(
                S,
                "m=-1 exception",
                "(1 + 1*sqrt(5))/2 norm -1",
                actual,
            )],
            _ => {
                let fam = family_unit(&mi).expect("family unit").unit;
                vec![Check::new(
                    S,
                    format!("m={m}"),
                    format!("{fam} norm 1"),
                    actual,
                )]
            }
        }
    })
}

pub fn tables(config: &SweepConfig, rows: &[TableRow]) -> Vec<Check> {
    const S: &str = "tables";
    let report: Vec<_> = config
        .pool()
        .install(|| rows.par_iter().map(check_row).collect());
    report
        .into_iter()
        .map(|c| {
            let name = format!("m={} D={}", c.row.m, c.row.d);
            let actual = match (&c.computed_h, &c.problem) {
                (Some(h), _) if c.computed_d == c.row.d => h.to_string(),
                (_, Some(p)) => p.clone(),
                _ => "?".into(),
            };
            Check::with_status(S, name, c.row.h.to_string(), actual, c.ok())
        })
        .collect()
}

pub fn theorems(config: &SweepConfig) -> Vec<Check> {
    const S: &str = "theorems";
    let params = config.parameters();
    // (m, h) for every square-free field in range
    let fields: Vec<(i64, Option<BigInt>)> = config.pool().install(|| {
        params
            .par_iter()
            .filter_map(|&m| {
                let field = QuadField::family(big(m)).ok()?;
                Some((m, class_number(&field).ok()))
            })
            .collect()
    });
    let mut checks = Vec::new();

    let ones: Vec<i64> = fields
        .iter()
        .filter(|(m, h)| m.rem_euclid(3) != 2 && h.as_ref().is_some_and(One::is_one))
        .map(|p| p.0)
        .collect();
    let expected: Vec<i64> = [-3, 1, 3]
        .into_iter()
        .filter(|m| params.contains(m))
        .collect();
    checks.push(Check::new(
        S,
        "h = 1 with m != 2 (mod 3)",
        format!("{expected:?}"),
        format!("{ones:?}"),
    ));

    for (m, h) in &fields {
        let name = |s: &str| format!("m={m} {s}");
        let Some(h) = h else {
            checks.push(Check::failed(
                S,
                name("class number"),
                "h",
                "computation failed",
            ));
            continue;
        };
        if h.is_one() {
            let d = big(9 * m * m + 4 * m);
            let shape = hasse_h1_necessary(&d).unwrap_or(false);
            checks.push(Check::new(S, name("h = 1 shape"), true, shape));
        }
        if m.rem_euclid(3) == 1 && *m != -5 && *m != 1 {
            checks.push(Check::with_status(
                S,
                name("h >= 3"),
                ">= 3",
                h,
                *h >= big(3),
            ));
        }
        if m.rem_euclid(3) == 1 && *m > 4 {
            let mi = big(*m);
            let field = QuadField::family(mi.clone()).unwrap();
            let bound = c3_lower_bound(&mi).unwrap();
            let two = partial_zeta_trivial(&mi).unwrap() + partial_zeta_split3(&mi).unwrap();
            let zeta = zagier_zeta(&field).unwrap();
            let ok = bound > two && zeta >= bound;
            let expected = format!("in ({}, {}]", rs(&two), rs(&zeta));
            checks.push(Check::with_status(
                S,
                name("c3 bound"),
                expected,
                rs(&bound),
                ok,
            ));
        }
        if let Ok(Some(floor)) = prime_factor_floor(&big(*m)) {
            match class_lower_bound(&big(*m)) {
                Ok(b) => {
                    let ok = b.bound >= floor && &b.bound <= h;
                    let expected = format!("in [{floor}, {h}]");
                    checks.push(Check::with_status(
                        S,
                        name("prime-factor bound"),
                        expected,
                        &b.bound,
                        ok,
                    ));
                }
                Err(e) => checks.push(Check::failed(S, name("prime-factor bound"), floor, e)),
            }
        }
    }
    checks
}

pub fn pell(config: &SweepConfig) -> Vec<Check> {
    const S: &str = "pell";
    let params: Vec<i64> = config.parameters().into_iter().filter(|m| *m > 0).collect();
    sweep(config, params, |m| {
        let mi = big(m);
        let q = 9 * m + 4;
        let square_free_m = factorize(&mi)
            .map(|f| f.factors().iter().all(|(_, e)| *e == 1))
            .unwrap_or(false);
        if !is_prime(&big(q)) || !square_free_m {
            return Vec::new();
        }
        let name = format!("m={m} x^2 - {}y^2 = {}", 9 * m * m + 4 * m, 4 * q);
        let d = big(9 * m * m + 4 * m);
        let result = (|| -> Result<(usize, bool, bool), quadzeta::Error> {
            let sols = solve_pell(&d, &big(4 * q))?;
            let fam = family_solution(&mi)?;
            let matched = sols.iter().any(|s| unit_equivalent(s, &fam));
            let (principal, w) = ramified_prime_is_principal(&mi)?;
            Ok((
                sols.len(),
                matched,
                principal && w.generator.norm() == big(q),
            ))
        })();
        let expected = format!("soluble, ({q}, 3) in a listed class, generator of norm {q}");
        match result {
            Ok((n, matched, principal)) => {
                let actual = format!(
                    "{n} class representatives, family match {matched}, principal {principal}"
                );
                vec![Check::with_status(
                    S,
                    name,
                    expected,
                    actual,
                    n > 0 && matched && principal,
                )]
            }
            Err(e) => vec![Check::failed(S, name, expected, e)],
        }
    })
}
