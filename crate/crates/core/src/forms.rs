//! Class numbers from cycles of reduced indefinite binary quadratic forms,
//! class-number bounds for the family, and table verification.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{divisors, factorize, int, is_perfect_square, isqrt, modulo, Integer, Rational};
use crate::error::{Error, Result};
use crate::field::{prime_splitting, IdealBasis, QuadField};
use crate::units::{family_unit, fundamental_unit};
use crate::zeta::{
    lang_partial_zeta, partial_zeta_p, partial_zeta_ramified3, partial_zeta_split3,
    partial_zeta_trivial, zagier_zeta,
};

/// The form `a x^2 + b xy + c y^2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QForm {
    pub a: Integer,
    pub b: Integer,
    pub c: Integer,
}

impl QForm {
    pub fn new(a: Integer, b: Integer, c: Integer) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::Hypothesis(
                "leading coefficient a must be nonzero".into(),
            ));
        }
        let f = Self { a, b, c };
        validate_discriminant(&f.discriminant())?;
        Ok(f)
    }

    pub fn discriminant(&self) -> Integer {
        &self.b * &self.b - 4 * &self.a * &self.c
    }

    /// `0 < b < sqrt(Δ)` and `sqrt(Δ) - b < 2|a| < sqrt(Δ) + b`.
    pub fn is_reduced(&self) -> bool {
        let disc = self.discriminant();
        if !disc.is_positive() || is_perfect_square(&disc) {
            return false;
        }
        let s = isqrt(&disc);
        let two_a = 2 * self.a.abs();
        // sqrt(Δ) is irrational, so strict comparisons become integer ones against s
        self.b.is_positive() && self.b <= s && &two_a + &self.b > s && &two_a - &self.b <= s
    }

    /// One reduction step: `(a, b, c) -> (c, b', (b'^2 - Δ)/(4c))` where
    /// `b' = -b (mod 2|c|)` is the largest such value below `sqrt(Δ)`.
    pub fn rho(&self) -> Self {
        let disc = self.discriminant();
        let s = isqrt(&disc);
        let two_c: Integer = 2 * self.c.abs();
        let base = modulo(&-&self.b, &two_c);
        let b_next = &base + (&s - &base).div_floor(&two_c) * &two_c;
        let c_next = (&b_next * &b_next - &disc) / (4 * &self.c);
        Self {
            a: self.c.clone(),
            b: b_next,
            c: c_next,
        }
    }
}

impl fmt::Display for QForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

fn validate_discriminant(disc: &Integer) -> Result<()> {
    let r = modulo(disc, &int(4));
    if !disc.is_positive() || !(r.is_zero() || r.is_one()) {
        return Err(Error::InvalidDiscriminant(disc.clone()));
    }
    if is_perfect_square(disc) {
        return Err(Error::PerfectSquare(disc.clone()));
    }
    Ok(())
}

/// Every reduced form of discriminant `disc`, sorted.
pub fn reduced_forms(disc: &Integer) -> Result<Vec<QForm>> {
    validate_discriminant(disc)?;
    let s = isqrt(disc);
    let mut out = Vec::new();
    let mut b = modulo(disc, &int(2));
    if b.is_zero() {
        b = int(2);
    }
    while b <= s {
        // b^2 - 4ac = Δ with a, c of opposite signs: |a| |c| = (Δ - b^2)/4
        let n: Integer = (disc - &b * &b) / 4;
        for a in divisors(&n)? {
            let two_a: Integer = 2 * &a;
            if &two_a + &b > s && &two_a - &b <= s {
                let c = &n / &a;
                out.push(QForm {
                    a: a.clone(),
                    b: b.clone(),
                    c: -c.clone(),
                });
                out.push(QForm {
                    a: -a,
                    b: b.clone(),
                    c,
                });
            }
        }
        b += 2;
    }
    out.sort();
    Ok(out)
}

/// The reduced forms of `disc` partitioned into `rho`-cycles. Each cycle
/// starts at its smallest form; cycles are ordered by that form.
pub fn cycles(disc: &Integer) -> Result<Vec<Vec<QForm>>> {
    let forms = reduced_forms(disc)?;
    let all: HashSet<&QForm> = forms.iter().collect();
    let mut seen: HashSet<QForm> = HashSet::new();
    let mut out = Vec::new();
    for f in &forms {
        if seen.contains(f) {
            continue;
        }
        let mut cycle = vec![f.clone()];
        seen.insert(f.clone());
        let mut g = f.rho();
        while &g != f {
            if !all.contains(&g) {
                return Err(Error::Invariant(format!(
                    "rho({}) = {g} is not reduced",
                    cycle.last().unwrap()
                )));
            }
            if !seen.insert(g.clone()) {
                return Err(Error::Invariant(format!("{g} lies on two cycles")));
            }
            let next = g.rho();
            cycle.push(g);
            g = next;
        }
        out.push(cycle);
    }
    Ok(out)
}

/// Narrow class number `h+`: the number of cycles of reduced forms.
pub fn narrow_class_number(disc: &Integer) -> Result<Integer> {
    Ok(Integer::from(cycles(disc)?.len()))
}

/// Class number of the field: `h+` or `h+/2` depending on the norm of the
/// fundamental unit.
pub fn class_number(field: &QuadField) -> Result<Integer> {
    let h_plus = narrow_class_number(field.discriminant())?;
    let eps = fundamental_unit(field)?;
    if eps.norm() == -1 {
        return Ok(h_plus);
    }
    if h_plus.is_odd() {
        return Err(Error::Invariant(format!(
            "h+ = {h_plus} is odd although the fundamental unit of D = {} has norm +1",
            field.d()
        )));
    }
    Ok(h_plus / 2)
}

/// Necessary condition for class number one: `D = p`, `2p` or `qr` with
/// primes `p = 1 (mod 4)` and `q = r = 3 (mod 4)`.
pub fn hasse_h1_necessary(d: &Integer) -> Result<bool> {
    let f = factorize(d)?;
    let four = int(4);
    let res = |p: &Integer| modulo(p, &four).to_u8().unwrap_or(0);
    let odd: Vec<&Integer> = f.primes().filter(|p| p.is_odd()).collect();
    if f.factors().iter().any(|(_, e)| *e > 1) {
        return Ok(false);
    }
    let has_two = f.exponent_of(&int(2)) == 1;
    Ok(match (has_two, odd.as_slice()) {
        (_, [p]) => res(p) == 1,
        (false, [q, r]) => res(q) == 3 && res(r) == 3,
        _ => false,
    })
}

/// Distinct partial zeta values the bound is built from, labelled by class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassBound {
    pub m: Integer,
    pub values: Vec<(String, Rational)>,
    pub distinct: usize,
    pub certificate: bool,
    pub bound: Integer,
}

/// Certified lower bound for the class number of `Q(sqrt(9m^2 + 4m))`.
///
/// Counts distinct partial zeta values among the principal class, a class
/// above 3 (when 3 is not inert), and the class above each prime `p > 3`
/// dividing `m`; when `m = 1 (mod 3)` and the total exceeds the principal
/// and 3-class parts combined, there is a third class and the bound is at
/// least 3. Positive `m` use the closed forms; negative `m` evaluate the
/// general formula on the same prime ideals.
pub fn class_lower_bound(m: &Integer) -> Result<ClassBound> {
    let field = QuadField::family(m.clone())?;
    let m_mod3 = modulo(m, &int(3));
    let odd_primes: Vec<Integer> = factorize(&m.abs())?
        .primes()
        .filter(|p| *p > &int(3))
        .cloned()
        .collect();
    let mut values: Vec<(String, Rational)> = Vec::new();

    if m.is_positive() {
        values.push(("C".into(), partial_zeta_trivial(m)?));
        if m_mod3.is_zero() {
            values.push(("U".into(), partial_zeta_ramified3(m)?));
        } else if m_mod3.is_one() {
            values.push(("U".into(), partial_zeta_split3(m)?));
        }
        for p in &odd_primes {
            values.push((format!("P{p}"), partial_zeta_p(m, p)?));
        }
    } else {
        let eps = family_unit(m)?.unit;
        values.push((
            "C".into(),
            lang_partial_zeta(&IdealBasis::unit_ideal(&field), &eps)?,
        ));
        if let Some(b) = prime_splitting(&field, &int(3))?.basis() {
            values.push(("U".into(), lang_partial_zeta(b, &eps)?));
        }
        for p in &odd_primes {
            let b = prime_splitting(&field, p)?
                .basis()
                .cloned()
                .ok_or_else(|| Error::Invariant(format!("{p} divides D but is inert")))?;
            values.push((format!("P{p}"), lang_partial_zeta(&b, &eps)?));
        }
    }

    let distinct = values.iter().map(|(_, v)| v).collect::<BTreeSet<_>>().len();
    let mut certificate = false;
    if m_mod3.is_one() && values[0].1 != values[1].1 {
        certificate = zagier_zeta(&field)? > &values[0].1 + &values[1].1;
    }
    let bound = distinct.max(if certificate { 3 } else { 1 });
    Ok(ClassBound {
        m: m.clone(),
        values,
        distinct,
        certificate,
        bound: Integer::from(bound),
    })
}

/// The `1 + N` / `2 + N` floor for `m` with three or more prime factors,
/// `N` counting the distinct primes `p > 3` dividing `m`.
pub fn prime_factor_floor(m: &Integer) -> Result<Option<Integer>> {
    let f = factorize(&m.abs())?;
    if f.omega_total() < 3 {
        return Ok(None);
    }
    let n = f.primes().filter(|p| *p > &int(3)).count();
    let base = if modulo(m, &int(3)) == int(2) { 1 } else { 2 };
    Ok(Some(Integer::from(base + n)))
}

/// One row `m, D, h` of the class-number corpus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub m: Integer,
    pub d: Integer,
    pub h: Integer,
}

/// Class-number corpus shipped with the crate.
pub const SHIPPED_CORPUS: &str = include_str!("../data/tables.csv");

/// Parses `m,D,h` CSV. Blank lines and lines starting with `#` are skipped,
/// as is a header line `m,D,h`.
pub fn parse_corpus(text: &str) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = i + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line.replace(' ', "").eq_ignore_ascii_case("m,D,h") {
            continue;
        }
        let cols: Vec<&str> = line.split(',').map(str::trim).collect();
        if cols.len() != 3 {
            return Err(Error::Corpus {
                line: lineno,
                msg: format!("expected 3 columns, found {}", cols.len()),
            });
        }
        let parse = |s: &str, name: &str| {
            s.parse::<Integer>().map_err(|e| Error::Corpus {
                line: lineno,
                msg: format!("bad {name} '{s}': {e}"),
            })
        };
        let row = TableRow {
            m: parse(cols[0], "m")?,
            d: parse(cols[1], "D")?,
            h: parse(cols[2], "h")?,
        };
        if !row.h.is_positive() {
            return Err(Error::Corpus {
                line: lineno,
                msg: format!("class number {} must be >= 1", row.h),
            });
        }
        rows.push(row);
    }
    Ok(rows)
}

pub fn shipped_rows() -> Result<Vec<TableRow>> {
    parse_corpus(SHIPPED_CORPUS)
}

/// Outcome of recomputing one corpus row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowCheck {
    pub row: TableRow,
    pub computed_d: Integer,
    pub computed_h: Option<Integer>,
    pub problem: Option<String>,
}

impl RowCheck {
    pub fn ok(&self) -> bool {
        self.problem.is_none()
    }
}

/// Recomputes `D` and `h` for one row.
pub fn check_row(row: &TableRow) -> RowCheck {
    let computed_d: Integer = 9 * &row.m * &row.m + 4 * &row.m;
    let mut check = RowCheck {
        row: row.clone(),
        computed_d: computed_d.clone(),
        computed_h: None,
        problem: None,
    };
    if computed_d != row.d {
        check.problem = Some(format!("D = {} but 9m^2 + 4m = {computed_d}", row.d));
        return check;
    }
    match QuadField::new(computed_d).and_then(|f| class_number(&f)) {
        Ok(h) => {
            if h != row.h {
                check.problem = Some(format!("h = {} listed, {h} computed", row.h));
            }
            check.computed_h = Some(h);
        }
        Err(e) => check.problem = Some(e.to_string()),
    }
    check
}

/// Report over a whole corpus, in row order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableReport {
    pub checks: Vec<RowCheck>,
}

impl TableReport {
    pub fn mismatches(&self) -> impl Iterator<Item = &RowCheck> {
        self.checks.iter().filter(|c| !c.ok())
    }

    pub fn ok(&self) -> bool {
        self.mismatches().next().is_none()
    }
}

pub fn verify_tables(rows: &[TableRow]) -> TableReport {
    TableReport {
        checks: rows.iter().map(check_row).collect(),
    }
}

/// `true` if `m` is odd and `9m^2 + 4m` is square-free.
pub fn is_family_parameter(m: &Integer) -> bool {
    m.is_odd() && !m.is_zero() && QuadField::family(m.clone()).is_ok()
}

/// Count of narrow classes a reduced-forms enumeration sees for `field`,
/// together with the ordinary class number.
pub fn class_numbers(field: &QuadField) -> Result<(Integer, Integer)> {
    let h_plus = narrow_class_number(field.discriminant())?;
    let h = class_number(field)?;
    Ok((h, h_plus))
}
