//! Special values `zeta_K(-1)` and partial zeta values `zeta_K(-1, A)`.
//!
//! The total value comes from the divisor-sum formula; partial values come
//! from the unit matrix of an ideal basis together with weight-four
//! Dedekind sums. The family closed forms are exposed separately so they can
//! be checked against the general formula.

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::arith::{divisor_sigma, int, is_prime, modulo, square_factor, Integer, Rational};
use crate::dedekind::{dedekind_sum, DedekindCache};
use crate::error::{Error, Result};
use crate::field::{IdealBasis, QuadField};
use crate::units::FundamentalUnit;

/// `ζ_K(-1)` for a field whose discriminant is `D = 1 (mod 4)`:
/// `(1/60) * sum of sigma((D - t^2)/4)` over odd `t` with `|t| < sqrt(D)`.
pub fn zagier_zeta(field: &QuadField) -> Result<Rational> {
    if !field.is_one_mod_four() {
        return Err(Error::InvalidDiscriminant(field.discriminant().clone()));
    }
    let d = field.d();
    let mut total = Integer::zero();
    let mut t = Integer::one();
    while &(&t * &t) < d {
        let n: Integer = (d - &t * &t) / 4;
        total += divisor_sigma(&n)? * 2;
        t += 2;
    }
    Ok(Rational::new(total, int(60)))
}

/// Matrix `M = [a b; c d]` with `eps*r1 = a r1 + b r2` and `eps*r2 = c r1 + d r2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitMatrix {
    pub a: Integer,
    pub b: Integer,
    pub c: Integer,
    pub d: Integer,
}

impl UnitMatrix {
    pub fn det(&self) -> Integer {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn trace(&self) -> Integer {
        &self.a + &self.d
    }
}

pub fn unit_matrix(basis: &IdealBasis, unit: &FundamentalUnit) -> Result<UnitMatrix> {
    if basis.d() != unit.d() {
        return Err(Error::FieldMismatch(basis.d().clone(), unit.d().clone()));
    }
    let eps = unit.element();
    let row = |r: &crate::field::QuadInt, name: &str| -> Result<(Integer, Integer)> {
        let image = eps.mul(r)?;
        basis.coordinates(&image)?.ok_or_else(|| {
            Error::NonIntegralMatrix(format!("eps*{name} = {image} is not in the lattice"))
        })
    };
    let (a, b) = row(basis.r1(), "r1")?;
    let (c, d) = row(basis.r2(), "r2")?;
    let m = UnitMatrix { a, b, c, d };
    if m.det() != int(unit.norm() as i64) {
        return Err(Error::Invariant(format!(
            "det {} differs from the unit norm {}",
            m.det(),
            unit.norm()
        )));
    }
    Ok(m)
}

/// Partial zeta value at `-1` of the (narrow) class of the ideal with the
/// given basis, evaluated with the unit `unit`.
pub fn lang_partial_zeta(basis: &IdealBasis, unit: &FundamentalUnit) -> Result<Rational> {
    lang_partial_zeta_inner(basis, unit, &|r, a, c| dedekind_sum(r, a, c))
}

/// Same as [`lang_partial_zeta`], drawing Dedekind sums from `cache`.
pub fn lang_partial_zeta_cached(
    basis: &IdealBasis,
    unit: &FundamentalUnit,
    cache: &DedekindCache,
) -> Result<Rational> {
    lang_partial_zeta_inner(basis, unit, &|r, a, c| cache.get(r, a, c))
}

fn lang_partial_zeta_inner(
    basis: &IdealBasis,
    unit: &FundamentalUnit,
    sum: &dyn Fn(u32, &Integer, &Integer) -> Result<Rational>,
) -> Result<Rational> {
    let m = unit_matrix(basis, unit)?;
    if m.c.is_zero() {
        return Err(Error::DegenerateMatrix);
    }
    let (a, d, c) = (&m.a, &m.d, &m.c);
    let abs_c = c.abs();
    let sgn_c = if c.is_positive() {
        Integer::one()
    } else {
        -Integer::one()
    };
    let c3: Integer = c * c * c;
    let tr = m.trace();
    let norm_eps = int(unit.norm() as i64);

    let poly: Integer = &tr * &tr * &tr - 6 * &tr * &norm_eps;
    let weight = |x: &Integer, k: i64| Rational::from_integer(x * &c3 * &sgn_c * k);
    let bracket = Rational::from_integer(poly) - weight(&Integer::one(), 240) * sum(3, a, &abs_c)?
        + weight(a, 180) * sum(2, a, &abs_c)?
        - weight(&Integer::one(), 240) * sum(3, d, &abs_c)?
        + weight(d, 180) * sum(2, d, &abs_c)?;

    let r2 = basis.r2();
    let sgn_delta = basis.delta().signum();
    let prefactor = Rational::new(r2.norm() * sgn_delta, 360 * basis.norm() * &c3);
    Ok(prefactor * bracket)
}

/// Checks the standing hypotheses of the family closed forms: `m` odd and
/// positive with `D = 9m^2 + 4m` square-free.
fn family_hypotheses(m: &Integer) -> Result<()> {
    if !m.is_positive() {
        return Err(Error::Hypothesis(format!(
            "closed forms need m > 0, got {m}"
        )));
    }
    if m.is_even() {
        return Err(Error::EvenParameter(m.clone()));
    }
    let d: Integer = 9 * m * m + 4 * m;
    match square_factor(&d)? {
        Some(factor) => Err(Error::NotSquarefree { value: d, factor }),
        None => Ok(()),
    }
}

fn poly(coeffs: &[i64], x: &Integer) -> Integer {
    coeffs.iter().fold(Integer::zero(), |acc, &k| acc * x + k)
}

/// Partial zeta of the principal class: `(9m^3 + 6m^2 + 19m + 6)/120`.
pub fn partial_zeta_trivial(m: &Integer) -> Result<Rational> {
    family_hypotheses(m)?;
    Ok(Rational::new(poly(&[9, 6, 19, 6], m), int(120)))
}

/// Class of the prime above 3 when `3 | m`: `(3m^3 + 2m^2 + 273m + 162)/360`.
pub fn partial_zeta_ramified3(m: &Integer) -> Result<Rational> {
    family_hypotheses(m)?;
    if !modulo(m, &int(3)).is_zero() {
        return Err(Error::Hypothesis(format!("3 must divide m = {m}")));
    }
    Ok(Rational::new(poly(&[3, 2, 273, 162], m), int(360)))
}

/// Class of a prime above 3 when `m = 1 (mod 3)`: `(3m^3 + 2m^2 + 113m + 2)/360`.
pub fn partial_zeta_split3(m: &Integer) -> Result<Rational> {
    family_hypotheses(m)?;
    if !modulo(m, &int(3)).is_one() {
        return Err(Error::Hypothesis(format!("m = {m} must be 1 (mod 3)")));
    }
    Ok(Rational::new(poly(&[3, 2, 113, 2], m), int(360)))
}

/// Class of the prime above `p | m`, `p > 3`:
/// `(9m^3 + 6m^2 + 9mp^4 + 10mp^2 + 6p^4) / (120 p^2)`.
pub fn partial_zeta_p(m: &Integer, p: &Integer) -> Result<Rational> {
    family_hypotheses(m)?;
    if !is_prime(p) {
        return Err(Error::NotPrime(p.clone()));
    }
    if *p <= int(3) || !modulo(m, p).is_zero() {
        return Err(Error::Hypothesis(format!(
            "p = {p} must be a prime > 3 dividing m = {m}"
        )));
    }
    let p2 = p * p;
    let p4 = &p2 * &p2;
    let num: Integer = 9 * m * m * m + 6 * m * m + 9 * m * &p4 + 10 * m * &p2 + 6 * &p4;
    Ok(Rational::new(num, 120 * p2))
}

/// Both closed forms for the class of the prime above `q = 9m + 4`: the
/// polynomial in `q`, `(q^3 - 6q^2 + 171q - 166)/9720`, and the polynomial
/// in `m`.
pub fn partial_zeta_q_forms(m: &Integer) -> Result<(Rational, Rational)> {
    family_hypotheses(m)?;
    let q: Integer = 9 * m + 4;
    if !is_prime(&q) {
        return Err(Error::NotPrime(q));
    }
    let in_q = Rational::new(poly(&[1, -6, 171, -166], &q), int(27 * 360));
    let in_m = Rational::new(poly(&[9, 6, 19, 6], m), int(120));
    Ok((in_q, in_m))
}

/// Partial zeta of the class of the prime above `q = 9m + 4`; errors if the
/// two closed forms ever disagree.
pub fn partial_zeta_q(m: &Integer) -> Result<Rational> {
    let (in_q, in_m) = partial_zeta_q_forms(m)?;
    if in_q != in_m {
        return Err(Error::Invariant(format!(
            "closed forms disagree at m = {m}: {in_q} vs {in_m}"
        )));
    }
    Ok(in_q)
}

/// Lower bound for `ζ_K(-1)` when `m = 1 (mod 3)`, built from the trivial
/// divisors of every `(D - t^2)/4`, the divisor 3 where it occurs, and the
/// extra divisors at `t = m`:
/// `(1/60)((9m^3 + 6m^2 + 13m + 4)/2 + m^3 + 2m^2/3 + 19m/3 + 2(3m + 1))`.
pub fn c3_lower_bound(m: &Integer) -> Result<Rational> {
    if !m.is_positive() || m.is_even() || !modulo(m, &int(3)).is_one() {
        return Err(Error::Hypothesis(format!(
            "m = {m} must be odd, positive and 1 (mod 3)"
        )));
    }
    let m_r = Rational::from_integer(m.clone());
    let trivial = Rational::new(poly(&[9, 6, 13, 4], m), int(2));
    let threes =
        &m_r * &m_r * &m_r + Rational::new(2 * m * m, int(3)) + Rational::new(19 * m, int(3));
    let extra = Rational::from_integer(2 * (3 * m + 1));
    Ok((trivial + threes + extra) / Rational::from_integer(int(60)))
}
