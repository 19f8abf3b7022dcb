//! The norm equation `x^2 - D y^2 = N`.
//!
//! Solutions are enumerated inside the classical window bounded by the
//! smallest solution of `x^2 - D y^2 = 1`, which makes the search complete:
//! every class of solutions under multiplication by units of `Z[sqrt(D)]`
//! has a representative in the window.

use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::arith::{int, is_perfect_square, is_prime, isqrt, Integer};
use crate::error::{Error, Result};
use crate::field::{IdealBasis, QuadField, QuadInt};

/// A solution of `x^2 - D y^2 = N`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PellSolution {
    pub x: Integer,
    pub y: Integer,
    pub n: Integer,
    pub d: Integer,
}

impl PellSolution {
    /// Checks the defining equation.
    pub fn holds(&self) -> bool {
        &self.x * &self.x - &self.d * &self.y * &self.y == self.n
    }

    /// `x = y (mod 2)`, i.e. `(x + y sqrt(D))/2` is an algebraic integer
    /// when `D = 1 (mod 4)`.
    pub fn is_integral(&self) -> bool {
        (&self.x - &self.y).is_even()
    }
}

impl fmt::Display for PellSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}): x^2 - {} y^2 = {}",
            self.x, self.y, self.d, self.n
        )
    }
}

fn check_radicand(d: &Integer) -> Result<()> {
    if *d < int(2) {
        return Err(Error::Hypothesis(format!("D = {d} must be at least 2")));
    }
    if is_perfect_square(d) {
        return Err(Error::PerfectSquare(d.clone()));
    }
    Ok(())
}

/// Smallest solution `(x1, y1)` with `y1 > 0` of `x^2 - D y^2 = 1`, from the
/// continued fraction of `sqrt(D)`.
pub fn pell_unit(d: &Integer) -> Result<(Integer, Integer)> {
    check_radicand(d)?;
    let root = isqrt(d);
    let (mut p, mut q) = (Integer::zero(), Integer::one());
    let (mut a_prev, mut a_cur) = (Integer::zero(), Integer::one());
    let (mut b_prev, mut b_cur) = (Integer::one(), Integer::zero());
    loop {
        let a = (&p + &root) / &q;
        let a_next = &a * &a_cur + &a_prev;
        let b_next = &a * &b_cur + &b_prev;
        a_prev = std::mem::replace(&mut a_cur, a_next);
        b_prev = std::mem::replace(&mut b_cur, b_next);
        p = &a * &q - &p;
        q = (d - &p * &p) / &q;
        if q.is_one() {
            break;
        }
    }
    // end of the first period: norm is +1 or -1
    if (&a_cur * &a_cur - d * &b_cur * &b_cur).is_one() {
        return Ok((a_cur, b_cur));
    }
    let x = &a_cur * &a_cur + d * &b_cur * &b_cur;
    let y = 2 * &a_cur * &b_cur;
    Ok((x, y))
}

/// One representative of every solution class of `x^2 - D y^2 = N`, with
/// `y >= 0`; for `xy != 0` both `(x, y)` and `(-x, y)` are listed, since
/// they may lie in different classes. Empty iff the equation has no integer
/// solution.
pub fn solve_pell(d: &Integer, n: &Integer) -> Result<Vec<PellSolution>> {
    let (x1, y1) = pell_unit(d)?;
    solve_pell_with_unit(d, n, &x1, &y1)
}

/// [`solve_pell`] with a caller-supplied solution of `x1^2 - D y1^2 = 1`,
/// `x1 > 1`, which bounds the window.
pub fn solve_pell_with_unit(
    d: &Integer,
    n: &Integer,
    x1: &Integer,
    y1: &Integer,
) -> Result<Vec<PellSolution>> {
    check_radicand(d)?;
    if n.is_zero() {
        return Err(Error::Hypothesis("N must be nonzero".into()));
    }
    if &(x1 * x1) - d * y1 * y1 != Integer::one() || !y1.is_positive() {
        return Err(Error::Hypothesis(format!(
            "({x1}, {y1}) does not solve x^2 - {d} y^2 = 1"
        )));
    }
    // y^2 <= y1^2 |N| / (2 (x1 + 1))   for N > 0
    // y^2 <= y1^2 |N| / (2 (x1 - 1))   for N < 0
    let abs_n = n.abs();
    let shift = if n.is_positive() { x1 + 1 } else { x1 - 1 };
    let y_max = isqrt(&((y1 * y1 * &abs_n) / (2 * shift)));

    let mut out = Vec::new();
    let mut y = Integer::zero();
    while y <= y_max {
        let x2: Integer = n + d * &y * &y;
        if !x2.is_negative() && is_perfect_square(&x2) {
            let x = isqrt(&x2);
            let sol = PellSolution {
                x: x.clone(),
                y: y.clone(),
                n: n.clone(),
                d: d.clone(),
            };
            if !x.is_zero() && !y.is_zero() {
                out.push(PellSolution {
                    x: -x,
                    ..sol.clone()
                });
            }
            out.push(sol);
        }
        y += 1;
    }
    if out.iter().any(|s| !s.holds()) {
        return Err(Error::Invariant("enumerated a non-solution".into()));
    }
    Ok(out)
}

/// `true` if the two solutions of the same equation differ by a unit of
/// `Z[sqrt(D)]`: `(x + y sqrt(D)) (x' - y' sqrt(D)) / N` has integer
/// coordinates.
pub fn unit_equivalent(s: &PellSolution, t: &PellSolution) -> bool {
    if s.d != t.d || s.n != t.n {
        return false;
    }
    let re = &s.x * &t.x - &s.d * &s.y * &t.y;
    let im = &s.y * &t.x - &s.x * &t.y;
    (&re % &s.n).is_zero() && (&im % &s.n).is_zero()
}

fn family_prime(m: &Integer) -> Result<(QuadField, Integer)> {
    if !m.is_positive() {
        return Err(Error::Hypothesis(format!("m = {m} must be positive")));
    }
    let field = QuadField::family(m.clone())?;
    let q: Integer = 9 * m + 4;
    if !is_prime(&q) {
        return Err(Error::NotPrime(q));
    }
    Ok((field, q))
}

/// The solution `(q, 3)` of `x^2 - D y^2 = 4q`, `q = 9m + 4` prime:
/// `q^2 - 9D = q (q - 9m) = 4q`.
pub fn family_solution(m: &Integer) -> Result<PellSolution> {
    let (field, q) = family_prime(m)?;
    let sol = PellSolution {
        x: q.clone(),
        y: int(3),
        n: 4 * &q,
        d: field.d().clone(),
    };
    if !sol.holds() {
        return Err(Error::Invariant(format!("{sol} fails")));
    }
    Ok(sol)
}

/// Generator of the prime above `q = 9m + 4`, with its coordinates in the
/// ideal basis `{(q + sqrt(D))/2, q}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrincipalWitness {
    pub generator: QuadInt,
    pub ideal: IdealBasis,
    pub coordinates: (Integer, Integer),
}

/// Shows that the prime `<q, (q + sqrt(D))/2>` is generated by
/// `(q + 3 sqrt(D))/2`: the element lies in the ideal and has norm `q`,
/// which equals the norm of the ideal.
pub fn ramified_prime_is_principal(m: &Integer) -> Result<(bool, PrincipalWitness)> {
    let (field, q) = family_prime(m)?;
    let ideal = IdealBasis::new(
        field.element(q.clone(), int(1))?,
        field.rational(q.clone()),
        q.clone(),
    )?;
    let generator = field.element(q.clone(), int(3))?;
    let coordinates = ideal.coordinates(&generator)?;
    let principal = generator.norm() == q && coordinates.is_some();
    let coordinates = coordinates.unwrap_or_default();
    Ok((
        principal,
        PrincipalWitness {
            generator,
            ideal,
            coordinates,
        },
    ))
}
