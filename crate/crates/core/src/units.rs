//! Continued fractions of quadratic surds and fundamental units.
//!
//! The expansion runs on the integer state `(P, Q)` of `(P + sqrt(d))/Q`
//! with `Q | d - P^2`; no floating point is involved anywhere.

use std::collections::HashMap;
use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::arith::{int, is_perfect_square, isqrt, modulo, Integer};
use crate::error::{Error, Result};
use crate::field::{QuadField, QuadInt};

/// `[a0; a1, ..., ak, (period)]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CFExpansion {
    pub initial: Vec<Integer>,
    pub period: Vec<Integer>,
}

impl CFExpansion {
    /// The `n`-th partial quotient.
    pub fn term(&self, n: usize) -> &Integer {
        if n < self.initial.len() {
            &self.initial[n]
        } else {
            &self.period[(n - self.initial.len()) % self.period.len()]
        }
    }
}

impl fmt::Display for CFExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[Integer]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        write!(f, "[{}; ({})]", join(&self.initial), join(&self.period))
    }
}

/// One step of the surd continued-fraction recurrence.
#[derive(Debug, Clone)]
struct SurdState {
    p: Integer,
    q: Integer,
    d: Integer,
    root: Integer,
}

impl SurdState {
    /// Floor of `(P + sqrt(d))/Q`; exact because `sqrt(d)` is irrational.
    fn partial_quotient(&self) -> Integer {
        let num = &self.p + &self.root;
        if self.q.is_positive() {
            num.div_floor(&self.q)
        } else {
            -(num.div_floor(&-&self.q)) - 1
        }
    }

    fn advance(&mut self, a: &Integer) {
        let p_next = a * &self.q - &self.p;
        let q_next = (&self.d - &p_next * &p_next) / &self.q;
        self.p = p_next;
        self.q = q_next;
    }

    fn key(&self) -> (Integer, Integer) {
        (self.p.clone(), self.q.clone())
    }
}

fn surd_state(a: &Integer, b: &Integer, c: &Integer, d: &Integer) -> Result<SurdState> {
    if b.is_zero() || c.is_zero() {
        return Err(Error::DegenerateSurd);
    }
    if !d.is_positive() {
        return Err(Error::Hypothesis(format!("radicand {d} must be positive")));
    }
    if is_perfect_square(d) {
        return Err(Error::PerfectSquare(d.clone()));
    }
    // (a + b sqrt(D))/c = (P + sqrt(b^2 c^2 D))/Q with Q | radicand - P^2
    let radicand = b * b * c * c * d;
    let (p, q) = if (b * c).is_positive() {
        (a * c, c * c)
    } else {
        (-(a * c), -(c * c))
    };
    let root = isqrt(&radicand);
    Ok(SurdState {
        p,
        q,
        d: radicand,
        root,
    })
}

/// Eventually periodic expansion of `(a + b*sqrt(D))/c`, minimal period.
pub fn cf_expand(a: &Integer, b: &Integer, c: &Integer, d: &Integer) -> Result<CFExpansion> {
    let mut state = surd_state(a, b, c, d)?;
    let mut seen: HashMap<(Integer, Integer), usize> = HashMap::new();
    let mut terms = Vec::new();
    loop {
        if let Some(&start) = seen.get(&state.key()) {
            let period = terms.split_off(start);
            return Ok(CFExpansion {
                initial: terms,
                period,
            });
        }
        seen.insert(state.key(), terms.len());
        let a_i = state.partial_quotient();
        state.advance(&a_i);
        terms.push(a_i);
    }
}

/// Smallest unit `(t + u*sqrt(D))/2 > 1` of the ring of integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalUnit {
    t: Integer,
    u: Integer,
    norm: i32,
    d: Integer,
    period_length: usize,
}

impl FundamentalUnit {
    pub fn t(&self) -> &Integer {
        &self.t
    }

    pub fn u(&self) -> &Integer {
        &self.u
    }

    pub fn norm(&self) -> i32 {
        self.norm
    }

    pub fn d(&self) -> &Integer {
        &self.d
    }

    /// Length of the continued-fraction period the unit was read off, or 0
    /// when the unit was supplied directly.
    pub fn period_length(&self) -> usize {
        self.period_length
    }

    pub fn element(&self) -> QuadInt {
        let field_d = &self.d;
        // parity is checked at construction
        QuadField::new(field_d.clone())
            .and_then(|f| f.element(self.t.clone(), self.u.clone()))
            .expect("unit lies in the ring of integers")
    }

    /// Build from explicit `(t, u)`, checking that it is a unit `> 1`.
    pub fn from_parts(field: &QuadField, t: Integer, u: Integer) -> Result<Self> {
        let e = field.element(t.clone(), u.clone())?;
        let n = e.norm();
        let norm = if n.is_one() {
            1
        } else if n == int(-1) {
            -1
        } else {
            return Err(Error::Hypothesis(format!("{e} has norm {n}, not +-1")));
        };
        if !t.is_positive() || !u.is_positive() {
            return Err(Error::Hypothesis(format!(
                "{e} is not a unit greater than 1"
            )));
        }
        Ok(Self {
            t,
            u,
            norm,
            d: field.d().clone(),
            period_length: 0,
        })
    }

    /// The smallest power of this unit that has norm `+1`.
    pub fn totally_positive(&self) -> Self {
        if self.norm == 1 {
            return self.clone();
        }
        let sq = self.element().pow(2);
        Self {
            t: sq.x().clone(),
            u: sq.y().clone(),
            norm: 1,
            d: self.d.clone(),
            period_length: self.period_length,
        }
    }
}

impl fmt::Display for FundamentalUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}*sqrt({}))/2", self.t, self.u, self.d)
    }
}

/// Fundamental unit from the continued fraction of `(1 + sqrt(D))/2`
/// (or `sqrt(D)` when `D = 2, 3 mod 4`), read off at the end of the first
/// period where the state returns to `Q = Q0`.
pub fn fundamental_unit(field: &QuadField) -> Result<FundamentalUnit> {
    let d = field.d();
    let (p0, q0) = if field.is_one_mod_four() {
        (Integer::one(), int(2))
    } else {
        (Integer::zero(), Integer::one())
    };
    let mut state = SurdState {
        p: p0.clone(),
        q: q0.clone(),
        d: d.clone(),
        root: isqrt(d),
    };
    if is_perfect_square(d) {
        return Err(Error::PerfectSquare(d.clone()));
    }
    // convergents A_i / B_i
    let (mut a_prev, mut a_cur) = (Integer::zero(), Integer::one());
    let (mut b_prev, mut b_cur) = (Integer::one(), Integer::zero());
    let mut i = 0usize;
    loop {
        let a_i = state.partial_quotient();
        let a_next = &a_i * &a_cur + &a_prev;
        let b_next = &a_i * &b_cur + &b_prev;
        a_prev = std::mem::replace(&mut a_cur, a_next);
        b_prev = std::mem::replace(&mut b_cur, b_next);
        state.advance(&a_i);
        i += 1;
        if state.q == q0 {
            break;
        }
    }
    // G = Q0 A - P0 B satisfies G^2 - d B^2 = +-Q0^2
    let g = &q0 * &a_cur - &p0 * &b_cur;
    let (t, u) = if field.is_one_mod_four() {
        (g, b_cur)
    } else {
        (2 * g, 2 * b_cur)
    };
    let mut unit = FundamentalUnit::from_parts(field, t, u)?;
    unit.period_length = i;
    Ok(unit)
}

/// The unit `((9m + 2) + 3 sqrt(D))/2` (or `((9|m| - 2) + 3 sqrt(D))/2` for
/// negative `m`), with a flag recording whether it matched the
/// continued-fraction fundamental unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyUnit {
    pub unit: FundamentalUnit,
    pub fundamental: bool,
}

pub fn family_unit(m: &Integer) -> Result<FamilyUnit> {
    let field = QuadField::family(m.clone())?;
    let t: Integer = if m.is_positive() {
        9 * m + 2
    } else {
        9 * (-m) - 2
    };
    let unit = FundamentalUnit::from_parts(&field, t, int(3))?;
    if unit.norm != 1 {
        return Err(Error::Invariant(format!("family unit {unit} has norm -1")));
    }
    let cf = fundamental_unit(&field)?;
    let fundamental = cf.t == unit.t && cf.u == unit.u;
    Ok(FamilyUnit { unit, fundamental })
}

/// Narrow-sense Richaud-Degert test: `D = n^2 + r` with `-n < r <= n`, `r | 4n`.
pub fn is_rd_type(d: &Integer) -> Result<bool> {
    QuadField::new(d.clone())?;
    let lo = isqrt(&(d / 2u32));
    let hi = isqrt(&(2 * d)) + 1u32;
    let mut n = if lo.is_zero() { Integer::one() } else { lo };
    while n <= hi {
        let r = d - &n * &n;
        if r > -&n && r <= n && !r.is_zero() && modulo(&(4 * &n), &r.abs()).is_zero() {
            return Ok(true);
        }
        n += 1u32;
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Integer> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn unit_of(d: i64) -> FundamentalUnit {
        fundamental_unit(&QuadField::new(int(d)).unwrap()).unwrap()
    }

    #[test]
    fn classical_expansions() {
        let e = cf_expand(&int(0), &int(1), &int(1), &int(5)).unwrap();
        assert_eq!(e.initial, ints(&[2]));
        assert_eq!(e.period, ints(&[4]));
        let e = cf_expand(&int(1), &int(1), &int(2), &int(13)).unwrap();
        assert_eq!(e.initial, ints(&[2]));
        assert_eq!(e.period, ints(&[3]));
        let e = cf_expand(&int(0), &int(1), &int(1), &int(93)).unwrap();
        assert_eq!(e.initial, ints(&[9]));
        assert_eq!(e.period, ints(&[1, 1, 1, 4, 6, 4, 1, 1, 1, 18]));
        // golden ratio is purely periodic
        let e = cf_expand(&int(1), &int(1), &int(2), &int(5)).unwrap();
        assert!(e.initial.is_empty());
        assert_eq!(e.period, ints(&[1]));
    }

    #[test]
    fn negative_denominators_and_coefficients() {
        // (1 - sqrt 13)/2 = -1.30... = [-2; 1, 2, (3)]
        let e = cf_expand(&int(1), &int(-1), &int(2), &int(13)).unwrap();
        assert_eq!(e.term(0), &int(-2));
        assert!(e.period.iter().all(|a| a.is_positive()));
        // (1 + sqrt 13)/(-2) is the same number
        let f = cf_expand(&int(-1), &int(1), &int(-2), &int(13)).unwrap();
        assert_eq!(
            (0..12).map(|i| e.term(i).clone()).collect::<Vec<_>>(),
            (0..12).map(|i| f.term(i).clone()).collect::<Vec<_>>()
        );
    }

    #[test]
    fn expansion_errors() {
        assert_eq!(
            cf_expand(&int(0), &int(1), &int(1), &int(49)),
            Err(Error::PerfectSquare(int(49)))
        );
        assert_eq!(
            cf_expand(&int(1), &int(1), &int(0), &int(5)),
            Err(Error::DegenerateSurd)
        );
        assert_eq!(
            cf_expand(&int(1), &int(0), &int(3), &int(5)),
            Err(Error::DegenerateSurd)
        );
    }

    #[test]
    fn small_fundamental_units() {
        let u = unit_of(5);
        assert_eq!((u.t(), u.u(), u.norm()), (&int(1), &int(1), -1));
        let u = unit_of(13);
        assert_eq!((u.t(), u.u(), u.norm()), (&int(3), &int(1), -1));
        let u = unit_of(93);
        assert_eq!((u.t(), u.u(), u.norm()), (&int(29), &int(3), 1));
        // D = 2 mod 4 and 3 mod 4
        let u = unit_of(2);
        assert_eq!((u.t(), u.u(), u.norm()), (&int(2), &int(2), -1));
        let u = unit_of(3);
        assert_eq!((u.t(), u.u(), u.norm()), (&int(4), &int(2), 1));
        let u = unit_of(94);
        assert_eq!((u.t(), u.u()), (&int(2 * 2143295), &int(2 * 221064)));
    }

    fn isqrt128(n: i128) -> i128 {
        let mut r = (n as f64).sqrt() as i128;
        while r * r > n {
            r -= 1;
        }
        while (r + 1) * (r + 1) <= n {
            r += 1;
        }
        r
    }

    /// Brute force: smallest u in 1..=limit with t^2 - D u^2 = +-4 and the
    /// right parity.
    fn brute_unit(d: i128, limit: i128) -> Option<(i128, i128, i32)> {
        let one_mod_four = d % 4 == 1;
        for u in 1..=limit {
            for n in [-4i128, 4] {
                let t2 = d * u * u + n;
                if t2 <= 0 {
                    continue;
                }
                let t = isqrt128(t2);
                if t > 0 && t * t == t2 && (one_mod_four || (t % 2 == 0 && u % 2 == 0)) {
                    return Some((t, u, (n / 4) as i32));
                }
            }
        }
        None
    }

    #[test]
    fn fundamental_unit_is_minimal() {
        const LIMIT: i128 = 200_000;
        let mut exhaustive = 0;
        for d in 2..=2000i64 {
            let Ok(field) = QuadField::new(int(d)) else {
                continue;
            };
            let u = fundamental_unit(&field).unwrap();
            let e = u.element();
            assert_eq!(e.norm().abs(), int(1));
            assert!(e.greater_than_one());
            match brute_unit(d as i128, LIMIT) {
                Some((t, uu, n)) => {
                    assert_eq!(
                        (u.t(), u.u(), u.norm()),
                        (&int(t as i64), &int(uu as i64), n),
                        "D = {d}"
                    );
                    exhaustive += 1;
                }
                // nothing below the limit, so the unit must lie above it
                None => assert!(*u.u() > Integer::from(LIMIT), "D = {d}"),
            }
        }
        assert!(
            exhaustive > 700,
            "only {exhaustive} fields checked exhaustively"
        );
    }

    #[test]
    fn family_units() {
        let f = family_unit(&int(3)).unwrap();
        assert_eq!(
            (f.unit.t(), f.unit.u(), f.unit.norm()),
            (&int(29), &int(3), 1)
        );
        assert!(f.fundamental);
        let f = family_unit(&int(-5)).unwrap();
        assert_eq!((f.unit.t(), f.unit.u()), (&int(43), &int(3)));
        assert!(f.fundamental);
        let f = family_unit(&int(7)).unwrap();
        assert_eq!((f.unit.t(), f.unit.u()), (&int(65), &int(3)));
        // m = 1: the family unit is the square of (3 + sqrt 13)/2
        let f = family_unit(&int(1)).unwrap();
        assert!(!f.fundamental);
        assert_eq!(unit_of(13).totally_positive().element(), f.unit.element());
        assert!(family_unit(&int(4)).is_err());
        assert!(family_unit(&int(9)).is_err());
    }

    #[test]
    fn conjugate_of_norm_one_unit_is_below_one() {
        for m in [3i64, 7, -5, 15, -21] {
            let e = family_unit(&int(m)).unwrap().unit.element();
            let c = e.conj();
            assert!(e.greater_than_one());
            assert_eq!(c.signum(), 1);
            assert!(!c.greater_than_one());
        }
    }

    #[test]
    fn richaud_degert() {
        assert!(is_rd_type(&int(5)).unwrap());
        assert!(!is_rd_type(&int(93)).unwrap());
        assert!(!is_rd_type(&int(13)).unwrap());
        assert!(is_rd_type(&int(2)).unwrap()); // 1 + 1
        assert!(is_rd_type(&int(23)).unwrap()); // 25 - 2, 2 | 20
        assert!(is_rd_type(&int(12)).is_err());
    }

    /// Direct enumeration of all (n, r) with n up to D.
    fn rd_oracle(d: i64) -> bool {
        (1..=d).any(|n| {
            let r = d - n * n;
            r > -n && r <= n && r != 0 && (4 * n) % r.abs() == 0
        })
    }

    #[test]
    fn richaud_degert_matches_enumeration() {
        for d in 2..=3000i64 {
            let Ok(true) = crate::arith::is_squarefree(&int(d)) else {
                continue;
            };
            assert_eq!(is_rd_type(&int(d)).unwrap(), rd_oracle(d), "D = {d}");
        }
    }
}
