//! Real quadratic fields `Q(sqrt(D))`, their integers, and prime ideal bases.
//!
//! Elements are stored as `(x + y*sqrt(D))/2`. For `D = 1 mod 4` the ring of
//! integers is exactly the set with `x = y (mod 2)`; for `D = 2, 3 mod 4` both
//! halves must be even.

use std::fmt;
use std::ops::Neg;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::arith::{int, is_perfect_square, is_prime, modulo, square_factor, Integer};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadField {
    d: Integer,
    m: Option<Integer>,
    discriminant: Integer,
}

impl QuadField {
    /// `Q(sqrt(D))` for a square-free `D >= 2`.
    pub fn new(d: Integer) -> Result<Self> {
        if d < int(2) {
            return Err(Error::Hypothesis(format!("D = {d} must be at least 2")));
        }
        if let Some(factor) = square_factor(&d)? {
            return Err(Error::NotSquarefree { value: d, factor });
        }
        let discriminant = if modulo(&d, &int(4)).is_one() {
            d.clone()
        } else {
            &d * 4
        };
        Ok(Self {
            d,
            m: None,
            discriminant,
        })
    }

    /// The family member `D = 9m^2 + 4m` for odd `m`.
    pub fn family(m: Integer) -> Result<Self> {
        if m.is_even() {
            return Err(Error::EvenParameter(m));
        }
        let d: Integer = 9 * &m * &m + 4 * &m;
        // positive for every odd m; kept as a guard
        if !d.is_positive() {
            return Err(Error::Hypothesis(format!(
                "9m^2 + 4m = {d} is not positive"
            )));
        }
        let mut field = Self::new(d)?;
        debug_assert_eq!(field.discriminant, field.d);
        field.m = Some(m);
        Ok(field)
    }

    pub fn d(&self) -> &Integer {
        &self.d
    }

    /// Family parameter, when the field was built from one.
    pub fn m(&self) -> Option<&Integer> {
        self.m.as_ref()
    }

    pub fn discriminant(&self) -> &Integer {
        &self.discriminant
    }

    pub fn is_one_mod_four(&self) -> bool {
        self.discriminant == self.d
    }

    pub fn family_m(&self) -> Result<&Integer> {
        self.m.as_ref().ok_or_else(|| {
            Error::Hypothesis(format!(
                "Q(sqrt({})) was not built from a family parameter",
                self.d
            ))
        })
    }

    pub fn element(&self, x: Integer, y: Integer) -> Result<QuadInt> {
        QuadInt::new(x, y, self)
    }

    pub fn rational(&self, n: Integer) -> QuadInt {
        QuadInt {
            x: n * 2,
            y: Integer::zero(),
            d: self.d.clone(),
        }
    }

    /// `(1 + sqrt(D))/2` or `sqrt(D)`, whichever generates the ring of integers.
    pub fn omega(&self) -> QuadInt {
        if self.is_one_mod_four() {
            QuadInt {
                x: Integer::one(),
                y: Integer::one(),
                d: self.d.clone(),
            }
        } else {
            QuadInt {
                x: Integer::zero(),
                y: int(2),
                d: self.d.clone(),
            }
        }
    }
}

/// `make_family_field` under its operational name.
pub fn make_family_field(m: &Integer) -> Result<QuadField> {
    QuadField::family(m.clone())
}

/// Integer `(x + y*sqrt(D))/2` of a real quadratic field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadInt {
    x: Integer,
    y: Integer,
    d: Integer,
}

fn is_integral(x: &Integer, y: &Integer, d: &Integer) -> bool {
    if modulo(d, &int(4)).is_one() {
        x.is_even() == y.is_even()
    } else {
        x.is_even() && y.is_even()
    }
}

impl QuadInt {
    pub fn new(x: Integer, y: Integer, field: &QuadField) -> Result<Self> {
        if !is_integral(&x, &y, &field.d) {
            return Err(Error::Hypothesis(format!(
                "({x} + {y}*sqrt({}))/2 is not an algebraic integer",
                field.d
            )));
        }
        Ok(Self {
            x,
            y,
            d: field.d.clone(),
        })
    }

    /// Coordinates `(x, y)` of `(x + y*sqrt(D))/2`.
    pub fn x(&self) -> &Integer {
        &self.x
    }

    pub fn y(&self) -> &Integer {
        &self.y
    }

    pub fn d(&self) -> &Integer {
        &self.d
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.d == other.d {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.d.clone(), other.d.clone()))
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let x = (&self.x * &other.x + &self.d * &self.y * &other.y) / 2;
        let y = (&self.x * &other.y + &self.y * &other.x) / 2;
        Ok(Self {
            x,
            y,
            d: self.d.clone(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(Self {
            x: &self.x + &other.x,
            y: &self.y + &other.y,
            d: self.d.clone(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&-other.clone())
    }

    pub fn scale(&self, k: &Integer) -> Self {
        Self {
            x: &self.x * k,
            y: &self.y * k,
            d: self.d.clone(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self {
            x: int(2),
            y: Integer::zero(),
            d: self.d.clone(),
        };
        for _ in 0..k {
            acc = acc.mul(self).expect("same field");
        }
        acc
    }

    pub fn conj(&self) -> Self {
        Self {
            x: self.x.clone(),
            y: -&self.y,
            d: self.d.clone(),
        }
    }

    pub fn norm(&self) -> Integer {
        (&self.x * &self.x - &self.d * &self.y * &self.y) / 4
    }

    pub fn trace(&self) -> Integer {
        self.x.clone()
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }

    /// Sign of the real embedding `(x + y*sqrt(D))/2`.
    pub fn signum(&self) -> i32 {
        let sx = sign(&self.x);
        let sy = sign(&self.y);
        if sx == sy || sy == 0 {
            return sx;
        }
        if sx == 0 {
            return sy;
        }
        // opposite signs: compare x^2 against D*y^2
        let lhs = &self.x * &self.x;
        let rhs = &self.d * &self.y * &self.y;
        if lhs > rhs {
            sx
        } else {
            sy
        }
    }

    /// `self > 1` in the real embedding.
    pub fn greater_than_one(&self) -> bool {
        let shifted = Self {
            x: &self.x - 2,
            y: self.y.clone(),
            d: self.d.clone(),
        };
        shifted.signum() > 0
    }
}

fn sign(n: &Integer) -> i32 {
    if n.is_positive() {
        1
    } else if n.is_negative() {
        -1
    } else {
        0
    }
}

impl Neg for QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt {
            x: -self.x,
            y: -self.y,
            d: self.d,
        }
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = if self.y.is_negative() { '-' } else { '+' };
        write!(f, "({}{}{}*sqrt({}))/2", self.x, op, self.y.abs(), self.d)
    }
}

/// Integral basis `{r1, r2}` of an ideal. `r1` carries the irrational part,
/// `r2` is rational, so `delta = r1 r2' - r1' r2` is a positive multiple of
/// `sqrt(D)` for the bases built here.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealBasis {
    r1: QuadInt,
    r2: QuadInt,
    norm: Integer,
}

impl IdealBasis {
    pub fn new(r1: QuadInt, r2: QuadInt, norm: Integer) -> Result<Self> {
        r1.same_field(&r2)?;
        if !norm.is_positive() {
            return Err(Error::NotPositive(norm));
        }
        let basis = Self { r1, r2, norm };
        if basis.delta().x.is_zero() && !basis.delta().y.is_zero() {
            Ok(basis)
        } else {
            Err(Error::Hypothesis(
                "basis elements are linearly dependent".into(),
            ))
        }
    }

    /// `{omega, 1}`, the ring of integers itself.
    pub fn unit_ideal(field: &QuadField) -> Self {
        Self {
            r1: field.omega(),
            r2: field.rational(Integer::one()),
            norm: Integer::one(),
        }
    }

    pub fn r1(&self) -> &QuadInt {
        &self.r1
    }

    pub fn r2(&self) -> &QuadInt {
        &self.r2
    }

    pub fn norm(&self) -> &Integer {
        &self.norm
    }

    pub fn d(&self) -> &Integer {
        self.r1.d()
    }

    pub fn delta(&self) -> QuadInt {
        delta(self)
    }

    /// Basis of the conjugate ideal, `{r1', r2}`.
    pub fn conjugate(&self) -> Self {
        Self {
            r1: self.r1.conj(),
            r2: self.r2.clone(),
            norm: self.norm.clone(),
        }
    }

    /// Integer coordinates `(u, v)` with `alpha = u*r1 + v*r2`, if they exist.
    pub fn coordinates(&self, alpha: &QuadInt) -> Result<Option<(Integer, Integer)>> {
        self.r1.same_field(alpha)?;
        let (x1, y1) = (&self.r1.x, &self.r1.y);
        let (x2, y2) = (&self.r2.x, &self.r2.y);
        let det = x1 * y2 - y1 * x2;
        let u_num = &alpha.x * y2 - &alpha.y * x2;
        let v_num = x1 * &alpha.y - y1 * &alpha.x;
        if (&u_num % &det).is_zero() && (&v_num % &det).is_zero() {
            Ok(Some((u_num / &det, v_num / &det)))
        } else {
            Ok(None)
        }
    }

    pub fn contains(&self, alpha: &QuadInt) -> Result<bool> {
        Ok(self.coordinates(alpha)?.is_some())
    }
}

/// `delta(a) = r1 r2' - r1' r2`, a pure multiple of `sqrt(D)`.
pub fn delta(basis: &IdealBasis) -> QuadInt {
    let (r1, r2) = (&basis.r1, &basis.r2);
    // ((x1 + y1 s)(x2 - y2 s) - (x1 - y1 s)(x2 + y2 s)) / 4 = (y1 x2 - x1 y2) s / 2
    QuadInt {
        x: Integer::zero(),
        y: &r1.y * &r2.x - &r1.x * &r2.y,
        d: r1.d.clone(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Splitting {
    Split(IdealBasis),
    Ramified(IdealBasis),
    Inert,
}

impl Splitting {
    pub fn basis(&self) -> Option<&IdealBasis> {
        match self {
            Splitting::Split(b) | Splitting::Ramified(b) => Some(b),
            Splitting::Inert => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Splitting::Split(_) => "split",
            Splitting::Ramified(_) => "ramified",
            Splitting::Inert => "inert",
        }
    }
}

/// Kronecker symbol `(disc / p)` for a prime `p`.
pub fn kronecker(disc: &Integer, p: &Integer) -> i32 {
    if *p == int(2) {
        if disc.is_even() {
            return 0;
        }
        let r = modulo(disc, &int(8));
        return if r == int(1) || r == int(7) { 1 } else { -1 };
    }
    let a = modulo(disc, p);
    if a.is_zero() {
        return 0;
    }
    let e: Integer = (p - 1u32) / 2u32;
    if a.modpow(&e, p).is_one() {
        1
    } else {
        -1
    }
}

/// Decomposition of the rational prime `p`, with the basis
/// `{(b + sqrt(disc))/2, p}` of a prime above it when one exists.
pub fn prime_splitting(field: &QuadField, p: &Integer) -> Result<Splitting> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.clone()));
    }
    let disc = field.discriminant();
    let symbol = kronecker(disc, p);
    if symbol == -1 {
        return Ok(Splitting::Inert);
    }
    let four_p: Integer = 4 * p;
    let parity = modulo(disc, &int(2));
    let target = modulo(disc, &four_p);
    let mut b = parity;
    let two_p: Integer = 2 * p;
    while b < two_p {
        if modulo(&(&b * &b), &four_p) == target {
            break;
        }
        b += 2;
    }
    if b >= two_p {
        return Err(Error::Invariant(format!(
            "no square root of {disc} mod {four_p}"
        )));
    }
    // (b + sqrt(disc))/2 in the sqrt(D) half-coordinates
    let y = if field.is_one_mod_four() {
        Integer::one()
    } else {
        int(2)
    };
    let r1 = QuadInt {
        x: b,
        y,
        d: field.d().clone(),
    };
    let r2 = field.rational(p.clone());
    let basis = IdealBasis {
        r1,
        r2,
        norm: p.clone(),
    };
    Ok(if symbol == 0 {
        Splitting::Ramified(basis)
    } else {
        Splitting::Split(basis)
    })
}

/// `true` if `n` is not a perfect square; convenience for callers that take
/// arbitrary discriminants.
pub fn is_nonsquare(n: &Integer) -> bool {
    !is_perfect_square(n)
}
