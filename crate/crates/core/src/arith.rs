//! Exact integer and rational primitives.
//!
//! Everything here works on arbitrary-precision values. Factorization is
//! plain trial division, which is more than fast enough for discriminants in
//! the low millions.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Integer = BigInt;
pub type Rational = BigRational;

/// Shorthand for building an exact rational from machine integers.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

pub fn int(n: i64) -> Integer {
    Integer::from(n)
}

/// Prime factorization of a positive integer, primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Factorization {
    factors: Vec<(Integer, u32)>,
}

impl Factorization {
    pub fn factors(&self) -> &[(Integer, u32)] {
        &self.factors
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn primes(&self) -> impl Iterator<Item = &Integer> {
        self.factors.iter().map(|(p, _)| p)
    }

    /// Number of prime factors counted with multiplicity.
    pub fn omega_total(&self) -> u32 {
        self.factors.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent_of(&self, p: &Integer) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| q == p)
            .map_or(0, |(_, e)| *e)
    }

    pub fn product(&self) -> Integer {
        self.factors.iter().fold(Integer::one(), |acc, (p, e)| {
            acc * num_traits::pow(p.clone(), *e as usize)
        })
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

fn require_positive(n: &Integer) -> Result<()> {
    if n.is_positive() {
        Ok(())
    } else {
        Err(Error::NotPositive(n.clone()))
    }
}

fn factorize_u64(mut n: u64) -> Vec<(Integer, u32)> {
    let mut out = Vec::new();
    let mut push = |p: u64, n: &mut u64| {
        let mut e = 0;
        while n.is_multiple_of(p) {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((Integer::from(p), e));
        }
    };
    push(2, &mut n);
    push(3, &mut n);
    // 6k +- 1 wheel
    let mut p = 5u64;
    while p.saturating_mul(p) <= n {
        push(p, &mut n);
        push(p + 2, &mut n);
        p += 6;
    }
    if n > 1 {
        out.push((Integer::from(n), 1));
    }
    out
}

fn factorize_big(n: &Integer) -> Vec<(Integer, u32)> {
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut p = Integer::from(2u32);
    while &p * &p <= n {
        let mut e = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += if p == Integer::from(2u32) { 1u32 } else { 2u32 };
    }
    if n > Integer::one() {
        out.push((n, 1));
    }
    out
}

/// Exact prime factorization by trial division.
pub fn factorize(n: &Integer) -> Result<Factorization> {
    require_positive(n)?;
    let factors = match n.to_u64() {
        Some(small) => factorize_u64(small),
        None => factorize_big(n),
    };
    Ok(Factorization { factors })
}

pub fn is_prime(n: &Integer) -> bool {
    if *n < int(2) {
        return false;
    }
    match factorize(n) {
        Ok(f) => f.factors.len() == 1 && f.factors[0].1 == 1,
        Err(_) => false,
    }
}

/// Smallest prime whose square divides `n`, if any.
pub fn square_factor(n: &Integer) -> Result<Option<Integer>> {
    Ok(factorize(n)?
        .factors
        .into_iter()
        .find(|(_, e)| *e >= 2)
        .map(|(p, _)| p))
}

pub fn is_squarefree(n: &Integer) -> Result<bool> {
    Ok(square_factor(n)?.is_none())
}

/// Sum of the positive divisors of `n`, computed multiplicatively.
pub fn divisor_sigma(n: &Integer) -> Result<Integer> {
    let f = factorize(n)?;
    Ok(f.factors.iter().fold(Integer::one(), |acc, (p, e)| {
        // (p^(e+1) - 1) / (p - 1)
        let num = num_traits::pow(p.clone(), *e as usize + 1) - 1u32;
        acc * (num / (p - 1u32))
    }))
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: &Integer) -> Result<Vec<Integer>> {
    let f = factorize(n)?;
    let mut divs = vec![Integer::one()];
    for (p, e) in f.factors() {
        let mut next = Vec::with_capacity(divs.len() * (*e as usize + 1));
        for d in &divs {
            let mut pk = d.clone();
            next.push(pk.clone());
            for _ in 0..*e {
                pk *= p;
                next.push(pk.clone());
            }
        }
        divs = next;
    }
    divs.sort();
    Ok(divs)
}

/// Floor of the square root of a non-negative integer.
pub fn isqrt(n: &Integer) -> Integer {
    assert!(!n.is_negative(), "isqrt of negative value");
    n.sqrt()
}

pub fn is_perfect_square(n: &Integer) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = isqrt(n);
    &r * &r == *n
}

/// Bernoulli number `B_s` with the convention `B_1 = -1/2`.
pub fn bernoulli(s: u32) -> Rational {
    // B_n = -1/(n+1) * sum_{k<n} C(n+1, k) B_k
    let mut table: Vec<Rational> = Vec::with_capacity(s as usize + 1);
    table.push(Rational::one());
    for n in 1..=s as usize {
        let mut binom = Integer::one();
        let mut acc = Rational::zero();
        for (k, b) in table.iter().enumerate() {
            acc += b * Rational::from_integer(binom.clone());
            // C(n+1, k+1) from C(n+1, k)
            binom = binom * Integer::from(n + 1 - k) / Integer::from(k + 1);
        }
        table.push(-acc / Rational::from_integer(Integer::from(n + 1)));
    }
    table.pop().unwrap_or_else(Rational::one)
}

/// Fractional part `{x} = x - floor(x)`, always in `[0, 1)`.
pub fn fract(x: &Rational) -> Rational {
    x - x.floor()
}

/// Periodic Bernoulli function `P_t(x)` for `t` in 1..=3.
///
/// Evaluates the polynomial on `{x}` literally, so integer arguments give
/// `P_1 = -1/2`, `P_2 = 1/6`, `P_3 = 0` (no sawtooth midpoint averaging).
pub fn periodic_bernoulli(t: u32, x: &Rational) -> Result<Rational> {
    let f = fract(x);
    let half = ratio(1, 2);
    Ok(match t {
        1 => &f - &half,
        2 => &f * &f - &f + ratio(1, 6),
        3 => &f * &f * &f - ratio(3, 2) * &f * &f + &half * &f,
        _ => return Err(Error::BernoulliIndex(t)),
    })
}

/// Non-negative residue of `a` modulo a positive `m`.
pub fn modulo(a: &Integer, m: &Integer) -> Integer {
    a.mod_floor(m)
}

/// Render a rational as `p/q`, always with an explicit denominator.
pub fn rational_string(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}
