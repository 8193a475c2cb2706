//! Exact arithmetic around the irrational constant
//! `a = Σ_{i≥1} 10^{1 - i(i+1)/2} = 1.010010001…`.
//!
//! Quantities are linear forms `c0 + c1·a` with rational coefficients. Their
//! sign is decided from the open interval `(a_k, a_k + 2·10^{1-(k+1)(k+2)/2})`
//! containing `a`, where `a_k` is the `k`-th partial sum; a form is decided
//! only when it has the same sign over the whole interval, so verdicts never
//! depend on the truncation level that produced them.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::graph::{format_rational, Rational};

pub fn pow10(e: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), e as usize)
}

/// `10^e` for a possibly negative exponent.
pub fn pow10_rational(e: i64) -> Rational {
    if e >= 0 {
        Rational::from_integer(pow10(e as u32))
    } else {
        Rational::new(BigInt::one(), pow10((-e) as u32))
    }
}

fn triangle(i: u32) -> i64 {
    i64::from(i) * i64::from(i + 1) / 2
}

/// `c0 + c1·a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearA {
    pub c0: Rational,
    pub c1: Rational,
}

impl LinearA {
    pub fn new(c0: Rational, c1: Rational) -> Self {
        LinearA { c0, c1 }
    }

    pub fn constant(c0: Rational) -> Self {
        LinearA { c0, c1: Rational::zero() }
    }

    pub fn a() -> Self {
        LinearA { c0: Rational::zero(), c1: Rational::one() }
    }

    pub fn from_ints(c0: i64, c1: i64) -> Self {
        LinearA { c0: Rational::from_integer(c0.into()), c1: Rational::from_integer(c1.into()) }
    }

    pub fn zero() -> Self {
        LinearA::from_ints(0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }

    pub fn to_json(&self) -> Value {
        json!({ "const": format_rational(&self.c0), "a": format_rational(&self.c1) })
    }
}

impl fmt::Display for LinearA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c1.is_zero() {
            return write!(f, "{}", format_rational(&self.c0));
        }
        let coefficient = if self.c1.is_one() { String::new() } else { format_rational(&self.c1) };
        if self.c0.is_zero() {
            return write!(f, "{coefficient}a");
        }
        let sign = if self.c0.is_negative() { "-" } else { "+" };
        write!(f, "{coefficient}a {sign} {}", format_rational(&self.c0.abs()))
    }
}

impl Add for LinearA {
    type Output = LinearA;
    fn add(self, rhs: LinearA) -> LinearA {
        LinearA { c0: self.c0 + rhs.c0, c1: self.c1 + rhs.c1 }
    }
}

impl Sub for LinearA {
    type Output = LinearA;
    fn sub(self, rhs: LinearA) -> LinearA {
        LinearA { c0: self.c0 - rhs.c0, c1: self.c1 - rhs.c1 }
    }
}

impl Neg for LinearA {
    type Output = LinearA;
    fn neg(self) -> LinearA {
        LinearA { c0: -self.c0, c1: -self.c1 }
    }
}

impl Mul<&Rational> for LinearA {
    type Output = LinearA;
    fn mul(self, rhs: &Rational) -> LinearA {
        LinearA { c0: self.c0 * rhs, c1: self.c1 * rhs }
    }
}

/// An enclosure `a ∈ (lo, hi)` from the partial sum of the first `k` terms.
#[derive(Clone, Debug)]
pub struct IrrationalA {
    pub k: u32,
    pub lo: Rational,
    pub hi: Rational,
}

impl IrrationalA {
    pub fn new(k: u32) -> Self {
        assert!(k >= 1, "truncation level starts at 1");
        let lo = (1..=k).fold(Rational::zero(), |acc, i| acc + pow10_rational(1 - triangle(i)));
        let tail = pow10_rational(1 - triangle(k + 1)) * Rational::from_integer(2.into());
        let hi = &lo + tail;
        IrrationalA { k, lo, hi }
    }

    pub fn tail(&self) -> Rational {
        &self.hi - &self.lo
    }

    /// Interval of values of `x` over `a ∈ [lo, hi]`.
    pub fn bounds(&self, x: &LinearA) -> (Rational, Rational) {
        let at_lo = &x.c0 + &x.c1 * &self.lo;
        let at_hi = &x.c0 + &x.c1 * &self.hi;
        if at_lo <= at_hi {
            (at_lo, at_hi)
        } else {
            (at_hi, at_lo)
        }
    }

    /// Sign of `x` at the true value of `a`, if the enclosure settles it.
    ///
    /// `a` is irrational, so a form with `c1 ≠ 0` is never zero; it is
    /// strictly positive on the open interval as soon as it is nonnegative
    /// at both ends.
    pub fn decide(&self, x: &LinearA) -> Option<Ordering> {
        if x.c1.is_zero() {
            return Some(x.c0.cmp(&Rational::zero()));
        }
        let (lo, hi) = self.bounds(x);
        if !lo.is_negative() {
            Some(Ordering::Greater)
        } else if !hi.is_positive() {
            Some(Ordering::Less)
        } else {
            None
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum UndecidedError {
    #[error("sign of {form} not settled by truncation level {k}")]
    Undecided { form: String, k: u32 },
}

/// Highest truncation level tried before giving up.
pub const MAX_TRUNCATION: u32 = 40;

/// Decides signs, widening the truncation on demand. Once widened it stays
/// widened, so later decisions use the tighter enclosure.
#[derive(Clone, Debug)]
pub struct Decider {
    a: IrrationalA,
    max_k: u32,
    lo_num: BigInt,
    lo_den: BigInt,
    hi_num: BigInt,
    hi_den: BigInt,
}

impl Decider {
    pub fn new(k: u32) -> Self {
        Self::from_enclosure(IrrationalA::new(k), MAX_TRUNCATION.max(k))
    }

    fn from_enclosure(a: IrrationalA, max_k: u32) -> Self {
        Decider {
            lo_num: a.lo.numer().clone(),
            lo_den: a.lo.denom().clone(),
            hi_num: a.hi.numer().clone(),
            hi_den: a.hi.denom().clone(),
            a,
            max_k,
        }
    }

    pub fn enclosure(&self) -> &IrrationalA {
        &self.a
    }

    pub fn truncation(&self) -> u32 {
        self.a.k
    }

    fn widen(&mut self) -> bool {
        if self.a.k >= self.max_k {
            return false;
        }
        *self = Self::from_enclosure(IrrationalA::new(self.a.k + 1), self.max_k);
        true
    }

    pub fn sign(&mut self, x: &LinearA) -> Result<Ordering, UndecidedError> {
        loop {
            if let Some(o) = self.a.decide(x) {
                return Ok(o);
            }
            if !self.widen() {
                return Err(UndecidedError::Undecided { form: x.to_string(), k: self.a.k });
            }
        }
    }

    /// Sign of `c0 + c1·a` for integer coefficients, without building
    /// rationals: the sign of `c0·q + c1·p` at each end `p/q`.
    pub fn sign_int(&mut self, c0: i64, c1: i64) -> Result<Ordering, UndecidedError> {
        if c1 == 0 {
            return Ok(c0.cmp(&0));
        }
        loop {
            let (c0b, c1b) = (BigInt::from(c0), BigInt::from(c1));
            let at_lo = &c0b * &self.lo_den + &c1b * &self.lo_num;
            let at_hi = &c0b * &self.hi_den + &c1b * &self.hi_num;
            let (min, max) = if at_lo <= at_hi { (at_lo, at_hi) } else { (at_hi, at_lo) };
            if !min.is_negative() {
                return Ok(Ordering::Greater);
            }
            if !max.is_positive() {
                return Ok(Ordering::Less);
            }
            if !self.widen() {
                return Err(UndecidedError::Undecided { form: LinearA::from_ints(c0, c1).to_string(), k: self.a.k });
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::rational;

    #[test]
    fn partial_sums() {
        assert_eq!(IrrationalA::new(1).lo, rational(1, 1));
        assert_eq!(IrrationalA::new(2).lo, rational(101, 100));
        assert_eq!(IrrationalA::new(3).lo, rational(101001, 100000));
    }

    #[test]
    fn enclosures_nest() {
        for k in 1..10 {
            let (outer, inner) = (IrrationalA::new(k), IrrationalA::new(k + 1));
            assert!(outer.lo < inner.lo && inner.hi < outer.hi);
        }
    }

    #[test]
    fn a_minus_one_is_between_hundredth_and_tenth() {
        let mut d = Decider::new(4);
        let x = LinearA::a() - LinearA::constant(rational(101, 100));
        assert_eq!(d.sign(&x).unwrap(), Ordering::Greater);
        let y = LinearA::a() - LinearA::constant(rational(1011, 1000));
        assert_eq!(d.sign(&y).unwrap(), Ordering::Less);
    }

    #[test]
    fn widening_settles_close_calls() {
        // a - a_5 > 0, but a_5 sits inside the k = 4 enclosure
        let close = LinearA::a() - LinearA::constant(rational(101_001_000_100_001, 100_000_000_000_000));
        assert_eq!(IrrationalA::new(4).decide(&close), None);
        let mut d = Decider::new(4);
        assert_eq!(d.sign(&close).unwrap(), Ordering::Greater);
        assert!(d.truncation() > 4);
    }

    #[test]
    fn integer_signs_agree_with_rational_path() {
        let mut d = Decider::new(5);
        for c0 in -5..=5 {
            for c1 in -5..=5 {
                let via_int = d.sign_int(c0, c1).unwrap();
                let via_rat = d.sign(&LinearA::from_ints(c0, c1)).unwrap();
                assert_eq!(via_int, via_rat, "{c0} + {c1}a");
            }
        }
    }

    #[test]
    fn display_forms() {
        assert_eq!(LinearA::from_ints(-1, 2).to_string(), "2a - 1");
        assert_eq!(LinearA::from_ints(0, 1).to_string(), "a");
        assert_eq!(LinearA::from_ints(3, 0).to_string(), "3");
    }
}
