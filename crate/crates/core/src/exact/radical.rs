use alloc::string::ToString;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Rational;
use crate::{Error, Result};

/// An exact real `coeff·√radicand`.
///
/// The radicand is kept canonical: a square-free positive integer, with every
/// square factor (and the whole denominator) moved into the coefficient.
/// Zero is `(0, 1)`. Two values are equal iff their representations are.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RadScalar {
    coeff: Rational,
    radicand: BigInt,
}

impl RadScalar {
    pub fn zero() -> Self {
        RadScalar {
            coeff: Rational::zero(),
            radicand: BigInt::one(),
        }
    }

    pub fn from_rational(q: Rational) -> Self {
        Self::new(q, Rational::one()).expect("radicand 1 is valid")
    }

    /// `√q` for `q ≥ 0`.
    pub fn sqrt(q: &Rational) -> Result<Self> {
        Self::new(Rational::one(), q.clone())
    }

    /// `coeff·√radicand`, canonicalized. The radicand must be non-negative.
    pub fn new(coeff: Rational, radicand: Rational) -> Result<Self> {
        if radicand.is_negative() {
            return Err(Error::OutOfRange("negative radicand".to_string()));
        }
        if coeff.is_zero() || radicand.is_zero() {
            return Ok(Self::zero());
        }
        // √(p/q) = √(p·q)/q
        let (p, q) = (radicand.numer().clone(), radicand.denom().clone());
        let (square, free) = split_square(&(p * &q));
        Ok(RadScalar {
            coeff: coeff * Rational::new(square, q),
            radicand: free,
        })
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn radicand(&self) -> Rational {
        Rational::from_integer(self.radicand.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.coeff.is_positive()
    }

    /// True when `self` and `other` lie on the same rational ray `ℚ·√d`.
    pub fn same_class(&self, other: &RadScalar) -> bool {
        self.is_zero() || other.is_zero() || self.radicand == other.radicand
    }

    pub fn mul(&self, other: &RadScalar) -> RadScalar {
        let coeff = &self.coeff * &other.coeff;
        let rad = Rational::from_integer(&self.radicand * &other.radicand);
        Self::new(coeff, rad).expect("product of positive radicands")
    }

    pub fn scale(&self, q: &Rational) -> RadScalar {
        if q.is_zero() {
            return Self::zero();
        }
        RadScalar {
            coeff: &self.coeff * q,
            radicand: self.radicand.clone(),
        }
    }

    /// `self / other`; `other` must be nonzero.
    pub fn div(&self, other: &RadScalar) -> Result<RadScalar> {
        if other.is_zero() {
            return Err(Error::OutOfRange("division by zero".to_string()));
        }
        let coeff = &self.coeff / &other.coeff;
        let rad = Rational::new(self.radicand.clone(), other.radicand.clone());
        Self::new(coeff, rad)
    }

    pub fn add_same_class(&self, other: &RadScalar) -> Result<RadScalar> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.radicand != other.radicand {
            return Err(Error::IncompatibleRadicalClasses(
                self.radicand.to_string(),
                other.radicand.to_string(),
            ));
        }
        let coeff = &self.coeff + &other.coeff;
        if coeff.is_zero() {
            return Ok(Self::zero());
        }
        Ok(RadScalar {
            coeff,
            radicand: self.radicand.clone(),
        })
    }

    /// `coeff²·radicand`.
    pub fn square(&self) -> Rational {
        &self.coeff * &self.coeff * Rational::from_integer(self.radicand.clone())
    }

    /// Ratio `self / other` when both lie on the same ray; `None` otherwise.
    pub fn rational_ratio(&self, other: &RadScalar) -> Option<Rational> {
        if other.is_zero() || !self.same_class(other) {
            return None;
        }
        Some(&self.coeff / &other.coeff)
    }

    /// Sign-aware comparison through squares.
    pub fn cmp_value(&self, other: &RadScalar) -> Ordering {
        let sa = self.coeff.signum();
        let sb = other.coeff.signum();
        match sa.cmp(&sb) {
            Ordering::Equal => {}
            o => return o,
        }
        let o = self.square().cmp(&other.square());
        if sa.is_negative() {
            o.reverse()
        } else {
            o
        }
    }
}

impl fmt::Debug for RadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for RadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicand.is_one() {
            write!(f, "{}", self.coeff)
        } else {
            write!(f, "{}*sqrt({})", self.coeff, self.radicand)
        }
    }
}

/// Writes `n = s²·f` with `f` square-free; returns `(s, f)`. `n > 0`.
fn split_square(n: &BigInt) -> (BigInt, BigInt) {
    let mut rest = n.clone();
    let mut square = BigInt::one();
    let mut free = BigInt::one();
    let mut p = BigInt::from(2u32);
    while &p * &p <= rest {
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        for _ in 0..e / 2 {
            square *= &p;
        }
        if e % 2 == 1 {
            free *= &p;
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    free *= rest;
    (square, free)
}
