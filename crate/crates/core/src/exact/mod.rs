//! Exact arithmetic: rationals, vectors and matrices over ℚ, fraction-free
//! elimination, sparse multivariate polynomials and scalars `q·√d`.

mod linalg;
mod mpoly;
mod radical;

pub use linalg::{gram_det, gram_matrix, solve_linear, QMatrix, QVector};
pub use mpoly::{mpoly_interpolate, Exponents, MPoly};
pub use radical::RadScalar;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Integer = BigInt;
pub type Rational = BigRational;

/// `p/q` as a rational. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

/// Largest integer `≤ q`.
pub fn floor(q: &Rational) -> BigInt {
    q.numer().div_floor(q.denom())
}

pub(crate) fn lcm_of_denominators<'a>(entries: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    entries
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Converts an integral rational to `i64`, if it fits.
pub fn to_i64(q: &Rational) -> Option<i64> {
    use num_traits::ToPrimitive;
    if is_integer(q) {
        q.numer().to_i64()
    } else {
        None
    }
}

pub(crate) fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub(crate) fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}
