//! Exact rationals over arbitrary-precision integers.
//!
//! Values are kept in lowest terms with a strictly positive denominator, so
//! structural equality is value equality. Reduction uses the Euclidean
//! remainder sequence rather than a binary gcd: the fractions produced by the
//! counting formulas have a large power-of-two part and a small cofactor, and
//! on those the remainder sequence collapses after a handful of divisions.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("invalid integer `{0}` in rational")]
    BadInteger(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational {
    num: BigInt,
    den: BigInt,
}

pub(crate) fn euclid_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let mut a = a.abs();
    let mut b = b.abs();
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

impl Rational {
    /// Builds `num/den` in lowest terms. Panics if `den` is zero.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        Self::checked_new(num, den).expect("rational with zero denominator")
    }

    pub fn checked_new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Option<Self> {
        let (mut num, mut den) = (num.into(), den.into());
        if den.is_zero() {
            return None;
        }
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        if num.is_zero() {
            return Some(Self::zero());
        }
        let g = euclid_gcd(&num, &den);
        if !g.is_one() {
            num /= &g;
            den /= &g;
        }
        Some(Self { num, den })
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self {
            num: n.into(),
            den: BigInt::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    /// `2^exp` for any signed exponent.
    pub fn pow2(exp: i64) -> Self {
        let shift = exp.unsigned_abs() as usize;
        let p = BigInt::one() << shift;
        if exp >= 0 {
            Self::from_integer(p)
        } else {
            Self {
                num: BigInt::one(),
                den: p,
            }
        }
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    pub fn into_parts(self) -> (BigInt, BigInt) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.num.clone())
    }

    pub fn abs(&self) -> Self {
        Self {
            num: self.num.abs(),
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Option<Self> {
        Self::checked_new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, exp: u32) -> Self {
        // lowest terms are preserved by powers
        Self {
            num: num_traits::pow(self.num.clone(), exp as usize),
            den: num_traits::pow(self.den.clone(), exp as usize),
        }
    }
}

impl Default for Rational {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Self::from_integer(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    /// Accepts `p/q` or a bare integer `p`; the result is reduced.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| ParseRationalError::BadInteger(t.trim().to_string()))
        };
        match s.split_once('/') {
            Some((n, d)) => {
                let (n, d) = (parse(n)?, parse(d)?);
                Self::checked_new(n, d).ok_or_else(|| ParseRationalError::ZeroDenominator(s.into()))
            }
            None => Ok(Self::from_integer(parse(s)?)),
        }
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -self.clone()
    }
}

impl Add<&Rational> for &Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        if self.den == rhs.den {
            return Rational::new(&self.num + &rhs.num, self.den.clone());
        }
        Rational::new(
            &self.num * &rhs.den + &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
    }
}

impl Sub<&Rational> for &Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        self + &(-rhs)
    }
}

impl Mul<&Rational> for &Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        Rational::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div<&Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division of rational by zero");
        Rational::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational { (&self).$m(&rhs) }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational { (&self).$m(rhs) }
        }
        impl $tr<Rational> for &Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational { self.$m(&rhs) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn normalizes_sign_and_gcd() {
        let x = r(6, -4);
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(2));
        assert_eq!(r(0, -7), Rational::zero());
        assert_eq!(r(0, 5).denom(), &BigInt::one());
    }

    #[test]
    fn zero_denominator() {
        assert!(Rational::checked_new(1, 0).is_none());
        assert!("3/0".parse::<Rational>().is_err());
    }

    #[test]
    fn text_format() {
        assert_eq!(r(2, 5).to_string(), "2/5");
        assert_eq!(r(-4, 2).to_string(), "-2/1");
        assert_eq!("10/-4".parse::<Rational>().unwrap(), r(-5, 2));
        assert_eq!("7".parse::<Rational>().unwrap(), r(7, 1));
        assert!("x/2".parse::<Rational>().is_err());
    }

    #[test]
    fn arithmetic() {
        assert_eq!(r(1, 2) + r(1, 3), r(5, 6));
        assert_eq!(r(1, 2) - r(1, 3), r(1, 6));
        assert_eq!(r(2, 3) * r(9, 4), r(3, 2));
        assert_eq!(r(2, 3) / r(-4, 9), r(-3, 2));
        assert_eq!(r(-2, 3).recip(), Some(r(-3, 2)));
        assert_eq!(Rational::zero().recip(), None);
        assert_eq!(Rational::pow2(-3), r(1, 8));
        assert_eq!(Rational::pow2(4), r(16, 1));
        assert_eq!(r(-2, 3).pow(3), r(-8, 27));
        assert!(r(1, 3) < r(1, 2));
        assert!(r(-1, 2) < r(-1, 3));
    }

    #[test]
    fn euclid_gcd_matches_small_cases() {
        for a in -30i64..30 {
            for b in -30i64..30 {
                let g = euclid_gcd(&a.into(), &b.into());
                let expect = num_integer::gcd(a, b);
                assert_eq!(g, BigInt::from(expect), "{a} {b}");
            }
        }
    }
}
