//! Even continued fractions.
//!
//! A sequence `(e_1, ..., e_n)` denotes the value
//! `1/(e_1 + 1/(e_2 + ... + 1/e_n))`. There is no leading integer part. For a
//! 2-bridge knot every `e_i` is even and nonzero and `n` is even; the genus of
//! the knot is `n/2`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContFracError {
    #[error("entry {index} is odd ({value}); every partial quotient must be even")]
    RejectOddEntry { index: usize, value: BigInt },
    #[error("entry {index} is zero; partial quotients must be nonzero")]
    RejectZeroEntry { index: usize },
    #[error("sequence has length {len}; a knot needs an even length of at least 2")]
    RejectOddLength { len: usize },
    #[error("cannot parse `{token}` as an integer")]
    Parse { token: String },
    #[error("zero denominator while evaluating the tail at entry {index}")]
    DegenerateTail { index: usize },
    #[error("{0} has an even denominator (a 2-bridge link, not a knot)")]
    NotAKnotFraction(Rational),
    #[error("{0} is not in the open interval (-1, 1) excluding 0")]
    OutOfRange(Rational),
    #[error("{0} has an odd numerator and odd denominator; it has no even expansion")]
    OddNumerator(Rational),
}

/// A validated even continued fraction `(2a_1, ..., 2a_{2m})`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EvenSequence {
    entries: Vec<BigInt>,
}

impl EvenSequence {
    /// Checks the knot constraints: entries even and nonzero, length even and
    /// at least 2. Entry errors are reported before the length error.
    pub fn validate(entries: Vec<BigInt>) -> Result<Self, ContFracError> {
        for (index, value) in entries.iter().enumerate() {
            if value.is_zero() {
                return Err(ContFracError::RejectZeroEntry { index });
            }
            if value.is_odd() {
                return Err(ContFracError::RejectOddEntry {
                    index,
                    value: value.clone(),
                });
            }
        }
        if entries.len() < 2 || entries.len() % 2 == 1 {
            return Err(ContFracError::RejectOddLength { len: entries.len() });
        }
        Ok(Self { entries })
    }

    pub fn from_i64s(entries: &[i64]) -> Result<Self, ContFracError> {
        Self::validate(entries.iter().map(|&e| BigInt::from(e)).collect())
    }

    /// Builds a sequence from compact entries already known to be valid.
    pub(crate) fn from_small_unchecked(entries: &[i32]) -> Self {
        debug_assert!(entries.len() >= 2 && entries.len().is_multiple_of(2));
        debug_assert!(entries.iter().all(|e| *e != 0 && e % 2 == 0));
        Self {
            entries: entries.iter().map(|&e| BigInt::from(e)).collect(),
        }
    }

    pub(crate) fn from_entries_unchecked(entries: Vec<BigInt>) -> Self {
        Self { entries }
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Half the length.
    pub fn genus(&self) -> usize {
        self.entries.len() / 2
    }

    /// Number of adjacent pairs with opposite signs.
    pub fn sign_changes(&self) -> usize {
        self.entries
            .windows(2)
            .filter(|w| w[0].is_negative() != w[1].is_negative())
            .count()
    }

    /// `sum |e_i| - sign_changes`.
    pub fn crossing_number(&self) -> BigUint {
        let total: BigUint = self.entries.iter().map(|e| e.magnitude()).sum();
        total - BigUint::from(self.sign_changes())
    }

    pub fn negate(&self) -> Self {
        Self {
            entries: self.entries.iter().map(|e| -e).collect(),
        }
    }

    pub fn reverse(&self) -> Self {
        Self {
            entries: self.entries.iter().rev().cloned().collect(),
        }
    }

    /// `(-e_n, ..., -e_1)`, which presents the same knot.
    pub fn reverse_negate(&self) -> Self {
        Self {
            entries: self.entries.iter().rev().map(|e| -e).collect(),
        }
    }

    pub fn is_palindrome(&self) -> bool {
        self.entries.iter().eq(self.entries.iter().rev())
    }

    /// Value of the continued fraction, folding from the innermost term.
    pub fn cf_value(&self) -> Result<Rational, ContFracError> {
        // x = p/q; 1/(a + p/q) = q/(a q + p)
        let mut p = BigInt::zero();
        let mut q = BigInt::one();
        for (index, a) in self.entries.iter().enumerate().rev() {
            let next = a * &q + &p;
            if next.is_zero() {
                return Err(ContFracError::DegenerateTail { index });
            }
            p = std::mem::replace(&mut q, next);
        }
        Ok(Rational::new(p, q))
    }

    /// Same value through the product of Möbius matrices `[[0,1],[1,a]]`
    /// applied to 0.
    pub fn cf_value_by_matrices(&self) -> Result<Rational, ContFracError> {
        let mut m = [
            [BigInt::one(), BigInt::zero()],
            [BigInt::zero(), BigInt::one()],
        ];
        for a in &self.entries {
            // m * [[0,1],[1,a]]
            let m00 = m[0][1].clone();
            let m01 = &m[0][0] + a * &m[0][1];
            let m10 = m[1][1].clone();
            let m11 = &m[1][0] + a * &m[1][1];
            m = [[m00, m01], [m10, m11]];
        }
        let [[_, num], [_, den]] = m;
        Rational::checked_new(num, den).ok_or(ContFracError::DegenerateTail { index: 0 })
    }
}

impl fmt::Display for EvenSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for EvenSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EvenSequence({self})")
    }
}

impl FromStr for EvenSequence {
    type Err = ContFracError;

    /// Comma-separated signed integers; whitespace is ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(ContFracError::RejectOddLength { len: 0 });
        }
        let entries = cleaned
            .split(',')
            .map(|t| {
                t.parse::<BigInt>().map_err(|_| ContFracError::Parse {
                    token: t.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::validate(entries)
    }
}

/// Even continued fraction of `x`, by repeated division with the nearest even
/// quotient. Requires `0 < |x| < 1`, odd denominator and even numerator; the
/// expansion is then unique and has even length.
pub fn even_expansion(x: &Rational) -> Result<EvenSequence, ContFracError> {
    if x.is_zero() || x.abs() >= Rational::one() {
        return Err(ContFracError::OutOfRange(x.clone()));
    }
    if x.denom().is_even() {
        return Err(ContFracError::NotAKnotFraction(x.clone()));
    }
    if x.numer().is_odd() {
        return Err(ContFracError::OddNumerator(x.clone()));
    }

    // x = num/den, den may go negative along the way.
    let mut num = x.numer().clone();
    let mut den = x.denom().clone();
    let mut entries = Vec::new();
    while !num.is_zero() {
        let a = nearest_even_quotient(&den, &num);
        let r = &den - &a * &num;
        debug_assert!(r.magnitude() < num.magnitude());
        entries.push(a);
        den = std::mem::replace(&mut num, r);
    }
    debug_assert!(entries.len().is_multiple_of(2));
    Ok(EvenSequence::from_entries_unchecked(entries))
}

/// The even integer `a` with `|n/d - a| < 1`. Never called with `n/d` an odd
/// integer, so the choice is unique.
fn nearest_even_quotient(n: &BigInt, d: &BigInt) -> BigInt {
    let (n, d) = if d.is_negative() { (-n, -d) } else { (n.clone(), d.clone()) };
    // round(n / 2d) = floor((n + d) / 2d)
    let t = (n + &d).div_floor(&(d * 2));
    t * 2
}
