//! Knot identity for even continued fractions.
//!
//! `(e_1, ..., e_n)` and `(-e_n, ..., -e_1)` present the same 2-bridge knot,
//! and negating every entry presents the mirror image. A [`KnotClass`] stores
//! the lexicographically least member of the orbit under these operations:
//! `{s, reverse_negate(s)}` when mirror images are distinct, and the
//! four-element orbit `{s, -s, reverse(s), reverse_negate(s)}` when they are
//! identified.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Neg;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use thiserror::Error;

use crate::contfrac::{ContFracError, EvenSequence};
use crate::enumerate::sign_patterns;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    /// A knot and its mirror image are counted separately.
    MirrorDistinct,
    /// A knot is identified with its mirror image.
    MirrorCollapsed,
}

impl Mode {
    pub const ALL: [Mode; 2] = [Mode::MirrorDistinct, Mode::MirrorCollapsed];

    pub fn letter(self) -> char {
        match self {
            Mode::MirrorDistinct => 'D',
            Mode::MirrorCollapsed => 'C',
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Mode {
    type Err = KnotError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "D" | "d" => Ok(Mode::MirrorDistinct),
            "C" | "c" => Ok(Mode::MirrorCollapsed),
            other => Err(KnotError::BadMode(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KnotError {
    #[error("unknown mode `{0}` (expected D or C)")]
    BadMode(String),
    #[error("malformed class text `{0}` (expected <D|C>:<sequence>)")]
    BadClassText(String),
    #[error(transparent)]
    Sequence(#[from] ContFracError),
    #[error("invalid stratum: {0}")]
    InvalidStratum(String),
}

/// Lexicographic minimum of the orbit of `entries` under the mode's group.
///
/// Generic so that enumeration can run on compact `i32` keys while the public
/// API works on arbitrary-precision sequences; both use the same order.
pub fn orbit_min<T>(entries: &[T], mode: Mode) -> Vec<T>
where
    T: Ord + Clone,
    for<'a> &'a T: Neg<Output = T>,
{
    let rev_neg = || entries.iter().rev().map(|e| -e);
    let mut best: Vec<T> = if rev_neg().lt(entries.iter().cloned()) {
        rev_neg().collect()
    } else {
        entries.to_vec()
    };
    if mode == Mode::MirrorCollapsed {
        let neg = || entries.iter().map(|e| -e);
        let rev = || entries.iter().rev().cloned();
        if neg().lt(best.iter().cloned()) {
            best = neg().collect();
        }
        if rev().lt(best.iter().cloned()) {
            best = rev().collect();
        }
    }
    best
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KnotClass {
    mode: Mode,
    canonical: EvenSequence,
}

impl KnotClass {
    pub fn canonical(&self) -> &EvenSequence {
        &self.canonical
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn genus(&self) -> usize {
        self.canonical.genus()
    }
}

impl fmt::Display for KnotClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.mode, self.canonical)
    }
}

impl fmt::Debug for KnotClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KnotClass({self})")
    }
}

impl FromStr for KnotClass {
    type Err = KnotError;

    /// Parses `D:-2,-4`; the sequence is canonicalized, so any orbit member
    /// is accepted.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (mode, seq) = s
            .split_once(':')
            .ok_or_else(|| KnotError::BadClassText(s.to_string()))?;
        let mode: Mode = mode.trim().parse()?;
        let seq: EvenSequence = seq.parse()?;
        Ok(canonicalize(&seq, mode))
    }
}

pub fn canonicalize(seq: &EvenSequence, mode: Mode) -> KnotClass {
    let canonical = EvenSequence::from_entries_unchecked(orbit_min(seq.entries(), mode));
    KnotClass { mode, canonical }
}

/// Whether the knot equals its mirror image.
pub fn is_amphichiral(seq: &EvenSequence) -> bool {
    canonicalize(seq, Mode::MirrorDistinct) == canonicalize(&seq.negate(), Mode::MirrorDistinct)
}

/// Magnitudes `b_i = |e_i|/2` and a sign-change count.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StratumKey {
    b: Vec<BigUint>,
    ell: usize,
}

impl StratumKey {
    pub fn new(b: Vec<BigUint>, ell: usize) -> Result<Self, KnotError> {
        if b.len() < 2 || b.len() % 2 == 1 {
            return Err(KnotError::InvalidStratum(format!(
                "length {} is not even and positive",
                b.len()
            )));
        }
        if b.iter().any(Zero::is_zero) {
            return Err(KnotError::InvalidStratum("magnitudes must be at least 1".into()));
        }
        if ell > b.len() - 1 {
            return Err(KnotError::InvalidStratum(format!(
                "{ell} sign changes do not fit in length {}",
                b.len()
            )));
        }
        Ok(Self { b, ell })
    }

    pub fn from_u64s(b: &[u64], ell: usize) -> Result<Self, KnotError> {
        Self::new(b.iter().map(|&x| BigUint::from(x)).collect(), ell)
    }

    pub fn b(&self) -> &[BigUint] {
        &self.b
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn is_symmetric(&self) -> bool {
        self.b.iter().eq(self.b.iter().rev())
    }

    /// Crossing number shared by every member: `2 * sum(b) - ell`.
    pub fn crossing_number(&self) -> BigUint {
        let total: BigUint = self.b.iter().sum();
        total * 2u32 - BigUint::from(self.ell)
    }
}

pub fn stratum_of(seq: &EvenSequence) -> StratumKey {
    let b = seq.entries().iter().map(|e| e.magnitude() >> 1).collect();
    StratumKey {
        b,
        ell: seq.sign_changes(),
    }
}

/// Distinct knot classes realized by the `2 * C(2m-1, ell)` sign choices on
/// the magnitudes of `key`. As a set this equals the classes of the stratum
/// with `b` reversed.
pub fn stratum_members(key: &StratumKey, mode: Mode) -> BTreeSet<KnotClass> {
    sign_patterns(key.b.len(), key.ell)
        .map(|signs| {
            let entries = key
                .b
                .iter()
                .zip(&signs)
                .map(|(b, &s)| {
                    let e: BigInt = BigInt::from(b.clone()) * 2;
                    if s < 0 {
                        -e
                    } else {
                        e
                    }
                })
                .collect();
            canonicalize(&EvenSequence::from_entries_unchecked(entries), mode)
        })
        .collect()
}

pub fn stratum_size(key: &StratumKey, mode: Mode) -> BigUint {
    BigUint::from(stratum_members(key, mode).len())
}
