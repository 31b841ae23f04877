//! Closed forms for counts, total genera and average genera of 2-bridge knots
//! by crossing number, with and without identifying mirror images.
//!
//! Every branch is evaluated in exact integer arithmetic. Divisions that the
//! formulas claim are exact are checked, and a remainder is reported as an
//! error rather than rounded away.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::identities::binomial;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("crossing number {0} is below 3")]
    CrossingTooSmall(u32),
    #[error("{what} at c={c}: division by {divisor} is not exact")]
    InexactDivision {
        what: &'static str,
        c: u32,
        divisor: u32,
    },
    #[error("{what} at c={c}: closed form gives {closed}, piecewise form gives {piecewise}")]
    BranchMismatch {
        what: &'static str,
        c: u32,
        closed: Box<Rational>,
        piecewise: Box<Rational>,
    },
    #[error("{what}: expected an integer, got {value}")]
    NonIntegerResult { what: &'static str, value: Rational },
    #[error("stratum index l={l} out of range for k={k} ({parity:?} crossing number)")]
    StratumIndex { k: u32, l: u32, parity: Parity },
}

/// Case split used by the mirror-distinct formulas: even crossing numbers
/// share a single branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChiralResidue {
    Even,
    OneMod4,
    ThreeMod4,
}

impl ChiralResidue {
    pub fn of(c: u32) -> Self {
        match c % 4 {
            1 => Self::OneMod4,
            3 => Self::ThreeMod4,
            _ => Self::Even,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MirrorResidue {
    ZeroMod4,
    OneMod4,
    TwoMod4,
    ThreeMod4,
}

impl MirrorResidue {
    pub fn of(c: u32) -> Self {
        match c % 4 {
            0 => Self::ZeroMod4,
            1 => Self::OneMod4,
            2 => Self::TwoMod4,
            _ => Self::ThreeMod4,
        }
    }
}

/// Parity of `c`, with `c = 2k` or `c = 2k + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(c: u32) -> Self {
        if c.is_multiple_of(2) {
            Self::Even
        } else {
            Self::Odd
        }
    }
}

fn pow2(e: u32) -> BigInt {
    BigInt::one() << e as usize
}

fn check_c(c: u32) -> Result<(), FormulaError> {
    if c < 3 {
        Err(FormulaError::CrossingTooSmall(c))
    } else {
        Ok(())
    }
}

fn exact_div(n: BigInt, divisor: u32, what: &'static str, c: u32) -> Result<BigUint, FormulaError> {
    let (q, r) = n.div_rem(&BigInt::from(divisor));
    if !r.is_zero() || q.sign() == Sign::Minus {
        return Err(FormulaError::InexactDivision { what, c, divisor });
    }
    Ok(q.magnitude().clone())
}

fn to_biguint(x: &Rational, what: &'static str) -> Result<BigUint, FormulaError> {
    match x.to_integer() {
        Some(n) if n.sign() != Sign::Minus => Ok(n.magnitude().clone()),
        _ => Err(FormulaError::NonIntegerResult {
            what,
            value: x.clone(),
        }),
    }
}

/// Number of 2-bridge knots with `c` crossings, mirror images counted apart.
pub fn tk_closed(c: u32) -> Result<BigUint, FormulaError> {
    check_c(c)?;
    let n = match ChiralResidue::of(c) {
        ChiralResidue::Even => pow2(c - 2) - 1,
        ChiralResidue::OneMod4 => pow2(c - 2) + pow2((c - 1) / 2),
        ChiralResidue::ThreeMod4 => pow2(c - 2) + pow2((c - 1) / 2) + 2,
    };
    exact_div(n, 3, "TK", c)
}

/// Sum of genera over the knots counted by [`tk_closed`].
pub fn tg_closed(c: u32) -> Result<BigUint, FormulaError> {
    check_c(c)?;
    let lead = BigInt::from(3 * c + 1) * pow2(c - 2);
    let n = match ChiralResidue::of(c) {
        ChiralResidue::Even => lead - 16,
        ChiralResidue::OneMod4 => lead + BigInt::from(3 * c + 5) * pow2((c - 1) / 2) + 8,
        ChiralResidue::ThreeMod4 => lead + BigInt::from(3 * c + 5) * pow2((c - 1) / 2) + 24,
    };
    exact_div(n, 36, "TG", c)
}

/// Number of knots up to mirror image.
pub fn tk_mirror_closed(c: u32) -> Result<BigUint, FormulaError> {
    check_c(c)?;
    let n = match MirrorResidue::of(c) {
        MirrorResidue::ZeroMod4 => pow2(c - 3) + pow2((c - 4) / 2),
        MirrorResidue::OneMod4 => pow2(c - 3) + pow2((c - 3) / 2),
        MirrorResidue::TwoMod4 => pow2(c - 3) + pow2((c - 4) / 2) - 1,
        MirrorResidue::ThreeMod4 => pow2(c - 3) + pow2((c - 3) / 2) + 1,
    };
    exact_div(n, 3, "TK*", c)
}

/// Total genus up to mirror image.
pub fn tg_mirror_closed(c: u32) -> Result<BigUint, FormulaError> {
    check_c(c)?;
    let lead = BigInt::from(3 * c + 1) * pow2(c - 2);
    let n = match MirrorResidue::of(c) {
        MirrorResidue::ZeroMod4 => lead + BigInt::from(3 * c + 2) * pow2((c - 2) / 2) - 8,
        MirrorResidue::OneMod4 => lead + BigInt::from(3 * c + 5) * pow2((c - 1) / 2) + 8,
        MirrorResidue::TwoMod4 => lead + BigInt::from(3 * c + 2) * pow2((c - 2) / 2) - 24,
        MirrorResidue::ThreeMod4 => lead + BigInt::from(3 * c + 5) * pow2((c - 1) / 2) + 24,
    };
    exact_div(n, 72, "TG*", c)
}

fn trend(c: u32) -> Rational {
    // c/4 + 1/12
    Rational::new(3 * c as i64 + 1, 12)
}

/// The correction term of the piecewise average-genus formula, i.e. what is
/// added to `c/4 + 1/12`.
pub fn correction(c: u32) -> Result<Rational, FormulaError> {
    check_c(c)?;
    let ci = c as i64;
    Ok(match ChiralResidue::of(c) {
        ChiralResidue::Even => Rational::new(ci - 5, pow2(c) - 4),
        ChiralResidue::OneMod4 => Rational::new(1, pow2((c - 3) / 2) * 3),
        ChiralResidue::ThreeMod4 => Rational::new(
            pow2(c.div_ceil(2)) - 3 * ci + 11,
            (pow2(c - 3) + pow2((c - 3) / 2) + 1) * 12,
        ),
    })
}

pub fn correction_mirror(c: u32) -> Result<Rational, FormulaError> {
    check_c(c)?;
    let ci = c as i64;
    Ok(match MirrorResidue::of(c) {
        MirrorResidue::ZeroMod4 => Rational::new(
            pow2((c - 4) / 2) - 4,
            (pow2(c - 1) + pow2(c / 2)) * 3,
        ),
        MirrorResidue::TwoMod4 => Rational::new(
            pow2((c - 4) / 2) + 3 * ci - 11,
            (pow2(c - 3) + pow2((c - 4) / 2) - 1) * 12,
        ),
        MirrorResidue::OneMod4 | MirrorResidue::ThreeMod4 => correction(c)?,
    })
}

fn compare_routes(
    what: &'static str,
    c: u32,
    closed: Rational,
    piecewise: Rational,
) -> Result<Rational, FormulaError> {
    if closed == piecewise {
        Ok(closed)
    } else {
        Err(FormulaError::BranchMismatch {
            what,
            c,
            closed: Box::new(closed),
            piecewise: Box::new(piecewise),
        })
    }
}

/// Average genus `TG(c)/TK(c)`, cross-checked against `c/4 + 1/12 +
/// correction(c)`.
pub fn avg_genus(c: u32) -> Result<Rational, FormulaError> {
    let closed = Rational::new(BigInt::from(tg_closed(c)?), BigInt::from(tk_closed(c)?));
    compare_routes("average genus", c, closed, trend(c) + correction(c)?)
}

pub fn avg_genus_mirror(c: u32) -> Result<Rational, FormulaError> {
    let closed = Rational::new(
        BigInt::from(tg_mirror_closed(c)?),
        BigInt::from(tk_mirror_closed(c)?),
    );
    compare_routes("average genus up to mirror image", c, closed, trend(c) + correction_mirror(c)?)
}

/// `avg_genus(c) - c/4 - 1/12`.
pub fn residual(c: u32) -> Result<Rational, FormulaError> {
    Ok(avg_genus(c)? - trend(c))
}

pub fn residual_mirror(c: u32) -> Result<Rational, FormulaError> {
    Ok(avg_genus_mirror(c)? - trend(c))
}

fn check_stratum(k: u32, l: u32, parity: Parity) -> Result<(), FormulaError> {
    let k_min = match parity {
        Parity::Even => 2,
        Parity::Odd => 1,
    };
    if k < k_min || l >= k {
        return Err(FormulaError::StratumIndex { k, l, parity });
    }
    Ok(())
}

// Stratum terms are assembled from the binomials they depend on so that the
// per-l functions and the incremental walk share one formula.

/// `bin = C(k+l-1, k-l-1)`.
fn even_a(k: u32, l: u32, bin: &BigInt) -> BigInt {
    if l + 1 == k {
        BigInt::zero()
    } else {
        bin * pow2(k - l - 2)
    }
}

fn even_b(k: u32, l: u32, bin: &BigInt) -> Rational {
    let (k_, l_) = (k as i64, l as i64);
    let main = Rational::from(bin * (k + 3 * l + 1)) * Rational::pow2(k_ - l_ - 3);
    let offset = if l + 2 == k {
        Rational::new(2 * k_ - 3, 2)
    } else if l + 1 == k {
        Rational::new(-(2 * k_ - 1), 2)
    } else {
        Rational::zero()
    };
    (main + offset) * Rational::new(1, 2)
}

/// `first = C(k+l, 2l+1)`, `sym = C((k+l-1)/2, l)` (only read when `k+l` is
/// odd, i.e. when symmetric magnitude vectors exist).
fn odd_a(k: u32, l: u32, first: &BigInt, sym: &BigInt) -> BigInt {
    let mut a = if l + 2 <= k {
        first * pow2(k - l - 2)
    } else {
        first.clone()
    };
    if (k + l) % 2 == 1 {
        a += sym * pow2((k - l - 1) / 2);
    }
    a
}

fn odd_b(k: u32, l: u32, first: &BigInt, sym: &BigInt) -> Rational {
    let (k_, l_) = (k as i64, l as i64);
    let mut b = Rational::from(first * (k + 3 * l + 3)) * Rational::pow2(k_ - l_ - 4);
    if l + 2 == k {
        b = b - Rational::new(k_ - 1, 2);
    } else if l + 1 == k {
        b = b + Rational::new(k_, 2);
    }
    if (k + l) % 2 == 1 {
        b = b + Rational::from(sym * (k + 3 * l + 3)) * Rational::pow2((k_ - l_ - 5) / 2);
    }
    b
}

fn big_binomial(n: i64, r: i64) -> BigInt {
    BigInt::from(binomial(n, r))
}

/// Number of mirror-distinct knots with crossing number `2k` (even parity) or
/// `2k+1` (odd parity) and `2l` resp. `2l+1` sign changes.
pub fn stratum_closed_a(k: u32, l: u32, parity: Parity) -> Result<BigUint, FormulaError> {
    check_stratum(k, l, parity)?;
    let (k_, l_) = (k as i64, l as i64);
    let a = match parity {
        Parity::Even => even_a(k, l, &big_binomial(k_ + l_ - 1, k_ - l_ - 1)),
        Parity::Odd => odd_a(
            k,
            l,
            &big_binomial(k_ + l_, 2 * l_ + 1),
            &big_binomial((k_ + l_ - 1) / 2, l_),
        ),
    };
    to_biguint(&a.into(), "stratum count")
}

/// Genus sum over the same stratum. Near `l = k-1` the closed form carries
/// the boundary offsets, so each value is exact per stratum.
pub fn stratum_closed_b(k: u32, l: u32, parity: Parity) -> Result<BigUint, FormulaError> {
    check_stratum(k, l, parity)?;
    let (k_, l_) = (k as i64, l as i64);
    let b = match parity {
        Parity::Even => even_b(k, l, &big_binomial(k_ + l_ - 1, k_ - l_ - 1)),
        Parity::Odd => odd_b(
            k,
            l,
            &big_binomial(k_ + l_, 2 * l_ + 1),
            &big_binomial((k_ + l_ - 1) / 2, l_),
        ),
    };
    to_biguint(&b, "stratum genus sum")
}

/// One stratum of a crossing number: `l`, its knot count and genus sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumTotals {
    pub l: u32,
    pub ell: u32,
    pub count: BigUint,
    pub genus_sum: BigUint,
}

/// All strata of crossing number `c`, updating the binomials in place as `l`
/// grows instead of recomputing them. Agrees with [`stratum_closed_a`] and
/// [`stratum_closed_b`] term by term.
pub fn strata(c: u32) -> Result<Vec<StratumTotals>, FormulaError> {
    check_c(c)?;
    let k = c / 2;
    let parity = Parity::of(c);
    let mut out = Vec::with_capacity(k as usize);
    // C(n+1, r+2) = C(n, r) (n+1)(n-r) / ((r+1)(r+2))
    let step = |bin: &BigInt, n: u32, r: u32| -> BigInt {
        bin * BigInt::from(n + 1) * BigInt::from(n - r) / (BigInt::from(r + 1) * (r + 2))
    };
    match parity {
        Parity::Even => {
            // C(k+l-1, 2l)
            let mut bin = BigInt::one();
            for l in 0..k {
                let count = to_biguint(&even_a(k, l, &bin).into(), "stratum count")?;
                let genus_sum = to_biguint(&even_b(k, l, &bin), "stratum genus sum")?;
                out.push(StratumTotals { l, ell: 2 * l, count, genus_sum });
                if l + 1 < k {
                    bin = step(&bin, k + l - 1, 2 * l);
                }
            }
        }
        Parity::Odd => {
            // C(k+l, 2l+1)
            let mut first = BigInt::from(k);
            // C((k+l-1)/2, l) on the l with k+l odd
            let mut sym = if k % 2 == 1 { BigInt::one() } else { BigInt::from(k / 2) };
            for l in 0..k {
                let count = to_biguint(&odd_a(k, l, &first, &sym).into(), "stratum count")?;
                let genus_sum = to_biguint(&odd_b(k, l, &first, &sym), "stratum genus sum")?;
                out.push(StratumTotals { l, ell: 2 * l + 1, count, genus_sum });
                if l + 1 < k {
                    first = step(&first, k + l, 2 * l + 1);
                }
                if (k + l) % 2 == 1 && l + 2 < k {
                    sym = step(&sym, (k + l - 1) / 2, l);
                }
            }
        }
    }
    Ok(out)
}

/// `(sum of counts, sum of genus sums)` over all strata of `c`.
pub fn strata_sums(c: u32) -> Result<(BigUint, BigUint), FormulaError> {
    Ok(strata(c)?.into_iter().fold(
        (BigUint::zero(), BigUint::zero()),
        |(a, b), s| (a + s.count, b + s.genus_sum),
    ))
}

/// Total genus up to mirror image for even `c = 2k`, as the double sum over
/// `(l, m)` with the symmetric-sequence correction, before simplification.
pub fn tg_mirror_even_double_sum(c: u32) -> Result<Rational, FormulaError> {
    check_c(c)?;
    if c % 2 == 1 {
        return Err(FormulaError::StratumIndex {
            k: c / 2,
            l: 0,
            parity: Parity::Odd,
        });
    }
    let k = (c / 2) as i64;
    let mut total = Rational::zero();
    for l in 0..k {
        for m in (l + 1)..=((k + l) / 2) {
            let t = binomial(k + l - 1, 2 * m - 1) * binomial(2 * m - 1, 2 * l);
            total = total + Rational::new(BigInt::from(t) * m, 2);
        }
        if (l + k) % 2 == 0 {
            for m in (l + 1)..=((k + l) / 2) {
                let t = binomial((k + l - 2) / 2, m - 1) * binomial(m - 1, l);
                total = total + Rational::new(BigInt::from(t) * m, 2);
            }
        }
    }
    Ok(total)
}
