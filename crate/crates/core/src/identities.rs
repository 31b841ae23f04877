//! Exact point checks of the binomial identities behind the counting formulas.
//!
//! The generating sums
//! `alpha_n(x) = sum_{q<n} x^q C(2n-1-q, q)` and
//! `beta_n(x) = sum_{q<=n} x^q C(2n-q, q)` have closed forms involving
//! `sqrt(4x+1)`. Those are checked through the equivalent linear recurrence at
//! rational `x`, and directly at `x = 2` where the surd is rational.

use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::rational::Rational;

/// `C(n, k)`, zero whenever `k < 0`, `k > n` or `n < 0`.
pub fn binomial(n: i64, k: i64) -> BigUint {
    if n < 0 || k < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 1..=k {
        // acc = C(n-k+i-1, i-1) on entry, so the division is exact
        acc = acc * BigUint::from((n - k + i) as u64) / BigUint::from(i as u64);
    }
    acc
}

fn binomial_q(n: i64, k: i64) -> Rational {
    Rational::from(BigInt::from(binomial(n, k)))
}

/// `sum_{q=0}^{n-1} x^q C(2n-1-q, q)`.
pub fn alpha_sum(n: u32, x: &Rational) -> Rational {
    let n = n as i64;
    weighted_sum(0..n, x, |q| binomial_q(2 * n - 1 - q, q))
}

/// `sum_{q=0}^{n} x^q C(2n-q, q)`.
pub fn beta_sum(n: u32, x: &Rational) -> Rational {
    let n = n as i64;
    weighted_sum(0..n + 1, x, |q| binomial_q(2 * n - q, q))
}

fn weighted_sum(qs: std::ops::Range<i64>, x: &Rational, coeff: impl Fn(i64) -> Rational) -> Rational {
    let mut power = Rational::one();
    let mut total = Rational::zero();
    for q in qs {
        total = total + &power * coeff(q);
        power = &power * x;
    }
    total
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdentityId {
    /// `alpha_n(2) = (4^n - 1)/3` and `beta_n(2) = (2 4^n + 1)/3`.
    AtTwo,
    /// `alpha_{n+1} = (2x+1) alpha_n - x^2 alpha_{n-1}` with `alpha_0 = 0`,
    /// `alpha_1 = 1`, and `beta_n = alpha_{n+1} - x alpha_n`.
    Recurrence,
    /// Closed forms of `sum q 2^q C(2n-1-q, q)` and `sum q 2^q C(2n-q, q)`.
    DerivativeSums,
    /// Binomial product rule and the three row sums.
    WellKnown,
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IdentityId::AtTwo => "at-two",
            IdentityId::Recurrence => "recurrence",
            IdentityId::DerivativeSums => "derivative-sums",
            IdentityId::WellKnown => "well-known",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub what: &'static str,
    pub n: i64,
    pub x: Option<Rational>,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at n={}", self.what, self.n)?;
        if let Some(x) = &self.x {
            write!(f, " x={x}")?;
        }
        write!(f, ": {} != {}", self.lhs, self.rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub id: IdentityId,
    pub n_range: RangeInclusive<i64>,
    pub x_values: Vec<Rational>,
    pub points: usize,
    /// `None` iff every evaluated point matched exactly.
    pub counterexample: Option<Counterexample>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} n={}..={}",
            self.id,
            self.n_range.start(),
            self.n_range.end()
        )?;
        if !self.x_values.is_empty() {
            let xs: Vec<String> = self.x_values.iter().map(|x| x.to_string()).collect();
            write!(f, " x=[{}]", xs.join(","))?;
        }
        match &self.counterexample {
            None => write!(f, " points={} PASS", self.points),
            Some(ce) => write!(f, " points={} FAIL {ce}", self.points),
        }
    }
}

/// Accumulates point checks, keeping the first failure.
struct Checker {
    points: usize,
    first: Option<Counterexample>,
}

impl Checker {
    fn new() -> Self {
        Self { points: 0, first: None }
    }

    fn check(&mut self, what: &'static str, n: i64, x: Option<&Rational>, lhs: Rational, rhs: Rational) {
        self.points += 1;
        if lhs != rhs && self.first.is_none() {
            self.first = Some(Counterexample {
                what,
                n,
                x: x.cloned(),
                lhs,
                rhs,
            });
        }
    }

    fn report(self, id: IdentityId, n_range: RangeInclusive<i64>, x_values: Vec<Rational>) -> IdentityReport {
        IdentityReport {
            id,
            n_range,
            x_values,
            points: self.points,
            counterexample: self.first,
        }
    }
}

fn four_pow(n: i64) -> Rational {
    Rational::pow2(2 * n)
}

pub fn at_two_check(n_max: u32) -> IdentityReport {
    let two = Rational::from(2);
    let mut ck = Checker::new();
    for n in 0..=n_max {
        let ni = n as i64;
        ck.check(
            "alpha_n(2) = (4^n-1)/3",
            ni,
            None,
            alpha_sum(n, &two),
            (four_pow(ni) - Rational::one()) * Rational::new(1, 3),
        );
        ck.check(
            "beta_n(2) = (2*4^n+1)/3",
            ni,
            None,
            beta_sum(n, &two),
            (four_pow(ni) * Rational::from(2) + Rational::one()) * Rational::new(1, 3),
        );
    }
    ck.report(IdentityId::AtTwo, 0..=n_max as i64, vec![two])
}

/// Both recurrences for `1 <= n < n_max`, plus the initial values.
pub fn alpha_recurrence_check(n_max: u32, x: &Rational) -> IdentityReport {
    let alphas: Vec<Rational> = (0..=n_max).map(|n| alpha_sum(n, x)).collect();
    let x2 = x * x;
    let lin = Rational::from(2) * x + Rational::one();
    let mut ck = Checker::new();
    ck.check("alpha_0 = 0", 0, Some(x), alphas[0].clone(), Rational::zero());
    if n_max >= 1 {
        ck.check("alpha_1 = 1", 1, Some(x), alphas[1].clone(), Rational::one());
    }
    for n in 1..n_max as usize {
        ck.check(
            "alpha_{n+1} = (2x+1) alpha_n - x^2 alpha_{n-1}",
            n as i64,
            Some(x),
            alphas[n + 1].clone(),
            &lin * &alphas[n] - &x2 * &alphas[n - 1],
        );
        ck.check(
            "beta_n = alpha_{n+1} - x alpha_n",
            n as i64,
            Some(x),
            beta_sum(n as u32, x),
            &alphas[n + 1] - x * &alphas[n],
        );
    }
    ck.report(IdentityId::Recurrence, 0..=n_max as i64, vec![x.clone()])
}

pub fn derivative_sums_check(n_max: u32) -> IdentityReport {
    let mut ck = Checker::new();
    let two_27 = Rational::new(2, 27);
    for n in 1..=n_max as i64 {
        let weighted = |top: i64, q_max: i64| -> Rational {
            (0..=q_max)
                .map(|q| Rational::from(q) * Rational::pow2(q) * binomial_q(top - q, q))
                .sum()
        };
        let m = four_pow(n) - Rational::one();
        ck.check(
            "sum q 2^q C(2n-1-q,q) = (2/27)((4^n-1)(3n-2) - 3n)",
            n,
            None,
            weighted(2 * n - 1, n - 1),
            &two_27 * (&m * Rational::from(3 * n - 2) - Rational::from(3 * n)),
        );
        ck.check(
            "sum q 2^q C(2n-q,q) = (2/27)((4^n-1)(6n-1) + 12n)",
            n,
            None,
            weighted(2 * n, n),
            &two_27 * (&m * Rational::from(6 * n - 1) + Rational::from(12 * n)),
        );
    }
    ck.report(IdentityId::DerivativeSums, 1..=n_max as i64, Vec::new())
}

/// The product rule over all `0 <= c <= b <= a <= n_max`, against a Pascal
/// table, and the row sums for `1 <= n <= n_max` (the even-index sum equals
/// `2^{n-1}` only from `n = 1` on).
pub fn wellknown_check(n_max: u32) -> IdentityReport {
    let n_max = n_max as i64;
    let mut pascal: Vec<Vec<BigUint>> = Vec::new();
    for a in 0..=n_max as usize {
        let mut row = vec![BigUint::one(); a + 1];
        for b in 1..a {
            row[b] = &pascal[a - 1][b - 1] + &pascal[a - 1][b];
        }
        pascal.push(row);
    }
    let c_ = |a: i64, b: i64| Rational::from(BigInt::from(pascal[a as usize][b as usize].clone()));

    let mut ck = Checker::new();
    for a in 0..=n_max {
        for b in 0..=a {
            ck.check("C(a,b) by product formula = Pascal", a, None, binomial_q(a, b), c_(a, b));
            for c in 0..=b {
                ck.check(
                    "C(a,b)C(b,c) = C(a,c)C(a-c,b-c)",
                    a,
                    None,
                    c_(a, b) * c_(b, c),
                    c_(a, c) * c_(a - c, b - c),
                );
            }
        }
    }
    for n in 1..=n_max {
        let row = |f: &dyn Fn(i64) -> Rational, qs: RangeInclusive<i64>| -> Rational { qs.map(f).sum() };
        ck.check("sum C(n,q) = 2^n", n, None, row(&|q| c_(n, q), 0..=n), Rational::pow2(n));
        ck.check(
            "sum C(n,2q) = 2^{n-1}",
            n,
            None,
            row(&|q| c_(n, 2 * q), 0..=n / 2),
            Rational::pow2(n - 1),
        );
        ck.check(
            "sum q C(n,q) = n 2^{n-1}",
            n,
            None,
            row(&|q| Rational::from(q) * c_(n, q), 0..=n),
            Rational::from(n) * Rational::pow2(n - 1),
        );
    }
    ck.report(IdentityId::WellKnown, 0..=n_max, Vec::new())
}

pub fn default_x_values() -> Vec<Rational> {
    vec![
        Rational::from(0),
        Rational::from(1),
        Rational::from(2),
        Rational::from(-1),
        Rational::new(3, 2),
    ]
}

/// Every identity check up to `n_max`, recurrences at each of `x_values`.
pub fn run_all(n_max: u32, x_values: &[Rational]) -> Vec<IdentityReport> {
    let mut out = vec![at_two_check(n_max)];
    out.extend(x_values.iter().map(|x| alpha_recurrence_check(n_max, x)));
    out.push(derivative_sums_check(n_max));
    out.push(wellknown_check(n_max));
    out
}
