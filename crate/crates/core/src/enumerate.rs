//! Exhaustive generation of 2-bridge knots with a given crossing number.
//!
//! Every even sequence with crossing number `c` is reached exactly once by
//! choosing, in this order: the sign-change count `ell` (same parity as `c`),
//! the half-length `m`, a composition `b` of `(c + ell)/2` into `2m` positive
//! parts, and a sign pattern of length `2m` with `ell` changes. The entries
//! are then `2 b_i` with the chosen signs.
//!
//! An `(ell, m)` pair is a work unit. Reversal and negation preserve both
//! `ell` and `m`, so every knot class lives inside a single unit and units
//! can be deduplicated independently and merged by addition.

use std::collections::BTreeMap;

use indexmap::IndexSet;
use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;

use crate::contfrac::EvenSequence;
use crate::knots::{orbit_min, KnotClass, Mode};

/// Compact sequence representation used during enumeration.
pub type Key = Vec<i32>;

/// Compositions of `total` into `parts` positive integers, lexicographic.
pub fn compositions(total: usize, parts: usize) -> Compositions {
    let next = (parts >= 1 && total >= parts).then(|| {
        let mut v = vec![1; parts];
        v[parts - 1] = total - parts + 1;
        v
    });
    Compositions { next }
}

pub struct Compositions {
    next: Option<Vec<usize>>,
}

impl Iterator for Compositions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let n = current.len();
        // increment the part just before the rightmost slack and reset the tail
        if let Some(j) = (1..n).rev().find(|&j| current[j] > 1) {
            let i = j - 1;
            let mut succ = current.clone();
            let tail: usize = current[i + 1..].iter().sum();
            succ[i] += 1;
            for x in &mut succ[i + 1..n - 1] {
                *x = 1;
            }
            succ[n - 1] = tail - 1 - (n - 2 - i);
            self.next = Some(succ);
        }
        Some(current)
    }
}

/// All `±1` patterns of `length` with exactly `ell` adjacent sign changes, in
/// lexicographic order with `+` before `-`. There are `2 * C(length-1, ell)`.
pub fn sign_patterns(length: usize, ell: usize) -> SignPatterns {
    let next = (length >= 1 && ell < length).then(|| {
        let mut v = Vec::with_capacity(length);
        complete_pattern(&mut v, length, ell);
        v
    });
    SignPatterns { length, ell, next }
}

pub struct SignPatterns {
    length: usize,
    ell: usize,
    next: Option<Vec<i8>>,
}

/// Extends `v` to `length` with the least completion that spends exactly
/// `remaining` further sign changes.
fn complete_pattern(v: &mut Vec<i8>, length: usize, mut remaining: usize) {
    if v.is_empty() {
        v.push(1);
    }
    while v.len() < length {
        let last = *v.last().unwrap();
        let slots_after = length - v.len() - 1;
        let plus_cost = usize::from(last < 0);
        if remaining >= plus_cost && remaining - plus_cost <= slots_after {
            v.push(1);
            remaining -= plus_cost;
        } else {
            v.push(-1);
            remaining -= 1 - plus_cost;
        }
    }
    debug_assert_eq!(remaining, 0);
}

impl Iterator for SignPatterns {
    type Item = Vec<i8>;

    fn next(&mut self) -> Option<Vec<i8>> {
        let current = self.next.take()?;
        let n = self.length;
        let mut changes_before = vec![0usize; n];
        for i in 1..n {
            changes_before[i] = changes_before[i - 1] + usize::from(current[i] != current[i - 1]);
        }
        let successor = (0..n).rev().find_map(|i| {
            if current[i] < 0 {
                return None;
            }
            let used = match i {
                0 => 0,
                _ => changes_before[i - 1] + usize::from(current[i - 1] > 0),
            };
            if used > self.ell || self.ell - used > n - 1 - i {
                return None;
            }
            let mut succ = current[..i].to_vec();
            succ.push(-1);
            complete_pattern(&mut succ, n, self.ell - used);
            Some(succ)
        });
        self.next = successor;
        Some(current)
    }
}

/// One `(ell, m)` slice of the enumeration for a fixed crossing number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WorkUnit {
    pub ell: usize,
    pub m: usize,
}

/// Feasible `(ell, m)` pairs for crossing number `c`: `ell ≡ c (mod 2)`,
/// `ell ≤ 2m - 1` and `4m ≤ c + ell`. Ordered by `ell`, then `m`.
pub fn work_units(c: u32) -> Vec<WorkUnit> {
    let c = c as usize;
    let mut units = Vec::new();
    for ell in (c % 2..=c.saturating_sub(2)).step_by(2) {
        let m_min = (ell + 2) / 2;
        for m in m_min..=(c + ell) / 4 {
            units.push(WorkUnit { ell, m });
        }
    }
    units
}

/// Raw sequences of one work unit, in generation order.
pub fn unit_sequences(c: u32, unit: WorkUnit) -> impl Iterator<Item = Key> {
    let parts = 2 * unit.m;
    let patterns: Vec<Vec<i8>> = sign_patterns(parts, unit.ell).collect();
    compositions((c as usize + unit.ell) / 2, parts).flat_map(move |b| {
        patterns
            .iter()
            .map(|signs| {
                b.iter()
                    .zip(signs)
                    .map(|(&bi, &s)| 2 * bi as i32 * i32::from(s))
                    .collect::<Key>()
            })
            .collect::<Vec<_>>()
    })
}

/// Every even sequence with crossing number `c`, each exactly once.
pub fn enumerate_sequences(c: u32) -> impl Iterator<Item = EvenSequence> {
    work_units(c)
        .into_iter()
        .flat_map(move |u| unit_sequences(c, u))
        .map(|k| EvenSequence::from_small_unchecked(&k))
}

/// Canonical keys of the classes in one unit, in order of first appearance.
pub fn unit_classes(c: u32, unit: WorkUnit, mode: Mode) -> IndexSet<Key> {
    unit_sequences(c, unit).map(|k| orbit_min(&k, mode)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Serial,
    /// Units are distributed over the current rayon pool.
    Parallel,
}

fn per_unit<T, F>(c: u32, exec: Exec, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(WorkUnit) -> T + Sync + Send,
{
    let units = work_units(c);
    match exec {
        Exec::Serial => units.into_iter().map(f).collect(),
        Exec::Parallel => units.into_par_iter().map(f).collect(),
    }
}

/// Canonical representatives of all classes with crossing number `c`.
pub fn knot_classes(c: u32, mode: Mode, exec: Exec) -> Vec<KnotClass> {
    per_unit(c, exec, |u| unit_classes(c, u, mode))
        .into_iter()
        .flatten()
        .map(|k| {
            crate::knots::canonicalize(&EvenSequence::from_small_unchecked(&k), mode)
        })
        .collect()
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EllTally {
    pub count: BigUint,
    pub genus_sum: BigUint,
}

/// Aggregate statistics over the knot classes with one crossing number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tally {
    pub c: u32,
    pub mode: Mode,
    pub knot_count: BigUint,
    pub total_genus: BigUint,
    pub by_genus: BTreeMap<usize, BigUint>,
    pub by_ell: BTreeMap<usize, EllTally>,
}

impl Tally {
    pub fn empty(c: u32, mode: Mode) -> Self {
        Self {
            c,
            mode,
            knot_count: BigUint::zero(),
            total_genus: BigUint::zero(),
            by_genus: BTreeMap::new(),
            by_ell: BTreeMap::new(),
        }
    }

    fn from_keys<'a>(c: u32, mode: Mode, keys: impl IntoIterator<Item = &'a Key>) -> Self {
        let mut by_genus: BTreeMap<usize, u64> = BTreeMap::new();
        let mut by_ell: BTreeMap<usize, (u64, u64)> = BTreeMap::new();
        for key in keys {
            let genus = key.len() / 2;
            let ell = key.windows(2).filter(|w| (w[0] < 0) != (w[1] < 0)).count();
            *by_genus.entry(genus).or_default() += 1;
            let e = by_ell.entry(ell).or_default();
            e.0 += 1;
            e.1 += genus as u64;
        }
        let mut t = Self::empty(c, mode);
        for (g, n) in by_genus {
            t.knot_count += n;
            t.total_genus += n * g as u64;
            t.by_genus.insert(g, n.into());
        }
        for (ell, (n, gs)) in by_ell {
            t.by_ell.insert(
                ell,
                EllTally {
                    count: n.into(),
                    genus_sum: gs.into(),
                },
            );
        }
        t
    }

    /// Adds a partial tally over a disjoint set of classes.
    pub fn merge(&mut self, other: &Tally) {
        assert_eq!((self.c, self.mode), (other.c, other.mode), "merging unrelated tallies");
        self.knot_count += &other.knot_count;
        self.total_genus += &other.total_genus;
        for (g, n) in &other.by_genus {
            *self.by_genus.entry(*g).or_default() += n;
        }
        for (ell, e) in &other.by_ell {
            let slot = self.by_ell.entry(*ell).or_default();
            slot.count += &e.count;
            slot.genus_sum += &e.genus_sum;
        }
    }

    /// Checks that the totals agree with both histograms and that every
    /// sign-change count has the parity of `c`.
    pub fn check_invariants(&self) -> Result<(), String> {
        let count_g: BigUint = self.by_genus.values().sum();
        let count_l: BigUint = self.by_ell.values().map(|e| &e.count).sum();
        let genus_g: BigUint = self.by_genus.iter().map(|(g, n)| n * *g).sum();
        let genus_l: BigUint = self.by_ell.values().map(|e| &e.genus_sum).sum();
        if count_g != self.knot_count || count_l != self.knot_count {
            return Err(format!("c={}: knot_count disagrees with histograms", self.c));
        }
        if genus_g != self.total_genus || genus_l != self.total_genus {
            return Err(format!("c={}: total_genus disagrees with histograms", self.c));
        }
        if let Some(ell) = self.by_ell.keys().find(|&&l| l % 2 != self.c as usize % 2) {
            return Err(format!("c={}: sign-change count {ell} has the wrong parity", self.c));
        }
        Ok(())
    }
}

pub fn tally(c: u32, mode: Mode) -> Tally {
    tally_with(c, mode, Exec::Serial)
}

pub fn tally_par(c: u32, mode: Mode) -> Tally {
    tally_with(c, mode, Exec::Parallel)
}

pub fn tally_with(c: u32, mode: Mode, exec: Exec) -> Tally {
    let partials = per_unit(c, exec, |u| Tally::from_keys(c, mode, &unit_classes(c, u, mode)));
    let mut total = Tally::empty(c, mode);
    for p in &partials {
        total.merge(p);
    }
    total
}

/// Number of mirror-distinct classes equal to their own mirror image.
pub fn amphichiral_count(c: u32, exec: Exec) -> u64 {
    per_unit(c, exec, |u| {
        unit_classes(c, u, Mode::MirrorDistinct)
            .iter()
            .filter(|k| {
                let neg: Key = k.iter().map(|e| -e).collect();
                orbit_min(&neg, Mode::MirrorDistinct) == **k
            })
            .count() as u64
    })
    .into_iter()
    .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_examples() {
        assert_eq!(compositions(3, 2).collect::<Vec<_>>(), vec![vec![1, 2], vec![2, 1]]);
        assert_eq!(compositions(4, 4).collect::<Vec<_>>(), vec![vec![1, 1, 1, 1]]);
        assert_eq!(compositions(5, 2).count(), 4);
        assert_eq!(compositions(2, 3).count(), 0);
        assert_eq!(compositions(3, 0).count(), 0);
        assert_eq!(compositions(4, 1).collect::<Vec<_>>(), vec![vec![4]]);
        assert_eq!(
            compositions(5, 3).collect::<Vec<_>>(),
            vec![
                vec![1, 1, 3],
                vec![1, 2, 2],
                vec![1, 3, 1],
                vec![2, 1, 2],
                vec![2, 2, 1],
                vec![3, 1, 1]
            ]
        );
    }

    #[test]
    fn sign_pattern_examples() {
        assert_eq!(sign_patterns(2, 1).collect::<Vec<_>>(), vec![vec![1, -1], vec![-1, 1]]);
        assert_eq!(sign_patterns(2, 0).collect::<Vec<_>>(), vec![vec![1, 1], vec![-1, -1]]);
        assert_eq!(sign_patterns(6, 2).count(), 20);
        assert_eq!(sign_patterns(3, 3).count(), 0);
        assert_eq!(sign_patterns(1, 0).collect::<Vec<_>>(), vec![vec![1], vec![-1]]);
    }

    #[test]
    fn small_crossing_numbers() {
        let seqs = |c| enumerate_sequences(c).map(|s| s.to_string()).collect::<Vec<_>>();
        assert_eq!(seqs(3), vec!["2,-2", "-2,2"]);
        assert_eq!(seqs(4), vec!["2,2", "-2,-2"]);
        assert!(seqs(2).is_empty());
        assert_eq!(work_units(3), vec![WorkUnit { ell: 1, m: 1 }]);
    }

    #[test]
    fn tally_examples() {
        let t = tally(3, Mode::MirrorDistinct);
        assert_eq!(t.knot_count, 2u32.into());
        assert_eq!(t.total_genus, 2u32.into());
        let t = tally(7, Mode::MirrorDistinct);
        assert_eq!(t.knot_count, 14u32.into());
        t.check_invariants().unwrap();
    }

    #[test]
    fn merge_adds_histograms() {
        let mut a = tally(5, Mode::MirrorDistinct);
        let b = a.clone();
        a.merge(&b);
        assert_eq!(a.knot_count, 8u32.into());
        assert_eq!(a.total_genus, 12u32.into());
        a.check_invariants().unwrap();
    }
}
