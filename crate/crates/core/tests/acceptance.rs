//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_traits::Signed;
use twobridge::enumerate::{self, enumerate_sequences, Exec};
use twobridge::formulas::{self, Parity};
use twobridge::identities;
use twobridge::{canonicalize, even_expansion, Mode, Rational};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn published_table() -> Check {
    for &(c, tk, tg, avg, tkm, tgm, avgm) in &common::PUBLISHED {
        let (avg, avgm) = (common::ratio(avg), common::ratio(avgm));
        let d = enumerate::tally(c, Mode::MirrorDistinct);
        let m = enumerate::tally(c, Mode::MirrorCollapsed);
        let enum_avg = Rational::new(BigInt::from(d.total_genus.clone()), BigInt::from(d.knot_count.clone()));
        let enum_avgm = Rational::new(BigInt::from(m.total_genus.clone()), BigInt::from(m.knot_count.clone()));
        let got = [
            (formulas::tk_closed(c).map_err(err)?, d.knot_count.clone(), tk, "TK"),
            (formulas::tg_closed(c).map_err(err)?, d.total_genus.clone(), tg, "TG"),
            (formulas::tk_mirror_closed(c).map_err(err)?, m.knot_count.clone(), tkm, "TK*"),
            (formulas::tg_mirror_closed(c).map_err(err)?, m.total_genus.clone(), tgm, "TG*"),
        ];
        for (closed, counted, published, name) in got {
            let published = BigUint::from(published);
            ensure(closed == published && counted == published, || {
                format!("c={c} {name}: closed {closed}, enumerated {counted}, published {published}")
            })?;
        }
        let closed_avg = formulas::avg_genus(c).map_err(err)?;
        let closed_avgm = formulas::avg_genus_mirror(c).map_err(err)?;
        ensure(closed_avg == avg && enum_avg == avg, || format!("c={c} average {closed_avg} / {enum_avg} vs {avg}"))?;
        ensure(closed_avgm == avgm && enum_avgm == avgm, || {
            format!("c={c} mirror average {closed_avgm} / {enum_avgm} vs {avgm}")
        })?;
    }
    Ok("c=3..15, both modes, closed forms and enumeration".into())
}

fn sweep() -> Check {
    for c in 3..=22 {
        let d = enumerate::tally(c, Mode::MirrorDistinct);
        let m = enumerate::tally(c, Mode::MirrorCollapsed);
        let pairs = [
            (formulas::tk_closed(c).map_err(err)?, &d.knot_count, "TK"),
            (formulas::tg_closed(c).map_err(err)?, &d.total_genus, "TG"),
            (formulas::tk_mirror_closed(c).map_err(err)?, &m.knot_count, "TK*"),
            (formulas::tg_mirror_closed(c).map_err(err)?, &m.total_genus, "TG*"),
        ];
        for (closed, counted, name) in pairs {
            ensure(&closed == counted, || format!("c={c} {name}: closed {closed}, enumerated {counted}"))?;
        }
    }
    Ok("c=3..22, both modes, serial enumeration".into())
}

fn strata() -> Check {
    let mut checked = 0;
    for c in 3..=18u32 {
        let k = c / 2;
        let tally = enumerate::tally(c, Mode::MirrorDistinct);
        let (mut sum_a, mut sum_b) = (BigUint::default(), BigUint::default());
        for l in 0..k {
            let a = formulas::stratum_closed_a(k, l, Parity::of(c)).map_err(err)?;
            let b = formulas::stratum_closed_b(k, l, Parity::of(c)).map_err(err)?;
            let ell = (2 * l + c % 2) as usize;
            let e = tally.by_ell.get(&ell).cloned().unwrap_or_default();
            ensure(e.count == a && e.genus_sum == b, || {
                format!("c={c} ell={ell}: closed ({a}, {b}), enumerated ({}, {})", e.count, e.genus_sum)
            })?;
            sum_a += a;
            sum_b += b;
            checked += 1;
        }
        ensure(sum_a == formulas::tk_closed(c).unwrap(), || format!("c={c}: sum of A_l is {sum_a}"))?;
        ensure(sum_b == formulas::tg_closed(c).unwrap(), || format!("c={c}: sum of B_l is {sum_b}"))?;
    }
    Ok(format!("c=3..18, {checked} strata, sums equal TK and TG"))
}

fn identity_suite() -> Check {
    let reports = identities::run_all(64, &identities::default_x_values());
    let points: usize = reports.iter().map(|r| r.points).sum();
    if let Some(r) = reports.iter().find(|r| !r.passed()) {
        return Err(r.to_string());
    }
    Ok(format!("n<=64, {} reports, {points} exact points", reports.len()))
}

/// `|x| < 2^(-c/4)`, i.e. `num^4 2^c < den^4`.
fn below_bound(x: &Rational, c: u32) -> bool {
    let n = x.numer().abs();
    let lhs = num_traits::pow(n, 4) << c as usize;
    lhs < num_traits::pow(x.denom().clone(), 4)
}

fn asymptote() -> Check {
    for c in 3..=10_000u32 {
        let pairs = [
            (formulas::residual(c).map_err(err)?, formulas::correction(c).map_err(err)?, ""),
            (
                formulas::residual_mirror(c).map_err(err)?,
                formulas::correction_mirror(c).map_err(err)?,
                " (mirror)",
            ),
        ];
        for (residual, correction, tag) in pairs {
            ensure(residual == correction, || format!("c={c}{tag}: residual {residual} vs correction {correction}"))?;
            ensure(c < 20 || below_bound(&residual, c), || format!("c={c}{tag}: residual {residual} not below 2^(-c/4)"))?;
        }
    }
    Ok("c<=10000, both modes; bound from c=20".into())
}

fn mirror_relations() -> Check {
    for c in (3..=10_000u32).step_by(2) {
        let tk = formulas::tk_closed(c).map_err(err)?;
        let tg = formulas::tg_closed(c).map_err(err)?;
        let tkm = formulas::tk_mirror_closed(c).map_err(err)?;
        let tgm = formulas::tg_mirror_closed(c).map_err(err)?;
        ensure(tk == &tkm * 2u32 && tg == &tgm * 2u32, || format!("c={c}: halving fails"))?;
    }
    for c in (4..=18u32).step_by(2) {
        let expected = formulas::tk_mirror_closed(c).unwrap() * 2u32 - formulas::tk_closed(c).unwrap();
        let found = enumerate::amphichiral_count(c, Exec::Serial);
        ensure(expected == BigUint::from(found), || format!("c={c}: expected {expected} amphichiral, found {found}"))?;
    }
    Ok("odd c<=10000 halving; amphichiral counts for even c<=18".into())
}

fn round_trip() -> Check {
    let mut n = 0u64;
    for c in 3..=14 {
        for s in enumerate_sequences(c) {
            let x = s.cf_value().map_err(err)?;
            let back = even_expansion(&x).map_err(err)?;
            ensure(canonicalize(&back, Mode::MirrorDistinct) == canonicalize(&s, Mode::MirrorDistinct), || {
                format!("{s} -> {x} -> {back}")
            })?;
            n += 1;
        }
    }
    Ok(format!("{n} sequences with c<=14"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("published-table", published_table),
        ("closed-form-sweep", sweep),
        ("stratum-sweep", strata),
        ("identity-suite", identity_suite),
        ("asymptote", asymptote),
        ("mirror-relations", mirror_relations),
        ("round-trip", round_trip),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {} {name}: {detail} [{secs:.2}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why} [{secs:.2}s]", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
