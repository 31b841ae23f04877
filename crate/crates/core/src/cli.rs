//! Command-line front end.
//!
//! Every subcommand builds a [`Report`] (named columns of typed cells) and a
//! single renderer turns it into an aligned table, CSV or JSON, so the three
//! formats always carry the same values.

use std::fmt;
use std::io::Write;
use std::num::NonZeroUsize;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::contfrac::{ContFracError, EvenSequence};
use crate::enumerate::{self, Exec, Tally};
use crate::formulas::{self, FormulaError};
use crate::identities::{self, IdentityReport};
use crate::knots::{canonicalize, is_amphichiral, Mode};
use crate::rational::Rational;

/// Exit status bits for failed checks; several may be set at once.
pub mod exit {
    pub const INPUT: u8 = 1;
    pub const IDENTITIES: u8 = 4;
    pub const COUNTS: u8 = 8;
    pub const STRATA: u8 = 16;
    pub const TABLE: u8 = 32;
}

#[derive(Debug, Parser)]
#[command(name = "twobridge", version, about = "2-bridge knot enumeration and genus statistics")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Worker threads: a positive integer or `auto`. `1` runs serially.
    #[arg(long, global = true, default_value = "auto")]
    pub threads: Threads,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Threads {
    Auto,
    Fixed(NonZeroUsize),
}

impl FromStr for Threads {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(Threads::Auto);
        }
        s.parse::<NonZeroUsize>()
            .map(Threads::Fixed)
            .map_err(|_| format!("expected a positive integer or `auto`, got `{s}`"))
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form counts and averages, checked against enumeration up to a cutoff.
    Table1 {
        #[arg(long)]
        max_c: u32,
        /// Largest crossing number that is also enumerated.
        #[arg(long, default_value_t = 18)]
        cutoff: u32,
    },
    /// List the knot classes with a given crossing number (CSV/JSON: the tally).
    Enumerate {
        #[arg(long)]
        crossings: u32,
        #[arg(long, value_parser = parse_mode)]
        mode: Mode,
    },
    /// Closed-form counts, total genera and average genera.
    Formulas {
        #[arg(long)]
        max_c: u32,
    },
    /// Run the consistency checks and report one line per check.
    Verify {
        #[arg(long, default_value_t = 14)]
        max_c: u32,
        #[arg(long, default_value_t = 32)]
        max_n: u32,
        /// Only run the binomial identity checks.
        #[arg(long)]
        identities: bool,
    },
    /// Invariants of a single even continued fraction such as `2,-2,4`.
    Knot {
        #[arg(long = "cf", allow_hyphen_values = true)]
        sequence: String,
    },
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse().map_err(|e: crate::knots::KnotError| e.to_string())
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Sequence(#[from] ContFracError),
    #[error("{0}")]
    Formula(#[from] FormulaError),
    #[error("{0}")]
    InvalidArgument(String),
    #[error("thread pool: {0}")]
    ThreadPool(String),
    #[error("write failed: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv output failed: {0}")]
    Csv(#[from] csv::Error),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cell {
    Int(BigInt),
    Ratio(Rational),
    Text(String),
    Bool(bool),
    Empty,
}

impl From<BigUint> for Cell {
    fn from(n: BigUint) -> Self {
        Cell::Int(n.into())
    }
}

impl From<u64> for Cell {
    fn from(n: u64) -> Self {
        Cell::Int(n.into())
    }
}

impl From<Rational> for Cell {
    fn from(r: Rational) -> Self {
        Cell::Ratio(r)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Int(n) => write!(f, "{n}"),
            Cell::Ratio(r) => write!(f, "{r}"),
            Cell::Text(s) => f.write_str(s),
            Cell::Bool(b) => write!(f, "{b}"),
            Cell::Empty => Ok(()),
        }
    }
}

impl Cell {
    fn to_json(&self) -> Value {
        match self {
            Cell::Int(n) => Value::String(n.to_string()),
            Cell::Ratio(r) => json!({ "num": r.numer().to_string(), "den": r.denom().to_string() }),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Empty => Value::Null,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Layout {
    /// Aligned columns, one row per line.
    Rows,
    /// One record shown as `name: value` lines; JSON emits an object.
    Record,
    /// A header line followed by one cell per line (table format only).
    Stream(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub layout: Layout,
}

impl Report {
    fn new(headers: &[&str]) -> Self {
        Self {
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
            layout: Layout::Rows,
        }
    }

    pub fn to_json(&self) -> Value {
        let record = |row: &Vec<Cell>| -> Value {
            let map: Map<String, Value> = self
                .headers
                .iter()
                .cloned()
                .zip(row.iter().map(Cell::to_json))
                .collect();
            Value::Object(map)
        };
        match self.layout {
            Layout::Record if self.rows.len() == 1 => record(&self.rows[0]),
            _ => Value::Array(self.rows.iter().map(record).collect()),
        }
    }

    pub fn render(&self, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, &self.to_json())
                    .map_err(|e| CliError::Io(e.into()))?;
                writeln!(out)?;
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(&mut *out);
                w.write_record(&self.headers)?;
                for row in &self.rows {
                    w.write_record(row.iter().map(|c| c.to_string()))?;
                }
                w.flush()?;
            }
            Format::Table => match &self.layout {
                Layout::Stream(header) => {
                    writeln!(out, "{header}")?;
                    for row in &self.rows {
                        for cell in row {
                            writeln!(out, "{cell}")?;
                        }
                    }
                }
                Layout::Record => {
                    let width = self.headers.iter().map(String::len).max().unwrap_or(0);
                    for row in &self.rows {
                        for (h, c) in self.headers.iter().zip(row) {
                            writeln!(out, "{h:<width$}  {c}")?;
                        }
                    }
                }
                Layout::Rows => {
                    let text: Vec<Vec<String>> = self
                        .rows
                        .iter()
                        .map(|r| r.iter().map(ToString::to_string).collect())
                        .collect();
                    let widths: Vec<usize> = (0..self.headers.len())
                        .map(|i| {
                            text.iter()
                                .map(|r| r[i].len())
                                .chain([self.headers[i].len()])
                                .max()
                                .unwrap_or(0)
                        })
                        .collect();
                    let line = |cells: &[String]| -> String {
                        let padded: Vec<String> = cells
                            .iter()
                            .zip(&widths)
                            .map(|(c, &w)| format!("{c:>w$}"))
                            .collect();
                        padded.join("  ").trim_end().to_string()
                    };
                    writeln!(out, "{}", line(&self.headers))?;
                    for r in &text {
                        writeln!(out, "{}", line(r))?;
                    }
                }
            },
        }
        Ok(())
    }
}

/// A rendered report plus the exit status bits of any failed checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub report: Report,
    pub failures: u8,
}

fn need_crossings(c: u32, what: &str) -> Result<(), CliError> {
    if c < 3 {
        return Err(CliError::InvalidArgument(format!("{what} must be at least 3, got {c}")));
    }
    Ok(())
}

fn closed_row(c: u32) -> Result<Vec<Cell>, CliError> {
    Ok(vec![
        Cell::from(c as u64),
        formulas::tk_closed(c)?.into(),
        formulas::tg_closed(c)?.into(),
        formulas::avg_genus(c)?.into(),
        formulas::tk_mirror_closed(c)?.into(),
        formulas::tg_mirror_closed(c)?.into(),
        formulas::avg_genus_mirror(c)?.into(),
    ])
}

const CLOSED_HEADERS: [&str; 7] = [
    "c",
    "TK",
    "TG",
    "avg_genus",
    "TK_mirror",
    "TG_mirror",
    "avg_genus_mirror",
];

pub fn cmd_formulas(max_c: u32) -> Result<Outcome, CliError> {
    need_crossings(max_c, "--max-c")?;
    let mut report = Report::new(&CLOSED_HEADERS);
    for c in 3..=max_c {
        report.rows.push(closed_row(c)?);
    }
    Ok(Outcome { report, failures: 0 })
}

pub fn cmd_table1(max_c: u32, cutoff: u32, exec: Exec) -> Result<Outcome, CliError> {
    need_crossings(max_c, "--max-c")?;
    let mut headers = CLOSED_HEADERS.to_vec();
    headers.extend(["enum_TK", "enum_TG", "enum_TK_mirror", "enum_TG_mirror", "match"]);
    let mut report = Report::new(&headers);
    let mut failures = 0;
    for c in 3..=max_c {
        let mut row = closed_row(c)?;
        if c <= cutoff {
            let d = enumerate::tally_with(c, Mode::MirrorDistinct, exec);
            let m = enumerate::tally_with(c, Mode::MirrorCollapsed, exec);
            let ok = row[1] == Cell::from(d.knot_count.clone())
                && row[2] == Cell::from(d.total_genus.clone())
                && row[4] == Cell::from(m.knot_count.clone())
                && row[5] == Cell::from(m.total_genus.clone());
            if !ok {
                failures |= exit::TABLE;
            }
            row.extend([
                d.knot_count.into(),
                d.total_genus.into(),
                m.knot_count.into(),
                m.total_genus.into(),
                ok.into(),
            ]);
        } else {
            row.extend(std::iter::repeat_n(Cell::Empty, 5));
        }
        report.rows.push(row);
    }
    Ok(Outcome { report, failures })
}

/// Tally columns: `c, mode, knot_count, total_genus, g1, ..., g<max>`.
pub fn tally_report(t: &Tally) -> Report {
    let max_g = t.by_genus.keys().max().copied().unwrap_or(0);
    let mut headers: Vec<String> = ["c", "mode", "knot_count", "total_genus"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let mut row: Vec<Cell> = vec![
        Cell::from(t.c as u64),
        Cell::Text(t.mode.to_string()),
        t.knot_count.clone().into(),
        t.total_genus.clone().into(),
    ];
    for g in 1..=max_g {
        headers.push(format!("g{g}"));
        row.push(t.by_genus.get(&g).cloned().unwrap_or_default().into());
    }
    Report {
        headers,
        rows: vec![row],
        layout: Layout::Record,
    }
}

pub fn cmd_enumerate(c: u32, mode: Mode, format: Format, exec: Exec) -> Result<Outcome, CliError> {
    need_crossings(c, "--crossings")?;
    let report = match format {
        Format::Table => {
            let mut classes = enumerate::knot_classes(c, mode, exec);
            classes.sort();
            Report {
                headers: vec!["sequence".into()],
                rows: classes
                    .iter()
                    .map(|k| vec![Cell::Text(k.canonical().to_string())])
                    .collect(),
                layout: Layout::Stream(format!("c={c} mode={mode}")),
            }
        }
        Format::Csv | Format::Json => tally_report(&enumerate::tally_with(c, mode, exec)),
    };
    Ok(Outcome { report, failures: 0 })
}

pub fn cmd_knot(text: &str) -> Result<Outcome, CliError> {
    let seq: EvenSequence = text.parse()?;
    let value = seq.cf_value()?;
    let mut report = Report::new(&[
        "sequence",
        "value",
        "genus",
        "sign_changes",
        "crossing_number",
        "class_D",
        "class_C",
        "amphichiral",
    ]);
    report.layout = Layout::Record;
    report.rows.push(vec![
        Cell::Text(seq.to_string()),
        value.into(),
        Cell::from(seq.genus() as u64),
        Cell::from(seq.sign_changes() as u64),
        seq.crossing_number().into(),
        Cell::Text(canonicalize(&seq, Mode::MirrorDistinct).to_string()),
        Cell::Text(canonicalize(&seq, Mode::MirrorCollapsed).to_string()),
        is_amphichiral(&seq).into(),
    ]);
    Ok(Outcome { report, failures: 0 })
}

const VERIFY_HEADERS: [&str; 5] = ["suite", "check", "points", "status", "detail"];

fn verify_row(suite: &str, check: String, points: usize, failure: Option<String>) -> Vec<Cell> {
    vec![
        Cell::from(suite),
        Cell::Text(check),
        Cell::from(points as u64),
        Cell::from(if failure.is_none() { "PASS" } else { "FAIL" }),
        failure.map_or(Cell::Empty, Cell::Text),
    ]
}

fn identity_row(r: &IdentityReport) -> Vec<Cell> {
    let mut check = format!("{} n={}..={}", r.id, r.n_range.start(), r.n_range.end());
    if !r.x_values.is_empty() {
        let xs: Vec<String> = r.x_values.iter().map(ToString::to_string).collect();
        check.push_str(&format!(" x={}", xs.join(",")));
    }
    verify_row(
        "identities",
        check,
        r.points,
        r.counterexample.as_ref().map(ToString::to_string),
    )
}

fn first_mismatch(items: impl IntoIterator<Item = (String, String, String)>) -> (usize, Option<String>) {
    let mut points = 0;
    let mut first = None;
    for (what, lhs, rhs) in items {
        points += 1;
        if lhs != rhs && first.is_none() {
            first = Some(format!("{what}: {lhs} != {rhs}"));
        }
    }
    (points, first)
}

pub fn cmd_verify(max_c: u32, max_n: u32, identities_only: bool, exec: Exec) -> Result<Outcome, CliError> {
    let mut report = Report::new(&VERIFY_HEADERS);
    let mut failures = 0;
    for r in identities::run_all(max_n, &identities::default_x_values()) {
        if !r.passed() {
            failures |= exit::IDENTITIES;
        }
        report.rows.push(identity_row(&r));
    }
    if identities_only || max_c < 3 {
        return Ok(Outcome { report, failures });
    }

    let range = format!("c=3..={max_c}");
    let mut counts = Vec::new();
    let mut strata = Vec::new();
    let mut amphichiral = Vec::new();
    let mut invariants = None;
    for c in 3..=max_c {
        let d = enumerate::tally_with(c, Mode::MirrorDistinct, exec);
        let m = enumerate::tally_with(c, Mode::MirrorCollapsed, exec);
        for t in [&d, &m] {
            if let Err(e) = t.check_invariants() {
                invariants.get_or_insert(format!("c={c} mode={}: {e}", t.mode));
            }
        }
        let tag = |what: &str| format!("c={c} {what}");
        counts.extend([
            (tag("TK"), formulas::tk_closed(c)?.to_string(), d.knot_count.to_string()),
            (tag("TG"), formulas::tg_closed(c)?.to_string(), d.total_genus.to_string()),
            (tag("TK*"), formulas::tk_mirror_closed(c)?.to_string(), m.knot_count.to_string()),
            (tag("TG*"), formulas::tg_mirror_closed(c)?.to_string(), m.total_genus.to_string()),
        ]);
        if c % 2 == 0 {
            let expected = 2u32 * formulas::tk_mirror_closed(c)? - formulas::tk_closed(c)?;
            let found = enumerate::amphichiral_count(c, exec);
            amphichiral.push((tag("amphichiral"), expected.to_string(), found.to_string()));
        }
        for s in formulas::strata(c)? {
            let (n, g) = d
                .by_ell
                .get(&(s.ell as usize))
                .map(|e| (e.count.to_string(), e.genus_sum.to_string()))
                .unwrap_or_else(|| ("0".into(), "0".into()));
            let what = format!("c={c} ell={}", s.ell);
            strata.push((format!("{what} count"), s.count.to_string(), n));
            strata.push((format!("{what} genus"), s.genus_sum.to_string(), g));
        }
    }

    let (p, f) = first_mismatch(counts);
    failures |= if f.is_some() { exit::COUNTS } else { 0 };
    report.rows.push(verify_row("counts", format!("closed forms vs enumeration {range}"), p, f));
    let (p, f) = first_mismatch(amphichiral);
    failures |= if f.is_some() { exit::COUNTS } else { 0 };
    report.rows.push(verify_row("counts", format!("amphichiral classes, even {range}"), p, f));
    let points = 2 * (max_c as usize - 2);
    failures |= if invariants.is_some() { exit::COUNTS } else { 0 };
    report.rows.push(verify_row("counts", format!("tally invariants {range}"), points, invariants));
    let (p, f) = first_mismatch(strata);
    failures |= if f.is_some() { exit::STRATA } else { 0 };
    report.rows.push(verify_row("strata", format!("per-stratum counts and genera {range}"), p, f));
    Ok(Outcome { report, failures })
}

fn dispatch(cli: &Cli, exec: Exec) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Table1 { max_c, cutoff } => cmd_table1(*max_c, *cutoff, exec),
        Command::Enumerate { crossings, mode } => cmd_enumerate(*crossings, *mode, cli.format, exec),
        Command::Formulas { max_c } => cmd_formulas(*max_c),
        Command::Verify {
            max_c,
            max_n,
            identities,
        } => cmd_verify(*max_c, *max_n, *identities, exec),
        Command::Knot { sequence } => cmd_knot(sequence),
    }
}

/// Runs the parsed command, writes its report to `out` and returns the exit
/// status: 0 when every requested check passed.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<u8, CliError> {
    let outcome = match cli.threads {
        Threads::Fixed(n) if n.get() == 1 => dispatch(cli, Exec::Serial)?,
        Threads::Fixed(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.get())
            .build()
            .map_err(|e| CliError::ThreadPool(e.to_string()))?
            .install(|| dispatch(cli, Exec::Parallel))?,
        Threads::Auto => dispatch(cli, Exec::Parallel)?,
    };
    outcome.report.render(cli.format, out)?;
    Ok(outcome.failures)
}
