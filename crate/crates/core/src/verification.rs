//! Cross-checks between the closed forms, the simulator, the published
//! table and external b-files. Mismatches are collected into reports.

use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::Serialize;

use crate::automaton::{self, AutomatonState};
use crate::enumeration::{bound_numerator, cells_born, quadratic_total, total_cells};
use crate::weight_sums::{naive_prefix_sums, series_a130665, weight_sum_fast};
use crate::{CellCount, Error, Index, Result};

mod table1;

pub use table1::{TABLE1, TABLE1_MULTIPLIERS};

/// Failures recorded per report; further failures are only counted.
pub const MAX_RECORDED_FAILURES: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub input: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub cases: u64,
    pub failure_count: u64,
    pub failures: Vec<Failure>,
    pub elapsed_ms: u128,
}

impl VerificationReport {
    fn start(check: &str) -> ReportBuilder {
        ReportBuilder {
            report: VerificationReport {
                check: check.to_owned(),
                cases: 0,
                failure_count: 0,
                failures: Vec::new(),
                elapsed_ms: 0,
            },
            started: Instant::now(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    /// Equality ignoring `elapsed_ms`.
    pub fn same_outcome(&self, other: &VerificationReport) -> bool {
        self.check == other.check
            && self.cases == other.cases
            && self.failure_count == other.failure_count
            && self.failures == other.failures
    }
}

struct ReportBuilder {
    report: VerificationReport,
    started: Instant,
}

impl ReportBuilder {
    fn case<T: PartialEq + Display>(&mut self, input: impl Display, expected: &T, actual: &T) {
        self.report.cases += 1;
        if expected != actual {
            self.fail(input, expected, actual);
        }
    }

    fn fail(&mut self, input: impl Display, expected: impl Display, actual: impl Display) {
        self.report.failure_count += 1;
        if self.report.failures.len() < MAX_RECORDED_FAILURES {
            self.report.failures.push(Failure {
                input: input.to_string(),
                expected: expected.to_string(),
                actual: actual.to_string(),
            });
        }
    }

    fn finish(mut self) -> VerificationReport {
        self.report.elapsed_ms = self.started.elapsed().as_millis();
        self.report
    }
}

/// One `(n_m, U_m)` entry of a table row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table1Entry {
    pub m: u64,
    pub n: Index,
    pub total: CellCount,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table1Row {
    pub k: u64,
    pub entries: Vec<Table1Entry>,
}

/// Rows `k = 0..=k_max` of the quadratic-family table for the given
/// multipliers.
pub fn table_rows(multipliers: &[u64], k_max: u64) -> Result<Vec<Table1Row>> {
    (0..=k_max)
        .map(|k| {
            let entries = multipliers
                .iter()
                .map(|&m| {
                    let m_big = BigUint::from(m);
                    Ok(Table1Entry {
                        m,
                        n: &m_big << k,
                        total: quadratic_total(&m_big, k)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Table1Row { k, entries })
        })
        .collect()
}

/// Table for `m = 1, 3, 5, 7`, compared against the published values for
/// `k <= 8`.
pub fn reproduce_table1(k_max: u64) -> Result<(Vec<Table1Row>, VerificationReport)> {
    let mut report = VerificationReport::start("table1");
    let rows = table_rows(&TABLE1_MULTIPLIERS, k_max)?;
    for (row, golden) in rows.iter().zip(TABLE1.iter()) {
        for (entry, &(n, total)) in row.entries.iter().zip(golden.iter()) {
            let input = format!("k={} m={}", row.k, entry.m);
            report.case(&input, &BigUint::from(n), &entry.n);
            report.case(&input, &BigUint::from(total), &entry.total);
        }
    }
    Ok((rows, report.finish()))
}

/// Simulates once to `n_max` and compares every generation `0..=n_max`
/// against `U(n)` and `u(n)`. One case per generation.
pub fn verify_sim_vs_formula(n_max: u64, budget: u64) -> Result<VerificationReport> {
    automaton::check_budget(n_max, budget)?;
    let mut report = VerificationReport::start("sim-vs-formula");
    let mut state = AutomatonState::new();
    for n in 0..=n_max {
        if n > 0 {
            state = state.step();
        }
        let index = BigUint::from(n);
        let total = total_cells(&index)?;
        let on = BigUint::from(state.on_count());
        report.report.cases += 1;
        if on != total {
            report.fail(format!("U({n})"), &total, &on);
        }
        if n > 0 {
            let born = BigUint::from(state.born_history()[n as usize - 1]);
            let expected = cells_born(&index);
            if born != expected {
                report.fail(format!("u({n})"), &expected, &born);
            }
        }
    }
    Ok(report.finish())
}

/// `S(m 2^k) == a_m 4^k` for every `1 <= m <= m_max`, `0 <= k <= k_max`.
pub fn verify_factorization(m_max: u64, k_max: u64) -> Result<VerificationReport> {
    let mut report = VerificationReport::start("factorization");
    for m in 1..=m_max {
        let m = BigUint::from(m);
        let a_m = series_a130665(&m)?;
        for k in 0..=k_max {
            let direct = weight_sum_fast(&(&m << k));
            let factored = &a_m << (2 * k);
            report.case(format!("m={m} k={k}"), &factored, &direct);
        }
    }
    Ok(report.finish())
}

/// `3 U(n) <= 4n^2 - 1` on `[1, n_max]`, with equality exactly at powers of
/// two.
pub fn verify_upper_bound(n_max: u64) -> Result<VerificationReport> {
    if n_max == 0 {
        return Err(Error::Domain("upper-bound sweep needs n_max >= 1".into()));
    }
    let mut report = VerificationReport::start("upper-bound");
    for n in 1..=n_max {
        let index = BigUint::from(n);
        let scaled = total_cells(&index)? * 3u8;
        let bound = bound_numerator(&index)?;
        let relation = |attained: bool| if attained { "equal" } else { "below" };
        report.report.cases += 1;
        if scaled > bound {
            report.fail(
                format!("n={n}"),
                format!("3U <= {bound}"),
                format!("3U = {scaled}"),
            );
        } else if (scaled == bound) != n.is_power_of_two() {
            report.fail(
                format!("n={n}"),
                relation(n.is_power_of_two()),
                relation(scaled == bound),
            );
        }
    }
    Ok(report.finish())
}

/// Fast against term-by-term weight sums for every `n` in `[0, n_max]`.
pub fn verify_weight_sums(n_max: u64, budget: u64) -> Result<VerificationReport> {
    let mut report = VerificationReport::start("weight-sum-oracle");
    let points: Vec<u64> = (0..=n_max).collect();
    let naive = naive_prefix_sums(&points, budget)?;
    for (n, expected) in points.into_iter().zip(naive) {
        report.case(
            format!("S({n})"),
            &expected,
            &weight_sum_fast(&BigUint::from(n)),
        );
    }
    Ok(report.finish())
}

/// Sequences a b-file can be checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Series {
    A130665,
    TotalCells,
}

impl Series {
    pub fn name(self) -> &'static str {
        match self {
            Series::A130665 => "a130665",
            Series::TotalCells => "total_cells",
        }
    }

    fn eval(self, arg: &Index) -> Result<CellCount> {
        match self {
            Series::A130665 => series_a130665(arg),
            Series::TotalCells => total_cells(arg),
        }
    }
}

impl FromStr for Series {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "a130665" | "A130665" => Ok(Series::A130665),
            "total_cells" | "total" => Ok(Series::TotalCells),
            other => Err(format!("unknown series `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BFileEntry {
    pub index: Index,
    pub value: CellCount,
}

/// Parses `index value` lines. Blank lines and `#` comments are skipped;
/// indices must be strictly increasing.
pub fn parse_bfile(text: &str, path: &Path) -> Result<Vec<BFileEntry>> {
    let parse_error = |line: usize, message: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut entries: Vec<BFileEntry> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let (Some(index), Some(value), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(parse_error(
                line_no,
                format!("expected `index value`, got `{line}`"),
            ));
        };
        let index = BigUint::from_str(index)
            .map_err(|_| parse_error(line_no, format!("bad index `{index}`")))?;
        let value = BigUint::from_str(value)
            .map_err(|_| parse_error(line_no, format!("bad value `{value}`")))?;
        if let Some(prev) = entries.last() {
            if index <= prev.index {
                return Err(parse_error(
                    line_no,
                    format!("index {index} does not follow {}", prev.index),
                ));
            }
        }
        entries.push(BFileEntry { index, value });
    }
    Ok(entries)
}

/// Compares a local b-file with `series`. Entry `index` is checked against
/// `series(index + offset)`.
pub fn crosscheck_bfile(
    path: impl AsRef<Path>,
    series: Series,
    offset: i64,
) -> Result<VerificationReport> {
    let path: PathBuf = path.as_ref().to_path_buf();
    let text = fs::read_to_string(&path).map_err(|source| Error::Io {
        path: path.clone(),
        source,
    })?;
    let entries = parse_bfile(&text, &path)?;
    let mut report = VerificationReport::start(&format!("bfile:{}", series.name()));
    for entry in entries {
        let input = format!("{}[{}]", series.name(), entry.index);
        let arg = BigInt::from(entry.index.clone()) + offset;
        let Some(arg) = arg.to_biguint() else {
            report.report.cases += 1;
            report.fail(&input, &entry.value, "negative argument");
            continue;
        };
        report.report.cases += 1;
        match series.eval(&arg) {
            Ok(value) if value == entry.value => {}
            Ok(value) => report.fail(&input, &entry.value, &value),
            Err(e) => report.fail(&input, &entry.value, e),
        }
    }
    Ok(report.finish())
}

/// `U_m(k = 0) = (4 a_m - 1) / 3`.
pub fn base_row_total(m: &Index) -> Result<CellCount> {
    let a_m = series_a130665(m)?;
    Ok((a_m * 4u8 - BigUint::one()) / 3u8)
}
