use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Value};

use uwca::automaton::{run_to_with, Stepper};
use uwca::enumeration::{
    cells_born, quadratic_total, ratio_scan, total_cells, RatioScanReport, RatioValue, LIMINF_REF,
};
use uwca::verification::{
    crosscheck_bfile, reproduce_table1, table_rows, verify_factorization, verify_sim_vs_formula,
    verify_upper_bound, verify_weight_sums, Series, Table1Row, VerificationReport,
};
use uwca::{Budgets, Error};

mod decimal;

const DIGITS: u32 = 10;

/// Exact counts and simulation of the Ulam-Warburton cellular automaton.
///
/// Budgets: UWCA_NAIVE_BUDGET (default 16777216), UWCA_SIM_BUDGET (default
/// 1024), UWCA_SCAN_BUDGET (default 24).
#[derive(Parser)]
#[command(name = "uwca", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cells born at generation N.
    Born {
        #[arg(value_parser = parse_big)]
        n: BigUint,
    },
    /// Total ON cells through generation N.
    Total {
        #[arg(value_parser = parse_big)]
        n: BigUint,
    },
    /// n = m*2^k and its total from the quadratic family.
    Quad {
        #[arg(value_parser = parse_big)]
        m: BigUint,
        k: u64,
    },
    /// Totals at n = m*2^k for a list of multipliers.
    Table {
        #[arg(long = "m", value_delimiter = ',', default_values_t = [1u64, 3, 5, 7])]
        multipliers: Vec<u64>,
        #[arg(long, default_value_t = 8)]
        k_max: u64,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    /// Simulate the automaton on a sparse grid.
    Simulate {
        n: u64,
        #[arg(long, value_enum)]
        render: Option<RenderFormat>,
        /// Write the render here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Use the whole-pattern stepper instead of the frontier stepper.
        #[arg(long)]
        naive: bool,
    },
    /// Run every cross-check; exit 1 if any fails.
    Verify {
        #[arg(long, default_value_t = 256)]
        max_n: u64,
        #[arg(long, default_value_t = 64)]
        m_max: u64,
        #[arg(long, default_value_t = 16)]
        k_max: u64,
        /// Upper end of the sharp-bound sweep.
        #[arg(long, default_value_t = 4096)]
        bound_max: u64,
        /// Upper end of the fast-vs-naive weight-sum check.
        #[arg(long, default_value_t = 1 << 16)]
        naive_max: u64,
        #[arg(long)]
        bfile: Option<PathBuf>,
        #[arg(long, default_value = "a130665", requires = "bfile")]
        series: Series,
        /// b-file index i is checked against series(i + offset).
        #[arg(
            long,
            default_value_t = 0,
            allow_negative_numbers = true,
            requires = "bfile"
        )]
        offset: i64,
        #[arg(long)]
        json: bool,
    },
    /// Extremes of U(n)/n^2 over each block [2^k, 2^(k+1)).
    Scan {
        #[arg(default_value_t = 16)]
        k_max: u32,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Pretty,
    Csv,
    Tsv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RenderFormat {
    Text,
    Pbm,
}

fn parse_big(s: &str) -> Result<BigUint, String> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("`{s}` is not a non-negative decimal integer"));
    }
    BigUint::from_str(s).map_err(|e| e.to_string())
}

/// Failure of a command, mapped onto the exit-code contract.
enum Failure {
    Check(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } | Error::Domain(_) => Failure::Usage(e.to_string()),
            _ => Failure::Check(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Check(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budgets = Budgets::from_env();
    match run(cli.command, &budgets) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            if !msg.is_empty() {
                eprintln!("uwca: {msg}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("uwca: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command, budgets: &Budgets) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    match command {
        Command::Born { n } => writeln!(out, "{}", cells_born(&n))?,
        Command::Total { n } => writeln!(out, "{}", total_cells(&n)?)?,
        Command::Quad { m, k } => {
            let total = quadratic_total(&m, k)?;
            writeln!(out, "{} {}", &m << k, total)?;
        }
        Command::Table {
            multipliers,
            k_max,
            format,
        } => {
            if multipliers.is_empty() || multipliers.contains(&0) {
                return Err(Failure::Usage("multipliers must be >= 1".into()));
            }
            let rows = table_rows(&multipliers, k_max)?;
            out.write_all(render_table(&multipliers, &rows, format).as_bytes())?;
        }
        Command::Simulate {
            n,
            render,
            out: path,
            naive,
        } => simulate(&mut out, n, render, path, naive, budgets)?,
        Command::Verify {
            max_n,
            m_max,
            k_max,
            bound_max,
            naive_max,
            bfile,
            series,
            offset,
            json,
        } => {
            let mut reports = vec![
                reproduce_table1(8)?.1,
                verify_sim_vs_formula(max_n, budgets.generations)?,
                verify_factorization(m_max, k_max)?,
                verify_upper_bound(bound_max)?,
                verify_weight_sums(naive_max, budgets.naive_terms)?,
            ];
            if let Some(path) = bfile {
                reports.push(crosscheck_bfile(path, series, offset)?);
            }
            let all_passed = reports.iter().all(VerificationReport::passed);
            if json {
                let body = json!({ "passed": all_passed, "checks": reports });
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&body).expect("serializable")
                )?;
            } else {
                for report in &reports {
                    write_report(&mut out, report)?;
                }
            }
            if !all_passed {
                return Err(Failure::Check(String::new()));
            }
        }
        Command::Scan { k_max, json } => {
            let report = ratio_scan(k_max, budgets.scan_k)?;
            if json {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&scan_json(&report)).expect("serializable")
                )?;
            } else {
                write_scan(&mut out, &report)?;
            }
        }
    }
    Ok(())
}

fn render_table(multipliers: &[u64], rows: &[Table1Row], format: TableFormat) -> String {
    let mut header = vec!["k".to_owned()];
    for m in multipliers {
        header.push(format!("n_{m}"));
        header.push(format!("U_{m}"));
    }
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|row| {
            let mut line = vec![row.k.to_string()];
            for entry in &row.entries {
                line.push(entry.n.to_string());
                line.push(entry.total.to_string());
            }
            line
        })
        .collect();
    let joined = |sep: &str| {
        let mut s = String::new();
        for line in std::iter::once(&header).chain(&cells) {
            s.push_str(&line.join(sep));
            s.push('\n');
        }
        s
    };
    match format {
        TableFormat::Csv => joined(","),
        TableFormat::Tsv => joined("\t"),
        TableFormat::Pretty => {
            let widths: Vec<usize> = (0..header.len())
                .map(|i| {
                    std::iter::once(&header)
                        .chain(&cells)
                        .map(|l| l[i].len())
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let mut s = String::new();
            for line in std::iter::once(&header).chain(&cells) {
                let padded: Vec<String> = line
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:>w$}"))
                    .collect();
                s.push_str(&padded.join("  "));
                s.push('\n');
            }
            s
        }
        TableFormat::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|row| {
                    let entries: Vec<Value> = row
                        .entries
                        .iter()
                        .map(
                            |e| json!({ "m": e.m, "n": e.n.to_string(), "U": e.total.to_string() }),
                        )
                        .collect();
                    json!({ "k": row.k, "entries": entries })
                })
                .collect();
            let mut s = serde_json::to_string_pretty(&Value::Array(rows)).expect("serializable");
            s.push('\n');
            s
        }
    }
}

fn simulate(
    out: &mut impl Write,
    n: u64,
    render: Option<RenderFormat>,
    path: Option<PathBuf>,
    naive: bool,
    budgets: &Budgets,
) -> Result<(), Failure> {
    let stepper = if naive {
        Stepper::Naive
    } else {
        Stepper::Frontier
    };
    let state = run_to_with(n, budgets.generations, stepper)?;
    let expected = total_cells(&BigUint::from(n))?;
    let summary = format!("generation={} on={}", state.generation(), state.on_count());

    let image = match render {
        None => None,
        Some(_) if n == 0 => {
            return Err(Failure::Usage("nothing to render at generation 0".into()))
        }
        Some(RenderFormat::Text) => Some(state.render_text()?.into_bytes()),
        Some(RenderFormat::Pbm) => Some(state.render_pbm()?),
    };
    match (image, path) {
        (Some(bytes), Some(path)) => {
            fs::write(&path, bytes)
                .map_err(|e| Failure::Check(format!("{}: {e}", path.display())))?;
            writeln!(out, "{summary}")?;
        }
        // The render owns standard output; the summary goes to stderr.
        (Some(bytes), None) => {
            out.write_all(&bytes)?;
            eprintln!("{summary}");
        }
        (None, _) => writeln!(out, "{summary}")?,
    }

    if BigUint::from(state.on_count()) != expected {
        return Err(Failure::Check(format!(
            "simulation has {} ON cells but U({n}) = {expected}",
            state.on_count()
        )));
    }
    Ok(())
}

fn write_report(out: &mut impl Write, report: &VerificationReport) -> io::Result<()> {
    writeln!(
        out,
        "{} {}: {} cases, {} failures ({} ms)",
        if report.passed() { "PASS" } else { "FAIL" },
        report.check,
        report.cases,
        report.failure_count,
        report.elapsed_ms
    )?;
    for f in &report.failures {
        writeln!(
            out,
            "    {}: expected {}, got {}",
            f.input, f.expected, f.actual
        )?;
    }
    Ok(())
}

fn to_decimal(r: &RatioValue) -> String {
    decimal::significant(&r.numerator(), &r.denominator(), DIGITS)
}

fn write_scan(out: &mut impl Write, report: &RatioScanReport) -> io::Result<()> {
    for b in &report.blocks {
        writeln!(
            out,
            "{} {} {} {} {} {} {}",
            b.k,
            b.min,
            to_decimal(&b.min),
            b.argmin,
            b.max,
            to_decimal(&b.max),
            b.argmax
        )?;
    }
    let Some(last) = report.blocks.last() else {
        return Ok(());
    };
    let min_gap = last.min.as_rational() - report.liminf_ref.as_rational();
    let max_gap = report.limsup_ref.as_rational() - last.max.as_rational();
    writeln!(
        out,
        "# block {} min {} vs liminf {}: difference {}",
        last.k,
        to_decimal(&last.min),
        LIMINF_REF,
        decimal::significant_signed(min_gap.numer(), min_gap.denom(), DIGITS)
    )?;
    writeln!(
        out,
        "# block {} max {} vs limsup {}: 4/3 - max = {}/{}",
        last.k,
        last.max,
        report.limsup_ref,
        max_gap.numer(),
        max_gap.denom()
    )
}

fn scan_json(report: &RatioScanReport) -> Value {
    let blocks: Vec<Value> = report
        .blocks
        .iter()
        .map(|b| {
            json!({
                "k": b.k,
                "min": b.min.to_string(),
                "min_decimal": to_decimal(&b.min),
                "argmin": b.argmin,
                "max": b.max.to_string(),
                "max_decimal": to_decimal(&b.max),
                "argmax": b.argmax,
            })
        })
        .collect();
    json!({
        "blocks": blocks,
        "liminf_ref": LIMINF_REF,
        "limsup_ref": report.limsup_ref.to_string(),
    })
}
