//! The `opcheb` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::dd::DoubleDouble;
use crate::error::Error;
use crate::example::{
    beta_values, example_p_explicit, example_p_variant, example_tsequence, ExampleConfig,
};
use crate::mapping::{derive_q, r_coefficient, s_coefficient};
use crate::poly::{Degree, ExactPoly};
use crate::real::Real;
use crate::recurrence::{generate_p, generate_q};
use crate::scalar::{format_rational, parse_rational, rat, rat_int, rational_to_f64, Rational};
use crate::suite::{
    example_mu_p, gram_stats, mass_consistency, recovery_stats, verify_example, GramStats,
    RecoveryStats, VerifyOutcome,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IDENTITY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "opcheb",
    version,
    about = "Orthogonal polynomials from Chebyshev polynomial mappings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Table of t_n, optionally with the derived r_n and s_n.
    Coeffs {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 8)]
        count: usize,
        /// Add the r_n, s_n columns of the mapped recurrence.
        #[arg(long)]
        derived: bool,
    },
    /// Exact coefficients of P_0 .. P_{count-1}.
    Polys {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 8)]
        count: usize,
        #[arg(long, value_enum, default_value_t = Family::P)]
        family: Family,
    },
    /// Runs the exact identity suite, by default over m in {2,3,4} and
    /// p in {0,1,2,5/2}.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 3)]
        blocks: usize,
    },
    /// Masses, support and Gram/Stieltjes diagnostics of the mapped measure.
    Measure {
        #[command(flatten)]
        common: Common,
        /// Size of the Gram matrix to check.
        #[arg(long)]
        gram: Option<usize>,
        /// Number of recurrence coefficients to recover.
        #[arg(long)]
        recover: Option<usize>,
        /// Quadrature tolerance.
        #[arg(long)]
        tol: Option<f64>,
        /// Gauss-Jacobi nodes per piece of the support.
        #[arg(long, default_value_t = 80)]
        nodes: usize,
    },
    /// P_{2mn+m+j+1} from the explicit Jacobi representation.
    Example {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        n: usize,
        /// Offset in 0..2m; all offsets when omitted.
        #[arg(long)]
        j: Option<usize>,
        /// Use the alternative coefficient form, checked against the recurrence.
        #[arg(long)]
        variant: bool,
    },
}

#[derive(Debug, Args)]
struct Common {
    #[arg(long)]
    m: Option<usize>,
    /// Exponent p as "num/den", an integer or a decimal.
    #[arg(long, allow_hyphen_values = true)]
    p: Option<String>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    P,
    Q,
    Both,
}

/// A failed run: exit status plus message for standard error.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: exit_code(&e),
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

/// Maps library errors to the documented exit statuses.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotDivisible { .. } | Error::DivisionByZero => EXIT_IDENTITY,
        Error::InvalidArgument(_)
        | Error::InvalidSequence(_)
        | Error::UndefinedCoefficient { .. }
        | Error::DegenerateJacobi { .. } => EXIT_USAGE,
        Error::Divergent(_)
        | Error::QuadratureNotConverged { .. }
        | Error::NegativeMass { .. }
        | Error::StieltjesBreakdown { .. }
        | Error::EigenNoConvergence => EXIT_NUMERICAL,
    }
}

/// Floating precision requested through `OPCHEB_PRECISION`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precision {
    Double,
    DoubleDouble,
}

pub fn precision_from_env(value: Option<&str>) -> Result<Precision, String> {
    let Some(text) = value.map(str::trim).filter(|s| !s.is_empty()) else {
        return Ok(Precision::Double);
    };
    let digits: u32 = text.parse().map_err(|_| {
        format!("OPCHEB_PRECISION must be a number of decimal digits, got '{text}'")
    })?;
    match digits {
        0..=15 => Ok(Precision::Double),
        16..=31 => Ok(Precision::DoubleDouble),
        _ => Err(format!(
            "OPCHEB_PRECISION = {digits} exceeds the supported 31 digits"
        )),
    }
}

/// Runs the command line and returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command) -> Result<(), Failure> {
    match command {
        Command::Coeffs {
            common,
            count,
            derived,
        } => cmd_coeffs(&common, count, derived),
        Command::Polys {
            common,
            count,
            family,
        } => cmd_polys(&common, count, family),
        Command::Verify { common, blocks } => cmd_verify(&common, blocks),
        Command::Measure {
            common,
            gram,
            recover,
            tol,
            nodes,
        } => {
            let precision = precision_from_env(std::env::var("OPCHEB_PRECISION").ok().as_deref())
                .map_err(usage)?;
            match precision {
                Precision::Double => cmd_measure::<f64>(
                    &common,
                    gram,
                    recover,
                    tol.unwrap_or(1e-12),
                    nodes,
                    "double",
                ),
                Precision::DoubleDouble => cmd_measure::<DoubleDouble>(
                    &common,
                    gram,
                    recover,
                    tol.unwrap_or(1e-24),
                    nodes,
                    "double-double",
                ),
            }
        }
        Command::Example {
            common,
            n,
            j,
            variant,
        } => cmd_example(&common, n, j, variant),
    }
}

fn config(common: &Common) -> Result<ExampleConfig, Failure> {
    let m = common.m.ok_or_else(|| usage("--m is required"))?;
    let p = common
        .p
        .as_deref()
        .ok_or_else(|| usage("--p is required"))?;
    Ok(ExampleConfig::new(m, parse_rational(p)?)?)
}

fn emit(common: &Common, text: &str) -> Result<(), Failure> {
    let io_err = |e: std::io::Error| usage(format!("cannot write output: {e}"));
    match &common.out {
        Some(path) => std::fs::write(path, text).map_err(io_err),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(io_err)
        }
    }
}

fn csv_text(header: &[&str], rows: &[Vec<String>]) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| usage(format!("csv output failed: {e}"));
    w.write_record(header).map_err(err)?;
    for r in rows {
        w.write_record(r).map_err(err)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| usage(format!("csv output failed: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn json_text<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}

fn cmd_coeffs(common: &Common, count: usize, derived: bool) -> Result<(), Failure> {
    let cfg = config(common)?;
    if count == 0 {
        return Err(usage("--count must be at least 1"));
    }
    let ts = example_tsequence(&cfg)?;
    #[derive(Serialize)]
    struct Row {
        n: usize,
        t: String,
        t_decimal: f64,
        #[serde(skip_serializing_if = "Option::is_none")]
        r: Option<String>,
        #[serde(skip_serializing_if = "Option::is_none")]
        s: Option<String>,
    }
    let rows: Vec<Row> = (0..count)
        .map(|n| {
            let t = ts.t(n);
            Row {
                n,
                t: format_rational(&t),
                t_decimal: rational_to_f64(&t),
                r: derived.then(|| format_rational(&r_coefficient(&ts, n))),
                s: derived.then(|| format_rational(&s_coefficient(&ts, n))),
            }
        })
        .collect();
    let text = match common.format.unwrap_or(Format::Csv) {
        Format::Json => json_text(&rows),
        Format::Csv => {
            let mut header = vec!["n", "t", "t_decimal"];
            if derived {
                header.extend(["r", "s"]);
            }
            let table: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    let mut v = vec![r.n.to_string(), r.t.clone(), r.t_decimal.to_string()];
                    v.extend(r.r.clone());
                    v.extend(r.s.clone());
                    v
                })
                .collect();
            csv_text(&header, &table)?
        }
    };
    emit(common, &text)
}

#[derive(Debug, Serialize)]
struct PolyRow {
    family: &'static str,
    index: usize,
    degree: Option<usize>,
    coeffs: Vec<String>,
}

impl PolyRow {
    fn new(family: &'static str, index: usize, p: &ExactPoly) -> Self {
        PolyRow {
            family,
            index,
            degree: match p.degree() {
                Degree::Finite(d) => Some(d),
                Degree::MinusInfinity => None,
            },
            coeffs: p.coeff_strings(),
        }
    }
}

fn poly_output(common: &Common, rows: &[PolyRow]) -> Result<(), Failure> {
    let text = match common.format.unwrap_or(Format::Csv) {
        Format::Json => json_text(&rows),
        Format::Csv => {
            let table: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.family.to_string(),
                        r.index.to_string(),
                        r.degree
                            .map_or_else(|| "-inf".to_string(), |d| d.to_string()),
                        r.coeffs.join(";"),
                    ]
                })
                .collect();
            csv_text(&["family", "index", "degree", "coeffs"], &table)?
        }
    };
    emit(common, &text)
}

fn cmd_polys(common: &Common, count: usize, family: Family) -> Result<(), Failure> {
    let cfg = config(common)?;
    if count == 0 {
        return Err(usage("--count must be at least 1"));
    }
    let ts = example_tsequence(&cfg)?;
    let mut rows = Vec::new();
    if family != Family::Q {
        let p = generate_p(&ts, count)?;
        rows.extend(
            p.iter()
                .enumerate()
                .map(|(i, poly)| PolyRow::new("P", i, poly)),
        );
    }
    if family != Family::P {
        let q = generate_q(&derive_q(&ts), count)?;
        rows.extend(
            q.iter()
                .enumerate()
                .map(|(i, poly)| PolyRow::new("Q", i, poly)),
        );
    }
    poly_output(common, &rows)
}

fn cmd_example(common: &Common, n: usize, j: Option<usize>, variant: bool) -> Result<(), Failure> {
    let cfg = config(common)?;
    let m = cfg.m();
    let offsets: Vec<usize> = match j {
        Some(j) if j >= 2 * m => return Err(usage(format!("--j must lie in 0..{}", 2 * m))),
        Some(j) => vec![j],
        None => (0..2 * m).collect(),
    };
    let mut rows = Vec::new();
    let mut mismatch = Vec::new();
    let reference = if variant {
        generate_p(&example_tsequence(&cfg)?, 2 * m * (n + 1) + m + 1)?
    } else {
        Vec::new()
    };
    for j in offsets {
        let idx = 2 * m * n + m + j + 1;
        let poly = if variant {
            match example_p_variant(&cfg, n, j) {
                Ok(poly) => poly,
                Err(e) => {
                    mismatch.push(format!("P_{idx}: {e}"));
                    continue;
                }
            }
        } else {
            example_p_explicit(&cfg, n, j)?
        };
        if variant && poly != reference[idx] {
            mismatch.push(format!(
                "P_{idx}: differs from the recurrence value {}",
                reference[idx]
            ));
        }
        rows.push(PolyRow::new("P", idx, &poly));
    }
    poly_output(common, &rows)?;
    if mismatch.is_empty() {
        Ok(())
    } else {
        Err(Failure {
            code: EXIT_IDENTITY,
            message: format!("alternative coefficients fail: {}", mismatch.join("; ")),
        })
    }
}

#[derive(Debug, Serialize)]
struct VerifyReport {
    passed: bool,
    cases: Vec<VerifyOutcome>,
}

fn cmd_verify(common: &Common, blocks: usize) -> Result<(), Failure> {
    if blocks == 0 {
        return Err(usage("--blocks must be at least 1"));
    }
    let ms: Vec<usize> = common.m.map_or_else(|| vec![2, 3, 4], |m| vec![m]);
    let ps: Vec<Rational> = match common.p.as_deref() {
        Some(text) => vec![parse_rational(text)?],
        None => vec![rat_int(0), rat_int(1), rat_int(2), rat(5, 2)],
    };
    let mut configs = Vec::new();
    for &m in &ms {
        for p in &ps {
            configs.push(ExampleConfig::new(m, p.clone())?);
        }
    }
    let outcomes: Vec<VerifyOutcome> = configs
        .par_iter()
        .map(|cfg| verify_example(cfg, blocks))
        .collect::<Result<_, _>>()?;
    let report = VerifyReport {
        passed: outcomes.iter().all(|o| o.passed),
        cases: outcomes,
    };
    let text = match common.format.unwrap_or(Format::Json) {
        Format::Json => json_text(&report),
        Format::Csv => {
            let mut table = Vec::new();
            for o in &report.cases {
                for c in &o.checks {
                    table.push(vec![
                        o.m.to_string(),
                        o.p.clone(),
                        c.name.clone(),
                        c.passed.to_string(),
                        c.cases.to_string(),
                        c.failures.len().to_string(),
                    ]);
                }
            }
            csv_text(&["m", "p", "check", "passed", "cases", "failures"], &table)?
        }
    };
    emit(common, &text)?;
    match report
        .cases
        .iter()
        .find_map(|o| o.first_failure().map(|f| (o, f)))
    {
        None => Ok(()),
        Some((o, (check, failure))) => Err(Failure {
            code: EXIT_IDENTITY,
            message: format!(
                "check {} failed for m={} p={} at {}: {}",
                check.name, o.m, o.p, failure.case, failure.detail
            ),
        }),
    }
}

#[derive(Debug, Serialize)]
struct MeasureReport {
    m: usize,
    p: String,
    precision: &'static str,
    mu_q_total: f64,
    mu_q_closed: f64,
    c: f64,
    c_closed: f64,
    mass: f64,
    /// largest |M_i - M| over the zeros of T_m
    mass_spread: f64,
    support: Vec<(f64, f64)>,
    point_masses: Vec<(f64, f64)>,
    gram: Option<GramStats>,
    recovery: Option<RecoveryStats>,
}

fn cmd_measure<R: Real>(
    common: &Common,
    gram: Option<usize>,
    recover: Option<usize>,
    tol: f64,
    nodes: usize,
    precision: &'static str,
) -> Result<(), Failure> {
    let cfg = config(common)?;
    cfg.require_measure()?;
    if !(tol > 0.0) {
        return Err(usage("--tol must be positive"));
    }
    if nodes < 2 {
        return Err(usage("--nodes must be at least 2"));
    }
    let tol = crate::real::real::<R>(tol);
    let ts = example_tsequence(&cfg)?;
    let values = beta_values::<R>(&cfg, tol)?;
    let mapped = example_mu_p::<R>(&cfg, tol)?;
    let spread = mass_consistency(&ts, &mapped)?;
    let gram = gram
        .map(|size| gram_stats(&mapped.measure, &ts, size.max(1), nodes))
        .transpose()?;
    let recovery = recover
        .map(|count| recovery_stats(&mapped.measure, &ts, count.max(1), nodes))
        .transpose()?;
    let pair = |(a, b): (R, R)| (a.to_f64(), b.to_f64());
    let report = MeasureReport {
        m: cfg.m(),
        p: format_rational(cfg.p()),
        precision,
        mu_q_total: mapped.mu_q_total.to_f64(),
        mu_q_closed: values.mu_q_closed.to_f64(),
        c: mapped.c.to_f64(),
        c_closed: values.c_closed.to_f64(),
        mass: mapped.mass.to_f64(),
        mass_spread: spread,
        support: mapped.measure.support().into_iter().map(pair).collect(),
        point_masses: mapped
            .measure
            .point_masses
            .iter()
            .map(|pm| (pm.location.to_f64(), pm.mass.to_f64()))
            .collect(),
        gram,
        recovery,
    };
    let text = match common.format.unwrap_or(Format::Json) {
        Format::Json => json_text(&report),
        Format::Csv => {
            let mut table = vec![
                vec!["mu_q_total".into(), report.mu_q_total.to_string()],
                vec!["mu_q_closed".into(), report.mu_q_closed.to_string()],
                vec!["c".into(), report.c.to_string()],
                vec!["c_closed".into(), report.c_closed.to_string()],
                vec!["mass".into(), report.mass.to_string()],
                vec!["mass_spread".into(), report.mass_spread.to_string()],
            ];
            for (i, (a, b)) in report.support.iter().enumerate() {
                table.push(vec![format!("support_{i}"), format!("{a};{b}")]);
            }
            if let Some(g) = &report.gram {
                table.push(vec!["gram_max_offdiag".into(), g.max_offdiag.to_string()]);
                table.push(vec![
                    "gram_max_norm_error".into(),
                    g.max_norm_error.to_string(),
                ]);
            }
            if let Some(r) = &report.recovery {
                table.push(vec![
                    "recover_max_t_error".into(),
                    r.max_t_error.to_string(),
                ]);
                table.push(vec!["recover_max_r".into(), r.max_r.to_string()]);
                for (i, s) in r.recovered.iter().enumerate() {
                    table.push(vec![format!("s_{i}"), s.to_string()]);
                }
            }
            csv_text(&["quantity", "value"], &table)?
        }
    };
    emit(common, &text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precision_parsing() {
        assert_eq!(precision_from_env(None), Ok(Precision::Double));
        assert_eq!(precision_from_env(Some("15")), Ok(Precision::Double));
        assert_eq!(precision_from_env(Some("30")), Ok(Precision::DoubleDouble));
        assert!(precision_from_env(Some("40")).is_err());
        assert!(precision_from_env(Some("many")).is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::InvalidArgument("x".into())), EXIT_USAGE);
        assert_eq!(
            exit_code(&Error::NotDivisible {
                remainder: "1".into()
            }),
            EXIT_IDENTITY
        );
        assert_eq!(exit_code(&Error::EigenNoConvergence), EXIT_NUMERICAL);
    }

    #[test]
    fn parse_errors_are_usage() {
        assert_eq!(
            run(["opcheb", "coeffs", "--m", "2", "--p", "x"]),
            EXIT_USAGE
        );
        assert_eq!(
            run(["opcheb", "coeffs", "--m", "1", "--p", "1"]),
            EXIT_USAGE
        );
        assert_eq!(run(["opcheb", "nonsense"]), EXIT_USAGE);
    }
}
