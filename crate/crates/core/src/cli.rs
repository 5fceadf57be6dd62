//! Command-line front end.
//!
//! Every command prints one report to stdout in JSON (the default), CSV or
//! plain text. JSON reports are a single line of the shape
//! `{"command":..,"nu":..,"result":..,"version":..}` with exact values written
//! as `"p/q"` strings. Parse errors exit with status 1, domain errors with
//! status 2 and a message naming the error variant.

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use rug::{Float, Integer, Rational};
use serde_json::{json, Value};

use crate::bessel_eval::find_real_zeros;
use crate::classifier::{classify_with_window, find_nu_k, lambda_sequence, Order, ZeroClassification};
use crate::error::{Error, Result};
use crate::moments::moment_table;
use crate::opoly::{build_p_recurrence, build_q};
use crate::scalar_poly::RationalPoly;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "besselprime", version, about = "Zeros of the Bessel derivative: moments, orthogonal polynomials, Hankel determinants and complex-zero counts")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Moments mu_0 ..= mu_N (Rayleigh sums sigma'(n+2)).
    Moments {
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
        #[arg(long, default_value_t = 6)]
        max_order: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// The polynomials q_n and q*_n for n <= N.
    Qpoly {
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// The monic orthogonal polynomials p_n and their recurrence coefficients.
    Ppoly {
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Hankel determinants Delta_n and the signs of Lambda_n.
    Hankel {
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
        #[arg(long, default_value_t = 6)]
        n: usize,
        /// Also compute each determinant directly and fail on any mismatch.
        #[arg(long)]
        check: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Number of complex zeros of J'_nu.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
        #[arg(long, default_value_t = 10)]
        window: usize,
        #[arg(long, default_value_t = 256)]
        prec_bits: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// The double-zero order nu_k in (-k-1/2, -k).
    Nuk {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "1e-30")]
        tol: String,
        #[arg(long, default_value_t = 256)]
        prec_bits: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// The first positive zeros of J'_nu for nu > 0.
    Zeros {
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
        #[arg(long, default_value_t = 5)]
        count: usize,
        #[arg(long, default_value = "1e-20")]
        tol: String,
        #[arg(long, default_value_t = 256)]
        prec_bits: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Classification and first three zeros over a grid of orders.
    Scan {
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
        #[arg(long)]
        step: String,
        #[arg(long, default_value_t = 10)]
        window: usize,
        #[arg(long, default_value_t = 256)]
        prec_bits: u32,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

/// Exit status and captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    Outcome { status: 0, stdout: text, stderr: String::new() }
                }
                _ => Outcome { status: 1, stdout: String::new(), stderr: text },
            };
        }
    };
    match execute(&cli.command) {
        Ok(stdout) => Outcome { status: 0, stdout, stderr: String::new() },
        Err(Failure::Parse(msg)) => Outcome { status: 1, stdout: String::new(), stderr: format!("error: {msg}\n") },
        Err(Failure::Domain(e)) => Outcome { status: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

enum Failure {
    Parse(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Exact value of `"p/q"`, an integer, or a decimal such as `-1.25e-3`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.contains('/') {
        let (a, b) = s.split_once('/')?;
        let num: Integer = a.trim().parse().ok()?;
        let den: Integer = b.trim().parse().ok()?;
        if den == 0 {
            return None;
        }
        return Some(Rational::from((num, den)));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all: Integer = format!("{int_part}{frac_part}").parse().ok()?;
    let scale = exp - frac_part.len() as i32;
    let mut r = Rational::from(all);
    let power = Integer::from(Integer::u_pow_u(10, scale.unsigned_abs()));
    if scale >= 0 {
        r *= power;
    } else {
        r /= power;
    }
    Some(if negative { -r } else { r })
}

fn is_decimal(s: &str) -> bool {
    !s.contains('/') && s.contains(['.', 'e', 'E'])
}

fn exact_arg(name: &str, s: &str) -> CliResult<Rational> {
    parse_rational(s).ok_or_else(|| Failure::Parse(format!("--{name}: cannot parse {s:?} as a rational or decimal number")))
}

/// `"p/q"` and integers are exact; decimals become floats at `prec` bits.
fn order_arg(s: &str, prec: u32) -> CliResult<Order> {
    let r = exact_arg("nu", s)?;
    if is_decimal(s) {
        let f = Float::parse(s.trim()).map_err(|e| Failure::Parse(format!("--nu: {e}")))?;
        Ok(Order::Approx(Float::with_val(prec, f)))
    } else {
        Ok(Order::Exact(r))
    }
}

fn float_arg(name: &str, s: &str, prec: u32) -> CliResult<Float> {
    let f = Float::parse(s.trim()).map_err(|e| Failure::Parse(format!("--{name}: {e}")))?;
    Ok(Float::with_val(prec, f))
}

fn check_prec(prec: u32) -> CliResult<()> {
    if !(64..=1 << 20).contains(&prec) {
        return Err(Failure::Parse(format!("--prec-bits must lie in [64, 1048576], got {prec}")));
    }
    Ok(())
}

/// Significant decimal digits that resolve `tol`.
fn digits_for(tol: &Float) -> usize {
    let d = -tol.to_f64().log10();
    if d.is_finite() && d > 0.0 {
        d.ceil() as usize + 3
    } else {
        10
    }
}

/// `digits` significant digits, positional for moderate magnitudes.
fn float_str(f: &Float, digits: usize) -> String {
    let s = f.to_string_radix(10, Some(digits.max(2)));
    let Some((mantissa, exp)) = s.split_once('e') else {
        return s;
    };
    let Ok(exp) = exp.parse::<i64>() else {
        return s;
    };
    if !(-6..=0).contains(&exp) {
        return s;
    }
    let (sign, m) = mantissa.strip_prefix('-').map_or(("", mantissa), |m| ("-", m));
    let body: String = m.chars().filter(|c| *c != '.').collect();
    let int_digits = m.find('.').unwrap_or(m.len()) as i64 + exp;
    format!("{sign}0.{}{body}", "0".repeat((-int_digits) as usize))
}

fn poly_json(p: &RationalPoly) -> Value {
    Value::Array(p.coeffs().iter().map(|c| Value::String(c.to_string())).collect())
}

fn envelope(command: &str, nu: Value, result: Value) -> String {
    let mut s = json!({ "command": command, "nu": nu, "result": result, "version": VERSION }).to_string();
    s.push('\n');
    s
}

fn order_json(nu: &Order, text: &str) -> Value {
    match nu {
        Order::Exact(r) => Value::String(r.to_string()),
        Order::Approx(_) => Value::String(text.trim().to_string()),
    }
}

fn classification_json(c: &ZeroClassification) -> Value {
    json!({
        "case": c.case.label(),
        "k": c.k,
        "complex_count": c.complex_count,
        "imaginary_pair": c.imaginary_pair,
        "counted_negatives": c.counted_negatives,
    })
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn execute(cmd: &Command) -> CliResult<String> {
    match cmd {
        Command::Moments { nu, max_order, format } => {
            let r = exact_arg("nu", nu)?;
            let t = moment_table(&r, *max_order)?;
            Ok(match format {
                Format::Json => {
                    let mu: Vec<_> = t.moments.iter().map(|m| Value::String(m.to_string())).collect();
                    envelope("moments", Value::String(r.to_string()), json!({ "moments": mu }))
                }
                Format::Csv => {
                    let mut s = String::from("n,mu\n");
                    for (n, m) in t.moments.iter().enumerate() {
                        writeln!(s, "{n},{m}").unwrap();
                    }
                    s
                }
                Format::Text => t.moments.iter().enumerate().map(|(n, m)| format!("mu_{n} = {m}\n")).collect(),
            })
        }
        Command::Qpoly { nu, n, format } => {
            let r = exact_arg("nu", nu)?;
            let fam = build_q(&r, *n)?;
            Ok(match format {
                Format::Json => {
                    let q: Vec<_> = fam.q.iter().map(poly_json).collect();
                    let qs: Vec<_> = fam.q_star.iter().map(poly_json).collect();
                    envelope("qpoly", Value::String(r.to_string()), json!({ "q": q, "q_star": qs }))
                }
                Format::Csv => {
                    let mut s = String::from("family,n,power,coeff\n");
                    for (name, polys) in [("q", &fam.q), ("q_star", &fam.q_star)] {
                        for (i, p) in polys.iter().enumerate() {
                            for (k, c) in p.coeffs().iter().enumerate() {
                                writeln!(s, "{name},{i},{k},{c}").unwrap();
                            }
                        }
                    }
                    s
                }
                Format::Text => {
                    let mut s = String::new();
                    for (i, (q, qs)) in fam.q.iter().zip(&fam.q_star).enumerate() {
                        writeln!(s, "q_{i} = {q}").unwrap();
                        writeln!(s, "q*_{i} = {qs}").unwrap();
                    }
                    s
                }
            })
        }
        Command::Ppoly { nu, n, format } => {
            let r = exact_arg("nu", nu)?;
            let fam = build_p_recurrence(&r, *n)?;
            Ok(match format {
                Format::Json => {
                    let p: Vec<_> = fam.p.iter().map(poly_json).collect();
                    let g: Vec<_> = fam.gamma.iter().map(|g| Value::String(g.to_string())).collect();
                    envelope("ppoly", Value::String(r.to_string()), json!({ "p": p, "gamma": g }))
                }
                Format::Csv => {
                    let mut s = String::from("n,power,coeff\n");
                    for (i, p) in fam.p.iter().enumerate() {
                        for (k, c) in p.coeffs().iter().enumerate() {
                            writeln!(s, "{i},{k},{c}").unwrap();
                        }
                    }
                    s
                }
                Format::Text => {
                    let mut s = String::new();
                    for (i, p) in fam.p.iter().enumerate() {
                        writeln!(s, "p_{i} = {p}").unwrap();
                    }
                    for (i, g) in fam.gamma.iter().enumerate() {
                        writeln!(s, "gamma_{} = {g}", i + 1).unwrap();
                    }
                    s
                }
            })
        }
        Command::Hankel { nu, n, check, format } => {
            let r = exact_arg("nu", nu)?;
            let rep = lambda_sequence(&r, *n, *check)?;
            if let Some(&bad) = rep.mismatches().first() {
                return Err(Error::HankelMismatch(bad).into());
            }
            Ok(match format {
                Format::Json => {
                    let rows: Vec<_> = rep
                        .rows
                        .iter()
                        .map(|row| {
                            json!({
                                "n": row.n,
                                "delta": row.delta_closed.to_string(),
                                "delta_direct": row.delta_direct.as_ref().map(|d| d.to_string()),
                                "lambda": row.lambda.to_string(),
                                "lambda_sign": row.lambda_sign,
                            })
                        })
                        .collect();
                    envelope("hankel", Value::String(r.to_string()), json!({ "rows": rows, "negatives": rep.negatives() }))
                }
                Format::Csv => {
                    let mut s = String::from("n,delta,delta_direct,lambda,lambda_sign\n");
                    for row in &rep.rows {
                        writeln!(s, "{},{},{},{},{}", row.n, row.delta_closed, opt(row.delta_direct.as_ref()), row.lambda, row.lambda_sign)
                            .unwrap();
                    }
                    s
                }
                Format::Text => {
                    let mut s = String::new();
                    for row in &rep.rows {
                        let sign = if row.lambda_sign < 0 { '-' } else { '+' };
                        writeln!(s, "n={} delta={} lambda_sign={sign}", row.n, row.delta_closed).unwrap();
                    }
                    writeln!(s, "negatives={}", rep.negatives()).unwrap();
                    s
                }
            })
        }
        Command::Classify { nu, window, prec_bits, format } => {
            check_prec(*prec_bits)?;
            let order = order_arg(nu, *prec_bits)?;
            let c = classify_with_window(&order, *window)?;
            Ok(match format {
                Format::Json => envelope("classify", order_json(&order, nu), classification_json(&c)),
                Format::Csv => format!(
                    "nu,case,k,complex_count,imaginary_pair,counted_negatives\n{},{},{},{},{},{}\n",
                    order_json(&order, nu).as_str().unwrap_or_default(),
                    c.case,
                    opt(c.k),
                    c.complex_count,
                    c.imaginary_pair,
                    opt(c.counted_negatives)
                ),
                Format::Text => format!(
                    "complex_count={} imaginary_pair={} case={}\n",
                    c.complex_count, c.imaginary_pair, c.case
                ),
            })
        }
        Command::Nuk { k, tol, prec_bits, format } => {
            check_prec(*prec_bits)?;
            let tol = float_arg("tol", tol, *prec_bits)?;
            let e = find_nu_k(*k, &tol)?;
            let digits = digits_for(&tol);
            let value = float_str(&e.value, digits);
            let residual = float_str(&e.residual, 6);
            Ok(match format {
                Format::Json => envelope(
                    "nuk",
                    Value::Null,
                    json!({
                        "k": e.k,
                        "bracket": [e.bracket.lo.to_string(), e.bracket.hi.to_string()],
                        "value": value,
                        "residual": residual,
                    }),
                ),
                Format::Csv => format!("k,lo,hi,value,residual\n{},{},{},{value},{residual}\n", e.k, e.bracket.lo, e.bracket.hi),
                Format::Text => format!("k={} nu_k={value} residual={residual}\n", e.k),
            })
        }
        Command::Zeros { nu, count, tol, prec_bits, format } => {
            check_prec(*prec_bits)?;
            let order = order_arg(nu, *prec_bits)?;
            let nu_f = match &order {
                Order::Exact(r) => Float::with_val(*prec_bits, r),
                Order::Approx(f) => f.clone(),
            };
            let tol_f = float_arg("tol", tol, *prec_bits)?;
            let zeros = find_real_zeros(&nu_f, *count, &tol_f)?;
            let digits = digits_for(&tol_f);
            let strs: Vec<_> = zeros.iter().map(|z| float_str(z, digits)).collect();
            Ok(match format {
                Format::Json => envelope("zeros", order_json(&order, nu), json!({ "zeros": strs })),
                Format::Csv => {
                    let mut s = String::from("k,zero\n");
                    for (i, z) in strs.iter().enumerate() {
                        writeln!(s, "{},{z}", i + 1).unwrap();
                    }
                    s
                }
                Format::Text => strs.iter().enumerate().map(|(i, z)| format!("j'_{} = {z}\n", i + 1)).collect(),
            })
        }
        Command::Scan { from, to, step, window, prec_bits, format } => {
            check_prec(*prec_bits)?;
            scan(from, to, step, *window, *prec_bits, *format)
        }
    }
}

/// Decimal places needed to print every grid point exactly.
fn decimals(s: &str) -> usize {
    let s = s.trim();
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().unwrap_or(0)),
        None => (s, 0),
    };
    let frac = mantissa.split_once('.').map_or(0, |(_, f)| f.len()) as i64;
    (frac - exp).max(0) as usize
}

fn fixed(r: &Rational, places: usize) -> Option<String> {
    let scaled = Rational::from(r * Integer::from(Integer::u_pow_u(10, places as u32)));
    if *scaled.denom() != 1 {
        return None;
    }
    let n = scaled.numer().clone();
    let neg = n < 0;
    let digits = n.abs().to_string();
    let digits = format!("{digits:0>width$}", width = places + 1);
    let (a, b) = digits.split_at(digits.len() - places);
    let body = if places == 0 { a.to_string() } else { format!("{a}.{b}") };
    Some(if neg { format!("-{body}") } else { body })
}

struct ScanRow {
    nu: String,
    class: ZeroClassification,
    zeros: Vec<String>,
}

fn scan(from: &str, to: &str, step: &str, window: usize, prec: u32, format: Format) -> CliResult<String> {
    let a = exact_arg("from", from)?;
    let b = exact_arg("to", to)?;
    let h = exact_arg("step", step)?;
    if h <= 0 {
        return Err(Failure::Parse("--step must be positive".into()));
    }
    if a > b {
        return Err(Failure::Parse("--from must not exceed --to".into()));
    }
    let steps = (Rational::from(&b - &a) / &h).floor().numer().to_usize().filter(|&n| n < 1_000_000);
    let steps = steps.ok_or_else(|| Failure::Parse("scan grid has too many points".into()))?;
    let places = decimals(from).max(decimals(to)).max(decimals(step));
    let grid: Vec<Rational> = (0..=steps).map(|i| &a + Rational::from(&h * i as u64)).collect();
    let tol = Float::with_val(prec, 1e-20f64);

    let rows: Vec<Result<ScanRow>> = grid
        .par_iter()
        .map(|nu| {
            let class = match classify_with_window(&Order::Exact(nu.clone()), window) {
                Ok(c) => c,
                Err(Error::UndecidableSide { fallback }) => *fallback,
                Err(e) => return Err(e),
            };
            let zeros = if *nu > 0 {
                find_real_zeros(&Float::with_val(prec, nu), 3, &tol)?.iter().map(|z| float_str(z, 16)).collect()
            } else {
                Vec::new()
            };
            let label = fixed(nu, places).unwrap_or_else(|| nu.to_string());
            Ok(ScanRow { nu: label, class, zeros })
        })
        .collect();
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;

    Ok(match format {
        Format::Json => {
            let items: Vec<_> = rows
                .iter()
                .map(|r| {
                    json!({
                        "nu": r.nu,
                        "complex_count": r.class.complex_count,
                        "imaginary_pair": r.class.imaginary_pair,
                        "counted_negatives": r.class.counted_negatives,
                        "first_real_zeros": r.zeros,
                    })
                })
                .collect();
            envelope("scan", Value::Null, json!({ "rows": items }))
        }
        Format::Csv => {
            let mut s = String::from("nu,complex_count,imaginary_pair,counted_negatives,jp1,jp2,jp3\n");
            for r in &rows {
                let z = |i: usize| r.zeros.get(i).cloned().unwrap_or_default();
                writeln!(
                    s,
                    "{},{},{},{},{},{},{}",
                    r.nu,
                    r.class.complex_count,
                    r.class.imaginary_pair,
                    opt(r.class.counted_negatives),
                    z(0),
                    z(1),
                    z(2)
                )
                .unwrap();
            }
            s
        }
        Format::Text => rows
            .iter()
            .map(|r| {
                format!(
                    "nu={} complex_count={} imaginary_pair={} case={}\n",
                    r.nu, r.class.complex_count, r.class.imaginary_pair, r.class.case
                )
            })
            .collect(),
    })
}
