use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use vvgamma_core::combinatorics::triangle_dump;
use vvgamma_core::exact_core::{format_rational, parse_rational, rational_to_f64};
use vvgamma_core::gamma_engine::{gamma_alternating, gamma_operator, gamma_rk_poly, invertibility_report};
use vvgamma_core::gl2_rep::{rho_matrix_int, weight_basis, HighestWeight};
use vvgamma_core::numeric_oracle::QuadratureSpec;
use vvgamma_core::suite::{self, SuiteOptions, SuiteResult, DEFAULT_SEED};
use vvgamma_core::sturm_phantom::{combine_b, phantom_limit, sturm_terms, theorem_verdict};
use vvgamma_core::{Error, GammaExpr};

mod output;

use output::{Format, Output};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_STRICT: u8 = 3;

/// Exact Gamma integrals of GL(2) representations over positive definite
/// matrices, and the checks around them.
#[derive(Parser, Debug)]
#[command(name = "vvgamma", version)]
struct Cli {
    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV with a header row.
    #[arg(long, global = true)]
    csv: bool,
    /// Show exact values as floating-point approximations.
    #[arg(long, global = true)]
    float: bool,
    /// Treat quadrature convergence warnings as errors (exit code 3).
    #[arg(long, global = true)]
    strict: bool,
    /// Seed for the finite-difference sample points.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Triangle numbers a_{n,m} for 0 <= n <= N.
    Triangle {
        #[arg(long, default_value_t = 10)]
        n_max: u32,
    },
    /// Gamma integrals.
    #[command(subcommand)]
    Gamma(GammaCommand),
    /// Matrix of rho_r(g) on homogeneous polynomials of degree r.
    Rep {
        #[arg(long)]
        r: u32,
        /// Integer matrix entries g11,g12,g21,g22.
        #[arg(long, value_parser = parse_matrix, allow_hyphen_values = true)]
        g: [[i64; 2]; 2],
        /// Conjugate into the weight basis V_0..V_r.
        #[arg(long)]
        weight_basis: bool,
    },
    /// Sturm's operator on Maass-shifted forms.
    #[command(subcommand)]
    Sturm(SturmCommand),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Subcommand, Debug)]
enum GammaCommand {
    /// Gamma integral of the q-th alternating power of the standard representation of GL(m).
    Alt {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        q: u32,
        /// Also evaluate at this real s.
        #[arg(long)]
        s: Option<f64>,
    },
    /// Diagonal Gamma operator of the weight (l1, l2) in the weight basis.
    Rank2 {
        #[arg(long)]
        l1: i64,
        #[arg(long, allow_hyphen_values = true)]
        l2: i64,
        /// Exact point (e.g. 3 or -1/2) for the invertibility report.
        #[arg(long, allow_hyphen_values = true)]
        s0: Option<String>,
        /// Also evaluate the entries at this real s.
        #[arg(long)]
        s: Option<f64>,
    },
    /// Polynomials Gamma(r, k, s) / Gamma_2(s) for r <= R.
    Table {
        #[arg(long, default_value_t = 6)]
        r_max: u32,
    },
}

#[derive(Subcommand, Debug)]
enum SturmCommand {
    /// Limit at s = 0 for 1 <= k <= K.
    Phantom {
        #[arg(long, default_value_t = 10)]
        k_max: u32,
    },
    /// The four Gamma terms and their sum for one k.
    Terms {
        #[arg(long)]
        k: u32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SuiteName {
    Identities,
    Oracle,
    Maass,
    All,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: SuiteName,
    /// Largest r for the quadrature oracle.
    #[arg(long, default_value_t = 4)]
    r_max: u32,
    /// Gauss-Laguerre order.
    #[arg(long, default_value_t = 80)]
    laguerre: usize,
    /// Trapezoid points in theta.
    #[arg(long, default_value_t = 64)]
    theta: usize,
    /// Generic-regime tolerance and convergence-warning threshold.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    /// Gauss-Laguerre order of the ordered-region det^k integral.
    #[arg(long, default_value_t = 128)]
    detk_order: usize,
    /// Largest k for the Maass-shift check.
    #[arg(long, default_value_t = 3)]
    k_max: u32,
    /// Finite-difference step of the Maass-shift check, in [1e-6, 1e-3].
    #[arg(long, default_value_t = 1e-3)]
    step: f64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = if cli.json {
        Format::Json
    } else if cli.csv {
        Format::Csv
    } else {
        Format::Plain
    };
    let out = Output { format, float: cli.float };
    match run(&cli, &out) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e}");
            eprintln!("see `vvgamma --help`");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Compute(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_FAIL)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_FAIL)
        }
    }
}

enum Failure {
    /// Bad input that the argument parser could not catch.
    Usage(Error),
    Compute(Error),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        match e.into_kind() {
            csv::ErrorKind::Io(e) => Failure::Io(e),
            other => Failure::Io(io::Error::other(format!("{other:?}"))),
        }
    }
}

fn usage(e: Error) -> Failure {
    Failure::Usage(e)
}

fn compute(e: Error) -> Failure {
    Failure::Compute(e)
}

fn run(cli: &Cli, out: &Output) -> Result<u8, Failure> {
    match &cli.command {
        Command::Triangle { n_max } => triangle(*n_max, out),
        Command::Gamma(GammaCommand::Alt { m, q, s }) => gamma_alt(*m, *q, *s, out),
        Command::Gamma(GammaCommand::Rank2 { l1, l2, s0, s }) => gamma_rank2(*l1, *l2, s0.as_deref(), *s, out),
        Command::Gamma(GammaCommand::Table { r_max }) => gamma_table(*r_max, out),
        Command::Rep { r, g, weight_basis } => rep(*r, *g, *weight_basis, out),
        Command::Sturm(SturmCommand::Phantom { k_max }) => phantom(*k_max, out),
        Command::Sturm(SturmCommand::Terms { k }) => terms(*k, out),
        Command::Verify(args) => verify(args, cli.seed, cli.strict, out),
    }
}

fn triangle(n_max: u32, out: &Output) -> Result<u8, Failure> {
    let entries = triangle_dump(n_max);
    let value = |v: &vvgamma_core::exact_core::BigInt| -> Value {
        if out.float {
            json!(num_traits::ToPrimitive::to_f64(v).unwrap_or(f64::NAN))
        } else {
            json!(v.to_string())
        }
    };
    match out.format {
        Format::Json => {
            let rows: Vec<Value> = entries
                .iter()
                .map(|e| json!({"n": e.n as i64, "m": e.m, "value": value(&e.value), "recursion_ok": e.recursion_ok}))
                .collect();
            out.json(&Value::Array(rows))?;
        }
        Format::Csv => {
            let mut w = out.csv(&["n", "m", "value", "recursion_ok"])?;
            for e in &entries {
                let v = value(&e.value);
                w.write_record([(e.n as i64).to_string(), e.m.to_string(), output::plain(&v), e.recursion_ok.to_string()])?;
            }
            w.flush()?;
        }
        Format::Plain => {
            let mut stdout = io::stdout().lock();
            let mut row = -2i64;
            for e in &entries {
                let n = e.n as i64;
                if n != row {
                    if row != -2 {
                        writeln!(stdout)?;
                    }
                    write!(stdout, "n={n:>3}:")?;
                    row = n;
                }
                write!(stdout, " {}", output::plain(&value(&e.value)))?;
            }
            writeln!(stdout)?;
        }
    }
    Ok(if entries.iter().all(|e| e.recursion_ok) { 0 } else { EXIT_FAIL })
}

fn expr_value(e: &GammaExpr, s: Option<f64>) -> Result<Option<f64>, Failure> {
    s.map(|s| e.eval_numeric(s)).transpose().map_err(compute)
}

fn gamma_alt(m: u32, q: u32, s: Option<f64>, out: &Output) -> Result<u8, Failure> {
    let e = gamma_alternating(m, q).map_err(usage)?;
    let v = expr_value(&e, s)?;
    match out.format {
        Format::Json => out.json(&json!({"m": m, "q": q, "expr": e, "display": e.to_string(), "s": s, "value": v}))?,
        Format::Csv => {
            let mut w = out.csv(&["m", "q", "display", "s", "value"])?;
            w.write_record([m.to_string(), q.to_string(), e.to_string(), output::opt(s), output::opt(v)])?;
            w.flush()?;
        }
        Format::Plain => {
            let mut stdout = io::stdout().lock();
            writeln!(stdout, "{e}")?;
            if let (Some(s), Some(v)) = (s, v) {
                writeln!(stdout, "at s = {s}: {v:.15e}")?;
            }
        }
    }
    Ok(0)
}

fn gamma_rank2(l1: i64, l2: i64, s0: Option<&str>, s: Option<f64>, out: &Output) -> Result<u8, Failure> {
    let l = HighestWeight::new(l1, l2).map_err(usage)?;
    let op = gamma_operator(l);
    let values: Vec<Option<f64>> = op.diag.iter().map(|e| expr_value(e, s)).collect::<Result<_, _>>()?;
    let report = s0.map(|q| parse_rational(q).map(|q| invertibility_report(l, &q))).transpose().map_err(usage)?;
    match out.format {
        Format::Json => {
            let entries: Vec<Value> = op
                .diag
                .iter()
                .zip(&values)
                .enumerate()
                .map(|(k, (e, v))| json!({"k": k, "expr": e, "display": e.to_string(), "value": v}))
                .collect();
            out.json(&json!({"l1": l1, "l2": l2, "s": s, "entries": entries, "invertibility": report}))?;
        }
        Format::Csv => {
            let mut w = out.csv(&["l1", "l2", "k", "display", "s", "value"])?;
            for (k, (e, v)) in op.diag.iter().zip(&values).enumerate() {
                w.write_record([l1.to_string(), l2.to_string(), k.to_string(), e.to_string(), output::opt(s), output::opt(*v)])?;
            }
            w.flush()?;
        }
        Format::Plain => {
            let mut stdout = io::stdout().lock();
            write!(stdout, "{op}")?;
            if let Some(s) = s {
                for (k, v) in values.iter().enumerate() {
                    writeln!(stdout, "  k={k} at s = {s}: {:.15e}", v.unwrap_or(f64::NAN))?;
                }
            }
            if let Some(r) = &report {
                let entries: Vec<String> = r
                    .entries
                    .iter()
                    .map(|e| if out.float { output::float_of(e) } else { e.clone() })
                    .collect();
                writeln!(stdout, "at s0 = {}: polynomial parts [{}]", r.s0, entries.join(", "))?;
                if r.gamma_pole {
                    writeln!(stdout, "  Gamma_2(s0 + l2) has a pole")?;
                }
                writeln!(stdout, "  {}", if r.invertible { "invertible" } else { "not invertible" })?;
            }
        }
    }
    Ok(0)
}

fn gamma_table(r_max: u32, out: &Output) -> Result<u8, Failure> {
    let rows: Vec<(u32, u32, vvgamma_core::Poly)> =
        (0..=r_max).flat_map(|r| (0..=r).map(move |k| (r, k, gamma_rk_poly(r, k)))).collect();
    let coeffs = |p: &vvgamma_core::Poly| -> Vec<String> {
        p.coeffs()
            .iter()
            .map(|c| if out.float { format!("{}", rational_to_f64(c)) } else { format_rational(c) })
            .collect()
    };
    match out.format {
        Format::Json => {
            let v: Vec<Value> = rows
                .iter()
                .map(|(r, k, p)| json!({"r": r, "k": k, "coefficients": coeffs(p), "display": p.to_string()}))
                .collect();
            out.json(&Value::Array(v))?;
        }
        Format::Csv => {
            let mut w = out.csv(&["r", "k", "coefficients", "display"])?;
            for (r, k, p) in &rows {
                w.write_record([r.to_string(), k.to_string(), coeffs(p).join(" "), p.to_string()])?;
            }
            w.flush()?;
        }
        Format::Plain => {
            let mut stdout = io::stdout().lock();
            for (r, k, p) in &rows {
                writeln!(stdout, "Gamma({r},{k},s) = ({p}) * Gamma_2(s)")?;
            }
        }
    }
    Ok(0)
}

fn parse_matrix(text: &str) -> Result<[[i64; 2]; 2], String> {
    let v: Vec<i64> = text
        .split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|e| format!("{x:?}: {e}")))
        .collect::<Result<_, _>>()?;
    match v[..] {
        [a, b, c, d] => Ok([[a, b], [c, d]]),
        _ => Err(format!("expected four comma-separated integers, got {}", v.len())),
    }
}

fn rep(r: u32, g: [[i64; 2]; 2], weight: bool, out: &Output) -> Result<u8, Failure> {
    let mut m = rho_matrix_int(r, g);
    if weight {
        m = weight_basis(r).conjugate(&m);
    }
    let n = m.matrix.dim();
    let cell = |i: usize, j: usize| -> String {
        let v = m.matrix.get(i, j);
        if out.float {
            let c = v.to_complex();
            if c.im == 0.0 {
                format!("{}", c.re)
            } else {
                format!("{}{:+}i", c.re, c.im)
            }
        } else {
            v.to_string()
        }
    };
    let basis = if weight { "weight" } else { "monomial" };
    match out.format {
        Format::Json => {
            let rows: Vec<Vec<String>> = (0..n).map(|i| (0..n).map(|j| cell(i, j)).collect()).collect();
            out.json(&json!({"r": r, "g": g, "basis": basis, "matrix": rows}))?;
        }
        Format::Csv => {
            let mut w = out.csv(&["row", "col", "value"])?;
            for i in 0..n {
                for j in 0..n {
                    w.write_record([i.to_string(), j.to_string(), cell(i, j)])?;
                }
            }
            w.flush()?;
        }
        Format::Plain => {
            let cells: Vec<Vec<String>> = (0..n).map(|i| (0..n).map(|j| cell(i, j)).collect()).collect();
            let width = cells.iter().flatten().map(|c| c.len()).max().unwrap_or(1);
            let mut stdout = io::stdout().lock();
            writeln!(stdout, "rho_{r}({g:?}), {basis} basis:")?;
            for row in &cells {
                let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
                writeln!(stdout, "  [{}]", line.join("  "))?;
            }
        }
    }
    Ok(0)
}

fn phantom(k_max: u32, out: &Output) -> Result<u8, Failure> {
    if k_max == 0 {
        return Err(usage(Error::DomainError("k-max must be at least 1".into())));
    }
    let (entries, report) = theorem_verdict(k_max).map_err(compute)?;
    let limits: Vec<Value> = entries
        .iter()
        .map(|e| {
            Ok(if out.float {
                json!(phantom_limit(e.k).map_err(compute)?.display_f64())
            } else {
                json!(e.limit)
            })
        })
        .collect::<Result<_, Failure>>()?;
    match out.format {
        Format::Json => {
            let rows: Vec<Value> = entries
                .iter()
                .zip(&limits)
                .zip(&report.checks)
                .map(|((e, lim), c)| {
                    json!({
                        "k": e.k,
                        "limit": lim,
                        "normalized_limit": e.normalized_limit,
                        "nonzero": e.nonzero,
                        "weight": e.weight,
                        "harish_chandra": e.harish_chandra,
                        "two_route_ok": e.two_route_ok,
                        "numerator_ok": e.numerator_ok,
                        "verdict": c.passed,
                    })
                })
                .collect();
            out.json(&Value::Array(rows))?;
        }
        Format::Csv => {
            let mut w = out.csv(&[
                "k",
                "limit",
                "normalized_limit",
                "nonzero",
                "weight_l1",
                "weight_l2",
                "two_route_ok",
                "numerator_ok",
                "verdict",
            ])?;
            for ((e, lim), c) in entries.iter().zip(&limits).zip(&report.checks) {
                w.write_record([
                    e.k.to_string(),
                    output::plain(lim),
                    e.normalized_limit.clone(),
                    e.nonzero.to_string(),
                    e.weight.0.to_string(),
                    e.weight.1.to_string(),
                    e.two_route_ok.to_string(),
                    e.numerator_ok.to_string(),
                    c.passed.to_string(),
                ])?;
            }
            w.flush()?;
        }
        Format::Plain => {
            let mut stdout = io::stdout().lock();
            writeln!(stdout, "{:>3}  {:>24}  {:>24}  weight", "k", "limit", "normalized")?;
            for (e, lim) in entries.iter().zip(&limits) {
                writeln!(
                    stdout,
                    "{:>3}  {:>24}  {:>24}  ({}, {})",
                    e.k,
                    output::plain(lim),
                    e.normalized_limit,
                    e.weight.0,
                    e.weight.1
                )?;
            }
            let failed = report.failures().count();
            writeln!(stdout, "{}", if failed == 0 { "nonzero only at k = 1".to_string() } else { format!("{failed} checks failed") })?;
        }
    }
    Ok(if report.passed() { 0 } else { EXIT_FAIL })
}

fn terms(k: u32, out: &Output) -> Result<u8, Failure> {
    if k == 0 {
        return Err(usage(Error::DomainError("k must be at least 1".into())));
    }
    let t = sturm_terms(k).map_err(compute)?;
    let b = combine_b(k).map_err(compute)?;
    match out.format {
        Format::Json => {
            let terms: Vec<Value> = t.terms.iter().map(|e| json!({"expr": e, "display": e.to_string()})).collect();
            out.json(&json!({"k": k, "terms": terms, "b": {"expr": b, "display": b.to_string()}}))?;
        }
        Format::Csv => {
            let mut w = out.csv(&["k", "term", "display"])?;
            for (i, e) in t.terms.iter().enumerate() {
                w.write_record([k.to_string(), (i + 1).to_string(), e.to_string()])?;
            }
            w.write_record([k.to_string(), "b".to_string(), b.to_string()])?;
            w.flush()?;
        }
        Format::Plain => {
            let mut stdout = io::stdout().lock();
            for (i, e) in t.terms.iter().enumerate() {
                writeln!(stdout, "term {}: {e}", i + 1)?;
            }
            writeln!(stdout, "b:      {b}")?;
        }
    }
    Ok(0)
}

fn verify(args: &VerifyArgs, seed: u64, strict: bool, out: &Output) -> Result<u8, Failure> {
    if !(1e-6..=1e-3).contains(&args.step) {
        return Err(usage(Error::DomainError(format!("--step must lie in [1e-6, 1e-3], got {}", args.step))));
    }
    if args.laguerre < 2 || args.theta < 1 || args.detk_order < 2 {
        return Err(usage(Error::DomainError("quadrature orders must be at least 2".into())));
    }
    let opts = SuiteOptions {
        quadrature: QuadratureSpec {
            laguerre_order: args.laguerre,
            theta_points: args.theta,
            tol: args.tol,
            ..QuadratureSpec::default()
        },
        r_max: args.r_max,
        detk_order: args.detk_order,
        maass_k_max: args.k_max,
        maass_step: args.step,
        seed,
        ..SuiteOptions::default()
    };
    let name = match args.suite {
        SuiteName::Identities => "identities",
        SuiteName::Oracle => "oracle",
        SuiteName::Maass => "maass",
        SuiteName::All => "all",
    };
    let result: SuiteResult = match args.suite {
        SuiteName::Identities => suite::identities(&opts),
        SuiteName::Oracle => suite::oracle(&opts),
        SuiteName::Maass => suite::maass_suite(&opts),
        SuiteName::All => suite::all(&opts),
    }
    .map_err(compute)?;
    let report = &result.report;
    match out.format {
        Format::Json => out.json(&json!({
            "suite": name,
            "passed": result.passed(),
            "checks": report.checks,
            "warnings": result.warnings,
        }))?,
        Format::Csv => {
            let mut w = out.csv(&["suite", "name", "passed", "detail"])?;
            for c in &report.checks {
                w.write_record([name, &c.name, &c.passed.to_string(), &c.detail])?;
            }
            w.flush()?;
        }
        Format::Plain => {
            let mut stdout = io::stdout().lock();
            write!(stdout, "{report}")?;
            for warning in &result.warnings {
                writeln!(stdout, "warning: {warning}")?;
            }
        }
    }
    Ok(if !result.passed() {
        EXIT_FAIL
    } else if strict && !result.warnings.is_empty() {
        EXIT_STRICT
    } else {
        0
    })
}
