//! The `qwb` command line.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::asymptotics::numeric::{eval_expansion, eval_pair_direct, eval_product_direct, modular_normalized_check};
use crate::asymptotics::{asymmetry_witness, expansion_pair, expansion_single, normalization_exponent, Witness};
use crate::exactnum::{format_rational, parse_rational, BigInt, Rational};
use crate::par::Exec;
use crate::qseries::{io, Ring, TruncatedSeries};
use crate::recognizer::{pretty, recognize_eis, recognize_int, norm_crosscheck};

use super::eval::eval_expr;
use super::expr::parse_expr;
use super::registry::{self, theorem_failures, CheckReport, Summary, DEFAULT_ORDER};
use super::relation::find_relation;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "qwb", about = "Exact q-series workbench", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check registered identities coefficient by coefficient.
    Verify(VerifyArgs),
    /// Print the coefficients of an expression.
    Expand(ExpandArgs),
    /// Factor a series as a product of (1 - ζq^k)^r.
    Recognize(RecognizeArgs),
    /// q → 1 expansion of an infinite product, exact and numeric.
    Asympt(AsymptArgs),
    /// Search for constant-coefficient linear relations.
    Relation(RelationArgs),
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, conflicts_with = "all", required_unless_present = "all")]
    id: Option<String>,
    #[arg(long)]
    all: bool,
    #[arg(long)]
    order: Option<usize>,
    /// Run the registry on the calling thread only.
    #[arg(long)]
    sequential: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct ExpandArgs {
    #[arg(long)]
    expr: String,
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    order: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RingArg {
    Int,
    Rat,
    Eis,
}

impl From<RingArg> for Ring {
    fn from(r: RingArg) -> Ring {
        match r {
            RingArg::Int => Ring::Integer,
            RingArg::Rat => Ring::Rational,
            RingArg::Eis => Ring::Eisenstein,
        }
    }
}

#[derive(Args, Debug)]
struct RecognizeArgs {
    #[arg(long, conflicts_with = "coeffs", required_unless_present = "coeffs")]
    expr: Option<String>,
    /// File of `n: value` lines.
    #[arg(long)]
    coeffs: Option<std::path::PathBuf>,
    #[arg(long, value_enum)]
    ring: Option<RingArg>,
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    order: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct AsymptArgs {
    /// Rational `P/Q`; with `--b` an integer numerator over `b`.
    #[arg(long)]
    a: String,
    #[arg(long)]
    pair: bool,
    #[arg(long)]
    b: Option<u64>,
    #[arg(long, default_value_t = 6)]
    order: usize,
    #[arg(long, default_value = "0.1")]
    x: String,
    #[arg(long, default_value_t = crate::asymptotics::numeric::DEFAULT_DIGITS)]
    prec: u32,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct RelationArgs {
    #[arg(long = "expr", required = true, num_args = 1)]
    exprs: Vec<String>,
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    order: usize,
    #[arg(long)]
    json: bool,
}

struct Failure(i32, String);

type Outcome = Result<i32, Failure>;

fn usage(msg: impl std::fmt::Display) -> Failure {
    Failure(EXIT_USAGE, msg.to_string())
}

fn fail(msg: impl std::fmt::Display) -> Failure {
    Failure(EXIT_FAIL, msg.to_string())
}

fn series_of(text: &str, order: usize) -> Result<TruncatedSeries, Failure> {
    let e = parse_expr(text).map_err(|e| usage(format!("{text}: {e}")))?;
    eval_expr(&e, order).map_err(|e| fail(format!("{text}: {e}")))
}

fn line(out: &mut dyn Write, s: impl std::fmt::Display) {
    let _ = writeln!(out, "{s}");
}

fn verify(a: VerifyArgs, out: &mut dyn Write) -> Outcome {
    let reports: Vec<CheckReport> = match &a.id {
        Some(id) => match registry::run_check(id, a.order) {
            None => return Err(usage(format!("unknown identity `{id}`"))),
            Some(r) => vec![r.map_err(fail)?],
        },
        None => {
            let exec = if a.sequential { Exec::Sequential } else { Exec::Parallel };
            registry::run_all(a.order.unwrap_or(DEFAULT_ORDER), exec)
        }
    };
    let summary = Summary::of(&reports);
    if a.json {
        let v = json!({
            "reports": reports,
            "total": summary.total,
            "passed": summary.passed,
            "failed": summary.failed,
            "conjectures_checked": summary.conjectures_checked,
        });
        line(out, serde_json::to_string_pretty(&v).expect("serializable"));
    } else {
        for r in &reports {
            let status = serde_json::to_value(r.status).expect("serializable");
            let verdict = if r.pass { "PASS" } else { "FAIL" };
            let mut s = format!("{verdict} {} [{}] order {} ({} ms)", r.id, status.as_str().unwrap_or(""), r.order, r.ms);
            if let Some(m) = &r.first_mismatch {
                s += &format!(": q^{} lhs {} rhs {}", m.degree, m.lhs, m.rhs);
            }
            line(out, s);
        }
        line(
            out,
            format!(
                "total {} passed {} failed {} conjectures {}",
                summary.total, summary.passed, summary.failed, summary.conjectures_checked
            ),
        );
    }
    Ok(if theorem_failures(&reports) > 0 { EXIT_FAIL } else { EXIT_OK })
}

fn expand(a: ExpandArgs, out: &mut dyn Write) -> Outcome {
    let s = series_of(&a.expr, a.order)?.simplify();
    if a.json {
        let coeffs: Vec<String> = s.coefficients().iter().map(|c| c.to_string()).collect();
        line(out, json!({ "expr": a.expr, "ring": s.ring().to_string(), "order": a.order, "coefficients": coeffs }));
    } else {
        let _ = write!(out, "{}", io::dump(&s));
    }
    Ok(EXIT_OK)
}

fn recognize(a: RecognizeArgs, out: &mut dyn Write) -> Outcome {
    let ring = a.ring.map(Ring::from);
    let s = match (&a.expr, &a.coeffs) {
        (Some(e), _) => series_of(e, a.order)?,
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            io::parse(&text, ring).map_err(|e| usage(format!("{}: {e}", path.display())))?
        }
        (None, None) => return Err(usage("need --expr or --coeffs")),
    };
    let n = a.order.min(s.order());
    let eis = ring == Some(Ring::Eisenstein) || matches!(s.clone().simplify(), TruncatedSeries::Eis(_));
    let result = if eis { recognize_eis(&s, n) } else { recognize_int(&s, n) };
    let rep = result.map_err(|e| fail(format!("recognition failed: {e}")))?;
    let norm = if eis { norm_crosscheck(&s, n).ok() } else { None };
    let pretty = pretty(&rep.form);
    if a.json {
        let entries: Vec<_> = rep.form.entries().map(|(k, t)| json!([k, t.one, t.omega, t.omega_bar])).collect();
        line(
            out,
            json!({
                "order": n,
                "ring": if eis { "eis" } else { "int" },
                "product": pretty,
                "exponents": entries,
                "residual_check": rep.residual_check,
                "norm_crosscheck": norm,
            }),
        );
    } else {
        line(out, &pretty);
        let _ = write!(out, "{}", rep.form);
        if let Some(ok) = norm {
            line(out, format!("# norm crosscheck {}", if ok { "ok" } else { "FAILED" }));
        }
    }
    let ok = rep.residual_check && norm != Some(false);
    Ok(if ok { EXIT_OK } else { EXIT_FAIL })
}

fn asympt(a: AsymptArgs, out: &mut dyn Write) -> Outcome {
    let (t, ratio) = match a.b {
        Some(b) => {
            let num: u64 = a.a.trim().parse().map_err(|_| usage("with --b, --a must be an integer"))?;
            (Rational::new(BigInt::from(num), BigInt::from(b)), Some((num, b)))
        }
        None => (parse_rational(&a.a).map_err(|e| usage(format!("--a: {e}")))?, None),
    };
    let x = parse_rational(&a.x).map_err(|e| usage(format!("--x: {e}")))?;
    let e = if a.pair { expansion_pair(&t, a.order) } else { expansion_single(&t, a.order) }.map_err(usage)?;
    let xs = [x.clone(), &x / Rational::from_integer(2.into()), &x / Rational::from_integer(4.into())];
    let mut table = Vec::new();
    for xv in &xs {
        let direct = if a.pair { eval_pair_direct(&t, xv, a.prec) } else { eval_product_direct(&t, xv, a.prec) }.map_err(usage)?;
        let approx = eval_expansion(&e, xv, a.prec).map_err(usage)?;
        let err = rug::Float::with_val(direct.prec(), &direct - &approx);
        table.push((format_rational(xv), direct, approx, err));
    }
    let digits = (a.prec as usize).min(40);
    let fmt = |f: &rug::Float| f.to_string_radix(10, Some(digits));
    let mut extras = serde_json::Map::new();
    if let Some((p, b)) = ratio {
        extras.insert("normalization_exponent".into(), json!(format_rational(&normalization_exponent(p, b).map_err(usage)?)));
        let w = match asymmetry_witness(p, b, a.order.max(2)) {
            Ok(Witness::Found { n, coefficient }) => json!({ "n": n, "coefficient": format_rational(&coefficient) }),
            Ok(Witness::Exhausted { max_order }) => json!({ "exhausted": max_order }),
            Err(e) => json!({ "error": e.to_string() }),
        };
        extras.insert("asymmetry_witness".into(), w);
        let modular: Vec<_> = xs
            .iter()
            .map(|xv| modular_normalized_check(p, b, xv, a.prec).map(|r| json!([format_rational(xv), fmt(&r)])))
            .collect::<Result<_, _>>()
            .map_err(usage)?;
        extras.insert("modular_check".into(), json!(modular));
    }
    if a.json {
        let rows: Vec<_> = table
            .iter()
            .map(|(x, d, ap, er)| json!({ "x": x, "direct": fmt(d), "expansion": fmt(ap), "error": fmt(er) }))
            .collect();
        let mut v = json!({ "expansion": e, "table": rows });
        v.as_object_mut().unwrap().extend(extras);
        line(out, v);
    } else {
        line(out, format!("a = {} {}", format_rational(&t), if a.pair { "(pair)" } else { "" }));
        line(out, format!("pi^2/x coefficient: {}", format_rational(&e.inv_x_pi2)));
        line(out, format!("ln x coefficient: {}", format_rational(&e.log_coef)));
        line(out, format!("constant: {}", e.constant));
        for n in 1..=e.order() {
            line(out, format!("x^{n}: {}", format_rational(e.coef(n))));
        }
        line(out, "x | direct | expansion | error");
        for (x, d, ap, er) in &table {
            line(out, format!("{x} | {} | {} | {}", fmt(d), fmt(ap), er.to_string_radix(10, Some(6))));
        }
        for (k, v) in extras {
            line(out, format!("{k}: {v}"));
        }
    }
    Ok(EXIT_OK)
}

fn relation(a: RelationArgs, out: &mut dyn Write) -> Outcome {
    if a.exprs.len() < 2 {
        return Err(usage("need at least two --expr"));
    }
    let series: Vec<_> = a.exprs.iter().map(|e| series_of(e, a.order)).collect::<Result<_, _>>()?;
    let basis = find_relation(&series, a.order).map_err(fail)?;
    if a.json {
        let b: Vec<Vec<String>> = basis.iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect();
        line(out, json!({ "order": a.order, "basis": b }));
    } else if basis.is_empty() {
        line(out, format!("no relation through q^{}", a.order));
    } else {
        for v in &basis {
            let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            line(out, format!("({})", s.join(", ")));
        }
    }
    Ok(EXIT_OK)
}

/// Runs the CLI on `argv` (program name first) with explicit output streams.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{}", e.render()) } else { write!(out, "{}", e.render()) };
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Verify(a) => verify(a, out),
        Command::Expand(a) => expand(a, out),
        Command::Recognize(a) => recognize(a, out),
        Command::Asympt(a) => asympt(a, out),
        Command::Relation(a) => relation(a, out),
    };
    match outcome {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

pub fn cli_main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
