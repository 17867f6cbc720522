//! Command-line front end for the `counters` library.
//!
//! ```text
//! counters eval "<expr>"
//! counters expand "<series>" --to T
//! counters coeff "<series>" -t T
//! counters check "<expr>" --window L:H
//! ```
//!
//! Exit statuses: 0 success, 1 arithmetic failure, 2 usage or parse error,
//! 3 undefined operation, 4 oracle mismatch.

use std::ffi::OsString;
use std::io::{Read, Write};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use counters::extnum::{self, ExtInt, Fin};
use counters::hadamard::OpOutcome;
use counters::oracle::{self, CoeffWindow};
use counters::text::{self, Expr, Op, ParseError};
use counters::{Error, Series};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_UNDEFINED: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;

/// How a binary operator is evaluated. [`run`] uses [`Op::apply`].
pub type Apply = fn(Op, &Series, &Series) -> Result<OpOutcome, Error>;

#[derive(Parser, Debug)]
#[command(name = "counters", version, about = "Hadamard product and residuals of counters")]
struct Cli {
    /// Print results as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Print nothing on success; the exit status carries the result.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate an expression and print its canonical form.
    Eval {
        /// Expression, or "-" to read it from stdin.
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Print the series as a polynomial exact up to time T.
    Expand {
        #[arg(allow_hyphen_values = true)]
        series: String,
        #[arg(long = "to", allow_hyphen_values = true)]
        to: i64,
    },
    /// Print the value of the series at time T.
    Coeff {
        #[arg(allow_hyphen_values = true)]
        series: String,
        #[arg(short = 't', allow_hyphen_values = true)]
        t: String,
    },
    /// Evaluate and compare the outermost operation with the oracle on [L, H].
    Check {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_window)]
        window: (i64, i64),
    },
}

fn parse_window(text: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = text
        .split_once(':')
        .ok_or_else(|| format!("expected L:H, got {text:?}"))?;
    let lo = lo.trim().parse::<i64>().map_err(|e| format!("bad lower bound: {e}"))?;
    let hi = hi.trim().parse::<i64>().map_err(|e| format!("bad upper bound: {e}"))?;
    if lo > hi {
        return Err(format!("empty window {lo}:{hi}"));
    }
    Ok((lo, hi))
}

/// Failure of a command, mapped to an exit status.
enum Failure {
    Parse(ParseError),
    Arith(Error),
    Undefined { reason: String, witness: Option<ExtInt> },
    Mismatch(String),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Arith(e)
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

struct Ctx<'a> {
    json: bool,
    quiet: bool,
    stdin: &'a mut dyn Read,
    out: &'a mut dyn Write,
    apply: Apply,
}

impl Ctx<'_> {
    fn input(&mut self, arg: &str) -> Result<String, Failure> {
        if arg != "-" {
            return Ok(arg.to_owned());
        }
        let mut buf = String::new();
        self.stdin.read_to_string(&mut buf)?;
        Ok(buf.trim().to_owned())
    }

    fn emit(&mut self, text: impl std::fmt::Display, value: Value) -> Result<(), Failure> {
        if self.quiet {
            return Ok(());
        }
        if self.json {
            writeln!(self.out, "{value}")?;
        } else {
            writeln!(self.out, "{text}")?;
        }
        Ok(())
    }

    fn evaluate(&self, e: &Expr) -> Result<Series, Failure> {
        match e {
            Expr::Literal(s) => Ok(s.clone()),
            Expr::Binary(op, l, r) => {
                let (l, r) = (self.evaluate(l)?, self.evaluate(r)?);
                defined((self.apply)(*op, &l, &r)?)
            }
        }
    }
}

fn defined(outcome: OpOutcome) -> Result<Series, Failure> {
    match outcome {
        OpOutcome::Ok(s) => Ok(s),
        OpOutcome::Undefined { reason, witness } => Err(Failure::Undefined { reason, witness }),
    }
}

fn eval(ctx: &mut Ctx, expr: &str) -> Result<(), Failure> {
    let text = ctx.input(expr)?;
    let e = text::parse_expr(&text)?;
    let s = ctx.evaluate(&e)?;
    ctx.emit(&s, text::to_json(&s))
}

fn expand(ctx: &mut Ctx, series: &str, to: i64) -> Result<(), Failure> {
    let text = ctx.input(series)?;
    let p = text::parse_series(&text)?.expand(to)?;
    let value = text::to_json(&Series::from(p.clone()));
    ctx.emit(&p, value)
}

fn coeff(ctx: &mut Ctx, series: &str, t: &str) -> Result<(), Failure> {
    let text = ctx.input(series)?;
    let s = text::parse_series(&text)?;
    let t: ExtInt = t.parse().map_err(|e| Failure::Parse(ParseError::Semantic(e)))?;
    let v = s.eval(t)?;
    ctx.emit(v, json_ext(v))
}

fn json_ext(v: ExtInt) -> Value {
    match v {
        Fin(v) => json!(v),
        other => json!(other.to_string()),
    }
}

/// The oracle's view of `op(l, r)` on `[lo, hi]`.
fn oracle_window(op: Op, l: &Series, r: &Series, lo: i64, hi: i64) -> Result<OpOutcome<CoeffWindow>, Error> {
    let pointwise = |f: fn(ExtInt, ExtInt) -> ExtInt| -> Result<CoeffWindow, Error> {
        let (a, b) = (oracle::window_of(l, lo, hi)?, oracle::window_of(r, lo, hi)?);
        let values = a.values.iter().zip(&b.values).map(|(&x, &y)| f(x, y)).collect();
        Ok(CoeffWindow { lo, hi, values })
    };
    Ok(match op {
        Op::Oplus => OpOutcome::Ok(pointwise(extnum::min)?),
        Op::Wedge => OpOutcome::Ok(pointwise(extnum::max)?),
        Op::Hadamard => OpOutcome::Ok(oracle::oracle_odot(l, r, lo, hi)?),
        Op::Hres => OpOutcome::Ok(oracle::oracle_sharp(l, r, lo, hi)?),
        Op::Hdres => oracle::oracle_flat(l, r, lo, hi)?,
    })
}

fn check(ctx: &mut Ctx, expr: &str, (lo, hi): (i64, i64)) -> Result<(), Failure> {
    let text = ctx.input(expr)?;
    let e = text::parse_expr(&text)?;
    let (op, l, r) = match &e {
        Expr::Literal(s) => return ctx.emit(format!("ok: {s} is a literal"), json!({ "ok": true })),
        Expr::Binary(op, l, r) => (*op, ctx.evaluate(l)?, ctx.evaluate(r)?),
    };
    let closed = (ctx.apply)(op, &l, &r)?;
    let want = oracle_window(op, &l, &r, lo, hi)?;
    let (got, want) = match (closed, want) {
        (OpOutcome::Ok(s), OpOutcome::Ok(w)) => (s, w),
        (OpOutcome::Undefined { reason, witness }, OpOutcome::Undefined { .. }) => {
            return Err(Failure::Undefined { reason, witness })
        }
        (OpOutcome::Ok(s), OpOutcome::Undefined { reason, .. }) => {
            return Err(Failure::Mismatch(format!("closed form gives {s}, oracle says undefined: {reason}")))
        }
        (OpOutcome::Undefined { reason, .. }, OpOutcome::Ok(_)) => {
            return Err(Failure::Mismatch(format!("closed form says undefined: {reason}, oracle is defined")))
        }
    };
    let have = oracle::window_of(&got, lo, hi)?;
    if let Some(t) = (lo..=hi).find(|&t| have.at(t) != want.at(t)) {
        return Err(Failure::Mismatch(format!(
            "at t = {t} the closed form {got} gives {}, the oracle {}",
            have.at(t),
            want.at(t)
        )));
    }
    let value = json!({ "ok": true, "result": text::to_json(&got), "window": [lo, hi] });
    ctx.emit(format!("ok: {got} matches the oracle on [{lo}, {hi}]"), value)
}

/// Runs the command line `args` (program name first) and returns the exit status.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, stdin, out, err, Op::apply)
}

/// [`run`] with a replacement for the closed-form operations.
pub fn run_with<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write, apply: Apply) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_PARSE;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    let mut ctx = Ctx {
        json: cli.json,
        quiet: cli.quiet,
        stdin,
        out,
        apply,
    };
    let result = match &cli.command {
        Command::Eval { expr } => eval(&mut ctx, expr),
        Command::Expand { series, to } => expand(&mut ctx, series, *to),
        Command::Coeff { series, t } => coeff(&mut ctx, series, t),
        Command::Check { expr, window } => check(&mut ctx, expr, *window),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Undefined { reason, witness }) => {
            let value = json!({ "undefined": reason, "witness": witness.map(json_ext) });
            let _ = ctx.emit(format!("undefined: {reason}"), value);
            EXIT_UNDEFINED
        }
        Err(Failure::Parse(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_PARSE
        }
        Err(Failure::Mismatch(msg)) => {
            let _ = writeln!(err, "mismatch: {msg}");
            EXIT_MISMATCH
        }
        Err(Failure::Arith(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILURE
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILURE
        }
    }
}
