//! WebAssembly bindings behind `www/index.html`.
//!
//! Every export takes and returns plain strings; results are JSON documents
//! that the page renders without further parsing logic.

use counters::extnum::{self, ExtInt, Fin};
use counters::hadamard::OpOutcome;
use counters::oracle::{self, CoeffWindow};
use counters::random::Shape;
use counters::text::{self, Expr, Op};
use counters::Series;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Widest window the page may request.
pub const MAX_WINDOW: i64 = 2000;

fn samples(w: &CoeffWindow) -> Value {
    w.values
        .iter()
        .map(|v| match v {
            Fin(v) => json!(v),
            other => json!(other.to_string()),
        })
        .collect()
}

fn error(message: impl std::fmt::Display) -> Value {
    json!({ "error": message.to_string() })
}

fn pointwise(l: &Series, r: &Series, lo: i64, hi: i64, f: fn(ExtInt, ExtInt) -> ExtInt) -> counters::Result<CoeffWindow> {
    let (a, b) = (oracle::window_of(l, lo, hi)?, oracle::window_of(r, lo, hi)?);
    let values = a.values.iter().zip(&b.values).map(|(&x, &y)| f(x, y)).collect();
    Ok(CoeffWindow { lo, hi, values })
}

fn oracle_window(op: Op, l: &Series, r: &Series, lo: i64, hi: i64) -> counters::Result<OpOutcome<CoeffWindow>> {
    Ok(match op {
        Op::Oplus => OpOutcome::Ok(pointwise(l, r, lo, hi, extnum::min)?),
        Op::Wedge => OpOutcome::Ok(pointwise(l, r, lo, hi, extnum::max)?),
        Op::Hadamard => OpOutcome::Ok(oracle::oracle_odot(l, r, lo, hi)?),
        Op::Hres => OpOutcome::Ok(oracle::oracle_sharp(l, r, lo, hi)?),
        Op::Hdres => oracle::oracle_flat(l, r, lo, hi)?,
    })
}

/// Evaluates `expr` and samples its operands and result on `[lo, hi]`.
///
/// The answer has `result` (canonical text), `json`, `undefined` (reason)
/// or `error`, plus `curves`: labelled samples of the outermost operands and
/// of the result, and `oracle` telling whether the brute-force evaluation of
/// the outermost operation agrees on the window.
pub fn evaluate_value(expr: &str, lo: i64, hi: i64) -> Value {
    if lo > hi || hi - lo > MAX_WINDOW {
        return error(format!("window [{lo}, {hi}] must be non-empty and at most {MAX_WINDOW} wide"));
    }
    let e = match text::parse_expr(expr) {
        Ok(e) => e,
        Err(err) => return error(err),
    };
    match describe(&e, lo, hi) {
        Ok(v) => v,
        Err(err) => error(err),
    }
}

fn describe(e: &Expr, lo: i64, hi: i64) -> counters::Result<Value> {
    let mut curves = Vec::new();
    let mut oracle_agrees = Value::Null;
    let outcome = match e {
        Expr::Literal(s) => OpOutcome::Ok(s.clone()),
        Expr::Binary(op, l, r) => {
            let (a, b) = match (l.evaluate()?, r.evaluate()?) {
                (OpOutcome::Ok(a), OpOutcome::Ok(b)) => (a, b),
                (OpOutcome::Undefined { reason, .. }, _) | (_, OpOutcome::Undefined { reason, .. }) => {
                    return Ok(json!({ "undefined": reason }))
                }
            };
            curves.push(json!({ "label": a.to_string(), "values": samples(&oracle::window_of(&a, lo, hi)?) }));
            curves.push(json!({ "label": b.to_string(), "values": samples(&oracle::window_of(&b, lo, hi)?) }));
            let outcome = op.apply(&a, &b)?;
            let brute = oracle_window(*op, &a, &b, lo, hi)?;
            oracle_agrees = json!(match (&outcome, &brute) {
                (OpOutcome::Ok(s), OpOutcome::Ok(w)) => oracle::window_of(s, lo, hi)? == *w,
                (OpOutcome::Undefined { .. }, OpOutcome::Undefined { .. }) => true,
                _ => false,
            });
            outcome
        }
    };
    let s = match outcome {
        OpOutcome::Ok(s) => s,
        OpOutcome::Undefined { reason, .. } => {
            return Ok(json!({ "undefined": reason, "curves": curves, "oracle": oracle_agrees }))
        }
    };
    curves.push(json!({ "label": "result", "values": samples(&oracle::window_of(&s, lo, hi)?) }));
    Ok(json!({
        "result": s.to_string(),
        "json": text::to_json(&s),
        "throughput": s.throughput().map(|(n, d)| format!("{n}/{d}")),
        "lo": lo,
        "hi": hi,
        "curves": curves,
        "oracle": oracle_agrees,
    }))
}

/// Two random ultimately periodic operands for `seed`, as canonical text.
pub fn random_operands_value(seed: u64) -> Value {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shape = Shape {
        coeff: (-5, 10),
        exp: (-3, 12),
        nu: (1, 4),
        tau: (1, 4),
        max_terms: 3,
        neg_inf: false,
    };
    let a = shape.strictly_periodic(&mut rng);
    let b = shape.strictly_periodic(&mut rng);
    json!({ "left": a.to_string(), "right": b.to_string() })
}

#[wasm_bindgen]
pub fn evaluate(expr: &str, lo: i32, hi: i32) -> String {
    evaluate_value(expr, lo.into(), hi.into()).to_string()
}

#[wasm_bindgen]
pub fn random_operands(seed: u32) -> String {
    random_operands_value(seed.into()).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluates_with_curves() {
        let v = evaluate_value("(-1d0 + (5d2)(2d1)*) hres (-1d-5 + (3d0)(1d2)*)", -2, 6);
        assert_eq!(v["result"], "0d0 + (1d2 + 2d3)(3d2)*");
        assert_eq!(v["oracle"], true);
        assert_eq!(v["throughput"], "3/2");
        let curves = v["curves"].as_array().unwrap();
        assert_eq!(curves.len(), 3);
        assert_eq!(curves[2]["values"], json!([0, 0, 0, 1, 1, 2, 4, 5, 7]));
    }

    #[test]
    fn reports_undefined_and_errors() {
        let v = evaluate_value("4d5 hdres 1d3", 0, 6);
        assert_eq!(v["undefined"], "exponent 5 exceeds 3");
        assert_eq!(v["oracle"], true);
        assert!(evaluate_value("5d", 0, 6)["error"].as_str().unwrap().contains("column 3"));
        assert!(evaluate_value("5d2", 6, 0)["error"].is_string());
        let v = evaluate_value("(1d5 hdres 0d3) hadamard 1d1", 0, 6);
        assert_eq!(v["undefined"], "exponent 5 exceeds 3");
    }

    #[test]
    fn samples_infinities_as_strings() {
        let v = evaluate_value("1d2", 1, 3);
        assert_eq!(v["curves"][0]["values"], json!([1, 1, "inf"]));
        assert_eq!(v["oracle"], Value::Null);
    }

    #[test]
    fn random_operands_are_reproducible_and_parse() {
        for seed in 0..50 {
            let v = random_operands_value(seed);
            assert_eq!(v, random_operands_value(seed));
            for side in ["left", "right"] {
                let s: Series = v[side].as_str().unwrap().parse().unwrap();
                assert!(s.is_periodic());
            }
            let expr = format!("({}) hadamard ({})", v["left"].as_str().unwrap(), v["right"].as_str().unwrap());
            assert_eq!(evaluate_value(&expr, -5, 40)["oracle"], true);
        }
    }

    #[test]
    fn string_exports() {
        let v: Value = serde_json::from_str(&evaluate("5d2 hadamard 3d2", 0, 3)).unwrap();
        assert_eq!(v["result"], "8d2");
        let v: Value = serde_json::from_str(&random_operands(1)).unwrap();
        assert!(v["left"].is_string());
    }
}
