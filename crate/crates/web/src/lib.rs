//! Browser bindings: threshold curves, classification and the partition LP.
//!
//! Every export returns a JSON string; errors become a rejected `JsValue`
//! holding the message. The `*_json` functions are the same logic without
//! the wasm boundary, so they are testable natively.

use serde_json::json;
use wasm_bindgen::prelude::*;

use ghzsep::exactmath::{format_rat, parse_rat, to_f64};
use ghzsep::lpsolve::{build_problem, solve};
use ghzsep::thresholds::{classify, figure1_data, ExactLp};

/// Largest `n` the page may request from the LP.
pub const WEB_LP_MAX_N: usize = 16;

pub fn curves_json(n_min: usize, n_max: usize, js: &[usize]) -> Result<String, String> {
    if n_max > 40 {
        return Err(format!("n_max = {n_max} exceeds 40"));
    }
    let rows = figure1_data(n_min, n_max, js).map_err(|e| e.to_string())?;
    let rows: Vec<_> = rows
        .iter()
        .map(|r| json!({ "n": r.n, "curve": r.curve, "p": format_rat(&r.p), "value": to_f64(&r.p) }))
        .collect();
    Ok(json!({ "rows": rows }).to_string())
}

pub fn classify_json(n: usize, k: usize, p: &str) -> Result<String, String> {
    if n > WEB_LP_MAX_N {
        return Err(format!("n = {n} exceeds {WEB_LP_MAX_N}"));
    }
    let p = parse_rat(p).map_err(|e| e.to_string())?;
    let v = classify(n, k, &p, &ExactLp).map_err(|e| e.to_string())?;
    let mut out = serde_json::to_value(&v).map_err(|e| e.to_string())?;
    out["sufficient_value"] = to_f64(&v.sufficient_bound).into();
    out["iff"] = v.source.is_iff().into();
    out["source_label"] = v.source.label().into();
    Ok(out.to_string())
}

pub fn lp_json(n: usize, k: usize) -> Result<String, String> {
    if n > WEB_LP_MAX_N {
        return Err(format!("n = {n} exceeds {WEB_LP_MAX_N}"));
    }
    let prob = build_problem(n, k).map_err(|e| e.to_string())?;
    let sol = solve(&prob).map_err(|e| e.to_string())?;
    let mut out = serde_json::to_value(sol.to_json()).map_err(|e| e.to_string())?;
    out["certificate"] = match sol.verify_certificate(&prob) {
        Ok(()) => "verified".into(),
        Err(e) => e.into(),
    };
    out["p_s_value"] = to_f64(&sol.p_s).into();
    Ok(out.to_string())
}

#[wasm_bindgen]
pub fn threshold_curves(n_min: usize, n_max: usize, js: Vec<usize>) -> Result<String, JsValue> {
    curves_json(n_min, n_max, &js).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn classify_state(n: usize, k: usize, p: &str) -> Result<String, JsValue> {
    classify_json(n, k, p).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn solve_lp(n: usize, k: usize) -> Result<String, JsValue> {
    lp_json(n, k).map_err(|e| JsValue::from_str(&e))
}
