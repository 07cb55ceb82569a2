//! WebAssembly bindings for the static demo page in `www/`. Each export
//! takes plain strings or numbers and returns a JSON string carrying either
//! `"ok": true` and a result or `"ok": false` and an error message.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use trilie::algebra::{basis, BasisIndex};
use trilie::expr::{self, Value as ExprValue};
use trilie::models;
use trilie::structure;
use trilie::{HalfInt, Scalar};

fn reply(r: Result<Value, String>) -> String {
    match r {
        Ok(mut v) => {
            v["ok"] = json!(true);
            v.to_string()
        }
        Err(e) => json!({ "ok": false, "error": e }).to_string(),
    }
}

/// Parses and evaluates an expression; returns its canonical form and value.
#[wasm_bindgen]
pub fn eval_expr(src: &str) -> String {
    reply((|| {
        let tree = expr::parse(src).map_err(|e| e.to_string())?;
        let value = tree.eval().map_err(|e| e.to_string())?;
        let kind = match value {
            ExprValue::Scalar(_) => "scalar",
            ExprValue::Element(_) => "element",
        };
        Ok(json!({ "canonical": tree.to_string(), "kind": kind, "value": value.to_string() }))
    })())
}

/// The generator word of `L_{l,m}^r`, with a check that it multiplies back.
#[wasm_bindgen]
pub fn decompose(l: &str, m: &str, r: &str) -> String {
    reply((|| {
        let half = |s: &str| s.trim().parse::<HalfInt>().map_err(|e| e.to_string());
        let idx = BasisIndex::new(half(l)?, half(m)?, half(r)?);
        let word = structure::decompose(&idx);
        let factors: Vec<Value> = word
            .nonzero()
            .into_iter()
            .map(|(g, e)| json!({ "generator": g.to_string(), "power": e }))
            .collect();
        Ok(json!({
            "index": idx.to_string(),
            "factors": factors,
            "verified": word.evaluate() == basis(idx),
        }))
    })())
}

/// Exhaustive fundamental-identity scan of W3 with parameter `z` (a scalar
/// expression) on basis indices in `[-window, window]`.
#[wasm_bindgen]
pub fn w3_scan(z: &str, window: u32) -> String {
    reply((|| {
        if window > 3 {
            return Err("window is capped at 3 in the browser".to_string());
        }
        let z: Scalar = z.parse().map_err(|e: trilie::Error| e.to_string())?;
        let hit = models::w3_fi_scan(&z, window as i64);
        Ok(json!({
            "z": z.to_string(),
            "window": window,
            "holds": hit.is_none(),
            "counterexample": hit.map(|q| q.iter().map(|b| b.to_string()).collect::<Vec<_>>()),
        }))
    })())
}
