//! Browser bindings for the static demo page in `www/`.
//!
//! Each export takes plain arguments and returns a JSON string; errors come
//! back as JS exceptions carrying the message.

use conjwidth::displacement::six_conjugates;
use conjwidth::freeprod::{z2z2_decompose, FPWord, FactorSpec};
use conjwidth::linear::bfs_width_fp;
use conjwidth::thompson::{bump, random_fprime, PL2Map};
use conjwidth::CommutatorList;
use serde::Serialize;
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Largest group the width demo will enumerate.
const WIDTH_LIMIT: usize = 20_000;

#[derive(Serialize)]
struct Graph {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

fn graph(f: &PL2Map) -> Graph {
    let (xs, ys) = f
        .points()
        .iter()
        .map(|(x, y)| (x.to_f64_lossy(), y.to_f64_lossy()))
        .unzip();
    Graph { xs, ys }
}

/// Runs the six-conjugate pipeline on a product of `pairs` random
/// commutators in `F'`, with the standard bump as `f`.
pub fn thompson_json(seed: u64, pairs: usize, complexity: usize) -> Result<String, String> {
    let f = bump();
    let base = seed.wrapping_mul(1_000_003);
    let h = CommutatorList::new(
        (0..pairs as u64)
            .map(|i| {
                (
                    random_fprime(base.wrapping_add(2 * i + 1), complexity),
                    random_fprime(base.wrapping_add(2 * i + 2), complexity),
                )
            })
            .collect(),
    );
    let out = six_conjugates(&h, &f).map_err(|e| e.to_string())?;
    let cert = &out.certificate;
    let j = out.trace.as_ref().map(|t| {
        [
            t.displacement.j.lo().to_f64_lossy(),
            t.displacement.j.hi().to_f64_lossy(),
        ]
    });
    let factors: Vec<_> = cert
        .factors
        .iter()
        .map(|c| graph(&c.value(&cert.base)))
        .collect();
    Ok(json!({
        "f": graph(&f),
        "h": graph(&cert.target),
        "j": j,
        "factor_count": cert.len(),
        "factors": factors,
        "verified": cert.verify(),
        "certificate": cert,
    })
    .to_string())
}

/// Decomposes a word such as `"a b a b"` in `Z2 * Z2`.
pub fn z2z2_json(word: &str) -> Result<String, String> {
    let spec = FactorSpec::z2z2();
    let w = FPWord::parse(&spec, word).map_err(|e| e.to_string())?;
    let cert = z2z2_decompose(&w).map_err(|e| e.to_string())?;
    let pieces: Vec<String> = cert
        .factors
        .iter()
        .map(|c| {
            format!(
                "({}) {} ({})^-1",
                c.conjugator,
                ["a", "b"][c.base],
                c.conjugator
            )
        })
        .collect();
    Ok(json!({
        "reduced": w.to_string(),
        "factor_count": cert.len(),
        "pieces": pieces,
        "verified": cert.verify(),
        "certificate": cert,
    })
    .to_string())
}

/// Ball sizes of `SL_n(F_p)` with respect to all transvections.
pub fn sl_width_json(n: usize, p: u32) -> Result<String, String> {
    let r = bfs_width_fp(n, p, WIDTH_LIMIT).map_err(|e| e.to_string())?;
    Ok(json!({ "n": n, "p": p, "width": r.width, "ball_sizes": r.ball_sizes }).to_string())
}

#[wasm_bindgen]
pub fn thompson_demo(seed: u32, pairs: u32, complexity: u32) -> Result<String, JsValue> {
    thompson_json(seed as u64, pairs as usize, complexity as usize)
        .map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn z2z2_demo(word: &str) -> Result<String, JsValue> {
    z2z2_json(word).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn sl_width_demo(n: u32, p: u32) -> Result<String, JsValue> {
    sl_width_json(n as usize, p).map_err(|e| JsValue::from_str(&e))
}
