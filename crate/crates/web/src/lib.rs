//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Each export takes plain numbers and returns a JSON string; the page calls `JSON.parse`.
//! The same functions are available natively through [`demo`].

pub mod demo;

use wasm_bindgen::prelude::*;

fn js(r: pwlab::Result<String>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e.to_string()))
}

/// A seeded input `f` and `f∘φ` sampled on `[−x_max, x_max]`.
#[wasm_bindgen]
pub fn composition_curves(a: f64, c: f64, d_re: f64, d_im: f64, seed: u32, x_max: f64, points: u32) -> Result<String, JsValue> {
    let symbol = demo::SymbolInput { a, c, d_re, d_im };
    js(demo::composition_curves(&symbol, seed as u64, x_max, points as usize))
}

/// Closed-form spectrum, its boundary, the spectral radius and the norm bounds.
#[wasm_bindgen]
pub fn spectrum(a: f64, c: f64, d_re: f64, d_im: f64, boundary_points: u32) -> Result<String, JsValue> {
    let symbol = demo::SymbolInput { a, c, d_re, d_im };
    js(demo::spectrum(&symbol, boundary_points as usize))
}

/// Orbit norms, Cesàro averages and the property flags.
#[wasm_bindgen]
pub fn orbit_growth(a: f64, c: f64, d_re: f64, d_im: f64, seed: u32, n_max: u32) -> Result<String, JsValue> {
    let symbol = demo::SymbolInput { a, c, d_re, d_im };
    js(demo::orbit_growth(&symbol, seed as u64, n_max))
}
