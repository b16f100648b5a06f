//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Every export takes a machine source (a fixture name or machine JSON)
//! and returns a JSON document. The same functions are available natively
//! through [`api`].

pub mod api;

use wasm_bindgen::prelude::*;

fn js(result: Result<String, String>) -> Result<String, JsValue> {
    result.map_err(|e| JsValue::from_str(&e))
}

/// Space-time diagram of a run from the blank tape.
#[wasm_bindgen]
pub fn simulate(machine: &str, state: &str, steps: u32) -> Result<String, JsValue> {
    js(api::simulate(machine, state, steps as usize))
}

/// Cycle and zigzag classification over all windows of `radius`.
#[wasm_bindgen]
pub fn classify(machine: &str, radius: u32, horizon: u32, width: u32) -> Result<String, JsValue> {
    js(api::classify(machine, radius.into(), horizon as usize, width.into()))
}

/// Compares a trace recognizer of width `width` against brute force.
#[wasm_bindgen]
pub fn equivalence(machine: &str, language: &str, width: u32, n_max: u32) -> Result<String, JsValue> {
    js(api::equivalence(machine, language, width as usize, n_max as usize))
}

/// Names of the built-in fixtures.
#[wasm_bindgen]
pub fn fixtures() -> String {
    serde_json::to_string(api::FIXTURES).expect("static list")
}
