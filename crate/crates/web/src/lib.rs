//! Browser bindings. Every entry point takes and returns JSON text so the page
//! sees exactly the payloads of `POST /api/compute` and `GET /api/algorithms`.

use proxigraph_core::compute::{catalog, ComputeRequest, MAX_POINTS};
use proxigraph_core::io::{OutputFormat, Palette};
use serde_json::json;
use wasm_bindgen::prelude::*;

fn error(name: &str, detail: impl ToString) -> String {
    json!({ "error": name, "detail": detail.to_string() }).to_string()
}

fn run(request: &str, format: OutputFormat, with_svg: bool) -> String {
    let request: ComputeRequest = match serde_json::from_str(request) {
        Ok(r) => r,
        Err(e) => return error("MalformedRequest", e),
    };
    match request.run() {
        Ok((ps, outcome)) => {
            let bytes = match format {
                OutputFormat::Json => outcome.to_json(&ps, with_svg),
                other => outcome.render(&ps, other),
            };
            String::from_utf8(bytes).expect("writers emit UTF-8")
        }
        Err(e) => error(e.name(), e),
    }
}

/// Result JSON for a compute request, with an `svg` field when `with_svg`.
/// Failures come back as `{"error": ..., "detail": ...}`.
#[wasm_bindgen]
pub fn compute(request: &str, with_svg: bool) -> String {
    run(request, OutputFormat::Json, with_svg)
}

/// The request's result as an Ipe document, or an error object.
#[wasm_bindgen]
pub fn compute_ipe(request: &str) -> String {
    run(request, OutputFormat::Ipe, false)
}

#[wasm_bindgen]
pub fn algorithms() -> String {
    serde_json::to_string(&catalog()).expect("catalog serializes")
}

#[wasm_bindgen]
pub fn max_points() -> usize {
    MAX_POINTS
}

/// Hex color of palette slot `index`, as used for cluster `index`.
#[wasm_bindgen]
pub fn palette_hex(index: usize) -> String {
    Palette::color(index).hex()
}
