//! Browser bindings. Each export is a thin wrapper over a plain function so the
//! logic also runs (and is tested) natively.

use std::collections::BTreeMap;

use sdist_core::formats::{ExactValue, ReportJson};
use sdist_core::{catalog, field, invariants, DistanceSpectrum, QuadExt};
use serde::Serialize;
use wasm_bindgen::prelude::*;

#[derive(Serialize)]
struct CatalogView {
    label: String,
    report: ReportJson,
    /// Pairs at the smallest distance, for drawing.
    edges: Vec<(usize, usize)>,
}

pub fn catalog_view(name: &str, param: i64) -> Result<String, String> {
    let key = match name {
        "paley" => "q",
        "cross-polytope" | "hypercube" => "d",
        _ => "n",
    };
    let params = BTreeMap::from([(key.to_string(), param)]);
    let entry = catalog::by_name(name, &params).map_err(|e| e.to_string())?;
    let report = invariants::analyze(&entry.payload).map_err(|e| e.to_string())?;
    let sdm = entry.payload.sdm().map_err(|e| e.to_string())?;
    let closest = report.spectrum.get(0).clone();
    let edges = sdm.pairs().filter(|(_, _, v)| **v == closest).map(|(i, j, _)| (i, j)).collect();
    let view = CatalogView { label: entry.label(), report: ReportJson::new(&report, Vec::new()), edges };
    Ok(serde_json::to_string(&view).expect("view serializes"))
}

/// `values` is a comma-separated list of positive rationals such as `"1, 3/2, 4"`.
pub fn k_values(values: &str) -> Result<String, String> {
    let parsed = values
        .split(',')
        .map(|t| field::parse_rational(t.trim()).map(QuadExt::from_rational))
        .collect::<sdist_core::Result<Vec<_>>>()
        .map_err(|e| e.to_string())?;
    let spec = DistanceSpectrum::from_values(parsed).map_err(|e| e.to_string())?;
    let k: Vec<ExactValue> = invariants::k_invariants(&spec).iter().map(ExactValue::from).collect();
    Ok(serde_json::to_string(&k).expect("k serializes"))
}

pub fn recover(k: &str, tol: f64) -> Result<String, String> {
    let ks = k
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| format!("`{}` is not an integer", t.trim())))
        .collect::<Result<Vec<_>, _>>()?;
    let gamma = invariants::recover_distances(&ks, tol).map_err(|e| e.to_string())?;
    Ok(gamma.iter().map(|&g| field::format_sig(g, 12)).collect::<Vec<_>>().join(", "))
}

#[wasm_bindgen(js_name = catalogView)]
pub fn catalog_view_js(name: &str, param: i32) -> Result<String, JsError> {
    catalog_view(name, i64::from(param)).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = kValues)]
pub fn k_values_js(values: &str) -> Result<String, JsError> {
    k_values(values).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = recoverSpectrum)]
pub fn recover_js(k: &str, tol: f64) -> Result<String, JsError> {
    recover(k, tol).map_err(|e| JsError::new(&e))
}
