//! Browser bindings: scan a small group, analyze one of its subgroups, or
//! analyze `Q[x]/(x² − d)` over `Q`.

use wasm_bindgen::prelude::*;

use bialgd_core::algebra::{named, quadratic, subgroup_extension, PermGroup, RingExtension, DEFAULT_SCAN_CAP};
use bialgd_core::linalg::Field;
use bialgd_core::report::{analyze, render_json, render_text, Checks};
use bialgd_core::scan::subgroup_scan;

/// Largest |d| accepted by the quadratic demo.
const MAX_D: i32 = 1000;

fn group(name: &str) -> Result<PermGroup, String> {
    let (degree, gens) = named::by_name(name).ok_or_else(|| format!("unknown group `{name}`"))?;
    PermGroup::from_cycle_lists(degree, &gens, DEFAULT_SCAN_CAP).map_err(|e| e.to_string())
}

pub fn scan_json(name: &str) -> Result<String, String> {
    let g = group(name)?;
    subgroup_scan(&g, Field::Rational, DEFAULT_SCAN_CAP).map(|doc| render_json(&doc)).map_err(|e| e.to_string())
}

/// `row` indexes subgroups in scan order.
pub fn subgroup_report(name: &str, row: usize, seed: u64) -> Result<String, String> {
    let g = group(name)?;
    let subs = g.subgroups();
    let h = subs.get(row).ok_or_else(|| format!("{name} has {} subgroups, no row {row}", subs.len()))?;
    let ext = subgroup_extension(&g, h, Field::Rational).map_err(|e| e.to_string())?;
    Ok(render_text(&analyze(&ext, Checks::all(), seed)))
}

pub fn quadratic_report(d: i32, seed: u64) -> Result<String, String> {
    if d.abs() > MAX_D {
        return Err(format!("|d| must be at most {MAX_D}"));
    }
    let ext = RingExtension::over_scalars(quadratic(Field::Rational, d.into()));
    Ok(render_text(&analyze(&ext, Checks::all(), seed)))
}

/// JSON scan of a named group (`C2`, `C3`, `C4`, `S3`, `D4`, `Q8`, ...).
#[wasm_bindgen]
pub fn scan_group(name: &str) -> Result<String, JsError> {
    scan_json(name).map_err(|e| JsError::new(&e))
}

/// Text report for one subgroup of a named group.
#[wasm_bindgen]
pub fn analyze_subgroup(name: &str, row: usize, seed: u32) -> Result<String, JsError> {
    subgroup_report(name, row, seed.into()).map_err(|e| JsError::new(&e))
}

/// Text report for `Q[x]/(x² − d) | Q`.
#[wasm_bindgen]
pub fn analyze_quadratic(d: i32, seed: u32) -> Result<String, JsError> {
    quadratic_report(d, seed.into()).map_err(|e| JsError::new(&e))
}
