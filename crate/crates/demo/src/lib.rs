//! Browser demo. Each export takes plain numbers and returns a JSON string;
//! the `*_json` functions hold the logic so they can be tested natively.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use cayley_core::abelian::{zn_cover, zn_graph};
use cayley_core::cayley::{ratio, DiameterReport};
use cayley_core::dihedral::{bit_string, coverage, dihedral_vectors, element_label, format_string};
use cayley_core::heisenberg::heisenberg_graph;

/// Largest `n` the abelian demo will BFS.
pub const MAX_DEMO_N: usize = 200_000;
/// Largest odd `k` the dihedral demo will tabulate.
pub const MAX_DEMO_K: usize = 101;
/// Largest prime the Heisenberg demo will BFS.
pub const MAX_DEMO_P: usize = 13;

#[derive(Serialize)]
struct CoverView {
    n: usize,
    base: usize,
    digit_bound: usize,
    set: Vec<usize>,
    report: DiameterReport,
}

#[derive(Serialize)]
struct StringRow {
    element: String,
    string: String,
}

#[derive(Serialize)]
struct DihedralView {
    k: usize,
    v_r: String,
    v_rinv: String,
    v_s: String,
    rows: Vec<StringRow>,
    ratio: String,
}

#[derive(Serialize)]
struct HeisenbergView {
    p: usize,
    report: DiameterReport,
    ratio: String,
}

fn to_json<T: Serialize>(v: &T) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

/// Digit cover of `Z_n` and the BFS distance histogram of its Cayley graph.
pub fn abelian_cover_json(n: usize) -> Result<String, String> {
    if n > MAX_DEMO_N {
        return Err(format!("n is limited to {MAX_DEMO_N} in the demo"));
    }
    let cover = zn_cover(n).map_err(|e| e.to_string())?;
    let report = zn_graph(&cover)
        .map_err(|e| e.to_string())?
        .diameter()
        .map_err(|e| e.to_string())?;
    to_json(&CoverView {
        n,
        base: cover.base,
        digit_bound: cover.digit_bound,
        set: cover.set,
        report,
    })
}

/// Good strings covering `D₂ₖ`, each checked for unimodularity.
pub fn dihedral_strings_json(k: usize) -> Result<String, String> {
    if k > MAX_DEMO_K {
        return Err(format!("k is limited to {MAX_DEMO_K} in the demo"));
    }
    let v = dihedral_vectors(k).map_err(|e| e.to_string())?;
    let table = coverage(k).map_err(|e| e.to_string())?;
    to_json(&DihedralView {
        k,
        v_r: bit_string(&v.v_r),
        v_rinv: bit_string(&v.v_rinv),
        v_s: bit_string(&v.v_s),
        rows: table
            .entries
            .iter()
            .map(|e| StringRow {
                element: element_label(k, e.element),
                string: format_string(&e.string),
            })
            .collect(),
        ratio: ratio(2 * k, 3, k).render(),
    })
}

/// BFS report for the diameter-3 Heisenberg construction at prime `p`.
pub fn heisenberg_json(p: usize) -> Result<String, String> {
    if p > MAX_DEMO_P {
        return Err(format!("p is limited to {MAX_DEMO_P} in the demo"));
    }
    let g = heisenberg_graph(p).map_err(|e| e.to_string())?;
    let report = g.diameter().map_err(|e| e.to_string())?;
    let ratio = format!("{}/{}³", report.order, report.degree);
    to_json(&HeisenbergView { p, report, ratio })
}

#[wasm_bindgen]
pub fn abelian_cover(n: usize) -> Result<String, JsValue> {
    abelian_cover_json(n).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn dihedral_strings(k: usize) -> Result<String, JsValue> {
    dihedral_strings_json(k).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn heisenberg(p: usize) -> Result<String, JsValue> {
    heisenberg_json(p).map_err(|e| JsValue::from_str(&e))
}
