//! Browser bindings. Every export takes strings and returns a JSON document.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use shuffle_core::algebraic::{dfao_from_kernel, kernel_closure, series_from_dfao};
use shuffle_core::rational::{exp_rational, rat_expand, rat_norm};
use shuffle_core::text::{parse_series, render_elem, render_rational, render_series};
use shuffle_core::{Field, RationalFunction, Series};

const MAX_ORDER: usize = 1 << 14;

#[derive(Serialize)]
struct Strip {
    /// Packed element indices in `0..q`, for colouring.
    values: Vec<u32>,
    text: String,
}

impl Strip {
    fn of(s: &Series) -> Strip {
        Strip { values: s.coeffs().iter().map(|c| c.packed()).collect(), text: render_series(s) }
    }
}

#[derive(Serialize)]
struct ExpLog {
    field: String,
    q: u32,
    op: &'static str,
    input: Strip,
    output: Strip,
    round_trip: bool,
}

#[derive(Serialize)]
struct Automaton {
    field: String,
    q: u32,
    dim: usize,
    verified_order: usize,
    states: usize,
    delta: Vec<Vec<usize>>,
    output: Vec<String>,
    input: Strip,
    generated: Strip,
}

#[derive(Serialize)]
struct Bell {
    field: String,
    q: u32,
    coeffs: Strip,
    rational: String,
    norm: usize,
}

fn setup(field: &str, order: usize) -> Result<Field, String> {
    if order == 0 || order > MAX_ORDER {
        return Err(format!("order must be in 1..={MAX_ORDER}"));
    }
    Field::parse(field).map_err(|e| e.to_string())
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

/// `exp_!` of a series in the maximal ideal, `log_!` of one with constant term 1.
pub fn exp_log(field: &str, expr: &str, order: usize) -> Result<String, String> {
    let f = setup(field, order)?;
    let a = parse_series(&f, expr, order).map_err(|e| e.to_string())?;
    let err = |e: shuffle_core::Error| e.to_string();
    let (op, out, back) = if a.in_maximal_ideal() {
        let e = a.exp_shriek().map_err(err)?;
        let back = e.log_shriek().map_err(err)?;
        ("exp", e, back)
    } else if a.in_one_plus_m() {
        let l = a.log_shriek().map_err(err)?;
        let back = l.exp_shriek().map_err(err)?;
        ("log", l, back)
    } else {
        return Err("constant term must be 0 (exp) or 1 (log)".into());
    };
    Ok(to_json(&ExpLog {
        field: f.spec(),
        q: f.cardinality(),
        op,
        input: Strip::of(&a),
        output: Strip::of(&out),
        round_trip: back == a,
    }))
}

/// p-kernel of a series and the automaton read off from it.
pub fn kernel_automaton(field: &str, expr: &str, order: usize, max_dim: usize) -> Result<String, String> {
    let f = setup(field, order)?;
    let a = parse_series(&f, expr, order).map_err(|e| e.to_string())?;
    let k = kernel_closure(&a, max_dim).map_err(|e| e.to_string())?;
    let d = dfao_from_kernel(&k).map_err(|e| e.to_string())?;
    let generated = series_from_dfao(&d, a.order()).map_err(|e| e.to_string())?;
    Ok(to_json(&Automaton {
        field: f.spec(),
        q: f.cardinality(),
        dim: k.dim(),
        verified_order: k.verified_order,
        states: d.states(),
        delta: d.delta.clone(),
        output: d.output.iter().map(|&c| render_elem(&f, c)).collect(),
        input: Strip::of(&a),
        generated: Strip::of(&generated),
    }))
}

/// Bell numbers in the field, with the rational function they expand from.
pub fn bell_reduction(field: &str, n: usize) -> Result<String, String> {
    let f = setup(field, n)?;
    let err = |e: shuffle_core::Error| e.to_string();
    let a = RationalFunction::from_ints(&f, &[0, 1], &[1, -1]).map_err(err)?;
    let coeffs = rat_expand(&a, n).map_err(err)?.exp_shriek().map_err(err)?;
    let r = exp_rational(&a, 1 << 10).map_err(err)?;
    Ok(to_json(&Bell { field: f.spec(), q: f.cardinality(), coeffs: Strip::of(&coeffs), rational: render_rational(&r), norm: rat_norm(&r) }))
}

#[wasm_bindgen(js_name = expLog)]
pub fn exp_log_js(field: &str, expr: &str, order: usize) -> Result<String, JsValue> {
    exp_log(field, expr, order).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = kernelAutomaton)]
pub fn kernel_automaton_js(field: &str, expr: &str, order: usize, max_dim: usize) -> Result<String, JsValue> {
    kernel_automaton(field, expr, order, max_dim).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = bellReduction)]
pub fn bell_reduction_js(field: &str, n: usize) -> Result<String, JsValue> {
    bell_reduction(field, n).map_err(|e| JsValue::from_str(&e))
}
