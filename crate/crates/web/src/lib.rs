//! Browser bindings for the demo page in `www/`. Each export returns a JSON
//! string; the `*_json` functions behind them are plain Rust so they can be
//! tested natively.

use occupancy::bounds::tree_occupancy;
use occupancy::exact::{format_rational, int, parse_rational, rat, to_f64};
use occupancy::graph::{generate, Family};
use occupancy::polynomials::{kdd_occupancy, occupancy};
use occupancy::{hardcore_lp, matching_lp, Rational};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Curve points beyond this are refused; each one is an exact computation.
pub const MAX_POINTS: u32 = 80;

fn fugacity(text: &str) -> Result<Rational, String> {
    let l = parse_rational(text).map_err(|e| e.to_string())?;
    if l > int(0) {
        Ok(l)
    } else {
        Err("λ must be positive".into())
    }
}

fn json<T: Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string(value).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct Curves {
    graph: String,
    d: usize,
    lambdas: Vec<f64>,
    occupancy: Vec<f64>,
    kdd: Vec<f64>,
    /// Midpoint of the tree bracket; absent for `d < 2`.
    tree: Option<Vec<f64>>,
}

/// `α_G`, `α_{K_{d,d}}` and `α_{T_d}` at `λ = k·λ_max/points`, `k = 1..=points`.
pub fn occupancy_curves_json(graph: &str, lambda_max: &str, points: u32) -> Result<String, String> {
    let family: Family = graph.parse().map_err(|e: occupancy::Error| e.to_string())?;
    let g = generate(&family).map_err(|e| e.to_string())?;
    let d = g.regular_degree().ok_or("graph is not regular")?;
    let max = fugacity(lambda_max)?;
    if points == 0 || points > MAX_POINTS {
        return Err(format!("points must lie in 1..={MAX_POINTS}"));
    }
    let tol = rat(1, 1 << 24);
    let mut c = Curves {
        graph: family.to_string(),
        d,
        lambdas: Vec::new(),
        occupancy: Vec::new(),
        kdd: Vec::new(),
        tree: (d >= 2).then(Vec::new),
    };
    for k in 1..=points {
        let l = &max * rat(k as i64, points as i64);
        c.lambdas.push(to_f64(&l));
        c.occupancy.push(to_f64(&occupancy(&g, &l).map_err(|e| e.to_string())?));
        c.kdd.push(to_f64(&kdd_occupancy(d, &l)));
        if let Some(tree) = c.tree.as_mut() {
            tree.push(tree_occupancy(d, &l, &tol).map_err(|e| e.to_string())?.midpoint());
        }
    }
    json(&c)
}

pub fn hardcore_slacks_json(d: usize, lambda: &str) -> Result<String, String> {
    let l = fugacity(lambda)?;
    json(&hardcore_lp::certificate_report(d, &l).map_err(|e| e.to_string())?)
}

#[derive(Serialize)]
struct FTable {
    d: usize,
    lambda: String,
    rows: Vec<matching_lp::FRow>,
    closed_form_last: String,
    certificate_valid: bool,
    slacks: Vec<occupancy::certificate::SlackEntry>,
}

pub fn matching_f_table_json(d: usize, lambda: &str) -> Result<String, String> {
    let l = fugacity(lambda)?;
    let c = matching_lp::certify(d, &l).map_err(|e| e.to_string())?;
    json(&FTable {
        d,
        lambda: format_rational(&l),
        certificate_valid: c.passed(),
        closed_form_last: format_rational(&c.f_last_closed_form),
        rows: c.f_table,
        slacks: c.report.slacks,
    })
}

fn to_js(r: Result<String, String>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn occupancy_curves(graph: &str, lambda_max: &str, points: u32) -> Result<String, JsValue> {
    to_js(occupancy_curves_json(graph, lambda_max, points))
}

#[wasm_bindgen]
pub fn hardcore_slacks(d: usize, lambda: &str) -> Result<String, JsValue> {
    to_js(hardcore_slacks_json(d, lambda))
}

#[wasm_bindgen]
pub fn matching_f_table(d: usize, lambda: &str) -> Result<String, JsValue> {
    to_js(matching_f_table_json(d, lambda))
}
