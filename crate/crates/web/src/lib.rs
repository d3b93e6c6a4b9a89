//! Browser demo: three experiments on a seeded synthetic graph, each
//! returning a JSON document for `www/app.js` to draw.
//!
//! Everything here is single-threaded (iteration-synchronous simulator and
//! serial solvers), so it runs unchanged on `wasm32-unknown-unknown`.

use pushrank::bench::max_relative_error;
use pushrank::engine::{sync_simulate, sync_simulate_detailed, SyncVariant};
use pushrank::graph::{classify, stats};
use pushrank::solver::power_method;
use pushrank::synth::{generate, SynthSpec};
use pushrank::{Graph, SolverConfig};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest graph the page may request.
pub const MAX_VERTICES: usize = 50_000;
pub const MAX_EDGES: usize = 500_000;

fn graph(n: usize, m: usize, dangling_fraction: f64, seed: u64) -> Result<Graph, String> {
    if n > MAX_VERTICES || m > MAX_EDGES {
        return Err(format!(
            "demo graphs are limited to {MAX_VERTICES} vertices and {MAX_EDGES} edges"
        ));
    }
    generate(&SynthSpec::new(n, m, dangling_fraction, seed)).map_err(|e| e.to_string())
}

/// ERR against the 210-iteration power method for thresholds `1e-2 .. 1e-12`,
/// for the one-phase and two-phase variants.
pub fn xi_sweep_value(n: usize, m: usize, dangling_fraction: f64, seed: u64) -> Result<Value, String> {
    let g = graph(n, m, dangling_fraction, seed)?;
    let cls = classify(&g);
    let (reference, _) = power_method(&g, &SolverConfig::default(), 1).map_err(|e| e.to_string())?;
    let xis: Vec<f64> = (2..=12).map(|k| 10f64.powi(-k)).collect();
    let mut series = serde_json::Map::new();
    for variant in [SyncVariant::Ifp1, SyncVariant::Ifp2] {
        let mut errs = Vec::with_capacity(xis.len());
        for &xi in &xis {
            let (rank, _) = sync_simulate(&g, &cls, &SolverConfig::with_xi(xi), variant).map_err(|e| e.to_string())?;
            let err = max_relative_error(&rank.values, &reference.values).map_err(|e| e.to_string())?;
            errs.push(err.max_relative_error);
        }
        series.insert(variant.to_string(), json!(errs));
    }
    Ok(json!({ "xi": xis, "err": series }))
}

/// Per-iteration `||h||_1`, `alpha`, converged count and work of the
/// one-phase simulator.
pub fn residual_trace_value(n: usize, m: usize, dangling_fraction: f64, seed: u64, xi: f64) -> Result<Value, String> {
    let g = graph(n, m, dangling_fraction, seed)?;
    let cls = classify(&g);
    let r = sync_simulate_detailed(&g, &cls, &SolverConfig::with_xi(xi), SyncVariant::Ifp1, false)
        .map_err(|e| e.to_string())?;
    let rows = &r.trace.rows;
    Ok(json!({
        "n": g.vertex_count(),
        "c": pushrank::DEFAULT_DAMPING,
        "t": rows.iter().map(|r| r.t).collect::<Vec<_>>(),
        "h_l1": rows.iter().map(|r| r.h_l1).collect::<Vec<_>>(),
        "alpha": rows.iter().map(|r| r.alpha).collect::<Vec<_>>(),
        "converged": rows.iter().map(|r| r.converged).collect::<Vec<_>>(),
        "work": rows.iter().map(|r| r.work).collect::<Vec<_>>(),
    }))
}

/// Push counts of the one-phase and two-phase simulators next to the
/// graph's dangling statistics.
pub fn work_comparison_value(n: usize, m: usize, dangling_fraction: f64, seed: u64, xi: f64) -> Result<Value, String> {
    let g = graph(n, m, dangling_fraction, seed)?;
    let cls = classify(&g);
    let row = stats("synthetic", &g, &cls);
    let cfg = SolverConfig::with_xi(xi);
    let mut out = serde_json::Map::new();
    for variant in [SyncVariant::Ifp1, SyncVariant::Ifp2] {
        let (_, trace) = sync_simulate(&g, &cls, &cfg, variant).map_err(|e| e.to_string())?;
        let work: u64 = trace.rows.iter().map(|r| r.work).sum();
        out.insert(
            variant.to_string(),
            json!({
                "push_ops": trace.push_ops_total,
                "push_ops_to_dangling": trace.push_ops_to_dangling,
                "iterations": trace.iterations(),
                "work": work,
            }),
        );
    }
    Ok(json!({
        "n": row.n,
        "m": row.m,
        "n_d": row.n_d,
        "m_d": row.m_d,
        "runs": out,
    }))
}

fn to_js(v: Result<Value, String>) -> Result<String, JsError> {
    v.map(|v| v.to_string()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn xi_sweep(n: usize, m: usize, dangling_fraction: f64, seed: u64) -> Result<String, JsError> {
    to_js(xi_sweep_value(n, m, dangling_fraction, seed))
}

#[wasm_bindgen]
pub fn residual_trace(n: usize, m: usize, dangling_fraction: f64, seed: u64, xi: f64) -> Result<String, JsError> {
    to_js(residual_trace_value(n, m, dangling_fraction, seed, xi))
}

#[wasm_bindgen]
pub fn work_comparison(n: usize, m: usize, dangling_fraction: f64, seed: u64, xi: f64) -> Result<String, JsError> {
    to_js(work_comparison_value(n, m, dangling_fraction, seed, xi))
}
