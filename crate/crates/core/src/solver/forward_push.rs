use super::SolverConfig;
use crate::graph::Graph;
use crate::rank::{PageRankVector, RankMeta};
use crate::{Error, Result};

/// Largest graph accepted in [`DanglingMode::Redistribute`]: every dangling
/// push fans out to all `n` vertices.
pub const REDISTRIBUTE_LIMIT: usize = 100_000;

/// What a dangling vertex does with the `c` share of its mass.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DanglingMode {
    /// Drop it (random walk ends at the dangling vertex).
    Terminate,
    /// Spread it over all vertices according to `p` (the `P'` walk).
    Redistribute,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PushState {
    pub reserved: Vec<f64>,
    pub pending: Vec<f64>,
    pub pushes: u64,
    pub passes: usize,
}

/// Serial forward push starting from `h = p`: a vertex holding more than `xi`
/// reserves `1 - c` of it and pushes `c h / deg` to each target. Vertices are
/// scanned in ascending id order, pass after pass, until no vertex exceeds
/// the threshold.
pub fn forward_push_state(g: &Graph, cfg: &SolverConfig, mode: DanglingMode) -> Result<PushState> {
    let n = g.vertex_count();
    cfg.validate(n)?;
    if mode == DanglingMode::Redistribute && n > REDISTRIBUTE_LIMIT {
        return Err(Error::Refused(format!(
            "redistributing dangling mass costs O(n) per push; {n} vertices exceed {REDISTRIBUTE_LIMIT}"
        )));
    }
    let c = cfg.c;
    let p = cfg.restart(n);
    let mut reserved = vec![0.0; n];
    let mut pending = p.clone();
    let mut pushes = 0u64;
    let mut passes = 0;

    loop {
        let mut active = false;
        for v in 0..n {
            let h = pending[v];
            if h <= cfg.xi {
                continue;
            }
            active = true;
            pushes += 1;
            pending[v] = 0.0;
            reserved[v] += (1.0 - c) * h;
            let targets = g.targets(v);
            if !targets.is_empty() {
                let share = c * h / targets.len() as f64;
                for &t in targets {
                    pending[t as usize] += share;
                }
            } else if mode == DanglingMode::Redistribute {
                for (slot, &pj) in pending.iter_mut().zip(&p) {
                    *slot += c * h * pj;
                }
            }
        }
        if !active {
            break;
        }
        passes += 1;
    }

    Ok(PushState {
        reserved,
        pending,
        pushes,
        passes,
    })
}

/// Reserved mass of [`forward_push_state`], not normalized; `meta.raw_mass`
/// holds its total.
pub fn forward_push_ppr(g: &Graph, cfg: &SolverConfig, mode: DanglingMode) -> Result<PageRankVector> {
    let state = forward_push_state(g, cfg, mode)?;
    let total: f64 = state.reserved.iter().sum();
    let meta = RankMeta {
        algorithm: match mode {
            DanglingMode::Terminate => "fp-terminate",
            DanglingMode::Redistribute => "fp",
        }
        .into(),
        c: cfg.c,
        xi: Some(cfg.xi),
        iterations: Some(state.passes),
        raw_mass: Some(total),
    };
    Ok(PageRankVector::new(state.reserved, meta))
}
