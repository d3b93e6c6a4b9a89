use std::ops::{ControlFlow, Range};

use super::SolverConfig;
use crate::clock::Stopwatch;
use crate::engine::{RunTrace, TraceRow};
use crate::graph::{Graph, InAdjacency};
use crate::rank::{PageRankVector, RankMeta};
use crate::{Error, Result};

/// Iteration count of the reference vector used for error measurement.
pub const REFERENCE_ITERATIONS: usize = 210;

/// Pull-side data for the power method: the transpose, inverse degrees and a
/// destination partition balanced by in-edges.
#[derive(Debug, Clone)]
pub struct PowerPrep {
    rev: InAdjacency,
    inv_deg: Vec<f64>,
    dangling: Vec<usize>,
    chunks: Vec<Range<usize>>,
}

impl PowerPrep {
    pub fn new(g: &Graph, workers: usize) -> Self {
        let n = g.vertex_count();
        let rev = g.transpose();
        let inv_deg = (0..n)
            .map(|v| match g.out_degree(v) {
                0 => 0.0,
                d => 1.0 / d as f64,
            })
            .collect();
        let dangling = (0..n).filter(|&v| g.is_dangling(v)).collect();
        let chunks = balanced_ranges(n, workers.max(1), |v| rev.in_degree(v) + 1);
        Self {
            rev,
            inv_deg,
            dangling,
            chunks,
        }
    }

    pub fn chunks(&self) -> &[Range<usize>] {
        &self.chunks
    }
}

/// Splits `0..n` into at most `k` contiguous ranges of roughly equal weight.
fn balanced_ranges(n: usize, k: usize, weight: impl Fn(usize) -> usize) -> Vec<Range<usize>> {
    let total: usize = (0..n).map(&weight).sum();
    let mut ranges = Vec::with_capacity(k);
    let mut start = 0;
    let mut acc = 0usize;
    for v in 0..n {
        acc += weight(v);
        let boundary = total * (ranges.len() + 1) / k;
        if acc >= boundary && ranges.len() + 1 < k {
            ranges.push(start..v + 1);
            start = v + 1;
        }
    }
    ranges.push(start..n);
    ranges.retain(|r| !r.is_empty());
    if ranges.is_empty() {
        ranges.push(0..n);
    }
    ranges
}

#[derive(Debug, Clone, Copy, Default)]
struct Partial {
    total: f64,
    dangling: f64,
    diff: f64,
}

/// Power iteration with the dangling correction folded into the restart term:
/// `pi <- c P pi + (c d^T pi + 1 - c) p`, renormalized after every step.
///
/// With `workers > 1` the product is computed per destination range on a
/// dedicated thread pool; partial sums are combined in range order, so the
/// result does not depend on scheduling.
pub fn power_method(g: &Graph, cfg: &SolverConfig, workers: usize) -> Result<(PageRankVector, RunTrace)> {
    power_method_observed(g, cfg, workers, |_, _| ControlFlow::Continue(()))
}

/// [`power_method`] calling `observer(k, pi_k)` after every iteration; a
/// `Break` ends the run after that iteration. Time spent in the observer is
/// excluded from the trace.
pub fn power_method_observed<F>(
    g: &Graph,
    cfg: &SolverConfig,
    workers: usize,
    mut observer: F,
) -> Result<(PageRankVector, RunTrace)>
where
    F: FnMut(usize, &[f64]) -> ControlFlow<()>,
{
    let n = g.vertex_count();
    cfg.validate(n)?;
    if workers == 0 {
        return Err(Error::InvalidConfig("worker count must be at least 1".into()));
    }
    let prep_clock = Stopwatch::start();
    let prep = PowerPrep::new(g, workers);
    let preprocess_ms = prep_clock.elapsed_ms();

    let pool = make_pool(workers)?;
    let p = cfg.restart(n);
    let c = cfg.c;
    let mut cur = p.clone();
    let mut next = vec![0.0; n];
    // `flow[u] = cur[u] / deg(u)`, refreshed by the rescale pass.
    let mut flow: Vec<f64> = cur.iter().zip(&prep.inv_deg).map(|(x, w)| x * w).collect();
    let mut dsum: f64 = prep.dangling.iter().map(|&v| cur[v]).sum();

    let mut trace = RunTrace {
        preprocess_ms,
        ..Default::default()
    };
    let work_per_iter = (g.edge_count() + n) as u64;
    trace.rows.push(TraceRow {
        t: 0,
        h_l1: f64::NAN,
        converged: 0,
        alpha: None,
        work: work_per_iter,
        push_ops: 0,
        push_ops_dangling: 0,
        wall_ms: 0.0,
    });

    let mut elapsed = 0.0;
    let mut k = 0;
    while k < cfg.max_iterations {
        let clock = Stopwatch::start();
        let coef = c * dsum + (1.0 - c);
        let parts = run_chunks(&pool, &prep, &mut next, None, |range, out, _| {
            multiply_chunk(&prep, c, coef, &p, &flow, range, out)
        });
        let total: f64 = parts.iter().map(|q| q.total).sum();
        let scale = 1.0 / total;
        let parts = run_chunks(&pool, &prep, &mut next, Some(&mut flow), |range, out, flow| {
            rescale_chunk(&prep, scale, &cur, range, out, flow.expect("flow slice"))
        });
        dsum = parts.iter().map(|q| q.dangling).sum();
        let diff: f64 = parts.iter().map(|q| q.diff).sum();
        std::mem::swap(&mut cur, &mut next);
        k += 1;
        elapsed += clock.elapsed_ms();

        let flow_control = observer(k, &cur);
        trace.rows.push(TraceRow {
            t: k,
            h_l1: diff,
            converged: 0,
            alpha: None,
            work: work_per_iter,
            push_ops: 0,
            push_ops_dangling: 0,
            wall_ms: elapsed,
        });
        if diff < cfg.tolerance || flow_control.is_break() {
            break;
        }
    }
    trace.wall_ms = elapsed;

    let meta = RankMeta {
        algorithm: if workers > 1 { "mpi" } else { "spi" }.into(),
        c,
        xi: None,
        iterations: Some(k),
        raw_mass: None,
    };
    Ok((PageRankVector::new(cur, meta), trace))
}

fn multiply_chunk(
    prep: &PowerPrep,
    c: f64,
    coef: f64,
    p: &[f64],
    flow: &[f64],
    range: Range<usize>,
    out: &mut [f64],
) -> Partial {
    let mut total = 0.0;
    for (slot, v) in out.iter_mut().zip(range) {
        let pulled: f64 = prep.rev.sources(v).iter().map(|&u| flow[u as usize]).sum();
        let x = c * pulled + coef * p[v];
        *slot = x;
        total += x;
    }
    Partial {
        total,
        ..Default::default()
    }
}

fn rescale_chunk(
    prep: &PowerPrep,
    scale: f64,
    cur: &[f64],
    range: Range<usize>,
    out: &mut [f64],
    flow: &mut [f64],
) -> Partial {
    let mut dangling = 0.0;
    let mut diff = 0.0;
    for ((slot, f), v) in out.iter_mut().zip(flow.iter_mut()).zip(range) {
        *slot *= scale;
        *f = *slot * prep.inv_deg[v];
        diff += (*slot - cur[v]).abs();
        if prep.inv_deg[v] == 0.0 {
            dangling += *slot;
        }
    }
    Partial {
        dangling,
        diff,
        ..Default::default()
    }
}

#[cfg(feature = "parallel")]
type Pool = Option<rayon::ThreadPool>;
#[cfg(not(feature = "parallel"))]
type Pool = Option<()>;

#[cfg(feature = "parallel")]
fn make_pool(workers: usize) -> Result<Pool> {
    if workers == 1 {
        return Ok(None);
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map(Some)
        .map_err(|e| Error::InvalidConfig(format!("cannot start {workers} workers: {e}")))
}

#[cfg(not(feature = "parallel"))]
fn make_pool(_workers: usize) -> Result<Pool> {
    Ok(None)
}

type Chunk<'a> = (Range<usize>, &'a mut [f64], Option<&'a mut [f64]>);

/// Applies `f` to every destination range with its slices of `out` and of
/// `aux`; partial results come back in range order.
fn run_chunks<F>(pool: &Pool, prep: &PowerPrep, out: &mut [f64], aux: Option<&mut [f64]>, f: F) -> Vec<Partial>
where
    F: Fn(Range<usize>, &mut [f64], Option<&mut [f64]>) -> Partial + Sync,
{
    let mut slices: Vec<Chunk<'_>> = Vec::with_capacity(prep.chunks.len());
    let mut rest = out;
    let mut aux_rest = aux;
    for r in &prep.chunks {
        let (head, tail) = rest.split_at_mut(r.len());
        let aux_head = match aux_rest.take() {
            Some(a) => {
                let (h, t) = a.split_at_mut(r.len());
                aux_rest = Some(t);
                Some(h)
            }
            None => None,
        };
        slices.push((r.clone(), head, aux_head));
        rest = tail;
    }
    match pool {
        #[cfg(feature = "parallel")]
        Some(pool) => {
            use rayon::prelude::*;
            pool.install(|| slices.into_par_iter().map(|(r, s, a)| f(r, s, a)).collect())
        }
        _ => slices.into_iter().map(|(r, s, a)| f(r, s, a)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::solver::dense_oracle;

    #[test]
    fn zero_iterations_returns_restart() {
        let cfg = SolverConfig {
            max_iterations: 0,
            ..Default::default()
        };
        let (v, trace) = power_method(&chain3(), &cfg, 1).unwrap();
        assert_eq!(v.values, vec![1.0 / 3.0; 3]);
        assert_eq!(trace.iterations(), 0);
    }

    #[test]
    fn cycle_is_fixed() {
        let (v, _) = power_method(&cycle2(), &SolverConfig::default(), 1).unwrap();
        assert_eq!(v.values, vec![0.5, 0.5]);
    }

    #[test]
    fn chain_matches_oracle() {
        let cfg = SolverConfig::default();
        let oracle = dense_oracle(&chain3(), &cfg).unwrap();
        for workers in [1, 2, 3] {
            let (v, _) = power_method(&chain3(), &cfg, workers).unwrap();
            for (a, b) in v.values.iter().zip(&oracle.values) {
                assert!((a - b).abs() <= 1e-12, "{a} vs {b}");
            }
            assert!((v.sum() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn tolerance_stops_early() {
        let cfg = SolverConfig {
            tolerance: 1e-6,
            ..Default::default()
        };
        let (v, trace) = power_method(&chain3(), &cfg, 1).unwrap();
        assert!(v.meta.iterations.unwrap() < REFERENCE_ITERATIONS);
        assert!(trace.rows.last().unwrap().h_l1 < 1e-6);
    }

    #[test]
    fn balanced_ranges_cover_everything() {
        let r = balanced_ranges(10, 3, |_| 1);
        assert_eq!(r.iter().map(|x| x.len()).sum::<usize>(), 10);
        assert_eq!(r.len(), 3);
        assert_eq!(balanced_ranges(2, 8, |_| 1).len(), 2);
        assert_eq!(balanced_ranges(0, 2, |_| 1), vec![0..0]);
    }

    #[test]
    fn parallel_is_deterministic() {
        let edges: Vec<(usize, usize)> = (0..200).map(|i| (i % 37, (i * 7 + 3) % 41)).collect();
        let g = Graph::from_edges(41, &edges).unwrap();
        let cfg = SolverConfig::default();
        let (a, _) = power_method(&g, &cfg, 4).unwrap();
        let (b, _) = power_method(&g, &cfg, 4).unwrap();
        assert_eq!(a.values, b.values);
    }
}
