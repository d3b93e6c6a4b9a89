use std::sync::atomic::{AtomicBool, Ordering};
use std::thread;
use std::time::Duration;

use super::atomic::MassState;
use super::initial_mass;
use super::partition::{partition_vertices, partition_weighted, PartitionStrategy};
use super::termination::{QuiescenceMonitor, WorkerCounters};
use super::trace::{RunTrace, TraceRow};
use crate::clock::Stopwatch;
use crate::graph::{Graph, Ifp2Graph, VertexClassification};
use crate::rank::{PageRankVector, RankMeta};
use crate::solver::SolverConfig;
use crate::{Error, Result};

/// Minimum spacing of monitor samples kept in the trace.
const SAMPLE_INTERVAL_MS: f64 = 1.0;
/// Samples may take at most this share of the monitor's wall time.
const SAMPLE_BUDGET: f64 = 0.1;
/// Monitor pause while some worker is still pushing.
const MONITOR_PAUSE: Duration = Duration::from_micros(100);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineOptions {
    pub workers: usize,
    pub strategy: PartitionStrategy,
}

impl EngineOptions {
    pub fn with_workers(workers: usize) -> Self {
        Self {
            workers,
            strategy: PartitionStrategy::default(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.workers == 0 {
            return Err(Error::InvalidConfig("worker count must be at least 1".into()));
        }
        Ok(())
    }
}

impl Default for EngineOptions {
    fn default() -> Self {
        Self::with_workers(thread::available_parallelism().map_or(1, |n| n.get()))
    }
}

trait Edges: Sync {
    fn targets(&self, v: usize) -> &[u32];
}

struct AllEdges<'a>(&'a Graph);

impl Edges for AllEdges<'_> {
    #[inline]
    fn targets(&self, v: usize) -> &[u32] {
        self.0.targets(v)
    }
}

struct LiveEdges<'a, 'g>(&'a Ifp2Graph<'g>);

impl Edges for LiveEdges<'_, '_> {
    #[inline]
    fn targets(&self, v: usize) -> &[u32] {
        self.0.live_targets(v)
    }
}

/// Everything the scanning phase needs, shared by reference.
struct PushPhase<'a, E> {
    edges: E,
    /// `c / deg(v)` with the original out-degree; zero for dangling vertices.
    weight: &'a [f64],
    /// Dangling targets of each vertex, for push accounting (empty when the
    /// phase never pushes into dangling vertices).
    dangling_out: &'a [u32],
    /// Vertices the monitor watches.
    universe: &'a [usize],
    degree: &'a [u32],
    state: &'a MassState,
    xi: f64,
}

struct PhaseOutcome {
    rows: Vec<TraceRow>,
    pushes: u64,
    dangling_pushes: u64,
}

#[derive(Default)]
struct Sample {
    h_l1: f64,
    converged: usize,
    work: u64,
}

impl<E: Edges> PushPhase<'_, E> {
    fn work(&self, set: &[usize], counters: &WorkerCounters, stop: &AtomicBool) {
        let pending = &self.state.pending;
        let reserved = &self.state.reserved;
        let mut pushes = 0u64;
        let mut dangling_pushes = 0u64;
        'run: loop {
            let mut idle = true;
            for (i, &v) in set.iter().enumerate() {
                if i % 1024 == 1023 && stop.load(Ordering::Relaxed) {
                    break 'run;
                }
                if pending[v].load(Ordering::SeqCst) <= self.xi {
                    continue;
                }
                idle = false;
                pushes += 1;
                counters.begin(pushes);
                let h = pending[v].swap(0.0, Ordering::SeqCst);
                let r = reserved[v].load(Ordering::Relaxed);
                reserved[v].store(r + h, Ordering::Relaxed);
                let share = self.weight[v] * h;
                for &t in self.edges.targets(v) {
                    pending[t as usize].fetch_add(share, Ordering::SeqCst);
                }
                if let Some(&d) = self.dangling_out.get(v) {
                    dangling_pushes += d as u64;
                }
                counters.end(pushes, dangling_pushes);
            }
            counters.set_idle(idle);
            if stop.load(Ordering::SeqCst) {
                break;
            }
            if idle {
                thread::yield_now();
            }
        }
    }

    /// Whether every watched vertex is at or below the threshold; the full
    /// statistics are gathered only when `detailed`.
    fn scan(&self, detailed: bool) -> (bool, Sample) {
        let mut clean = true;
        let mut s = Sample::default();
        for &v in self.universe {
            let h = self.state.pending[v].load(Ordering::SeqCst);
            if h > self.xi {
                clean = false;
                if !detailed {
                    break;
                }
                s.work += self.degree[v] as u64 + 1;
            } else {
                s.converged += 1;
            }
            s.h_l1 += h;
        }
        (clean, s)
    }

    /// Runs workers over `sets` until the monitor (this thread) certifies
    /// convergence.
    fn run(&self, sets: &[Vec<usize>], clock: &Stopwatch, t0: usize) -> PhaseOutcome {
        let counters: Vec<WorkerCounters> = sets.iter().map(|_| WorkerCounters::default()).collect();
        let stop = AtomicBool::new(false);
        let monitor = QuiescenceMonitor::new(&counters, &stop);
        let mut rows = Vec::new();
        let mut next_sample = 0.0;

        thread::scope(|scope| {
            for (set, c) in sets.iter().zip(&counters) {
                if set.is_empty() {
                    c.set_idle(true);
                    continue;
                }
                let stop = &stop;
                scope.spawn(move || self.work(set, c, stop));
            }
            loop {
                let now = clock.elapsed_ms();
                let detailed = now >= next_sample;
                if !detailed && !monitor.all_idle() {
                    thread::sleep(MONITOR_PAUSE);
                    continue;
                }
                let (done, sample) = monitor.check(|| self.scan(detailed));
                if done {
                    monitor.stop();
                    break;
                }
                if detailed {
                    let after = clock.elapsed_ms();
                    next_sample = after + SAMPLE_INTERVAL_MS.max((after - now) / SAMPLE_BUDGET);
                    rows.push(self.row(t0 + rows.len(), &sample, &monitor, now));
                }
                thread::yield_now();
            }
        });

        PhaseOutcome {
            rows,
            pushes: monitor.total_pushes(),
            dangling_pushes: monitor.total_dangling_pushes(),
        }
    }

    fn row(&self, t: usize, s: &Sample, monitor: &QuiescenceMonitor<'_>, wall_ms: f64) -> TraceRow {
        TraceRow {
            t,
            h_l1: s.h_l1,
            converged: s.converged,
            alpha: None,
            work: s.work,
            push_ops: monitor.total_pushes(),
            push_ops_dangling: monitor.total_dangling_pushes(),
            wall_ms,
        }
    }
}

fn push_weights(g: &Graph, c: f64) -> (Vec<f64>, Vec<u32>) {
    (0..g.vertex_count())
        .map(|v| match g.out_degree(v) {
            0 => (0.0, 0),
            d => (c / d as f64, d as u32),
        })
        .unzip()
}

fn final_row(
    t: usize,
    pending: &[f64],
    universe: &[usize],
    xi: f64,
    pushes: u64,
    dangling: u64,
    wall_ms: f64,
) -> TraceRow {
    TraceRow {
        t,
        h_l1: universe.iter().map(|&v| pending[v]).sum(),
        converged: universe.iter().filter(|&&v| pending[v] <= xi).count(),
        alpha: None,
        work: 0,
        push_ops: pushes,
        push_ops_dangling: dangling,
        wall_ms,
    }
}

/// Concurrent push over the non-dangling vertices with `opts.workers`
/// threads; returns `(reserved + pending)` normalized.
pub fn ifp1_run(
    g: &Graph,
    cls: &VertexClassification,
    cfg: &SolverConfig,
    opts: EngineOptions,
) -> Result<(PageRankVector, RunTrace)> {
    let n = g.vertex_count();
    cfg.validate(n)?;
    opts.validate()?;

    let prep = Stopwatch::start();
    let universe = cls.non_dangling();
    let partition = partition_vertices(g, &universe, opts.workers, opts.strategy)?;
    let (weight, degree) = push_weights(g, cfg.c);
    let dangling_out: Vec<u32> = (0..n)
        .map(|v| g.targets(v).iter().filter(|&&t| cls.is_dangling(t as usize)).count() as u32)
        .collect();
    let preprocess_ms = prep.elapsed_ms();

    let state = MassState::new(&initial_mass(cfg, n));
    let clock = Stopwatch::start();
    let phase = PushPhase {
        edges: AllEdges(g),
        weight: &weight,
        dangling_out: &dangling_out,
        universe: &universe,
        degree: &degree,
        state: &state,
        xi: cfg.xi,
    };
    let outcome = phase.run(&partition.sets, &clock, 0);
    let wall_ms = clock.elapsed_ms();

    let (reserved, pending) = state.into_vecs();
    let mut rows = outcome.rows;
    rows.push(final_row(
        rows.len(),
        &pending,
        &universe,
        cfg.xi,
        outcome.pushes,
        outcome.dangling_pushes,
        wall_ms,
    ));
    let values: Vec<f64> = reserved.iter().zip(&pending).map(|(r, h)| r + h).collect();
    let meta = RankMeta {
        algorithm: "ifp1".into(),
        c: cfg.c,
        xi: Some(cfg.xi),
        iterations: Some(rows.len()),
        raw_mass: None,
    };
    let trace = RunTrace {
        rows,
        push_ops_total: outcome.pushes,
        push_ops_to_dangling: outcome.dangling_pushes,
        preprocess_ms,
        wall_ms,
    };
    Ok((PageRankVector::new(values, meta).normalized(), trace))
}

/// Two-phase concurrent push on an edge-invalidated graph.
///
/// Phase 1 is [`ifp1_run`] restricted to live edges. Once the monitor
/// certifies it, each dangling vertex receives, exactly once,
/// `h_v + sum_{u in S(v)} c reserved_u / deg(u)`. Pending mass left on
/// non-dangling vertices (at most `xi` each) is dropped; the output is the
/// reserved mass normalized.
pub fn ifp2_run(pg: &Ifp2Graph<'_>, cfg: &SolverConfig, opts: EngineOptions) -> Result<(PageRankVector, RunTrace)> {
    let g = pg.base();
    let n = g.vertex_count();
    cfg.validate(n)?;
    opts.validate()?;

    let prep = Stopwatch::start();
    let universe: Vec<usize> = (0..n).filter(|&v| !pg.is_dangling(v)).collect();
    let phase1_sets = partition_vertices(g, &universe, opts.workers, opts.strategy)?;
    let dangling_idx: Vec<usize> = (0..pg.dangling().len()).collect();
    let phase2_sets = partition_weighted(&dangling_idx, opts.workers, opts.strategy, |k| {
        pg.dangling_sources(k).len() as u64 + 1
    })?;
    let (weight, degree) = push_weights(g, cfg.c);
    let preprocess_ms = prep.elapsed_ms();

    let state = MassState::new(&initial_mass(cfg, n));
    let clock = Stopwatch::start();
    let phase = PushPhase {
        edges: LiveEdges(pg),
        weight: &weight,
        dangling_out: &[],
        universe: &universe,
        degree: &degree,
        state: &state,
        xi: cfg.xi,
    };
    let outcome = phase.run(&phase1_sets.sets, &clock, 0);

    // Phase 2: non-dangling reserved mass is final from here on.
    let assemble = |set: &[usize]| -> u64 {
        let mut edges = 0u64;
        for &k in set {
            let v = pg.dangling()[k];
            let mut mass = state.pending[v].swap(0.0, Ordering::Relaxed);
            for &u in pg.dangling_sources(k) {
                mass += weight[u as usize] * state.reserved[u as usize].load(Ordering::Relaxed);
            }
            edges += pg.dangling_sources(k).len() as u64;
            state.reserved[v].store(mass, Ordering::Relaxed);
        }
        edges
    };
    let active: Vec<&Vec<usize>> = phase2_sets.sets.iter().filter(|s| !s.is_empty()).collect();
    let dangling_pushes: u64 = if active.len() <= 1 {
        active.iter().map(|s| assemble(s)).sum()
    } else {
        thread::scope(|scope| {
            let handles: Vec<_> = active.iter().map(|s| scope.spawn(|| assemble(s))).collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("phase-2 worker panicked"))
                .sum()
        })
    };
    let wall_ms = clock.elapsed_ms();

    let (reserved, pending) = state.into_vecs();
    let mut rows = outcome.rows;
    rows.push(final_row(
        rows.len(),
        &pending,
        &universe,
        cfg.xi,
        outcome.pushes,
        dangling_pushes,
        wall_ms,
    ));
    let meta = RankMeta {
        algorithm: "ifp2".into(),
        c: cfg.c,
        xi: Some(cfg.xi),
        iterations: Some(rows.len()),
        raw_mass: None,
    };
    let trace = RunTrace {
        rows,
        push_ops_total: outcome.pushes,
        push_ops_to_dangling: dangling_pushes,
        preprocess_ms,
        wall_ms,
    };
    Ok((PageRankVector::new(reserved, meta).normalized(), trace))
}
