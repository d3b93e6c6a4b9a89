//! Error metrics and experiment orchestration.
//!
//! Timed runs never overlap: the orchestrator is single-threaded and each
//! engine parallelizes internally. Wall times are medians over repetitions
//! and exclude graph loading; preprocessing is reported in its own column.

mod metrics;
mod reference;

pub use metrics::{max_relative_error, ErrorReport};
pub use reference::ReferenceCache;

use std::cell::OnceCell;
use std::fmt;
use std::io::Write;
use std::ops::ControlFlow;
use std::str::FromStr;

use crate::clock::Stopwatch;
use crate::engine::{ifp1_run, ifp2_run, sync_simulate, EngineOptions, PartitionStrategy, RunTrace, SyncVariant};
use crate::graph::{classify, preprocess_ifp2, Graph, VertexClassification};
use crate::rank::PageRankVector;
use crate::solver::{
    forward_push_ppr, power_method, power_method_observed, DanglingMode, SolverConfig, REFERENCE_ITERATIONS,
};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    /// Serial power method.
    Spi,
    /// Parallel power method.
    Mpi,
    /// Serial forward push, dangling mass redistributed.
    Fp,
    Ifp1,
    Ifp2,
    /// Synchronous simulator, IFP1 rules.
    SyncSim,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [Self::Spi, Self::Mpi, Self::Fp, Self::Ifp1, Self::Ifp2, Self::SyncSim];

    pub fn name(&self) -> &'static str {
        match self {
            Self::Spi => "spi",
            Self::Mpi => "mpi",
            Self::Fp => "fp",
            Self::Ifp1 => "ifp1",
            Self::Ifp2 => "ifp2",
            Self::SyncSim => "sync-sim",
        }
    }

    fn is_power(&self) -> bool {
        matches!(self, Self::Spi | Self::Mpi)
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown algorithm {s:?}")))
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A graph plus its classification and a lazily computed reference vector.
pub struct Dataset {
    pub name: String,
    pub graph: Graph,
    pub classification: VertexClassification,
    pub c: f64,
    reference: OnceCell<Vec<f64>>,
}

impl Dataset {
    pub fn new(name: impl Into<String>, graph: Graph) -> Self {
        let classification = classify(&graph);
        Self {
            name: name.into(),
            graph,
            classification,
            c: crate::DEFAULT_DAMPING,
            reference: OnceCell::new(),
        }
    }

    pub fn with_reference(self, reference: Vec<f64>) -> Self {
        let _ = self.reference.set(reference);
        self
    }

    /// 210-iteration power method vector, computed on first use.
    pub fn reference(&self) -> Result<&[f64]> {
        if let Some(r) = self.reference.get() {
            return Ok(r);
        }
        let v = reference_vector(&self.graph, self.c, default_workers())?;
        Ok(self.reference.get_or_init(|| v))
    }

    pub fn err(&self, est: &PageRankVector) -> Result<f64> {
        Ok(max_relative_error(&est.values, self.reference()?)?.max_relative_error)
    }
}

pub fn reference_vector(g: &Graph, c: f64, workers: usize) -> Result<Vec<f64>> {
    let cfg = SolverConfig {
        c,
        max_iterations: REFERENCE_ITERATIONS,
        tolerance: 0.0,
        ..SolverConfig::default()
    };
    Ok(power_method(g, &cfg, workers)?.0.values)
}

pub fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Result of a single timed run.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub rank: PageRankVector,
    pub trace: RunTrace,
    pub wall_ms: f64,
    pub preprocess_ms: f64,
}

/// Runs one algorithm once. For the power methods `xi` is the L1 stopping
/// tolerance; for serial forward push it is applied per unit of initial mass
/// (`xi / n` on the `p` scale), matching the push engines.
pub fn run_algorithm(
    ds: &Dataset,
    algorithm: Algorithm,
    xi: f64,
    workers: usize,
    strategy: PartitionStrategy,
) -> Result<RunOutcome> {
    let g = &ds.graph;
    let n = g.vertex_count();
    let cfg = SolverConfig {
        c: ds.c,
        xi,
        ..SolverConfig::default()
    };
    let opts = EngineOptions { workers, strategy };
    match algorithm {
        Algorithm::Spi | Algorithm::Mpi => {
            let k = if algorithm == Algorithm::Spi { 1 } else { workers };
            let cfg = SolverConfig { tolerance: xi, ..cfg };
            let (rank, trace) = power_method(g, &cfg, k)?;
            Ok(RunOutcome {
                wall_ms: trace.wall_ms,
                preprocess_ms: trace.preprocess_ms,
                rank,
                trace,
            })
        }
        Algorithm::Fp => {
            let cfg = SolverConfig {
                xi: xi / n as f64,
                ..cfg
            };
            let clock = Stopwatch::start();
            let rank = forward_push_ppr(g, &cfg, DanglingMode::Redistribute)?.normalized();
            let wall_ms = clock.elapsed_ms();
            Ok(RunOutcome {
                rank,
                trace: RunTrace {
                    wall_ms,
                    ..Default::default()
                },
                wall_ms,
                preprocess_ms: 0.0,
            })
        }
        Algorithm::Ifp1 => {
            let (rank, trace) = ifp1_run(g, &ds.classification, &cfg, opts)?;
            Ok(RunOutcome {
                wall_ms: trace.wall_ms,
                preprocess_ms: trace.preprocess_ms,
                rank,
                trace,
            })
        }
        Algorithm::Ifp2 => {
            let clock = Stopwatch::start();
            let pg = preprocess_ifp2(g, &ds.classification);
            let invalidate_ms = clock.elapsed_ms();
            let (rank, trace) = ifp2_run(&pg, &cfg, opts)?;
            Ok(RunOutcome {
                wall_ms: trace.wall_ms,
                preprocess_ms: trace.preprocess_ms + invalidate_ms,
                rank,
                trace,
            })
        }
        Algorithm::SyncSim => {
            let (rank, trace) = sync_simulate(g, &ds.classification, &cfg, SyncVariant::Ifp1)?;
            Ok(RunOutcome {
                wall_ms: trace.wall_ms,
                preprocess_ms: 0.0,
                rank,
                trace,
            })
        }
    }
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let m = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[m]
    } else {
        0.5 * (xs[m - 1] + xs[m])
    }
}

/// Runs `reps` times (at least once) and keeps the run with median wall time.
pub fn timed_median(
    ds: &Dataset,
    algorithm: Algorithm,
    xi: f64,
    workers: usize,
    strategy: PartitionStrategy,
    reps: usize,
) -> Result<RunOutcome> {
    let mut runs = Vec::new();
    for _ in 0..reps.max(1) {
        runs.push(run_algorithm(ds, algorithm, xi, workers, strategy)?);
    }
    let wall = median(runs.iter().map(|r| r.wall_ms).collect());
    let pre = median(runs.iter().map(|r| r.preprocess_ms).collect());
    runs.sort_by(|a, b| a.wall_ms.total_cmp(&b.wall_ms));
    let mut chosen = runs.swap_remove(runs.len() / 2);
    chosen.wall_ms = wall;
    chosen.preprocess_ms = pre;
    Ok(chosen)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub dataset: String,
    pub algorithm: Algorithm,
    pub xi: f64,
    pub threads: usize,
    pub err: f64,
    pub wall_ms: f64,
    pub preprocess_ms: f64,
    pub iterations: usize,
    /// More workers than logical processors.
    pub oversubscribed: bool,
}

impl SweepRow {
    pub const CSV_HEADER: &'static str =
        "dataset,algorithm,xi,threads,err,wall_ms,preprocess_ms,iterations,oversubscribed";

    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{:e},{},{:e},{:.3},{:.3},{},{}",
            self.dataset,
            self.algorithm,
            self.xi,
            self.threads,
            self.err,
            self.wall_ms,
            self.preprocess_ms,
            self.iterations,
            self.oversubscribed
        )
    }
}

fn sweep_row(ds: &Dataset, algorithm: Algorithm, xi: f64, threads: usize, run: &RunOutcome) -> Result<SweepRow> {
    Ok(SweepRow {
        dataset: ds.name.clone(),
        algorithm,
        xi,
        threads,
        err: ds.err(&run.rank)?,
        wall_ms: run.wall_ms,
        preprocess_ms: run.preprocess_ms,
        iterations: run.trace.iterations(),
        oversubscribed: threads > default_workers(),
    })
}

/// One row per `(algorithm, xi)`, algorithms in the given order.
pub fn sweep_xi(
    ds: &Dataset,
    algorithms: &[Algorithm],
    xis: &[f64],
    workers: usize,
    strategy: PartitionStrategy,
    reps: usize,
) -> Result<Vec<SweepRow>> {
    ds.reference()?;
    let mut rows = Vec::new();
    for &a in algorithms {
        for &xi in xis {
            let run = timed_median(ds, a, xi, workers, strategy, reps)?;
            rows.push(sweep_row(ds, a, xi, workers, &run)?);
        }
    }
    Ok(rows)
}

/// One row per worker count.
pub fn sweep_parallelism(
    ds: &Dataset,
    algorithm: Algorithm,
    worker_counts: &[usize],
    xi: f64,
    strategy: PartitionStrategy,
    reps: usize,
) -> Result<Vec<SweepRow>> {
    ds.reference()?;
    worker_counts
        .iter()
        .map(|&k| {
            let run = timed_median(ds, algorithm, xi, k, strategy, reps)?;
            sweep_row(ds, algorithm, xi, k, &run)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub dataset: String,
    pub algorithm: Algorithm,
    pub threads: usize,
    pub target_err: f64,
    /// Median wall time of the cheapest setting reaching the target.
    pub wall_ms: f64,
    pub preprocess_ms: f64,
    pub err: f64,
    /// `iterations=k` for power methods, `xi=...` for push methods.
    pub setting: String,
    /// False when no tried setting got below the target.
    pub reached: bool,
}

impl ComparisonRow {
    pub const CSV_HEADER: &'static str =
        "dataset,algorithm,threads,target_err,wall_ms,preprocess_ms,err,setting,reached";

    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{:e},{:.3},{:.3},{:e},{},{}",
            self.dataset,
            self.algorithm,
            self.threads,
            self.target_err,
            self.wall_ms,
            self.preprocess_ms,
            self.err,
            self.setting,
            self.reached
        )
    }
}

/// Thresholds tried, coarsest first, when looking for the cheapest push run.
pub const XI_LADDER: [f64; 15] = [
    1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 1e-9, 1e-10, 1e-11, 1e-12, 1e-13, 1e-14, 1e-15,
];

/// For each algorithm, the smallest median wall time whose run reaches
/// `ERR < target_err`.
pub fn compare_algorithms(
    ds: &Dataset,
    algorithms: &[Algorithm],
    target_err: f64,
    workers: usize,
    strategy: PartitionStrategy,
    reps: usize,
) -> Result<Vec<ComparisonRow>> {
    let reference = ds.reference()?.to_vec();
    let mut rows = Vec::new();
    for &a in algorithms {
        let threads = if matches!(a, Algorithm::Spi | Algorithm::Fp | Algorithm::SyncSim) {
            1
        } else {
            workers
        };
        let row = if a.is_power() {
            compare_power(ds, &reference, a, threads, target_err, reps)?
        } else {
            compare_push(ds, a, threads, strategy, target_err, reps)?
        };
        rows.push(row);
    }
    Ok(rows)
}

fn compare_power(
    ds: &Dataset,
    reference: &[f64],
    algorithm: Algorithm,
    threads: usize,
    target_err: f64,
    reps: usize,
) -> Result<ComparisonRow> {
    let cfg = SolverConfig {
        c: ds.c,
        ..SolverConfig::default()
    };
    let mut times = Vec::new();
    let mut hit: Option<(usize, f64)> = None;
    let mut preprocess = Vec::new();
    for _ in 0..reps.max(1) {
        let mut first: Option<(usize, f64)> = None;
        let (_, trace) = power_method_observed(&ds.graph, &cfg, threads, |k, pi| {
            match max_relative_error(pi, reference) {
                Ok(r) if r.max_relative_error < target_err => {
                    first = Some((k, r.max_relative_error));
                    ControlFlow::Break(())
                }
                _ => ControlFlow::Continue(()),
            }
        })?;
        preprocess.push(trace.preprocess_ms);
        if let Some((k, err)) = first {
            times.push(trace.rows[k].wall_ms);
            hit = Some((k, err));
        }
    }
    let (setting, err, reached) = match hit {
        Some((k, e)) => (format!("iterations={k}"), e, true),
        None => (format!("iterations>{REFERENCE_ITERATIONS}"), f64::NAN, false),
    };
    Ok(ComparisonRow {
        dataset: ds.name.clone(),
        algorithm,
        threads,
        target_err,
        wall_ms: if times.is_empty() { f64::NAN } else { median(times) },
        preprocess_ms: median(preprocess),
        err,
        setting,
        reached,
    })
}

fn compare_push(
    ds: &Dataset,
    algorithm: Algorithm,
    threads: usize,
    strategy: PartitionStrategy,
    target_err: f64,
    reps: usize,
) -> Result<ComparisonRow> {
    for xi in XI_LADDER {
        let probe = run_algorithm(ds, algorithm, xi, threads, strategy)?;
        let err = ds.err(&probe.rank)?;
        if err < target_err {
            let run = timed_median(ds, algorithm, xi, threads, strategy, reps)?;
            return Ok(ComparisonRow {
                dataset: ds.name.clone(),
                algorithm,
                threads,
                target_err,
                wall_ms: run.wall_ms,
                preprocess_ms: run.preprocess_ms,
                err: ds.err(&run.rank)?,
                setting: format!("xi={xi:e}"),
                reached: true,
            });
        }
    }
    Ok(ComparisonRow {
        dataset: ds.name.clone(),
        algorithm,
        threads,
        target_err,
        wall_ms: f64::NAN,
        preprocess_ms: f64::NAN,
        err: f64::NAN,
        setting: "xi<1e-15".into(),
        reached: false,
    })
}

/// Algorithms sorted by wall time, e.g. `ifp2 <= ifp1 < mpi < spi`;
/// unreached rows are left out.
pub fn ordering(rows: &[ComparisonRow]) -> String {
    let mut reached: Vec<&ComparisonRow> = rows.iter().filter(|r| r.reached).collect();
    reached.sort_by(|a, b| a.wall_ms.total_cmp(&b.wall_ms));
    let mut out = String::new();
    for (i, r) in reached.iter().enumerate() {
        if i > 0 {
            out.push_str(if reached[i - 1].wall_ms == r.wall_ms {
                " <= "
            } else {
                " < "
            });
        }
        out.push_str(r.algorithm.name());
    }
    out
}

pub fn write_csv<W: Write, T>(mut out: W, header: &str, rows: &[T], row: impl Fn(&T) -> String) -> Result<()> {
    writeln!(out, "{header}")?;
    for r in rows {
        writeln!(out, "{}", row(r))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle() -> Dataset {
        Dataset::new("cycle", Graph::from_edges(2, &[(0, 1), (1, 0)]).unwrap())
    }

    #[test]
    fn algorithm_names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
        assert!("pagerank".parse::<Algorithm>().is_err());
    }

    #[test]
    fn cycle_all_algorithms_exact() {
        let ds = cycle();
        let rows = sweep_xi(&ds, &Algorithm::ALL, &[1e-12], 2, PartitionStrategy::default(), 1).unwrap();
        assert_eq!(rows.len(), Algorithm::ALL.len());
        for r in rows {
            assert!(r.err <= 1e-10, "{} err {}", r.algorithm, r.err);
        }
    }

    #[test]
    fn sweep_cardinality() {
        let ds = cycle();
        let algos = [Algorithm::Ifp1, Algorithm::Ifp2];
        let xis = [1e-2, 1e-4, 1e-6];
        let rows = sweep_xi(&ds, &algos, &xis, 1, PartitionStrategy::default(), 1).unwrap();
        assert_eq!(rows.len(), 6);
        assert_eq!(rows[4].algorithm, Algorithm::Ifp2);
        assert_eq!(rows[4].xi, 1e-4);
    }

    #[test]
    fn loose_target_is_reached_by_everyone() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        let ds = Dataset::new("small", g);
        let algos = [Algorithm::Spi, Algorithm::Mpi, Algorithm::Ifp1, Algorithm::Ifp2];
        let rows = compare_algorithms(&ds, &algos, 1.0, 2, PartitionStrategy::default(), 1).unwrap();
        assert!(rows.iter().all(|r| r.reached));
        assert_eq!(rows[0].setting, "iterations=1");
        assert_eq!(rows[2].setting, "xi=1e-1");
        assert_eq!(ordering(&rows).matches("spi").count(), 1);
    }

    #[test]
    fn median_of_even_and_odd() {
        assert_eq!(median(vec![3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(vec![4.0, 1.0]), 2.5);
    }
}
