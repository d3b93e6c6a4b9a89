//! Push engines.
//!
//! Every vertex starts with `h_i = n p_i` pending mass (one unit for uniform
//! `p`) and no reserved mass. Processing a vertex moves its whole pending mass
//! into its reserved mass and pushes `c h_i / deg(v_i)` to each target.
//! Dangling vertices never push, so their mass is final as soon as it
//! arrives.
//!
//! * [`ifp1_run`] scans non-dangling vertices concurrently until a monitor
//!   certifies that none holds more than `xi`.
//! * [`ifp2_run`] additionally withholds pushes into dangling vertices during
//!   the concurrent phase and assembles dangling mass once from the reserved
//!   mass of their sources.
//! * [`sync_simulate`] runs the same rules iteration by iteration against a
//!   snapshot, single-threaded, for analysis and as an oracle.

mod atomic;
mod concurrent;
mod partition;
mod sync;
mod termination;
mod trace;

pub use atomic::{AtomicF64, MassState};
pub use concurrent::{ifp1_run, ifp2_run, EngineOptions};
pub use partition::{partition_vertices, partition_weighted, Partition, PartitionStrategy};
pub use sync::{sync_simulate, sync_simulate_detailed, SyncReport, SyncStep, SyncVariant};
pub use termination::{QuiescenceMonitor, WorkerCounters};
pub use trace::{RunTrace, TraceRow};

use crate::solver::SolverConfig;

/// Initial pending mass `n p_i`.
pub(crate) fn initial_mass(cfg: &SolverConfig, n: usize) -> Vec<f64> {
    match &cfg.personalization {
        Some(p) => p.iter().map(|&x| x * n as f64).collect(),
        None => vec![1.0; n],
    }
}
