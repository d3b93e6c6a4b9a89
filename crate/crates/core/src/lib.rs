//! Parallel PageRank through improved forward push.
//!
//! The crate is organised around four layers:
//!
//! * [`graph`]: compressed adjacency, SNAP edge-list loading, vertex
//!   classification (dangling / unreferenced and their weak variants) and the
//!   edge-invalidated form consumed by the two-phase engine.
//! * [`solver`]: reference PageRank computations (dense linear solve, power
//!   iteration, serial forward push, truncated series).
//! * [`engine`]: the concurrent push engines ([`engine::ifp1_run`],
//!   [`engine::ifp2_run`]) and a deterministic iteration-synchronous simulator
//!   used for analysis ([`engine::sync_simulate`]).
//! * [`bench`]: error metrics and experiment orchestration producing CSV
//!   reports.
//!
//! Mass convention: the push engines start every vertex with one unit of
//! pushing mass (scaled by `n * p_i` for a personalization vector `p`) and
//! reserve the whole mass of a processed vertex. The resulting reserved-mass
//! vector is proportional to `sum_r (cP)^r p`, which after normalization is the
//! PageRank vector with dangling columns patched by `p`.

// Negated comparisons reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod bench;
mod clock;
pub mod engine;
mod error;
pub mod graph;
pub mod rank;
pub mod solver;
pub mod synth;

#[cfg(feature = "cli")]
pub mod cli;

pub use error::{Error, Result};
pub use graph::{Graph, Ifp2Graph, StatsRow, VertexClassification};
pub use rank::PageRankVector;
pub use solver::SolverConfig;

/// Damping factor used throughout the experiments.
pub const DEFAULT_DAMPING: f64 = 0.85;
