use std::io::Write;

use crate::Result;

/// One iteration (synchronous runs) or one monitor sample (concurrent runs).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRow {
    pub t: usize,
    /// Pending mass `||h||_1`; for the power method, the L1 change of the iterate.
    pub h_l1: f64,
    /// Vertices whose pending mass is at or below the threshold.
    pub converged: usize,
    /// Share of non-converged pending mass held by non-dangling vertices.
    /// Undefined for concurrent samples and once nothing is left to push.
    pub alpha: Option<f64>,
    /// `sum (deg(v) + 1)` over non-converged vertices.
    pub work: u64,
    /// Cumulative vertex push operations.
    pub push_ops: u64,
    /// Cumulative single-edge pushes whose target is dangling.
    pub push_ops_dangling: u64,
    /// Milliseconds since the run started.
    pub wall_ms: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunTrace {
    pub rows: Vec<TraceRow>,
    pub push_ops_total: u64,
    pub push_ops_to_dangling: u64,
    /// Partitioning plus (for the two-phase engine) edge invalidation.
    pub preprocess_ms: f64,
    pub wall_ms: f64,
}

impl RunTrace {
    pub const CSV_HEADER: &'static str = "t,h_l1,converged,alpha,work,push_ops,push_ops_dangling,wall_ms";

    pub fn iterations(&self) -> usize {
        self.rows.len().saturating_sub(1)
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "{}", Self::CSV_HEADER)?;
        for r in &self.rows {
            let alpha = r.alpha.map(|a| format!("{a:.17e}")).unwrap_or_default();
            writeln!(
                out,
                "{},{:.17e},{},{},{},{},{},{:.3}",
                r.t, r.h_l1, r.converged, alpha, r.work, r.push_ops, r.push_ops_dangling, r.wall_ms
            )?;
        }
        Ok(())
    }
}
