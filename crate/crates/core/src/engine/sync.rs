use std::fmt;
use std::str::FromStr;

use super::initial_mass;
use super::trace::{RunTrace, TraceRow};
use crate::clock::Stopwatch;
use crate::graph::{preprocess_ifp2, Graph, VertexClassification};
use crate::rank::{PageRankVector, RankMeta};
use crate::solver::SolverConfig;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SyncVariant {
    /// Full reservation; dangling vertices absorb their mass.
    Ifp1,
    /// Full reservation over live edges, then one dangling assembly step.
    Ifp2,
    /// Classic forward push: reserve `1 - c`, dangling vertices drop the rest.
    FpFull,
}

impl FromStr for SyncVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ifp1" => Ok(Self::Ifp1),
            "ifp2" => Ok(Self::Ifp2),
            "fp-full" | "fp" => Ok(Self::FpFull),
            other => Err(Error::InvalidConfig(format!("unknown simulator variant {other:?}"))),
        }
    }
}

impl fmt::Display for SyncVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Ifp1 => "ifp1",
            Self::Ifp2 => "ifp2",
            Self::FpFull => "fp-full",
        })
    }
}

/// Mass bookkeeping of one synchronous iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SyncStep {
    /// Pending mass on vertices above the threshold at the start.
    pub active_mass: f64,
    /// Mass that stays pending on non-dangling vertices after pushing,
    /// divided by `c`.
    pub retained_mass: f64,
    /// Pending mass at or below the threshold, carried over untouched.
    pub carryover: f64,
}

#[derive(Debug, Clone)]
pub struct SyncReport {
    pub rank: PageRankVector,
    pub trace: RunTrace,
    /// One entry per iteration that processed at least one vertex.
    pub steps: Vec<SyncStep>,
    /// Reserved mass after every iteration (first entry: all zero). Only
    /// filled by [`sync_simulate_detailed`] with `keep_history`.
    pub reserved_history: Vec<Vec<f64>>,
}

/// Iteration-synchronous push, single-threaded and bit-reproducible.
///
/// Iteration `t` processes every vertex with `h_i(t) > xi` against a snapshot
/// of `h(t)`, producing `h(t + 1)`. The trace records, per iteration:
/// `||h(t)||_1`, the converged count `|{i : h_i(t) <= xi}|`, `alpha(t)`, the
/// work `m(t) = sum (deg + 1)` over non-converged vertices, and cumulative
/// push counts. For `Ifp2`, `alpha(t)` is the share of active mass whose push
/// lands on live (non-dangling) targets, which plays the same role in
/// `||h(t+1)||_1 = c alpha(t) active(t) + carryover(t)`.
pub fn sync_simulate(
    g: &Graph,
    cls: &VertexClassification,
    cfg: &SolverConfig,
    variant: SyncVariant,
) -> Result<(PageRankVector, RunTrace)> {
    let report = sync_simulate_detailed(g, cls, cfg, variant, false)?;
    Ok((report.rank, report.trace))
}

pub fn sync_simulate_detailed(
    g: &Graph,
    cls: &VertexClassification,
    cfg: &SolverConfig,
    variant: SyncVariant,
    keep_history: bool,
) -> Result<SyncReport> {
    let n = g.vertex_count();
    cfg.validate(n)?;
    let c = cfg.c;
    let xi = cfg.xi;
    let clock = Stopwatch::start();

    let pg = (variant == SyncVariant::Ifp2).then(|| preprocess_ifp2(g, cls));
    let dangling_out: Vec<u64> = (0..n)
        .map(|v| g.targets(v).iter().filter(|&&t| cls.is_dangling(t as usize)).count() as u64)
        .collect();
    let reserve_share = match variant {
        SyncVariant::FpFull => 1.0 - c,
        _ => 1.0,
    };
    // Vertices the iteration may process.
    let eligible = |v: usize| variant != SyncVariant::Ifp2 || !cls.is_dangling(v);

    let mut h = initial_mass(cfg, n);
    let mut reserved = vec![0.0; n];
    let mut next = vec![0.0; n];
    let mut rows = Vec::new();
    let mut steps = Vec::new();
    let mut history = Vec::new();
    let mut push_ops = 0u64;
    let mut dangling_pushes = 0u64;
    if keep_history {
        history.push(reserved.clone());
    }

    loop {
        let mut h_l1 = 0.0;
        let mut active_mass = 0.0;
        let mut retained = 0.0;
        let mut carryover = 0.0;
        let mut converged = 0;
        let mut work = 0u64;
        for v in 0..n {
            if !eligible(v) {
                continue;
            }
            let x = h[v];
            h_l1 += x;
            if x > xi {
                active_mass += x;
                work += g.out_degree(v) as u64 + 1;
                let live = match &pg {
                    Some(pg) => pg.live_targets(v).len(),
                    None => g.out_degree(v),
                };
                if live > 0 {
                    retained += x * live as f64 / g.out_degree(v) as f64;
                }
            } else {
                carryover += x;
                converged += 1;
            }
        }
        rows.push(TraceRow {
            t: rows.len(),
            h_l1,
            converged,
            alpha: (active_mass > 0.0).then(|| retained / active_mass),
            work,
            push_ops,
            push_ops_dangling: dangling_pushes,
            wall_ms: clock.elapsed_ms(),
        });
        if active_mass == 0.0 {
            break;
        }
        steps.push(SyncStep {
            active_mass,
            retained_mass: retained,
            carryover,
        });

        next.copy_from_slice(&h);
        for v in 0..n {
            let x = h[v];
            if !eligible(v) || x <= xi {
                continue;
            }
            next[v] -= x;
            reserved[v] += reserve_share * x;
            let deg = g.out_degree(v);
            if deg == 0 {
                continue;
            }
            push_ops += 1;
            let share = c * x / deg as f64;
            match &pg {
                Some(pg) => {
                    for &t in pg.live_targets(v) {
                        next[t as usize] += share;
                    }
                }
                None => {
                    for &t in g.targets(v) {
                        next[t as usize] += share;
                    }
                    dangling_pushes += dangling_out[v];
                }
            }
        }
        std::mem::swap(&mut h, &mut next);
        if keep_history {
            history.push(reserved.clone());
        }
    }

    let values = match (&pg, variant) {
        (Some(pg), _) => {
            for (k, &v) in pg.dangling().iter().enumerate() {
                let mut mass = h[v];
                for &u in pg.dangling_sources(k) {
                    let u = u as usize;
                    mass += c * reserved[u] / g.out_degree(u) as f64;
                }
                h[v] = 0.0;
                reserved[v] = mass;
                dangling_pushes += pg.dangling_sources(k).len() as u64;
            }
            if keep_history {
                history.push(reserved.clone());
            }
            rows.push(TraceRow {
                t: rows.len(),
                push_ops,
                push_ops_dangling: dangling_pushes,
                wall_ms: clock.elapsed_ms(),
                ..*rows.last().expect("at least one row")
            });
            reserved.clone()
        }
        (None, SyncVariant::FpFull) => reserved.clone(),
        (None, _) => reserved.iter().zip(&h).map(|(r, x)| r + x).collect(),
    };

    let wall_ms = clock.elapsed_ms();
    let meta = RankMeta {
        algorithm: format!("sync-{variant}"),
        c,
        xi: Some(xi),
        iterations: Some(steps.len()),
        raw_mass: None,
    };
    let trace = RunTrace {
        rows,
        push_ops_total: push_ops,
        push_ops_to_dangling: dangling_pushes,
        preprocess_ms: 0.0,
        wall_ms,
    };
    Ok(SyncReport {
        rank: PageRankVector::new(values, meta).normalized(),
        trace,
        steps,
        reserved_history: history,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::classify;
    use crate::graph::fixtures::*;

    fn run(g: &Graph, variant: SyncVariant, xi: f64) -> SyncReport {
        sync_simulate_detailed(g, &classify(g), &SolverConfig::with_xi(xi), variant, true).unwrap()
    }

    #[test]
    fn cycle_decays_by_c() {
        let r = run(&cycle2(), SyncVariant::Ifp1, 1e-12);
        let rows = &r.trace.rows;
        for w in rows.windows(2).take(20) {
            assert!((w[1].h_l1 / w[0].h_l1 - 0.85).abs() < 1e-12);
            assert_eq!(w[0].alpha, Some(1.0));
        }
    }

    #[test]
    fn star_first_step() {
        // Only vertex 0's unit of mass (a quarter of the total) keeps moving.
        let r = run(&star(), SyncVariant::Ifp1, 1e-12);
        let rows = &r.trace.rows;
        assert_eq!(rows[0].h_l1, 4.0);
        assert_eq!(rows[0].alpha, Some(0.25));
        assert!((rows[1].h_l1 / rows[0].h_l1 - 0.2125).abs() < 1e-15);
    }

    #[test]
    fn bit_identical_runs() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (4, 5), (5, 4), (1, 5)]).unwrap();
        for variant in [SyncVariant::Ifp1, SyncVariant::Ifp2, SyncVariant::FpFull] {
            let a = run(&g, variant, 1e-9);
            let b = run(&g, variant, 1e-9);
            assert_eq!(a.rank.values, b.rank.values);
            assert_eq!(a.trace.rows.len(), b.trace.rows.len());
        }
    }

    #[test]
    fn reserved_mass_never_decreases() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4)]).unwrap();
        for variant in [SyncVariant::Ifp1, SyncVariant::Ifp2, SyncVariant::FpFull] {
            let r = run(&g, variant, 1e-10);
            for w in r.reserved_history.windows(2) {
                assert!(w[0].iter().zip(&w[1]).all(|(a, b)| a <= b));
            }
        }
    }

    #[test]
    fn ifp2_counts_each_dangling_edge_once() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 0), (0, 2), (1, 2), (1, 3)]).unwrap();
        let r1 = run(&g, SyncVariant::Ifp1, 1e-10);
        let r2 = run(&g, SyncVariant::Ifp2, 1e-10);
        assert_eq!(r2.trace.push_ops_to_dangling, 3);
        assert!(r1.trace.push_ops_to_dangling >= 3);
        let gap = r1
            .rank
            .values
            .iter()
            .zip(&r2.rank.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(gap < 1e-8);
    }

    #[test]
    fn variant_names() {
        for s in ["ifp1", "ifp2", "fp-full"] {
            assert_eq!(s.parse::<SyncVariant>().unwrap().to_string(), s);
        }
    }
}
