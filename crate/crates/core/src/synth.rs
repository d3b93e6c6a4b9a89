//! Seeded synthetic directed graphs with a controlled share of dangling
//! vertices.

use std::io::Write;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthSpec {
    pub n: usize,
    pub m: usize,
    /// Share of vertices without out-edges, in `[0, 1)`.
    pub dangling_fraction: f64,
    pub seed: u64,
    /// Add a spanning tree first so the graph is weakly connected.
    pub connected: bool,
}

impl SynthSpec {
    pub fn new(n: usize, m: usize, dangling_fraction: f64, seed: u64) -> Self {
        Self {
            n,
            m,
            dangling_fraction,
            seed,
            connected: false,
        }
    }

    pub fn dangling_count(&self) -> usize {
        (self.dangling_fraction * self.n as f64).round() as usize
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.n == 0 {
            return bad("n must be positive".into());
        }
        if self.n > u32::MAX as usize {
            return bad(format!("n = {} exceeds u32 ids", self.n));
        }
        if !(0.0..1.0).contains(&self.dangling_fraction) {
            return bad(format!("dangling fraction {} not in [0, 1)", self.dangling_fraction));
        }
        let live = self.n - self.dangling_count();
        if live == 0 {
            return bad("no vertex is left to carry out-edges".into());
        }
        if self.m < live {
            return bad(format!(
                "m = {} cannot give each of the {live} non-dangling vertices an out-edge",
                self.m
            ));
        }
        if self.m > live.saturating_mul(self.n) {
            return bad(format!("m = {} exceeds the {} possible edges", self.m, live * self.n));
        }
        if self.connected && self.m < self.n - 1 {
            return bad(format!(
                "a connected graph on {} vertices needs m >= {}",
                self.n,
                self.n - 1
            ));
        }
        Ok(())
    }
}

/// Edge list of the graph described by `spec`, sorted by (source, target).
///
/// Dangling vertices are a uniformly chosen subset of the requested size.
/// Every other vertex gets at least one out-edge; the remaining edges pick a
/// source uniformly among non-dangling vertices and a target uniformly among
/// all vertices, without duplicates.
pub fn generate_edges(spec: &SynthSpec) -> Result<Vec<(usize, usize)>> {
    spec.validate()?;
    let n = spec.n;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);

    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let n_d = spec.dangling_count();
    let mut is_dangling = vec![false; n];
    for &v in &order[..n_d] {
        is_dangling[v] = true;
    }
    let live: Vec<usize> = (0..n).filter(|&v| !is_dangling[v]).collect();

    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    if spec.connected {
        // Visit a non-dangling vertex first, then attach each vertex to a
        // random non-dangling vertex already visited.
        let root = live[0];
        let mut visit: Vec<usize> = order.iter().copied().filter(|&v| v != root).collect();
        visit.shuffle(&mut rng);
        let mut seen_live = vec![root];
        for v in visit {
            let src = seen_live[rng.gen_range(0..seen_live.len())];
            out[src].push(v);
            if !is_dangling[v] {
                seen_live.push(v);
            }
        }
    }
    let mut budget: Vec<usize> = out.iter().map(Vec::len).collect();
    let mut placed: usize = budget.iter().sum();
    for &v in &live {
        if budget[v] == 0 {
            budget[v] = 1;
            placed += 1;
        }
    }
    if placed > spec.m {
        return Err(Error::InvalidConfig(format!(
            "m = {} is below the {placed} edges required by connectivity and out-degree constraints",
            spec.m
        )));
    }
    while placed < spec.m {
        let v = live[rng.gen_range(0..live.len())];
        if budget[v] < n {
            budget[v] += 1;
            placed += 1;
        }
    }

    let mut edges = Vec::with_capacity(spec.m);
    for v in 0..n {
        let targets = &mut out[v];
        let need = budget[v];
        if need * 2 > n {
            // Dense row: pick from a shuffled complement instead of rejection.
            let mut pool: Vec<usize> = (0..n).filter(|t| !targets.contains(t)).collect();
            pool.shuffle(&mut rng);
            let missing = need - targets.len();
            targets.extend_from_slice(&pool[..missing]);
        } else {
            while targets.len() < need {
                let t = rng.gen_range(0..n);
                if !targets.contains(&t) {
                    targets.push(t);
                }
            }
        }
        targets.sort_unstable();
        edges.extend(targets.iter().map(|&t| (v, t)));
    }
    Ok(edges)
}

pub fn generate(spec: &SynthSpec) -> Result<Graph> {
    Graph::from_edges(spec.n, &generate_edges(spec)?)
}

/// Writes the graph as a SNAP-style edge list under a `#` header recording
/// the generator parameters.
pub fn write_edge_list<W: Write>(spec: &SynthSpec, edges: &[(usize, usize)], mut out: W) -> Result<()> {
    writeln!(
        out,
        "# synthetic n={} m={} dangling_fraction={} seed={} connected={}",
        spec.n, spec.m, spec.dangling_fraction, spec.seed, spec.connected
    )?;
    for &(s, t) in edges {
        writeln!(out, "{s}\t{t}")?;
    }
    Ok(())
}
