//! Directed graphs in compressed sparse row form.

mod classify;
mod ifp2;
mod load;

pub use classify::{classify, stats, StatsRow, VertexClassification};
pub use ifp2::{preprocess_ifp2, Ifp2Graph};
pub use load::{load_edge_list, load_edge_list_file, LoadReport};

use crate::{Error, Result};

/// Immutable directed graph with out-edges stored in CSR layout.
///
/// Vertex ids are dense in `0..n`. `original_ids` maps each dense id back to
/// the id used in the source file (identity for graphs built in memory).
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    out_offsets: Vec<usize>,
    out_targets: Vec<u32>,
    original_ids: Vec<u64>,
}

impl Graph {
    /// Builds a graph on `n` vertices. Duplicate edges are dropped, self-loops
    /// are kept.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > u32::MAX as usize {
            return Err(Error::InvalidGraph(format!("{n} vertices exceed u32 ids")));
        }
        let mut pairs = Vec::with_capacity(edges.len());
        for &(s, t) in edges {
            if s >= n || t >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({s}, {t}) out of range for {n} vertices"
                )));
            }
            pairs.push((s as u32, t as u32));
        }
        Ok(Self::from_pairs(n, pairs, (0..n as u64).collect()))
    }

    pub(crate) fn from_pairs(n: usize, mut pairs: Vec<(u32, u32)>, original_ids: Vec<u64>) -> Self {
        debug_assert_eq!(original_ids.len(), n);
        pairs.sort_unstable();
        pairs.dedup();
        let mut out_offsets = vec![0usize; n + 1];
        for &(s, _) in &pairs {
            out_offsets[s as usize + 1] += 1;
        }
        for i in 0..n {
            out_offsets[i + 1] += out_offsets[i];
        }
        let out_targets = pairs.into_iter().map(|(_, t)| t).collect();
        Graph {
            out_offsets,
            out_targets,
            original_ids,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.out_offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.out_targets.len()
    }

    #[inline]
    pub fn out_degree(&self, v: usize) -> usize {
        self.out_offsets[v + 1] - self.out_offsets[v]
    }

    #[inline]
    pub fn targets(&self, v: usize) -> &[u32] {
        &self.out_targets[self.out_offsets[v]..self.out_offsets[v + 1]]
    }

    pub fn out_offsets(&self) -> &[usize] {
        &self.out_offsets
    }

    pub fn out_targets(&self) -> &[u32] {
        &self.out_targets
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        (0..self.vertex_count()).map(|v| self.out_degree(v)).collect()
    }

    #[inline]
    pub fn is_dangling(&self, v: usize) -> bool {
        self.out_offsets[v] == self.out_offsets[v + 1]
    }

    pub fn original_id(&self, v: usize) -> u64 {
        self.original_ids[v]
    }

    pub fn original_ids(&self) -> &[u64] {
        &self.original_ids
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.vertex_count()).flat_map(move |s| self.targets(s).iter().map(move |&t| (s, t as usize)))
    }

    /// In-adjacency (sources of each vertex) in CSR form, sources ascending.
    pub fn transpose(&self) -> InAdjacency {
        let n = self.vertex_count();
        let mut offsets = vec![0usize; n + 1];
        for &t in &self.out_targets {
            offsets[t as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut cursor = offsets.clone();
        let mut sources = vec![0u32; self.out_targets.len()];
        for s in 0..n {
            for &t in self.targets(s) {
                sources[cursor[t as usize]] = s as u32;
                cursor[t as usize] += 1;
            }
        }
        InAdjacency { offsets, sources }
    }

    /// Stable 64-bit FNV-1a digest of the edge structure.
    pub fn fingerprint(&self) -> u64 {
        const PRIME: u64 = 0x0000_0100_0000_01b3;
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut feed = |x: u64| {
            for b in x.to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(PRIME);
            }
        };
        feed(self.vertex_count() as u64);
        for &o in &self.out_offsets {
            feed(o as u64);
        }
        for &t in &self.out_targets {
            feed(t as u64);
        }
        h
    }

    /// Checks the structural invariants. Always true for graphs produced by
    /// this crate; used by tests.
    pub fn validate(&self) -> Result<()> {
        let n = self.vertex_count();
        let m = self.edge_count();
        if self.out_offsets[n] != m || self.out_offsets[0] != 0 {
            return Err(Error::InvalidGraph("offsets do not span the edge array".into()));
        }
        for v in 0..n {
            if self.out_offsets[v] > self.out_offsets[v + 1] {
                return Err(Error::InvalidGraph(format!("offsets decrease at {v}")));
            }
            let ts = self.targets(v);
            if ts.iter().any(|&t| t as usize >= n) {
                return Err(Error::InvalidGraph(format!("target out of range at {v}")));
            }
            if ts.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidGraph(format!("unsorted or duplicate targets at {v}")));
            }
        }
        Ok(())
    }
}

/// Sources of every vertex, CSR layout.
#[derive(Debug, Clone)]
pub struct InAdjacency {
    offsets: Vec<usize>,
    sources: Vec<u32>,
}

impl InAdjacency {
    #[inline]
    pub fn sources(&self, v: usize) -> &[u32] {
        &self.sources[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn in_degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::Graph;

    pub fn chain3() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap()
    }

    pub fn cycle2() -> Graph {
        Graph::from_edges(2, &[(0, 1), (1, 0)]).unwrap()
    }

    pub fn fan_in() -> Graph {
        Graph::from_edges(3, &[(0, 2), (1, 2)]).unwrap()
    }

    pub fn star() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dedups_and_keeps_self_loops() {
        let g = Graph::from_edges(3, &[(0, 1), (0, 1), (2, 2), (1, 0)]).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.targets(2), &[2]);
        g.validate().unwrap();
    }

    #[test]
    fn rejects_out_of_range_edge() {
        assert!(Graph::from_edges(2, &[(0, 2)]).is_err());
    }

    #[test]
    fn transpose_lists_sources() {
        let g = fixtures::fan_in();
        let t = g.transpose();
        assert_eq!(t.sources(2), &[0, 1]);
        assert_eq!(t.in_degree(0), 0);
    }

    #[test]
    fn fingerprint_tracks_structure() {
        assert_eq!(fixtures::chain3().fingerprint(), fixtures::chain3().fingerprint());
        assert_ne!(fixtures::chain3().fingerprint(), fixtures::fan_in().fingerprint());
    }
}
