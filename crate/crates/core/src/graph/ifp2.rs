use super::{Graph, VertexClassification};

/// A graph with every edge into a dangling vertex invalidated.
///
/// Live edges (targets that are not dangling) keep the CSR layout of the base
/// graph. Invalidated edges are stored reversed, grouped by dangling target,
/// so the dangling mass can be assembled from its sources in one pass. Push
/// weights must still use the out-degree of the base graph.
#[derive(Debug, Clone)]
pub struct Ifp2Graph<'g> {
    base: &'g Graph,
    live_offsets: Vec<usize>,
    live_targets: Vec<u32>,
    dangling: Vec<usize>,
    source_offsets: Vec<usize>,
    sources: Vec<u32>,
    is_dangling: Vec<bool>,
}

impl<'g> Ifp2Graph<'g> {
    pub fn base(&self) -> &'g Graph {
        self.base
    }

    pub fn vertex_count(&self) -> usize {
        self.base.vertex_count()
    }

    #[inline]
    pub fn live_targets(&self, v: usize) -> &[u32] {
        &self.live_targets[self.live_offsets[v]..self.live_offsets[v + 1]]
    }

    pub fn live_edge_count(&self) -> usize {
        self.live_targets.len()
    }

    /// Dangling vertices, ascending.
    pub fn dangling(&self) -> &[usize] {
        &self.dangling
    }

    /// `S(v)` for the `k`-th dangling vertex.
    #[inline]
    pub fn dangling_sources(&self, k: usize) -> &[u32] {
        &self.sources[self.source_offsets[k]..self.source_offsets[k + 1]]
    }

    /// Total number of invalidated edges.
    pub fn invalidated_edge_count(&self) -> usize {
        self.sources.len()
    }

    #[inline]
    pub fn is_dangling(&self, v: usize) -> bool {
        self.is_dangling[v]
    }

    /// Sources of dangling vertex `v`, if `v` is dangling.
    pub fn sources_of(&self, v: usize) -> Option<&[u32]> {
        self.dangling.binary_search(&v).ok().map(|k| self.dangling_sources(k))
    }
}

/// Splits the edges of `g` into live edges and invalidated edges into dangling
/// vertices. One scan over the edge array; `g` is left untouched.
pub fn preprocess_ifp2<'g>(g: &'g Graph, cls: &VertexClassification) -> Ifp2Graph<'g> {
    let n = g.vertex_count();
    let is_dangling = cls.dangling_mask().to_vec();
    let dangling = cls.dangling.clone();

    let mut slot = vec![usize::MAX; n];
    for (k, &v) in dangling.iter().enumerate() {
        slot[v] = k;
    }

    let mut live_offsets = Vec::with_capacity(n + 1);
    live_offsets.push(0);
    let mut live_targets = Vec::with_capacity(g.edge_count() - cls.dangling_edge_count);
    let mut source_counts = vec![0usize; dangling.len() + 1];
    for s in 0..n {
        for &t in g.targets(s) {
            if is_dangling[t as usize] {
                source_counts[slot[t as usize] + 1] += 1;
            } else {
                live_targets.push(t);
            }
        }
        live_offsets.push(live_targets.len());
    }

    for k in 0..dangling.len() {
        source_counts[k + 1] += source_counts[k];
    }
    let source_offsets = source_counts;
    let mut cursor = source_offsets.clone();
    let mut sources = vec![0u32; *source_offsets.last().unwrap_or(&0)];
    for s in 0..n {
        for &t in g.targets(s) {
            if is_dangling[t as usize] {
                let k = slot[t as usize];
                sources[cursor[k]] = s as u32;
                cursor[k] += 1;
            }
        }
    }

    Ifp2Graph {
        base: g,
        live_offsets,
        live_targets,
        dangling,
        source_offsets,
        sources,
        is_dangling,
    }
}
