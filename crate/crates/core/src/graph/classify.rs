use std::collections::VecDeque;
use std::fmt;

use super::Graph;

/// Structural vertex sets of a directed graph. All sets are sorted ascending.
///
/// The weak sets contain vertices that only become dangling (unreferenced)
/// once dangling (unreferenced) vertices are peeled away repeatedly. Vertices
/// that already belong to either base set are never reported as weak.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexClassification {
    pub dangling: Vec<usize>,
    pub unreferenced: Vec<usize>,
    pub weak_dangling: Vec<usize>,
    pub weak_unreferenced: Vec<usize>,
    /// Number of edges whose target is dangling.
    pub dangling_edge_count: usize,
    is_dangling: Vec<bool>,
}

impl VertexClassification {
    #[inline]
    pub fn is_dangling(&self, v: usize) -> bool {
        self.is_dangling[v]
    }

    pub fn non_dangling(&self) -> Vec<usize> {
        (0..self.is_dangling.len()).filter(|&v| !self.is_dangling[v]).collect()
    }

    pub fn dangling_mask(&self) -> &[bool] {
        &self.is_dangling
    }
}

pub fn classify(g: &Graph) -> VertexClassification {
    let n = g.vertex_count();
    let rev = g.transpose();

    let is_dangling: Vec<bool> = (0..n).map(|v| g.is_dangling(v)).collect();
    let is_unref: Vec<bool> = (0..n).map(|v| rev.in_degree(v) == 0).collect();
    let dangling: Vec<usize> = (0..n).filter(|&v| is_dangling[v]).collect();
    let unreferenced: Vec<usize> = (0..n).filter(|&v| is_unref[v]).collect();

    let base = |v: usize| is_dangling[v] || is_unref[v];

    // Dangling peel: deleting a vertex lowers the out-degree of its sources.
    let mut remaining: Vec<usize> = (0..n).map(|v| g.out_degree(v)).collect();
    let exposed = peel(&dangling, &mut remaining, |v| rev.sources(v));
    let mut weak_dangling: Vec<usize> = exposed.into_iter().filter(|&v| !base(v)).collect();
    weak_dangling.sort_unstable();

    // Unreferenced peel: deleting a vertex lowers the in-degree of its targets.
    let mut remaining: Vec<usize> = (0..n).map(|v| rev.in_degree(v)).collect();
    let exposed = peel(&unreferenced, &mut remaining, |v| g.targets(v));
    let mut weak_unreferenced: Vec<usize> = exposed.into_iter().filter(|&v| !base(v)).collect();
    weak_unreferenced.sort_unstable();

    let dangling_edge_count = g.out_targets().iter().filter(|&&t| is_dangling[t as usize]).count();

    VertexClassification {
        dangling,
        unreferenced,
        weak_dangling,
        weak_unreferenced,
        dangling_edge_count,
        is_dangling,
    }
}

/// Deletes `seeds` and every vertex whose `remaining` count drops to zero as a
/// consequence; returns the vertices exposed after the seeds.
fn peel<'a, F>(seeds: &[usize], remaining: &mut [usize], neighbours: F) -> Vec<usize>
where
    F: Fn(usize) -> &'a [u32],
{
    let mut queue: VecDeque<usize> = seeds.iter().copied().collect();
    let mut removed = vec![false; remaining.len()];
    for &s in seeds {
        removed[s] = true;
    }
    let mut exposed = Vec::new();
    while let Some(v) = queue.pop_front() {
        for &u in neighbours(v) {
            let u = u as usize;
            if removed[u] {
                continue;
            }
            remaining[u] -= 1;
            if remaining[u] == 0 {
                removed[u] = true;
                exposed.push(u);
                queue.push_back(u);
            }
        }
    }
    exposed
}

/// One row of the dataset summary table.
#[derive(Debug, Clone, PartialEq)]
pub struct StatsRow {
    pub name: String,
    pub n: usize,
    pub m: usize,
    pub n_d: usize,
    pub m_d: usize,
    /// Average out-degree `m / n`.
    pub deg: f64,
}

impl StatsRow {
    pub const CSV_HEADER: &'static str = "name,n,m,n_d,m_d,deg";

    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{:.2}",
            self.name, self.n, self.m, self.n_d, self.m_d, self.deg
        )
    }
}

impl fmt::Display for StatsRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<20} n={:<10} m={:<11} n_d={:<9} m_d={:<9} deg={:.2}",
            self.name, self.n, self.m, self.n_d, self.m_d, self.deg
        )
    }
}

pub fn stats(name: &str, g: &Graph, cls: &VertexClassification) -> StatsRow {
    let n = g.vertex_count();
    let m = g.edge_count();
    StatsRow {
        name: name.to_string(),
        n,
        m,
        n_d: cls.dangling.len(),
        m_d: cls.dangling_edge_count,
        deg: if n == 0 { 0.0 } else { m as f64 / n as f64 },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn chain_peels_middle_vertex() {
        let c = classify(&chain3());
        assert_eq!(c.dangling, vec![2]);
        assert_eq!(c.unreferenced, vec![0]);
        assert_eq!(c.weak_dangling, vec![1]);
        assert_eq!(c.weak_unreferenced, vec![1]);
        assert_eq!(c.dangling_edge_count, 1);
    }

    #[test]
    fn cycle_has_no_special_vertices() {
        let c = classify(&cycle2());
        assert!(c.dangling.is_empty() && c.unreferenced.is_empty());
        assert!(c.weak_dangling.is_empty() && c.weak_unreferenced.is_empty());
        assert_eq!(c.dangling_edge_count, 0);
    }

    #[test]
    fn longer_chain_exposes_interior() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let c = classify(&g);
        assert_eq!(c.weak_dangling, vec![1, 2, 3]);
        assert_eq!(c.weak_unreferenced, vec![1, 2, 3]);
    }

    #[test]
    fn cycle_feeding_sink_is_not_weak() {
        // 0 <-> 1 -> 2: the cycle never becomes dangling.
        let g = Graph::from_edges(3, &[(0, 1), (1, 0), (1, 2)]).unwrap();
        let c = classify(&g);
        assert_eq!(c.dangling, vec![2]);
        assert!(c.weak_dangling.is_empty());
    }

    #[test]
    fn stats_rows() {
        let g = chain3();
        let s = stats("chain", &g, &classify(&g));
        assert_eq!((s.n, s.m, s.n_d, s.m_d), (3, 2, 1, 1));
        assert!((s.deg - 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(s.to_csv_row(), "chain,3,2,1,1,0.67");

        let g = Graph::from_edges(1, &[]).unwrap();
        let s = stats("single", &g, &classify(&g));
        assert_eq!((s.n, s.m, s.n_d, s.m_d), (1, 0, 1, 0));
        assert_eq!(s.deg, 0.0);
    }

    #[test]
    fn classify_is_idempotent() {
        let g = star();
        assert_eq!(classify(&g), classify(&g));
    }
}
