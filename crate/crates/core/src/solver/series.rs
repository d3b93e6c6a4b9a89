use super::SolverConfig;
use crate::graph::Graph;
use crate::rank::{PageRankVector, RankMeta};
use crate::Result;

/// Truncated Neumann series `x = sum_{r=0}^{terms} (cP)^r p`, normalized.
///
/// Dangling columns of `P` are zero, so mass reaching a dangling vertex stops
/// there; normalization recovers the PageRank vector.
pub fn series_pagerank(g: &Graph, cfg: &SolverConfig, terms: usize) -> Result<PageRankVector> {
    let x = series_partial_sums(g, cfg, terms)?.pop().unwrap_or_default();
    let meta = RankMeta {
        algorithm: "series".into(),
        c: cfg.c,
        iterations: Some(terms),
        ..Default::default()
    };
    Ok(PageRankVector::new(x, meta).normalized())
}

/// Unnormalized partial sums after 0, 1, ..., `terms` terms.
pub(crate) fn series_partial_sums(g: &Graph, cfg: &SolverConfig, terms: usize) -> Result<Vec<Vec<f64>>> {
    let n = g.vertex_count();
    cfg.validate(n)?;
    let mut term = cfg.restart(n);
    let mut sum = term.clone();
    let mut sums = vec![sum.clone()];
    let mut next = vec![0.0; n];
    for _ in 0..terms {
        next.iter_mut().for_each(|x| *x = 0.0);
        for s in 0..n {
            let deg = g.out_degree(s);
            if deg == 0 || term[s] == 0.0 {
                continue;
            }
            let share = cfg.c * term[s] / deg as f64;
            for &t in g.targets(s) {
                next[t as usize] += share;
            }
        }
        std::mem::swap(&mut term, &mut next);
        for (acc, &x) in sum.iter_mut().zip(&term) {
            *acc += x;
        }
        sums.push(sum.clone());
    }
    Ok(sums)
}
