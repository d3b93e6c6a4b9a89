use nalgebra::{DMatrix, DVector};

use super::SolverConfig;
use crate::graph::Graph;
use crate::rank::{PageRankVector, RankMeta};
use crate::{Error, Result};

/// Largest graph the dense solver accepts.
pub const DENSE_LIMIT: usize = 2000;

/// Solves `(I - c P') pi = (1 - c) p` directly by LU decomposition.
pub fn dense_oracle(g: &Graph, cfg: &SolverConfig) -> Result<PageRankVector> {
    let n = g.vertex_count();
    if n > DENSE_LIMIT {
        return Err(Error::Refused(format!(
            "dense solve needs n <= {DENSE_LIMIT}, graph has {n} vertices"
        )));
    }
    cfg.validate(n)?;
    let c = cfg.c;
    let p = cfg.restart(n);

    let mut m = DMatrix::<f64>::identity(n, n);
    for s in 0..n {
        let deg = g.out_degree(s);
        if deg == 0 {
            for (i, &pi) in p.iter().enumerate() {
                m[(i, s)] -= c * pi;
            }
        } else {
            let w = c / deg as f64;
            for &t in g.targets(s) {
                m[(t as usize, s)] -= w;
            }
        }
    }
    let rhs = DVector::from_iterator(n, p.iter().map(|&x| (1.0 - c) * x));
    let x = m
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::InvalidConfig("singular system (I - cP')".into()))?;

    let meta = RankMeta {
        algorithm: "dense".into(),
        c,
        ..Default::default()
    };
    Ok(PageRankVector::new(x.iter().copied().collect(), meta).normalized())
}
