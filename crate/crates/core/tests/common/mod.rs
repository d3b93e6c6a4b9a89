#![allow(dead_code, clippy::needless_range_loop)]

use pushrank::Graph;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Shapes of random test graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Uniform,
    /// Two halves with no edge between them.
    Disconnected,
    /// Every edge points at a dangling vertex.
    DanglingTargets,
}

/// Random graph with `n` vertices, about `density * n` out-edges per
/// non-dangling vertex and `round(f n)` vertices that never get out-edges.
pub fn random_graph(seed: u64, n: usize, density: f64, dangling_fraction: f64, shape: Shape) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ids: Vec<usize> = (0..n).collect();
    ids.shuffle(&mut rng);
    let n_d = ((dangling_fraction * n as f64).round() as usize).min(n);
    let mut dangling = vec![false; n];
    for &v in &ids[..n_d] {
        dangling[v] = true;
    }
    let half = n / 2;
    let mut edges = Vec::new();
    for u in 0..n {
        if dangling[u] {
            continue;
        }
        for v in 0..n {
            let allowed = match shape {
                Shape::Uniform => true,
                Shape::Disconnected => (u < half) == (v < half),
                Shape::DanglingTargets => dangling[v],
            };
            if allowed && rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// PageRank with uniform restart by Gaussian elimination with partial
/// pivoting on `(I - c P') x = (1 - c) / n`, dangling columns uniform.
pub fn gauss_pagerank(g: &Graph, c: f64) -> Vec<f64> {
    let n = g.vertex_count();
    let mut a = vec![vec![0.0f64; n + 1]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 1.0;
        row[n] = (1.0 - c) / n as f64;
    }
    for u in 0..n {
        let deg = g.out_degree(u);
        if deg == 0 {
            for row in a.iter_mut() {
                row[u] -= c / n as f64;
            }
        } else {
            for &v in g.targets(u) {
                a[v as usize][u] -= c / deg as f64;
            }
        }
    }
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        a.swap(col, pivot);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            if f != 0.0 {
                for k in col..=n {
                    a[r][k] -= f * a[col][k];
                }
            }
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|k| a[r][k] * x[k]).sum();
        x[r] = (a[r][n] - s) / a[r][r];
    }
    let total: f64 = x.iter().sum();
    x.iter().map(|v| v / total).collect()
}

pub fn max_rel(est: &[f64], reference: &[f64]) -> f64 {
    assert_eq!(est.len(), reference.len());
    est.iter()
        .zip(reference)
        .map(|(e, r)| (e - r).abs() / r)
        .fold(0.0, f64::max)
}

/// Least-squares slope of `ys` against `xs`.
pub fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}
