use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;
use std::str::FromStr;

use crate::graph::Graph;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PartitionStrategy {
    /// Consecutive runs of the universe, sizes differing by at most one.
    Contiguous,
    /// Element `i` of the universe goes to worker `i mod K`.
    Strided,
    /// Longest-processing-time greedy on `deg + 1`.
    #[default]
    DegreeBalanced,
}

impl FromStr for PartitionStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "contiguous" => Ok(Self::Contiguous),
            "strided" => Ok(Self::Strided),
            "degree-balanced" | "balanced" => Ok(Self::DegreeBalanced),
            other => Err(Error::InvalidConfig(format!("unknown partition strategy {other:?}"))),
        }
    }
}

impl fmt::Display for PartitionStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Contiguous => "contiguous",
            Self::Strided => "strided",
            Self::DegreeBalanced => "degree-balanced",
        })
    }
}

/// Disjoint vertex sets, one per worker, each sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub sets: Vec<Vec<usize>>,
    pub strategy: PartitionStrategy,
}

impl Partition {
    pub fn workers(&self) -> usize {
        self.sets.len()
    }

    pub fn loads(&self, weight: impl Fn(usize) -> u64) -> Vec<u64> {
        self.sets.iter().map(|s| s.iter().map(|&v| weight(v)).sum()).collect()
    }
}

/// Assigns `universe` to `k` workers, weighting vertices by out-degree + 1.
pub fn partition_vertices(g: &Graph, universe: &[usize], k: usize, strategy: PartitionStrategy) -> Result<Partition> {
    partition_weighted(universe, k, strategy, |v| g.out_degree(v) as u64 + 1)
}

pub fn partition_weighted(
    universe: &[usize],
    k: usize,
    strategy: PartitionStrategy,
    weight: impl Fn(usize) -> u64,
) -> Result<Partition> {
    if k < 1 {
        return Err(Error::InvalidConfig("worker count must be at least 1".into()));
    }
    let mut sets = vec![Vec::new(); k];
    match strategy {
        PartitionStrategy::Contiguous => {
            let base = universe.len() / k;
            let extra = universe.len() % k;
            let mut rest = universe;
            for (j, set) in sets.iter_mut().enumerate() {
                let take = base + usize::from(j < extra);
                let (head, tail) = rest.split_at(take);
                set.extend_from_slice(head);
                rest = tail;
            }
        }
        PartitionStrategy::Strided => {
            for (i, &v) in universe.iter().enumerate() {
                sets[i % k].push(v);
            }
        }
        PartitionStrategy::DegreeBalanced => {
            let mut order: Vec<(u64, usize)> = universe.iter().map(|&v| (weight(v), v)).collect();
            order.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
            let mut heap: BinaryHeap<Reverse<(u64, usize)>> = (0..k).map(|j| Reverse((0, j))).collect();
            for (w, v) in order {
                let Reverse((load, j)) = heap.pop().expect("k >= 1");
                sets[j].push(v);
                heap.push(Reverse((load + w, j)));
            }
        }
    }
    for set in &mut sets {
        set.sort_unstable();
    }
    Ok(Partition { sets, strategy })
}
