//! PageRank vectors and their on-disk formats.

use std::io::{Read, Write};

use crate::graph::Graph;
use crate::{Error, Result};

/// Where a rank vector came from.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RankMeta {
    pub algorithm: String,
    pub c: f64,
    pub xi: Option<f64>,
    pub iterations: Option<usize>,
    /// Total mass before normalization (for solvers that report raw mass).
    pub raw_mass: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PageRankVector {
    pub values: Vec<f64>,
    pub meta: RankMeta,
}

impl PageRankVector {
    pub fn new(values: Vec<f64>, meta: RankMeta) -> Self {
        Self { values, meta }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Rescales to unit L1 mass, recording the previous total in `raw_mass`.
    pub fn normalized(mut self) -> Self {
        let total = self.sum();
        if total > 0.0 {
            for x in &mut self.values {
                *x /= total;
            }
        }
        self.meta.raw_mass.get_or_insert(total);
        self
    }

    /// Vertex ids sorted by descending score; ties broken by id.
    pub fn ranking(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.values.len()).collect();
        order.sort_by(|&a, &b| self.values[b].total_cmp(&self.values[a]).then(a.cmp(&b)));
        order
    }

    /// `vertex_original_id,score` rows sorted by score, highest first.
    pub fn write_csv<W: Write>(&self, graph: &Graph, mut out: W) -> Result<()> {
        if graph.vertex_count() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: graph.vertex_count(),
                actual: self.len(),
            });
        }
        writeln!(out, "vertex_original_id,score")?;
        for v in self.ranking() {
            writeln!(out, "{},{:e}", graph.original_id(v), self.values[v])?;
        }
        Ok(())
    }

    /// Little-endian `u64` length followed by the `f64` values.
    pub fn write_binary<W: Write>(&self, mut out: W) -> Result<()> {
        out.write_all(&(self.values.len() as u64).to_le_bytes())?;
        for x in &self.values {
            out.write_all(&x.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read_binary<R: Read>(mut input: R, meta: RankMeta) -> Result<Self> {
        let mut word = [0u8; 8];
        input.read_exact(&mut word)?;
        let n = u64::from_le_bytes(word) as usize;
        let mut bytes = Vec::new();
        input.read_to_end(&mut bytes)?;
        if bytes.len() != n * 8 {
            return Err(Error::Format(format!(
                "binary vector declares {n} values but holds {} bytes",
                bytes.len()
            )));
        }
        let values = bytes
            .chunks_exact(8)
            .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
            .collect();
        Ok(Self { values, meta })
    }
}
