use std::fs::{self, File};
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};

use super::reference_vector;
use crate::graph::Graph;
use crate::rank::{PageRankVector, RankMeta};
use crate::solver::REFERENCE_ITERATIONS;
use crate::Result;

/// On-disk store of reference vectors keyed by graph fingerprint, damping
/// factor and iteration count.
#[derive(Debug, Clone)]
pub struct ReferenceCache {
    dir: PathBuf,
}

impl ReferenceCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    pub fn path_for(&self, g: &Graph, c: f64) -> PathBuf {
        self.dir.join(format!(
            "ref-{:016x}-c{}-it{}.bin",
            g.fingerprint(),
            c,
            REFERENCE_ITERATIONS
        ))
    }

    pub fn load_or_compute(&self, g: &Graph, c: f64, workers: usize) -> Result<Vec<f64>> {
        let path = self.path_for(g, c);
        if let Some(v) = read(&path, g.vertex_count()) {
            return Ok(v);
        }
        let values = reference_vector(g, c, workers)?;
        fs::create_dir_all(&self.dir)?;
        let file = BufWriter::new(File::create(&path)?);
        PageRankVector::new(values.clone(), RankMeta::default()).write_binary(file)?;
        Ok(values)
    }
}

fn read(path: &Path, n: usize) -> Option<Vec<f64>> {
    let file = File::open(path).ok()?;
    let v = PageRankVector::read_binary(BufReader::new(file), RankMeta::default()).ok()?;
    (v.len() == n).then_some(v.values)
}
