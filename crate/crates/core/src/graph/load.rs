use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use super::Graph;
use crate::{Error, Result};

/// Raw versus cleaned counts of a loaded edge list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LoadReport {
    /// Edge lines in the file, before deduplication.
    pub raw_edges: usize,
    pub duplicate_edges: usize,
    /// Self-loops kept in the cleaned graph.
    pub self_loops: usize,
}

/// Parses a SNAP-style edge list: one `src dst` pair per line, `#` starts a
/// comment line. Ids are remapped densely in order of first appearance.
pub fn load_edge_list<R: BufRead>(source: R) -> Result<(Graph, LoadReport)> {
    let mut ids: HashMap<u64, u32> = HashMap::new();
    let mut original = Vec::new();
    let mut pairs = Vec::new();
    let mut intern = |raw: u64, ids: &mut HashMap<u64, u32>, line: usize| -> Result<u32> {
        if let Some(&v) = ids.get(&raw) {
            return Ok(v);
        }
        let v = u32::try_from(original.len()).map_err(|_| Error::Parse {
            line,
            msg: "too many distinct vertices".into(),
        })?;
        ids.insert(raw, v);
        original.push(raw);
        Ok(v)
    };

    for (idx, line) in source.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut fields = trimmed.split_whitespace();
        let (Some(a), Some(b), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("expected `src dst`, found {trimmed:?}"),
            });
        };
        let parse = |tok: &str| {
            tok.parse::<u64>().map_err(|_| Error::Parse {
                line: lineno,
                msg: format!("invalid vertex id {tok:?}"),
            })
        };
        let (a, b) = (parse(a)?, parse(b)?);
        let s = intern(a, &mut ids, lineno)?;
        let t = intern(b, &mut ids, lineno)?;
        pairs.push((s, t));
    }

    if pairs.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let raw_edges = pairs.len();
    let n = original.len();
    let graph = Graph::from_pairs(n, pairs, original);
    let self_loops = graph.edges().filter(|(s, t)| s == t).count();
    let report = LoadReport {
        raw_edges,
        duplicate_edges: raw_edges - graph.edge_count(),
        self_loops,
    };
    Ok((graph, report))
}

pub fn load_edge_list_file(path: impl AsRef<Path>) -> Result<(Graph, LoadReport)> {
    let file = File::open(path)?;
    load_edge_list(BufReader::new(file))
}
