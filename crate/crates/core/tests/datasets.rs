//! Checks against the public web graphs. Each test is skipped unless
//! `PUSHRANK_DATA` points at a directory holding the edge lists named in
//! `datasets/manifest.csv`.

use std::path::PathBuf;

use pushrank::bench::{run_algorithm, Algorithm, Dataset};
use pushrank::engine::PartitionStrategy;
use pushrank::graph::{load_edge_list_file, stats};

fn dataset(file: &str) -> Option<PathBuf> {
    let dir = std::env::var_os("PUSHRANK_DATA")?;
    let p = PathBuf::from(dir).join(file);
    if p.is_file() {
        Some(p)
    } else {
        eprintln!("skipping: {} not found", p.display());
        None
    }
}

#[test]
fn web_stanford_statistics_and_error() {
    let Some(path) = dataset("web-Stanford.txt") else {
        return;
    };
    let (g, _) = load_edge_list_file(&path).unwrap();
    let ds = Dataset::new("web-Stanford", g);
    let row = stats(&ds.name, &ds.graph, &ds.classification);
    assert_eq!((row.n, row.m), (281_903, 2_312_497));
    assert_eq!((row.n_d, row.m_d), (172, 410));
    let run = run_algorithm(&ds, Algorithm::Ifp2, 1e-10, 4, PartitionStrategy::DegreeBalanced).unwrap();
    assert_eq!(run.trace.push_ops_to_dangling, row.m_d as u64);
    let err = ds.err(&run.rank).unwrap();
    assert!(err < 1e-8, "ERR {err:e}");
}

#[test]
fn web_google_statistics() {
    let Some(path) = dataset("web-Google.txt") else { return };
    let (g, _) = load_edge_list_file(&path).unwrap();
    let ds = Dataset::new("web-Google", g);
    let row = stats(&ds.name, &ds.graph, &ds.classification);
    // The loader counts distinct ids; ids run to 916427, and every unused
    // id is an isolated, hence dangling, vertex in a max-id + 1 count.
    assert_eq!(row.m, 5_105_039);
    assert_eq!(row.m_d, 325_725);
    let unused = 916_428 - row.n;
    assert_eq!(row.n_d + unused, 176_974);
}
