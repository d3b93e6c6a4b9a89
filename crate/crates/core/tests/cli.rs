use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn pushrank(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pushrank"))
        .args(args)
        .env_remove("PUSHRANK_THREADS")
        .output()
        .unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

fn csv_rows(path: &Path) -> Vec<Vec<String>> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

#[test]
fn run_writes_ranking_and_trace() {
    let dir = tempfile::tempdir().unwrap();
    let data = write(dir.path(), "chain.txt", "# chain\n10 20\n20 30\n");
    let out = dir.path().join("out");
    for algo in ["spi", "mpi", "fp", "ifp1", "ifp2", "sync-sim"] {
        let o = pushrank(&[
            "run",
            "--data",
            &data,
            "--algo",
            algo,
            "--threads",
            "2",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{algo}: {}", String::from_utf8_lossy(&o.stderr));
        let ranking = csv_rows(&out.join("ranking.csv"));
        assert_eq!(ranking[0], ["vertex_original_id", "score"]);
        assert_eq!(ranking[1][0], "30", "{algo}");
        let trace = fs::read_to_string(out.join("trace.csv")).unwrap();
        assert!(trace.starts_with("t,h_l1,converged,alpha,work,push_ops,push_ops_dangling,wall_ms"));
    }
}

#[test]
fn two_cycle_scores_are_equal() {
    let dir = tempfile::tempdir().unwrap();
    let data = write(dir.path(), "cycle.txt", "1 2\n2 1\n");
    let o = pushrank(&[
        "run",
        "--data",
        &data,
        "--algo",
        "ifp2",
        "--xi",
        "1e-12",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let rows = csv_rows(&dir.path().join("ranking.csv"));
    for row in &rows[1..] {
        let score: f64 = row[1].parse().unwrap();
        assert!((score - 0.5).abs() < 1e-12);
    }
}

#[test]
fn info_reports_counts() {
    let dir = tempfile::tempdir().unwrap();
    let data = write(dir.path(), "g.txt", "0 1\n0 1\n1 2\n2 2\n");
    let o = pushrank(&[
        "info",
        "--data",
        &data,
        "--name",
        "toy",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert!(stdout.contains("duplicates removed 1"), "{stdout}");
    let rows = csv_rows(&dir.path().join("stats.csv"));
    assert_eq!(rows[0], ["name", "n", "m", "n_d", "m_d", "deg"]);
    assert_eq!(rows[1], ["toy", "3", "3", "0", "0", "1.00"]);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "g.txt", "0 1\n");
    let bad = write(dir.path(), "bad.txt", "0 1\n2 x\n");
    let missing = dir.path().join("nope.txt");
    let missing = missing.to_str().unwrap();
    let code = |args: &[&str]| pushrank(args).status.code();
    assert_eq!(code(&["run", "--data", missing, "--algo", "ifp1"]), Some(2));
    assert_eq!(code(&["run", "--data", &good, "--algo", "nope"]), Some(2));
    assert_eq!(
        code(&["run", "--data", &good, "--algo", "ifp1", "--threads", "0"]),
        Some(2)
    );
    assert_eq!(code(&["run", "--data", &good, "--algo", "ifp1", "--c", "1.5"]), Some(2));
    assert_eq!(code(&["frobnicate"]), Some(2));
    let o = pushrank(&[
        "run",
        "--data",
        &bad,
        "--algo",
        "ifp1",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    assert_eq!(code(&["--help"]), Some(0));
}

#[test]
fn synth_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let gen = |name: &str, seed: &str| {
        let p = dir.path().join(name);
        let o = pushrank(&[
            "synth",
            "--n",
            "200",
            "--m",
            "1000",
            "--dangling-fraction",
            "0.25",
            "--seed",
            seed,
            "--out",
            p.to_str().unwrap(),
        ]);
        assert!(o.status.success());
        fs::read_to_string(p).unwrap()
    };
    let a = gen("a.txt", "5");
    assert_eq!(a, gen("b.txt", "5"));
    assert_ne!(a, gen("c.txt", "6"));
    assert_eq!(a.lines().filter(|l| !l.starts_with('#')).count(), 1000);
    let o = pushrank(&[
        "synth",
        "--n",
        "10",
        "--m",
        "5",
        "--out",
        dir.path().join("x").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sweeps_have_one_row_per_setting() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("g.txt");
    let o = pushrank(&[
        "synth",
        "--n",
        "300",
        "--m",
        "2000",
        "--seed",
        "2",
        "--out",
        data.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let data = data.to_str().unwrap();
    let out = dir.path().to_str().unwrap();

    let o = pushrank(&[
        "sweep",
        "--data",
        data,
        "--algos",
        "ifp1,ifp2,spi",
        "--xis",
        "1e-4,1e-6,1e-8",
        "--reps",
        "1",
        "--out",
        out,
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let rows = csv_rows(&dir.path().join("sweeps.csv"));
    assert_eq!(
        rows[0].join(","),
        "dataset,algorithm,xi,threads,err,wall_ms,preprocess_ms,iterations,oversubscribed"
    );
    assert_eq!(rows.len(), 1 + 9);

    let o = pushrank(&[
        "scale",
        "--data",
        data,
        "--threads-list",
        "1,2,3",
        "--reps",
        "1",
        "--out",
        out,
    ]);
    assert!(o.status.success());
    let rows = csv_rows(&dir.path().join("sweeps.csv"));
    assert_eq!(rows.len(), 1 + 3);
    assert_eq!(
        rows.iter().skip(1).map(|r| r[3].as_str()).collect::<Vec<_>>(),
        ["1", "2", "3"]
    );

    let o = pushrank(&[
        "compare",
        "--data",
        data,
        "--target-err",
        "1e-3",
        "--reps",
        "1",
        "--threads",
        "2",
        "--out",
        out,
    ]);
    assert!(o.status.success());
    let rows = csv_rows(&dir.path().join("compare.csv"));
    assert_eq!(rows.len(), 1 + 4);
    assert!(rows[1..].iter().all(|r| r[8] == "true"));
    assert!(String::from_utf8_lossy(&o.stdout).contains("ordering: "));
}
