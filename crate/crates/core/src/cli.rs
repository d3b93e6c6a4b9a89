//! `pushrank` command line.
//!
//! Exit codes: 0 on success, 2 for usage or configuration errors (including a
//! missing dataset file), 3 for failures while running.

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::bench::{
    self, compare_algorithms, ordering, sweep_parallelism, sweep_xi, Algorithm, ComparisonRow, Dataset, ReferenceCache,
    SweepRow,
};
use crate::engine::PartitionStrategy;
use crate::graph::{load_edge_list_file, stats, LoadReport, StatsRow};
use crate::synth::{generate_edges, write_edge_list, SynthSpec};
use crate::Error;

#[derive(Debug, Parser)]
#[command(name = "pushrank", version, about = "Parallel PageRank by improved forward push")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print dataset statistics (n, m, dangling vertices and edges, degree).
    Info(InfoArgs),
    /// Compute a PageRank vector and write ranking.csv and trace.csv.
    Run(RunArgs),
    /// Sweep the push threshold for several algorithms (sweeps.csv).
    Sweep(SweepArgs),
    /// Sweep the worker count for one algorithm (sweeps.csv).
    Scale(ScaleArgs),
    /// Time each algorithm at a target error (compare.csv).
    Compare(CompareArgs),
    /// Generate a seeded synthetic edge list.
    Synth(SynthArgs),
}

#[derive(Debug, Args)]
pub struct DataArgs {
    /// Edge-list file (`src dst` per line, `#` comments).
    #[arg(long)]
    pub data: PathBuf,
    /// Dataset label used in CSV output; defaults to the file stem.
    #[arg(long)]
    pub name: Option<String>,
    /// Damping factor.
    #[arg(long, default_value_t = crate::DEFAULT_DAMPING, value_parser = parse_damping)]
    pub c: f64,
    /// Directory for cached reference vectors.
    #[arg(long)]
    pub cache: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EngineArgs {
    /// Worker threads; defaults to the number of logical processors.
    #[arg(long, env = "PUSHRANK_THREADS", value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: Option<u64>,
    /// Vertex-to-worker assignment.
    #[arg(long, default_value = "degree-balanced", value_parser = parse_strategy)]
    pub strategy: PartitionStrategy,
}

impl EngineArgs {
    fn workers(&self) -> usize {
        self.threads.map_or_else(bench::default_workers, |k| k as usize)
    }
}

#[derive(Debug, Args)]
pub struct InfoArgs {
    #[command(flatten)]
    pub data: DataArgs,
    /// Directory receiving stats.csv.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[command(flatten)]
    pub engine: EngineArgs,
    /// One of spi, mpi, fp, ifp1, ifp2, sync-sim.
    #[arg(long, value_parser = parse_algorithm)]
    pub algo: Algorithm,
    /// Push threshold, or L1 stopping tolerance for the power methods.
    #[arg(long, default_value = "1e-10", value_parser = parse_xi)]
    pub xi: f64,
    /// Output directory.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    /// Also report ERR against the 210-iteration power-method reference.
    #[arg(long)]
    pub err: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[command(flatten)]
    pub engine: EngineArgs,
    #[arg(long, value_delimiter = ',', default_value = "ifp1,ifp2", value_parser = parse_algorithm)]
    pub algos: Vec<Algorithm>,
    #[arg(long, value_delimiter = ',', default_value = "1e-4,1e-6,1e-8,1e-10,1e-12", value_parser = parse_xi)]
    pub xis: Vec<f64>,
    #[arg(long, default_value_t = 3)]
    pub reps: usize,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ScaleArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[arg(long, default_value = "ifp2", value_parser = parse_algorithm)]
    pub algo: Algorithm,
    #[arg(long, value_delimiter = ',', default_value = "1,2,4,8")]
    pub threads_list: Vec<usize>,
    #[arg(long, default_value = "1e-10", value_parser = parse_xi)]
    pub xi: f64,
    #[arg(long, default_value = "degree-balanced", value_parser = parse_strategy)]
    pub strategy: PartitionStrategy,
    #[arg(long, default_value_t = 3)]
    pub reps: usize,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[command(flatten)]
    pub engine: EngineArgs,
    #[arg(long, value_delimiter = ',', default_value = "spi,mpi,ifp1,ifp2", value_parser = parse_algorithm)]
    pub algos: Vec<Algorithm>,
    #[arg(long, default_value_t = 1e-3)]
    pub target_err: f64,
    #[arg(long, default_value_t = 3)]
    pub reps: usize,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
    #[arg(long, default_value_t = 0.2)]
    pub dangling_fraction: f64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Make the graph weakly connected (requires m >= n - 1).
    #[arg(long)]
    pub connected: bool,
    /// Output edge-list file.
    #[arg(long)]
    pub out: PathBuf,
}

fn parse_damping(s: &str) -> Result<f64, String> {
    let c: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if c > 0.0 && c < 1.0 {
        Ok(c)
    } else {
        Err(format!("damping factor must lie in (0, 1), got {c}"))
    }
}

fn parse_xi(s: &str) -> Result<f64, String> {
    let xi: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if xi > 0.0 {
        Ok(xi)
    } else {
        Err(format!("threshold must be positive, got {xi}"))
    }
}

fn parse_algorithm(s: &str) -> Result<Algorithm, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_strategy(s: &str) -> Result<PartitionStrategy, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Failure of a command, tagged with its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub error: Error,
}

impl From<Error> for CliError {
    fn from(error: Error) -> Self {
        let code = match &error {
            Error::InvalidConfig(_) | Error::Refused(_) => 2,
            Error::Io(e) if e.kind() == io::ErrorKind::NotFound => 2,
            _ => 3,
        };
        Self { code, error }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        Self {
            code: 3,
            error: Error::Io(e),
        }
    }
}

type CmdResult = std::result::Result<(), CliError>;

/// Parses `args` and runs the command; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match execute(cli.command, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError {
            error: Error::Io(e), ..
        }) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.error);
            ExitCode::from(e.code)
        }
    }
}

pub fn execute(command: Command, out: &mut dyn Write) -> CmdResult {
    match command {
        Command::Info(a) => cmd_info(a, out),
        Command::Run(a) => cmd_run(a, out),
        Command::Sweep(a) => cmd_sweep(a, out),
        Command::Scale(a) => cmd_scale(a, out),
        Command::Compare(a) => cmd_compare(a, out),
        Command::Synth(a) => cmd_synth(a, out),
    }
}

fn load(args: &DataArgs) -> std::result::Result<(Dataset, LoadReport), CliError> {
    if !args.data.is_file() {
        return Err(CliError {
            code: 2,
            error: Error::InvalidConfig(format!("dataset {} does not exist", args.data.display())),
        });
    }
    let (graph, report) = load_edge_list_file(&args.data)?;
    let name = args.name.clone().unwrap_or_else(|| {
        args.data
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "dataset".into())
    });
    let mut ds = Dataset::new(name, graph);
    ds.c = args.c;
    if let Some(dir) = &args.cache {
        let reference = ReferenceCache::new(dir).load_or_compute(&ds.graph, ds.c, bench::default_workers())?;
        ds = ds.with_reference(reference);
    }
    Ok((ds, report))
}

fn create(dir: &Path, file: &str) -> std::result::Result<BufWriter<File>, CliError> {
    fs::create_dir_all(dir)?;
    Ok(BufWriter::new(File::create(dir.join(file))?))
}

fn cmd_info(args: InfoArgs, out: &mut dyn Write) -> CmdResult {
    let (ds, report) = load(&args.data)?;
    let row = stats(&ds.name, &ds.graph, &ds.classification);
    writeln!(out, "{row}")?;
    writeln!(
        out,
        "raw edge lines {}, duplicates removed {}, self-loops kept {}",
        report.raw_edges, report.duplicate_edges, report.self_loops
    )?;
    let cls = &ds.classification;
    writeln!(
        out,
        "unreferenced {}, weak dangling {}, weak unreferenced {}",
        cls.unreferenced.len(),
        cls.weak_dangling.len(),
        cls.weak_unreferenced.len()
    )?;
    writeln!(out, "{}", StatsRow::CSV_HEADER)?;
    writeln!(out, "{}", row.to_csv_row())?;
    if let Some(dir) = args.out {
        let mut f = create(&dir, "stats.csv")?;
        writeln!(f, "{}", StatsRow::CSV_HEADER)?;
        writeln!(f, "{}", row.to_csv_row())?;
    }
    Ok(())
}

fn cmd_run(args: RunArgs, out: &mut dyn Write) -> CmdResult {
    let (ds, _) = load(&args.data)?;
    let workers = args.engine.workers();
    let run = bench::run_algorithm(&ds, args.algo, args.xi, workers, args.engine.strategy)?;
    run.rank.write_csv(&ds.graph, create(&args.out, "ranking.csv")?)?;
    run.trace.write_csv(create(&args.out, "trace.csv")?)?;
    writeln!(
        out,
        "{} on {}: n={} threads={} xi={:e} wall={:.3}ms preprocess={:.3}ms pushes={} dangling-pushes={}",
        args.algo,
        ds.name,
        ds.graph.vertex_count(),
        workers,
        args.xi,
        run.wall_ms,
        run.preprocess_ms,
        run.trace.push_ops_total,
        run.trace.push_ops_to_dangling
    )?;
    if args.err {
        writeln!(out, "ERR={:e}", ds.err(&run.rank)?)?;
    }
    for v in run.rank.ranking().into_iter().take(10) {
        writeln!(out, "{}\t{:e}", ds.graph.original_id(v), run.rank.values[v])?;
    }
    Ok(())
}

fn write_sweep(dir: &Path, rows: &[SweepRow], out: &mut dyn Write) -> CmdResult {
    bench::write_csv(
        create(dir, "sweeps.csv")?,
        SweepRow::CSV_HEADER,
        rows,
        SweepRow::to_csv_row,
    )?;
    bench::write_csv(out, SweepRow::CSV_HEADER, rows, SweepRow::to_csv_row)?;
    Ok(())
}

fn cmd_sweep(args: SweepArgs, out: &mut dyn Write) -> CmdResult {
    let (ds, _) = load(&args.data)?;
    let rows = sweep_xi(
        &ds,
        &args.algos,
        &args.xis,
        args.engine.workers(),
        args.engine.strategy,
        args.reps,
    )?;
    write_sweep(&args.out, &rows, out)
}

fn cmd_scale(args: ScaleArgs, out: &mut dyn Write) -> CmdResult {
    if args.threads_list.contains(&0) {
        return Err(Error::InvalidConfig("worker counts must be at least 1".into()).into());
    }
    let (ds, _) = load(&args.data)?;
    let rows = sweep_parallelism(&ds, args.algo, &args.threads_list, args.xi, args.strategy, args.reps)?;
    write_sweep(&args.out, &rows, out)
}

fn cmd_compare(args: CompareArgs, out: &mut dyn Write) -> CmdResult {
    let (ds, _) = load(&args.data)?;
    let rows = compare_algorithms(
        &ds,
        &args.algos,
        args.target_err,
        args.engine.workers(),
        args.engine.strategy,
        args.reps,
    )?;
    let fmt = ComparisonRow::to_csv_row;
    bench::write_csv(create(&args.out, "compare.csv")?, ComparisonRow::CSV_HEADER, &rows, fmt)?;
    bench::write_csv(&mut *out, ComparisonRow::CSV_HEADER, &rows, fmt)?;
    writeln!(out, "ordering: {}", ordering(&rows))?;
    Ok(())
}

fn cmd_synth(args: SynthArgs, out: &mut dyn Write) -> CmdResult {
    let spec = SynthSpec {
        n: args.n,
        m: args.m,
        dangling_fraction: args.dangling_fraction,
        seed: args.seed,
        connected: args.connected,
    };
    let edges = generate_edges(&spec)?;
    if let Some(parent) = args.out.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent)?;
    }
    let mut f = BufWriter::new(File::create(&args.out)?);
    write_edge_list(&spec, &edges, &mut f)?;
    f.flush()?;
    writeln!(out, "wrote {} edges to {}", edges.len(), args.out.display())?;
    Ok(())
}
