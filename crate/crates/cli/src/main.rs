//! Command-line front end: run experiments, build reference fronts,
//! render report tables, and generate worlds.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use mpmo::harness::{
    build_table, competition_seeds, emit_csv, emit_latex, emit_text, read_records,
    run_experiment, ExperimentConfig, ProblemRef,
};
use mpmo::suite::{build_reference_front, SuiteId};
use mpmo::uav::{generate_world, UavCase, WorldConfig};

#[derive(Parser)]
#[command(name = "mpmo", version, about = "Multiparty multiobjective benchmark toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run problems and persist records, archives, and report tables.
    Run(RunArgs),
    /// Build and save the reference front of a suite problem.
    Reffront(ReffrontArgs),
    /// Print the statistics table for records in an output directory.
    Report(ReportArgs),
    /// Generate a world file for the path-planning cases.
    World(WorldArgs),
}

#[derive(Args, Default)]
struct RunArgs {
    /// Problem family to run: e (E1-E11), uav (C1-C6), or all.
    #[arg(long)]
    suite: Option<String>,
    /// Comma-separated problem ids (E1,...,E11,C1,...,C6); overrides --suite.
    #[arg(long)]
    problems: Option<String>,
    /// Comma-separated decision-space dimensions for suite problems.
    #[arg(long)]
    dims: Option<String>,
    /// Seeds: `1..30` (inclusive) or a comma-separated list.
    #[arg(long)]
    seeds: Option<String>,
    /// Algorithm: mpnds or random.
    #[arg(long)]
    algo: Option<String>,
    /// Metric: auto, mpigd, or mphv.
    #[arg(long)]
    metric: Option<String>,
    /// Output directory for records, archives, fronts, and reports.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed of the shared world used by the path-planning cases.
    #[arg(long)]
    world_seed: Option<u64>,
    /// Re-run (problem, seed) pairs that already have records.
    #[arg(long)]
    force: bool,
    /// TOML file with the same keys as these flags; flags win.
    #[arg(long)]
    config: Option<PathBuf>,
}

/// File form of `RunArgs`; every key optional, flags override.
#[derive(serde::Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RunFile {
    suite: Option<String>,
    problems: Option<String>,
    dims: Option<String>,
    seeds: Option<String>,
    algo: Option<String>,
    metric: Option<String>,
    out: Option<PathBuf>,
    world_seed: Option<u64>,
    force: Option<bool>,
}

#[derive(Args)]
struct ReffrontArgs {
    /// Suite problem id (E1..E11).
    #[arg(long)]
    problem: String,
    /// Decision-space dimension.
    #[arg(long)]
    dim: usize,
    /// Number of reference points to generate.
    #[arg(long, default_value_t = 10_000)]
    resolution: usize,
    /// Generator seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Directory the front file is written into.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Args)]
struct ReportArgs {
    /// Experiment output directory holding a `records/` subdirectory.
    #[arg(long = "in")]
    in_dir: PathBuf,
    /// Output format: text, csv, or latex.
    #[arg(long, default_value = "text")]
    format: String,
    /// Only report this algorithm; required for csv/latex when records
    /// from several algorithms are present.
    #[arg(long)]
    algo: Option<String>,
}

#[derive(Args)]
struct WorldArgs {
    /// World generator seed.
    #[arg(long)]
    seed: u64,
    /// File the world is written to.
    #[arg(long)]
    out: PathBuf,
}

fn parse_seeds(s: &str) -> Result<Vec<u64>> {
    let s = s.trim();
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: u64 = lo.trim().parse().context("bad seed range start")?;
        let hi: u64 = hi.trim().parse().context("bad seed range end")?;
        if lo > hi {
            bail!("empty seed range `{s}`");
        }
        return Ok((lo..=hi).collect());
    }
    s.split(',')
        .map(|p| p.trim().parse().with_context(|| format!("bad seed `{p}`")))
        .collect()
}

fn parse_dims(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|p| p.trim().parse().with_context(|| format!("bad dimension `{p}`")))
        .collect()
}

fn parse_problem_list(s: &str, dims: &[usize]) -> Result<Vec<ProblemRef>> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Ok(id) = part.parse::<SuiteId>() {
            out.extend(dims.iter().map(|&d| ProblemRef::Suite(id, d)));
        } else if let Ok(case) = part.parse::<UavCase>() {
            out.push(ProblemRef::Uav(case));
        } else {
            bail!("unknown problem `{part}` (expected E1..E11 or C1..C6)");
        }
    }
    Ok(out)
}

fn expand_suite(name: &str, dims: &[usize]) -> Result<Vec<ProblemRef>> {
    let mut out = Vec::new();
    let (suite, uav) = match name.to_ascii_lowercase().as_str() {
        "e" => (true, false),
        "uav" => (false, true),
        "all" => (true, true),
        other => bail!("unknown suite `{other}` (expected e, uav, or all)"),
    };
    if suite {
        for id in SuiteId::all() {
            out.extend(dims.iter().map(|&d| ProblemRef::Suite(id, d)));
        }
    }
    if uav {
        out.extend(UavCase::all().map(ProblemRef::Uav));
    }
    Ok(out)
}

impl RunArgs {
    fn into_config(self) -> Result<ExperimentConfig> {
        let file: RunFile = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading config {}", path.display()))?;
                toml::from_str(&text)
                    .with_context(|| format!("parsing config {}", path.display()))?
            }
            None => RunFile::default(),
        };
        let out = self
            .out
            .or(file.out)
            .context("no output directory; pass --out DIR")?;
        let dims = match self.dims.or(file.dims) {
            Some(s) => parse_dims(&s)?,
            None => vec![10, 30, 50],
        };
        let problems = match (self.problems.or(file.problems), self.suite.or(file.suite)) {
            (Some(list), _) => parse_problem_list(&list, &dims)?,
            (None, Some(suite)) => expand_suite(&suite, &dims)?,
            (None, None) => bail!("nothing to run; pass --suite or --problems"),
        };
        if problems.is_empty() {
            bail!("nothing to run; the problem list is empty");
        }

        let mut cfg = ExperimentConfig::new(out);
        cfg.problems = problems;
        cfg.seeds = match self.seeds.or(file.seeds) {
            Some(s) => parse_seeds(&s)?,
            None => competition_seeds(),
        };
        if let Some(algo) = self.algo.or(file.algo) {
            cfg.algorithm = algo.parse()?;
        }
        if let Some(metric) = self.metric.or(file.metric) {
            cfg.metric = metric.parse()?;
        }
        if let Some(seed) = self.world_seed.or(file.world_seed) {
            cfg.world_seed = seed;
        }
        cfg.force = self.force || file.force.unwrap_or(false);
        Ok(cfg)
    }
}

fn cmd_run(args: RunArgs) -> Result<()> {
    let cfg = args.into_config()?;
    println!(
        "running {} problem(s) x {} seed(s) with {} -> {}",
        cfg.problems.len(),
        cfg.seeds.len(),
        cfg.algorithm,
        cfg.out_dir.display()
    );
    let records = run_experiment(&cfg)?;
    println!(
        "{} record(s) in {}; report_{}.{{txt,csv,tex}} updated",
        records.len(),
        cfg.out_dir.join("records").display(),
        cfg.algorithm
    );
    Ok(())
}

fn cmd_reffront(args: ReffrontArgs) -> Result<()> {
    let id: SuiteId = args.problem.parse()?;
    let front = build_reference_front(id, args.dim, args.resolution, args.seed)?;
    std::fs::create_dir_all(&args.out)?;
    let path = args.out.join(front.standard_filename());
    front.write(&path)?;
    println!(
        "{} points, version {} -> {}",
        front.points.len(),
        front.version_id(),
        path.display()
    );
    Ok(())
}

fn cmd_report(args: ReportArgs) -> Result<()> {
    let records = read_records(&args.in_dir)
        .with_context(|| format!("reading records under {}", args.in_dir.display()))?;
    if records.is_empty() {
        bail!("no records under {}", args.in_dir.display());
    }
    let mut algorithms: Vec<String> = match &args.algo {
        Some(a) => vec![a.clone()],
        None => {
            let mut all: Vec<String> = records.iter().map(|r| r.algorithm.clone()).collect();
            all.sort();
            all.dedup();
            all
        }
    };
    if algorithms.len() > 1 && args.format != "text" {
        bail!(
            "records from several algorithms ({}); pick one with --algo",
            algorithms.join(", ")
        );
    }
    for algo in algorithms.drain(..) {
        if !records.iter().any(|r| r.algorithm == algo) {
            bail!("no records for algorithm `{algo}`");
        }
        let table = build_table(&records, &algo);
        match args.format.as_str() {
            "text" => print!("{}", emit_text(&table)),
            "csv" => print!("{}", emit_csv(&table)),
            "latex" => print!("{}", emit_latex(&table)),
            other => bail!("unknown format `{other}` (expected text, csv, or latex)"),
        }
    }
    Ok(())
}

fn cmd_world(args: WorldArgs) -> Result<()> {
    let world = generate_world(args.seed, &WorldConfig::default())?;
    if let Some(parent) = args.out.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    world.write(&args.out)?;
    println!("world seed {} -> {}", args.seed, args.out.display());
    Ok(())
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Run(args) => cmd_run(args),
        Command::Reffront(args) => cmd_reffront(args),
        Command::Report(args) => cmd_report(args),
        Command::World(args) => cmd_world(args),
    }
}
