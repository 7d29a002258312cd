//! Experiment driver. Each (problem, seed) produces one record and one
//! archive file; reference fronts, worlds, and hypervolume normalization
//! bounds are built once and reused from the output directory, so repeated
//! invocations extend an experiment instead of redoing it.

use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;

use crate::algo::{run_baseline, run_random_search, TraceSnapshot};
use crate::error::{Error, Result};
use crate::harness::config::{AlgorithmId, ExperimentConfig, MetricMode, ProblemRef};
use crate::harness::records::{read_archive, write_archive, RunRecord, TracePoint};
use crate::harness::table::{build_table, emit_csv, emit_latex, emit_text};
use crate::metrics::{apply_normalization, mpigd_points, mphv, normalization_bounds, NormalizationBounds};
use crate::suite::{build_reference_front, ReferenceFront, SuiteId, SuiteProblem};
use crate::types::{MpProblem, PartyObjectives};
use crate::uav::{generate_world, UavProblem, World};
use crate::util::fnv1a64;

struct Layout {
    records: PathBuf,
    archives: PathBuf,
    fronts: PathBuf,
    worlds: PathBuf,
    normalization: PathBuf,
}

impl Layout {
    fn create(out_dir: &Path) -> Result<Layout> {
        let layout = Layout {
            records: out_dir.join("records"),
            archives: out_dir.join("archives"),
            fronts: out_dir.join("fronts"),
            worlds: out_dir.join("worlds"),
            normalization: out_dir.join("normalization"),
        };
        for dir in [
            &layout.records,
            &layout.archives,
            &layout.fronts,
            &layout.worlds,
            &layout.normalization,
        ] {
            std::fs::create_dir_all(dir)?;
        }
        Ok(layout)
    }

    fn record_path(&self, algo: &str, stem: &str, seed: u64) -> PathBuf {
        self.records.join(format!("{algo}_{stem}_s{seed}.toml"))
    }

    fn archive_path(&self, algo: &str, stem: &str, seed: u64) -> PathBuf {
        self.archives.join(format!("{algo}_{stem}_s{seed}.txt"))
    }
}

/// The metric a run is actually scored with; `Auto` resolves by problem
/// kind, and MPIGD is refused where no reference front exists.
fn resolve_metric(mode: MetricMode, problem: ProblemRef) -> Result<MetricMode> {
    match (mode, problem) {
        (MetricMode::Auto, ProblemRef::Suite(..)) => Ok(MetricMode::Mpigd),
        (MetricMode::Auto, ProblemRef::Uav(_)) => Ok(MetricMode::Mphv),
        (MetricMode::Mpigd, ProblemRef::Uav(_)) => Err(Error::InvalidConfig(
            "path-planning cases have no reference front; score them with mphv".into(),
        )),
        (mode, _) => Ok(mode),
    }
}

fn load_or_build_front(
    fronts_dir: &Path,
    id: SuiteId,
    n: usize,
    resolution: usize,
    seed: u64,
) -> Result<ReferenceFront> {
    let path = fronts_dir.join(format!("{}_d{}_r{}_s{}.txt", id.name(), n, resolution, seed));
    if path.exists() {
        let front = ReferenceFront::read(&path)?;
        if front.problem_id == id.name() && front.dimension == n {
            return Ok(front);
        }
    }
    let front = build_reference_front(id, n, resolution, seed)?;
    front.write(&path)?;
    Ok(front)
}

fn load_or_generate_world(worlds_dir: &Path, cfg: &ExperimentConfig) -> Result<(World, String)> {
    let path = worlds_dir.join(format!("world_s{}.toml", cfg.world_seed));
    if !path.exists() {
        generate_world(cfg.world_seed, &cfg.world_config)?.write(&path)?;
    }
    let text = std::fs::read_to_string(&path)?;
    let world = World::read(&path)?;
    world.validate()?;
    Ok((world, format!("{:016x}", fnv1a64(text.as_bytes()))))
}

/// Every persisted archive for one problem stem, any algorithm, empty
/// archives dropped. Paths are sorted so the union is assembled in a stable
/// order.
fn read_stem_archives(archives_dir: &Path, stem: &str) -> Result<Vec<Vec<PartyObjectives>>> {
    let marker = format!("_{stem}_s");
    let mut paths: Vec<PathBuf> = std::fs::read_dir(archives_dir)?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| {
            p.file_name()
                .and_then(|n| n.to_str())
                .is_some_and(|n| n.ends_with(".txt") && n.contains(&marker))
        })
        .collect();
    paths.sort();
    let mut sets = Vec::new();
    for path in paths {
        let set = read_archive(&path)?;
        if !set.is_empty() {
            sets.push(set);
        }
    }
    Ok(sets)
}

/// Normalization bounds for one problem stem, frozen on first use: derived
/// from the union of every archive persisted so far and written to disk, so
/// later runs (and other algorithms) score against the same box. Returns
/// the bounds and a hash of their stored form.
fn load_or_freeze_bounds(
    normalization_dir: &Path,
    archives_dir: &Path,
    stem: &str,
) -> Result<(NormalizationBounds, String)> {
    let path = normalization_dir.join(format!("{stem}.toml"));
    if !path.exists() {
        let sets = read_stem_archives(archives_dir, stem)?;
        if sets.is_empty() {
            return Err(Error::InvalidConfig(format!(
                "no feasible archive points for {stem}; cannot derive normalization bounds"
            )));
        }
        let bounds = normalization_bounds(&sets);
        let text =
            toml::to_string_pretty(&bounds).map_err(|e| Error::InvalidConfig(e.to_string()))?;
        std::fs::write(&path, text)?;
    }
    let text = std::fs::read_to_string(&path)?;
    let bounds: NormalizationBounds = toml::from_str(&text).map_err(|e| Error::Parse {
        path: path.display().to_string(),
        msg: e.to_string(),
    })?;
    Ok((bounds, format!("{:016x}", fnv1a64(text.as_bytes()))))
}

struct FreshRun {
    seed: u64,
    archive: Vec<PartyObjectives>,
    trace: Vec<TraceSnapshot>,
    fe_used: usize,
    wall_time_s: f64,
}

enum SeedOutcome {
    Reused(RunRecord),
    Fresh(FreshRun),
}

fn run_seed(
    cfg: &ExperimentConfig,
    problem: &dyn MpProblem,
    budget: usize,
    seed: u64,
) -> Result<FreshRun> {
    let start = Instant::now();
    let (archive, trace, fe_used) = match cfg.algorithm {
        AlgorithmId::Mpnds => {
            let run = run_baseline(problem, &cfg.solver.ea_config(budget, seed))?;
            let archive = run.archive.iter().map(|ind| ind.objs.clone()).collect();
            (archive, run.trace, run.evaluations)
        }
        AlgorithmId::Random => {
            let archive = run_random_search(problem, seed, budget)?;
            let objs = archive.iter().map(|ind| ind.objs.clone()).collect();
            (objs, Vec::new(), budget)
        }
    };
    Ok(FreshRun {
        seed,
        archive,
        trace,
        fe_used,
        wall_time_s: start.elapsed().as_secs_f64(),
    })
}

fn run_problem(
    cfg: &ExperimentConfig,
    layout: &Layout,
    problem_ref: ProblemRef,
) -> Result<Vec<RunRecord>> {
    let metric = resolve_metric(cfg.metric, problem_ref)?;
    let budget = problem_ref.budget();
    let stem = problem_ref.stem();
    let hash = cfg.config_hash(&problem_ref);
    let algo = cfg.algorithm.name();

    let mut front: Option<ReferenceFront> = None;
    let mut world_version: Option<String> = None;
    let problem: Box<dyn MpProblem> = match problem_ref {
        ProblemRef::Suite(id, n) => {
            if metric == MetricMode::Mpigd {
                front = Some(load_or_build_front(
                    &layout.fronts,
                    id,
                    n,
                    cfg.reference_resolution,
                    cfg.reference_seed,
                )?);
            }
            Box::new(SuiteProblem::new(id, n)?)
        }
        ProblemRef::Uav(case) => {
            let (world, version) = load_or_generate_world(&layout.worlds, cfg)?;
            world_version = Some(version);
            Box::new(UavProblem::new(case, Arc::new(world)))
        }
    };

    let outcomes: Vec<SeedOutcome> = cfg
        .seeds
        .par_iter()
        .map(|&seed| {
            let record_path = layout.record_path(algo, &stem, seed);
            if !cfg.force && record_path.exists() {
                let existing = RunRecord::read(&record_path)?;
                if existing.config_hash == hash {
                    return Ok(SeedOutcome::Reused(existing));
                }
            }
            run_seed(cfg, problem.as_ref(), budget, seed).map(SeedOutcome::Fresh)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut records = Vec::with_capacity(outcomes.len());
    match metric {
        MetricMode::Mpigd => {
            let front = front.expect("mpigd scoring always loads a front");
            let version = front.version_id();
            for outcome in outcomes {
                let fresh = match outcome {
                    SeedOutcome::Reused(record) => {
                        records.push(record);
                        continue;
                    }
                    SeedOutcome::Fresh(fresh) => fresh,
                };
                let value = mpigd_points(&front.points, &fresh.archive);
                let trace = fresh
                    .trace
                    .iter()
                    .filter(|s| !s.archive.is_empty())
                    .map(|s| TracePoint {
                        evaluations: s.evaluations,
                        value: mpigd_points(&front.points, &s.archive),
                    })
                    .collect();
                write_archive(
                    &layout.archive_path(algo, &stem, fresh.seed),
                    problem.arities(),
                    &fresh.archive,
                )?;
                let record = RunRecord {
                    problem: problem_ref.name(),
                    dimension: problem_ref.dimension(),
                    seed: fresh.seed,
                    algorithm: algo.to_string(),
                    metric: "mpigd".into(),
                    value,
                    mphv_averaged: None,
                    fe_used: fresh.fe_used,
                    archive_size: fresh.archive.len(),
                    wall_time_s: fresh.wall_time_s,
                    config_hash: hash.clone(),
                    reference_version: version.clone(),
                    trace,
                };
                record.write(&layout.record_path(algo, &stem, fresh.seed))?;
                records.push(record);
            }
        }
        MetricMode::Mphv => {
            // Archives are persisted before the bounds derivation so the
            // frozen box covers this batch, then records are written after.
            for outcome in &outcomes {
                if let SeedOutcome::Fresh(fresh) = outcome {
                    write_archive(
                        &layout.archive_path(algo, &stem, fresh.seed),
                        problem.arities(),
                        &fresh.archive,
                    )?;
                }
            }
            let (bounds, bounds_version) =
                load_or_freeze_bounds(&layout.normalization, &layout.archives, &stem)?;
            let version = world_version.unwrap_or(bounds_version);
            let score = |set: &[PartyObjectives]| {
                let normalized = apply_normalization(set, &bounds);
                mphv(&normalized, problem.arities(), cfg.mc_samples, cfg.mc_seed)
            };
            for outcome in outcomes {
                let fresh = match outcome {
                    SeedOutcome::Reused(record) => {
                        records.push(record);
                        continue;
                    }
                    SeedOutcome::Fresh(fresh) => fresh,
                };
                let final_score = score(&fresh.archive);
                let trace = fresh
                    .trace
                    .iter()
                    .map(|s| TracePoint {
                        evaluations: s.evaluations,
                        value: score(&s.archive).total,
                    })
                    .collect();
                let record = RunRecord {
                    problem: problem_ref.name(),
                    dimension: problem_ref.dimension(),
                    seed: fresh.seed,
                    algorithm: algo.to_string(),
                    metric: "mphv".into(),
                    value: final_score.total,
                    mphv_averaged: Some(final_score.averaged),
                    fe_used: fresh.fe_used,
                    archive_size: fresh.archive.len(),
                    wall_time_s: fresh.wall_time_s,
                    config_hash: hash.clone(),
                    reference_version: version.clone(),
                    trace,
                };
                record.write(&layout.record_path(algo, &stem, fresh.seed))?;
                records.push(record);
            }
        }
        MetricMode::Auto => unreachable!("resolve_metric never returns Auto"),
    }
    Ok(records)
}

/// Read every persisted run record under `out_dir`, in filename order.
pub fn read_records(out_dir: &Path) -> Result<Vec<RunRecord>> {
    let records_dir = out_dir.join("records");
    let mut paths: Vec<PathBuf> = std::fs::read_dir(&records_dir)?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "toml"))
        .collect();
    paths.sort();
    paths.iter().map(|p| RunRecord::read(p)).collect()
}

fn write_reports(out_dir: &Path, records: &[RunRecord]) -> Result<()> {
    let mut algorithms: Vec<&str> = records.iter().map(|r| r.algorithm.as_str()).collect();
    algorithms.sort_unstable();
    algorithms.dedup();
    for algo in algorithms {
        let table = build_table(records, algo);
        std::fs::write(out_dir.join(format!("report_{algo}.txt")), emit_text(&table))?;
        std::fs::write(out_dir.join(format!("report_{algo}.csv")), emit_csv(&table))?;
        std::fs::write(out_dir.join(format!("report_{algo}.tex")), emit_latex(&table))?;
    }
    Ok(())
}

/// Run (or resume) the configured experiment: one record per (problem,
/// seed) in the order given, plus per-algorithm report files in `out_dir`.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<RunRecord>> {
    cfg.validate()?;
    let layout = Layout::create(&cfg.out_dir)?;
    let mut records = Vec::new();
    for &problem_ref in &cfg.problems {
        records.extend(run_problem(cfg, &layout, problem_ref)?);
    }
    write_reports(&cfg.out_dir, &records)?;
    Ok(records)
}
