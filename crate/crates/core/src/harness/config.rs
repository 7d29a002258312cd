//! Experiment configuration: which problems, seeds, solver, metric, and
//! output location. A config hash plus a seed identifies a run.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::algo::EaConfig;
use crate::error::{Error, Result};
use crate::suite::SuiteId;
use crate::uav::{UavCase, WorldConfig, GENOME_LEN};
use crate::util::fnv1a64;

/// One problem instance to run: a suite problem at a dimension, or a
/// path-planning case (always 88 variables).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProblemRef {
    Suite(SuiteId, usize),
    Uav(UavCase),
}

impl ProblemRef {
    pub fn name(&self) -> String {
        match self {
            ProblemRef::Suite(id, _) => id.to_string(),
            ProblemRef::Uav(case) => case.to_string(),
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            ProblemRef::Suite(_, n) => *n,
            ProblemRef::Uav(_) => GENOME_LEN,
        }
    }

    /// Competition evaluation budget: 1000 · dimension · parties for suite
    /// problems, 100000 for the path-planning cases.
    pub fn budget(&self) -> usize {
        match self {
            ProblemRef::Suite(id, n) => 1000 * n * id.party_count(),
            ProblemRef::Uav(_) => 100_000,
        }
    }

    /// File stem like `E1_d10` or `C3_d88`.
    pub fn stem(&self) -> String {
        format!("{}_d{}", self.name(), self.dimension())
    }
}

impl fmt::Display for ProblemRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (d={})", self.name(), self.dimension())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgorithmId {
    Mpnds,
    Random,
}

impl AlgorithmId {
    pub fn name(self) -> &'static str {
        match self {
            AlgorithmId::Mpnds => "mpnds",
            AlgorithmId::Random => "random",
        }
    }
}

impl fmt::Display for AlgorithmId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgorithmId {
    type Err = Error;

    fn from_str(s: &str) -> Result<AlgorithmId> {
        match s.to_ascii_lowercase().as_str() {
            "mpnds" => Ok(AlgorithmId::Mpnds),
            "random" => Ok(AlgorithmId::Random),
            other => Err(Error::InvalidConfig(format!("unknown algorithm `{other}`"))),
        }
    }
}

/// Which metric scores a run. `Auto` keeps the default pairing: reference
/// fronts (MPIGD) for suite problems, hypervolume (MPHV) for the cases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MetricMode {
    #[default]
    Auto,
    Mpigd,
    Mphv,
}

impl MetricMode {
    pub fn name(self) -> &'static str {
        match self {
            MetricMode::Auto => "auto",
            MetricMode::Mpigd => "mpigd",
            MetricMode::Mphv => "mphv",
        }
    }
}

impl FromStr for MetricMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<MetricMode> {
        match s.to_ascii_lowercase().as_str() {
            "auto" => Ok(MetricMode::Auto),
            "mpigd" => Ok(MetricMode::Mpigd),
            "mphv" => Ok(MetricMode::Mphv),
            other => Err(Error::InvalidConfig(format!("unknown metric `{other}`"))),
        }
    }
}

/// Solver knobs shared by every run; budget and seed are filled in per run.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverSettings {
    pub population_size: usize,
    pub crossover_prob: f64,
    pub crossover_eta: f64,
    pub mutation_eta: f64,
    pub mutation_prob: Option<f64>,
    pub repair_prob: f64,
    pub repair_passes: usize,
    pub trace_points: usize,
}

impl Default for SolverSettings {
    fn default() -> Self {
        SolverSettings {
            population_size: 100,
            crossover_prob: 0.9,
            crossover_eta: 20.0,
            mutation_eta: 20.0,
            mutation_prob: None,
            repair_prob: 0.5,
            repair_passes: 3,
            trace_points: 20,
        }
    }
}

impl SolverSettings {
    pub fn ea_config(&self, fe_budget: usize, seed: u64) -> EaConfig {
        EaConfig {
            population_size: self.population_size,
            fe_budget,
            seed,
            crossover_prob: self.crossover_prob,
            crossover_eta: self.crossover_eta,
            mutation_eta: self.mutation_eta,
            mutation_prob: self.mutation_prob,
            repair_prob: self.repair_prob,
            repair_passes: self.repair_passes,
            trace_points: self.trace_points,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub problems: Vec<ProblemRef>,
    pub seeds: Vec<u64>,
    pub algorithm: AlgorithmId,
    pub solver: SolverSettings,
    pub metric: MetricMode,
    pub world_seed: u64,
    pub world_config: WorldConfig,
    /// Point count per party used when building suite reference fronts.
    pub reference_resolution: usize,
    pub reference_seed: u64,
    /// Monte-Carlo sample count for hypervolume of 3-objective parties.
    pub mc_samples: usize,
    pub mc_seed: u64,
    pub out_dir: PathBuf,
    /// Re-run and overwrite existing records instead of skipping them.
    pub force: bool,
}

impl ExperimentConfig {
    pub fn new(out_dir: PathBuf) -> ExperimentConfig {
        ExperimentConfig {
            problems: Vec::new(),
            seeds: competition_seeds(),
            algorithm: AlgorithmId::Mpnds,
            solver: SolverSettings::default(),
            metric: MetricMode::Auto,
            world_seed: 1,
            world_config: WorldConfig::default(),
            reference_resolution: 10_000,
            reference_seed: 0,
            mc_samples: 1_000_000,
            mc_seed: 0,
            out_dir,
            force: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.problems.is_empty() {
            return Err(Error::InvalidConfig("no problems selected".into()));
        }
        if self.seeds.is_empty() {
            return Err(Error::InvalidConfig("no seeds selected".into()));
        }
        if self.reference_resolution < 2 {
            return Err(Error::InvalidConfig("reference resolution must be at least 2".into()));
        }
        if self.mc_samples < 10_000 {
            return Err(Error::InvalidConfig("hypervolume sampling needs at least 1e4 samples".into()));
        }
        Ok(())
    }

    /// Hash of everything that shapes a run's outcome except the seed.
    pub fn config_hash(&self, problem: &ProblemRef) -> String {
        let solver = &self.solver;
        let canon = format!(
            "algo={} pop={} pc={} ec={} em={} pm={:?} rp={} rpass={} trace={} \
             metric={} world_seed={} centers={} peak={} cell={} res={} \
             ref_seed={} mc={} mc_seed={} problem={} budget={}",
            self.algorithm,
            solver.population_size,
            solver.crossover_prob,
            solver.crossover_eta,
            solver.mutation_eta,
            solver.mutation_prob,
            solver.repair_prob,
            solver.repair_passes,
            solver.trace_points,
            self.metric.name(),
            self.world_seed,
            self.world_config.centers,
            self.world_config.peak_density,
            self.world_config.cell_size_m,
            self.reference_resolution,
            self.reference_seed,
            self.mc_samples,
            self.mc_seed,
            problem.stem(),
            problem.budget(),
        );
        format!("{:016x}", fnv1a64(canon.as_bytes()))
    }
}

/// The fixed competition seed list, 1 through 30.
pub fn competition_seeds() -> Vec<u64> {
    (1..=30).collect()
}
