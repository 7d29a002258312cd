//! Experiment harness: configuration, per-run records, the runner, and the
//! competition statistics tables.

pub mod config;
pub mod records;
pub mod runner;
pub mod stats;
pub mod table;

pub use config::{
    competition_seeds, AlgorithmId, ExperimentConfig, MetricMode, ProblemRef, SolverSettings,
};
pub use records::{read_archive, write_archive, RunRecord, TracePoint};
pub use runner::{read_records, run_experiment};
pub use stats::{aggregate_values, CellStats};
pub use table::{build_table, emit_csv, emit_latex, emit_text, parse_csv, StatTable};
