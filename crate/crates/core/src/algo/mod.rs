//! Baseline solvers: a multiparty-rank evolutionary algorithm and a
//! random-search comparator.

pub mod baseline;
pub mod mpnds;
pub mod operators;
pub mod random_search;

pub use baseline::{run_baseline, EaConfig, EaRun, Individual, TraceSnapshot};
pub use mpnds::mpnds_rank;
pub use random_search::run_random_search;
