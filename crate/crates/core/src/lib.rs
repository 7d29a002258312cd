//! Benchmark toolkit for multiparty multiobjective optimization: analytic
//! test problems with time-parameterized Pareto sets, biparty UAV
//! path-planning cases, multiparty dominance and quality metrics, a baseline
//! evolutionary solver, and a seeded experiment harness.

pub mod algo;
pub mod bf;
pub mod dominance;
pub mod error;
pub mod harness;
pub mod metrics;
pub mod suite;
pub mod types;
pub mod uav;
mod util;

pub use error::{Error, Result};
pub use types::{Bounds, DecisionVector, MpProblem, ObjectiveVector, PartyObjectives};
