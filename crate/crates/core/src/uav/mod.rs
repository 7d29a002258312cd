//! Biparty UAV path planning: a seeded synthetic world, an 88-gene path
//! encoding, efficiency and safety objectives, and the six cases C1-C6.

pub mod cases;
pub mod objectives;
pub mod path;
pub mod world;

pub use cases::{make_uav_case, UavCase, UavProblem};
pub use objectives::{
    constraint_violations, ConstraintReport, EnergyLogisticKernel, FatalityKernel,
};
pub use path::{decode_path, FlightPath, Genome, GENOME_LEN};
pub use world::{generate_world, World, WorldConfig};
