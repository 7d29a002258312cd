//! The seven path objectives (four efficiency, three safety) and the three
//! constraint families. All sums run over track points or segments exactly
//! as decoded; nothing is integrated along segments.

use crate::uav::path::FlightPath;
use crate::uav::world::{UavParams, World};

/// Fatality probability of a crash from altitude `z` against a target with
/// shelter energy `e0`; implementations must be monotone in `z` and lie in
/// [0, 1].
pub trait FatalityKernel: Send + Sync {
    fn fatality(&self, z_m: f64, e0_j: f64, uav: &UavParams) -> f64;
}

/// Logistic kernel in impact kinetic energy: E/(E + e0) with E = W·G·z.
#[derive(Debug, Clone, Copy, Default)]
pub struct EnergyLogisticKernel;

impl FatalityKernel for EnergyLogisticKernel {
    fn fatality(&self, z_m: f64, e0_j: f64, uav: &UavParams) -> f64 {
        let energy = uav.weight_kg * uav.gravity * z_m;
        energy / (energy + e0_j)
    }
}

fn norm(v: &[f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

fn horizontal_norm(v: &[f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1]).sqrt()
}

/// Total path length in metres.
pub fn f_length(path: &FlightPath, world: &World) -> f64 {
    path.segments_m(world).iter().map(norm).sum()
}

/// Flight energy in joules: rotor power over each segment's traversal time
/// plus the potential energy of every climb. Air density thins with the
/// segment's mean altitude over a 10.7 km scale height.
pub fn f_fuel(path: &FlightPath, world: &World) -> f64 {
    let uav = &world.uav;
    let hover = uav.weight_kg.powf(1.5);
    path.segments_m(world)
        .iter()
        .zip(path.points().windows(2))
        .map(|(seg, pts)| {
            let mean_altitude_km = (pts[0][2] + pts[1][2]) / 2000.0;
            let rho = uav.rho0 * (-mean_altitude_km / 10.7).exp();
            let power = hover
                * (uav.gravity.powi(3) / (2.0 * rho * uav.zeta_m2 * uav.rotors as f64)).sqrt();
            let climb = (pts[1][2] - pts[0][2]).max(0.0);
            power * norm(seg) / uav.speed_ms + climb * uav.weight_kg * uav.gravity
        })
        .sum()
}

/// Total altitude change in metres.
pub fn f_height(path: &FlightPath) -> f64 {
    path.points()
        .windows(2)
        .map(|w| (w[1][2] - w[0][2]).abs())
        .sum()
}

/// Sum over hover points of the horizontal distance (metres) to the nearest
/// track point.
pub fn f_distance(path: &FlightPath, world: &World) -> f64 {
    world
        .mission
        .uhps
        .iter()
        .map(|&(ux, uy)| {
            path.points()
                .iter()
                .map(|p| ((p[0] - ux).powi(2) + (p[1] - uy).powi(2)).sqrt() * world.cell_size_m)
                .fold(f64::INFINITY, f64::min)
        })
        .sum()
}

/// Per-point traversal time in hours: half of each adjacent segment at
/// cruise speed.
fn traversal_hours(path: &FlightPath, world: &World) -> Vec<f64> {
    let lengths: Vec<f64> = path.segments_m(world).iter().map(norm).collect();
    let n = path.points().len();
    (0..n)
        .map(|i| {
            let before = if i > 0 { lengths[i - 1] } else { 0.0 };
            let after = if i < lengths.len() { lengths[i] } else { 0.0 };
            (before + after) / (2.0 * world.uav.speed_ms * 3600.0)
        })
        .collect()
}

/// Expected ground fatalities: pedestrian plus vehicle risk at every track
/// point, each the product of crash probability over the point's traversal
/// time, impact area, local density, and the fatality kernel.
pub fn f_fatal(path: &FlightPath, world: &World, kernel: &dyn FatalityKernel) -> f64 {
    let hours = traversal_hours(path, world);
    path.points()
        .iter()
        .zip(&hours)
        .map(|(p, &dt)| {
            let p_crash = world.risk.p_crash_per_hour * dt;
            let area = world.risk.impact_area_m2;
            let pedestrians = world.population_density(p[0], p[1])
                * kernel.fatality(p[2], world.risk.e0_pedestrian_j, &world.uav);
            let vehicles = world.vehicle_density(p[0], p[1])
                * kernel.fatality(p[2], world.risk.e0_vehicle_j, &world.uav);
            p_crash * area * (pedestrians + vehicles)
        })
        .sum()
}

/// Property risk c(z) at one altitude: the lognormal building-height
/// density, held at its plateau value below the median height e^mu.
pub fn eco_cost(z_m: f64, world: &World) -> f64 {
    assert!(z_m > 0.0, "eco cost needs altitude above ground");
    let median = world.building_mu.exp();
    if z_m <= median {
        world.building_height_density(median)
    } else {
        world.building_height_density(z_m)
    }
}

/// Property risk index: sum of `eco_cost` over track points.
pub fn f_eco(path: &FlightPath, world: &World) -> f64 {
    path.points().iter().map(|p| eco_cost(p[2], world)).sum()
}

/// Weighted sound exposure: population density times spherical spreading
/// 1/(z² + d²) at every track point, where d is the ground range to the
/// nearest population centre (floored at d_interest). Points whose received
/// level falls below the threshold contribute nothing.
pub fn f_noise(path: &FlightPath, world: &World) -> f64 {
    let risk = &world.risk;
    path.points()
        .iter()
        .map(|p| {
            let d = world
                .nearest_center_distance_m(p[0], p[1])
                .max(risk.d_interest_m);
            let slant_sq = p[2] * p[2] + d * d;
            let received = risk.noise_source_db - 10.0 * slant_sq.log10();
            if received < risk.noise_threshold_db {
                0.0
            } else {
                risk.noise_k * world.population_density(p[0], p[1]) * risk.noise_source_db
                    / slant_sq
            }
        })
        .sum()
}

/// Terrain, turning-angle, and slope-angle violation magnitudes; all zero
/// for a feasible path. Joints whose horizontal projection vanishes are
/// skipped and counted.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintReport {
    pub terrain: f64,
    pub turning: f64,
    pub slope: f64,
    pub skipped_segments: usize,
}

impl ConstraintReport {
    pub fn as_vec(&self) -> Vec<f64> {
        vec![self.terrain, self.turning, self.slope]
    }

    pub fn total(&self) -> f64 {
        self.terrain + self.turning + self.slope
    }
}

pub fn constraint_violations(path: &FlightPath, world: &World) -> ConstraintReport {
    let limits = &world.limits;
    let terrain = path
        .points()
        .iter()
        .map(|p| (limits.h_min_m - p[2]).max(0.0) + (p[2] - limits.h_max_m).max(0.0))
        .sum();

    let segments = path.segments_m(world);
    let mut skipped = 0usize;
    let mut slope = 0.0;
    for seg in &segments {
        let run = horizontal_norm(seg);
        if run == 0.0 {
            skipped += 1;
            continue;
        }
        let beta = (seg[2] / run).atan();
        slope += (beta.abs() - limits.beta_max_rad).max(0.0);
    }

    let mut turning = 0.0;
    for pair in segments.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        let (na, nb) = (horizontal_norm(a), horizontal_norm(b));
        if na == 0.0 || nb == 0.0 {
            continue;
        }
        let cos = ((a[0] * b[0] + a[1] * b[1]) / (na * nb)).clamp(-1.0, 1.0);
        let alpha = cos.acos();
        turning += (alpha - limits.alpha_max_rad).max(0.0);
    }

    ConstraintReport {
        terrain,
        turning,
        slope,
        skipped_segments: skipped,
    }
}
