//! Synthetic urban world: a seeded radial-basis population-density field,
//! a vehicle field concentrated on two road ridges, and every physical
//! constant the path objectives need.

use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One radial-basis population centre; `weight` is the peak density it
/// contributes (persons/m²), `spread` its Gaussian radius in grid units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PopCenter {
    pub cx: f64,
    pub cy: f64,
    pub weight: f64,
    pub spread: f64,
}

/// Two axis-aligned road ridges carrying the vehicle density field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Roads {
    pub x_ridge: f64,
    pub y_ridge: f64,
    pub width: f64,
    pub scale: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RiskParams {
    /// Crash probability per flight hour.
    pub p_crash_per_hour: f64,
    /// Crash impact area, m².
    pub impact_area_m2: f64,
    /// Pedestrian shelter energy, J.
    pub e0_pedestrian_j: f64,
    /// Vehicle shelter energy, J.
    pub e0_vehicle_j: f64,
    /// Conversion factor from sound intensity to cost.
    pub noise_k: f64,
    /// Source sound level, dB.
    pub noise_source_db: f64,
    /// Received levels below this contribute nothing, dB.
    pub noise_threshold_db: f64,
    /// Minimum ground range used in noise attenuation, m.
    pub d_interest_m: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UavParams {
    pub weight_kg: f64,
    pub gravity: f64,
    /// Sea-level atmospheric density, kg/m³.
    pub rho0: f64,
    /// Rotor disc area, m².
    pub zeta_m2: f64,
    pub rotors: u32,
    pub speed_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Limits {
    pub h_min_m: f64,
    pub h_max_m: f64,
    pub alpha_max_rad: f64,
    pub beta_max_rad: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mission {
    pub start: (f64, f64),
    pub goal: (f64, f64),
    /// Hover points the path is rewarded for approaching, grid units.
    pub uhps: Vec<(f64, f64)>,
}

/// Tunable knobs for [`generate_world`]; everything else is installed from
/// fixed defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WorldConfig {
    pub centers: usize,
    /// Target maximum of the population field, persons/m².
    pub peak_density: f64,
    pub cell_size_m: f64,
}

impl Default for WorldConfig {
    fn default() -> Self {
        WorldConfig {
            centers: 5,
            peak_density: 0.01,
            cell_size_m: 100.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct World {
    pub seed: u64,
    /// Grid span per axis; coordinates live in [0, extent].
    pub extent: f64,
    /// Metres per grid unit.
    pub cell_size_m: f64,
    pub pop_centers: Vec<PopCenter>,
    pub roads: Roads,
    /// Lognormal building-height parameters.
    pub building_mu: f64,
    pub building_sigma: f64,
    pub risk: RiskParams,
    pub uav: UavParams,
    pub limits: Limits,
    pub mission: Mission,
}

impl World {
    /// Population density at a grid position, persons/m².
    pub fn population_density(&self, x: f64, y: f64) -> f64 {
        self.pop_centers
            .iter()
            .map(|c| {
                let dx = x - c.cx;
                let dy = y - c.cy;
                c.weight * (-(dx * dx + dy * dy) / (2.0 * c.spread * c.spread)).exp()
            })
            .sum()
    }

    /// Vehicle density at a grid position: the population field masked onto
    /// the two road ridges.
    pub fn vehicle_density(&self, x: f64, y: f64) -> f64 {
        let w2 = 2.0 * self.roads.width * self.roads.width;
        let dx = x - self.roads.x_ridge;
        let dy = y - self.roads.y_ridge;
        let mask = (-dx * dx / w2).exp() + (-dy * dy / w2).exp();
        self.roads.scale * self.population_density(x, y) * mask
    }

    /// Horizontal distance in metres from a grid position to the nearest
    /// population centre.
    pub fn nearest_center_distance_m(&self, x: f64, y: f64) -> f64 {
        self.pop_centers
            .iter()
            .map(|c| ((x - c.cx).powi(2) + (y - c.cy).powi(2)).sqrt() * self.cell_size_m)
            .fold(f64::INFINITY, f64::min)
    }

    /// Lognormal building-height density at altitude `z` metres.
    pub fn building_height_density(&self, z: f64) -> f64 {
        assert!(z > 0.0, "building height density needs z > 0");
        let e = (z.ln() - self.building_mu) / self.building_sigma;
        (-0.5 * e * e).exp() / (z * self.building_sigma * (2.0 * std::f64::consts::PI).sqrt())
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("extent", self.extent),
            ("cell_size_m", self.cell_size_m),
            ("building_sigma", self.building_sigma),
            ("p_crash_per_hour", self.risk.p_crash_per_hour),
            ("impact_area_m2", self.risk.impact_area_m2),
            ("e0_pedestrian_j", self.risk.e0_pedestrian_j),
            ("e0_vehicle_j", self.risk.e0_vehicle_j),
            ("noise_k", self.risk.noise_k),
            ("noise_source_db", self.risk.noise_source_db),
            ("d_interest_m", self.risk.d_interest_m),
            ("weight_kg", self.uav.weight_kg),
            ("gravity", self.uav.gravity),
            ("rho0", self.uav.rho0),
            ("zeta_m2", self.uav.zeta_m2),
            ("speed_ms", self.uav.speed_ms),
            ("h_min_m", self.limits.h_min_m),
            ("alpha_max_rad", self.limits.alpha_max_rad),
            ("beta_max_rad", self.limits.beta_max_rad),
            ("roads.width", self.roads.width),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidConfig(format!("{name} must be positive, got {v}")));
            }
        }
        if self.uav.rotors == 0 {
            return Err(Error::InvalidConfig("rotors must be positive".into()));
        }
        if self.limits.h_min_m >= self.limits.h_max_m {
            return Err(Error::InvalidConfig(format!(
                "h_min {} must be below h_max {}",
                self.limits.h_min_m, self.limits.h_max_m
            )));
        }
        if self.pop_centers.iter().any(|c| c.weight < 0.0 || c.spread <= 0.0) {
            return Err(Error::InvalidConfig("centre weights must be >= 0, spreads > 0".into()));
        }
        if self.mission.uhps.is_empty() {
            return Err(Error::InvalidConfig("mission needs at least one hover point".into()));
        }
        Ok(())
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let text = toml::to_string_pretty(self).map_err(|e| Error::InvalidConfig(e.to_string()))?;
        std::fs::write(path, text)?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<World> {
        let text = std::fs::read_to_string(path)?;
        let world: World = toml::from_str(&text).map_err(|e| Error::Parse {
            path: path.display().to_string(),
            msg: e.to_string(),
        })?;
        world.validate()?;
        Ok(world)
    }
}

/// Build a deterministic world from a seed: centre positions, spreads, and
/// road ridges come from the RNG; weights are rescaled so the field maximum
/// matches `config.peak_density` to grid accuracy.
pub fn generate_world(seed: u64, config: &WorldConfig) -> Result<World> {
    if config.centers == 0 {
        return Err(Error::InvalidConfig("need at least one population centre".into()));
    }
    if !(config.peak_density >= 0.0 && config.peak_density.is_finite()) {
        return Err(Error::InvalidConfig("peak_density must be finite and >= 0".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut centers: Vec<PopCenter> = (0..config.centers)
        .map(|_| PopCenter {
            cx: 5.0 + 40.0 * rng.gen::<f64>(),
            cy: 5.0 + 40.0 * rng.gen::<f64>(),
            weight: 0.5 + 0.5 * rng.gen::<f64>(),
            spread: 5.0 + 10.0 * rng.gen::<f64>(),
        })
        .collect();
    let roads = Roads {
        x_ridge: 10.0 + 30.0 * rng.gen::<f64>(),
        y_ridge: 10.0 + 30.0 * rng.gen::<f64>(),
        width: 2.0,
        scale: 0.2,
    };

    let mut world = World {
        seed,
        extent: 50.0,
        cell_size_m: config.cell_size_m,
        pop_centers: centers.clone(),
        roads,
        building_mu: 3.04670,
        building_sigma: 0.76023,
        risk: RiskParams {
            p_crash_per_hour: 1e-4,
            impact_area_m2: 0.5,
            e0_pedestrian_j: 100.0,
            e0_vehicle_j: 1e5,
            noise_k: 1.0,
            noise_source_db: 80.0,
            noise_threshold_db: 40.0,
            d_interest_m: 10.0,
        },
        uav: UavParams {
            weight_kg: 1.38,
            gravity: 9.81,
            rho0: 1.225,
            zeta_m2: 0.1,
            rotors: 4,
            speed_ms: 10.0,
        },
        limits: Limits {
            h_min_m: 10.0,
            h_max_m: 120.0,
            alpha_max_rad: std::f64::consts::FRAC_PI_3,
            beta_max_rad: std::f64::consts::FRAC_PI_4,
        },
        mission: Mission {
            start: (1.0, 1.0),
            goal: (45.0, 45.0),
            uhps: vec![(25.0, 30.0), (34.0, 20.0), (40.0, 35.0)],
        },
    };

    // Rescale weights so the sampled field maximum hits the target peak.
    let mut peak = 0.0f64;
    let steps = 500;
    for i in 0..=steps {
        for j in 0..=steps {
            let x = world.extent * i as f64 / steps as f64;
            let y = world.extent * j as f64 / steps as f64;
            peak = peak.max(world.population_density(x, y));
        }
    }
    let scale = if peak > 0.0 { config.peak_density / peak } else { 0.0 };
    for c in &mut centers {
        c.weight *= scale;
    }
    world.pop_centers = centers;
    world.validate()?;
    Ok(world)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_gives_identical_world() {
        let config = WorldConfig::default();
        let a = generate_world(1, &config).unwrap();
        let b = generate_world(1, &config).unwrap();
        assert_eq!(a, b);
        let c = generate_world(2, &config).unwrap();
        assert_ne!(a.pop_centers, c.pop_centers);
    }

    #[test]
    fn peak_density_hits_target() {
        let config = WorldConfig::default();
        let world = generate_world(1, &config).unwrap();
        let mut peak = 0.0f64;
        for i in 0..=500 {
            for j in 0..=500 {
                let x = 50.0 * i as f64 / 500.0;
                let y = 50.0 * j as f64 / 500.0;
                peak = peak.max(world.population_density(x, y));
            }
        }
        assert!((peak - 0.01).abs() < 1e-12, "peak {peak}");
    }

    #[test]
    fn density_decays_along_rays_for_single_center() {
        let config = WorldConfig {
            centers: 1,
            ..WorldConfig::default()
        };
        let world = generate_world(7, &config).unwrap();
        let c = &world.pop_centers[0];
        let at_center = world.population_density(c.cx, c.cy);
        for step in 1..=20 {
            let r = step as f64 * 0.5;
            let along = world.population_density(c.cx + r, c.cy);
            let prev = world.population_density(c.cx + r - 0.5, c.cy);
            assert!(along <= prev && along <= at_center);
        }
    }

    #[test]
    fn zero_peak_density_zeroes_both_fields() {
        let config = WorldConfig {
            peak_density: 0.0,
            ..WorldConfig::default()
        };
        let world = generate_world(3, &config).unwrap();
        for (x, y) in [(10.0, 10.0), (25.0, 30.0), (44.0, 7.0)] {
            assert_eq!(world.population_density(x, y), 0.0);
            assert_eq!(world.vehicle_density(x, y), 0.0);
        }
    }

    #[test]
    fn vehicle_field_concentrates_on_ridges() {
        let world = generate_world(1, &WorldConfig::default()).unwrap();
        let rx = world.roads.x_ridge;
        let ry = world.roads.y_ridge;
        // The ridge mask is the vehicle/population ratio; it peaks on a road
        // and collapses away from both.
        let ratio = |x: f64, y: f64| world.vehicle_density(x, y) / world.population_density(x, y);
        let on_road = ratio(rx, ry + 10.0);
        let off_road = ratio(rx + 10.0, ry + 10.0);
        assert!(on_road >= world.roads.scale);
        assert!(off_road < on_road / 100.0);
    }

    #[test]
    fn toml_round_trip_is_exact() {
        let world = generate_world(42, &WorldConfig::default()).unwrap();
        let dir = std::env::temp_dir().join("mpmo-world-test");
        std::fs::create_dir_all(&dir).unwrap();
        let file = dir.join("world_s42.toml");
        world.write(&file).unwrap();
        let back = World::read(&file).unwrap();
        assert_eq!(world, back);
    }

    #[test]
    fn validation_rejects_inverted_altitude_band() {
        let mut world = generate_world(1, &WorldConfig::default()).unwrap();
        world.limits.h_min_m = 200.0;
        assert!(world.validate().is_err());
    }
}
