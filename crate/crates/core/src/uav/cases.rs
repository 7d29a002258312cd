//! The six biparty path-planning cases: an efficiency party and a safety
//! party, each with two objectives over the same decoded path.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::types::{Bounds, DecisionVector, MpProblem, PartyObjectives};
use crate::uav::objectives::{
    constraint_violations, f_distance, f_eco, f_fatal, f_fuel, f_height, f_length, f_noise,
    EnergyLogisticKernel, FatalityKernel,
};
use crate::uav::path::{decode_path, smooth_worst_violation, Genome, GENOME_LEN};
use crate::uav::world::World;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UavCase {
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
}

impl UavCase {
    pub fn all() -> [UavCase; 6] {
        [
            UavCase::C1,
            UavCase::C2,
            UavCase::C3,
            UavCase::C4,
            UavCase::C5,
            UavCase::C6,
        ]
    }

    pub fn name(self) -> &'static str {
        match self {
            UavCase::C1 => "C1",
            UavCase::C2 => "C2",
            UavCase::C3 => "C3",
            UavCase::C4 => "C4",
            UavCase::C5 => "C5",
            UavCase::C6 => "C6",
        }
    }
}

impl fmt::Display for UavCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for UavCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<UavCase> {
        match s.to_ascii_uppercase().as_str() {
            "C1" => Ok(UavCase::C1),
            "C2" => Ok(UavCase::C2),
            "C3" => Ok(UavCase::C3),
            "C4" => Ok(UavCase::C4),
            "C5" => Ok(UavCase::C5),
            "C6" => Ok(UavCase::C6),
            other => Err(Error::UnknownProblem(other.to_string())),
        }
    }
}

/// One case bound to a world and a fatality kernel; evaluation decodes the
/// genome once and reads off the case's objective pairs.
pub struct UavProblem {
    case: UavCase,
    world: Arc<World>,
    kernel: Arc<dyn FatalityKernel>,
    bounds: Bounds,
    arities: [usize; 2],
    id: String,
}

impl UavProblem {
    pub fn new(case: UavCase, world: Arc<World>) -> UavProblem {
        UavProblem::with_kernel(case, world, Arc::new(EnergyLogisticKernel))
    }

    pub fn with_kernel(
        case: UavCase,
        world: Arc<World>,
        kernel: Arc<dyn FatalityKernel>,
    ) -> UavProblem {
        let bounds =
            Bounds::new(vec![0.0; GENOME_LEN], vec![1.0; GENOME_LEN]).expect("unit hypercube");
        UavProblem {
            id: case.name().to_string(),
            case,
            world,
            kernel,
            bounds,
            arities: [2, 2],
        }
    }

    pub fn case(&self) -> UavCase {
        self.case
    }

    pub fn world(&self) -> &World {
        &self.world
    }

    fn genome(&self, x: &DecisionVector) -> Genome {
        Genome::new(x.values().to_vec()).expect("dimension checked by bounds")
    }
}

impl MpProblem for UavProblem {
    fn id(&self) -> &str {
        &self.id
    }

    fn dimension(&self) -> usize {
        GENOME_LEN
    }

    fn party_count(&self) -> usize {
        2
    }

    fn arities(&self) -> &[usize] {
        &self.arities
    }

    fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    fn evaluate(&self, x: &DecisionVector) -> PartyObjectives {
        let path = decode_path(&self.genome(x), &self.world);
        let world = self.world.as_ref();
        let efficiency = match self.case {
            UavCase::C1 | UavCase::C4 => vec![f_length(&path, world), f_distance(&path, world)],
            UavCase::C2 | UavCase::C5 => vec![
                f_length(&path, world) + f_height(&path),
                f_distance(&path, world),
            ],
            UavCase::C3 | UavCase::C6 => vec![f_fuel(&path, world), f_distance(&path, world)],
        };
        let safety = match self.case {
            UavCase::C1 | UavCase::C2 | UavCase::C3 => vec![
                f_fatal(&path, world, self.kernel.as_ref()),
                f_eco(&path, world),
            ],
            UavCase::C4 | UavCase::C5 | UavCase::C6 => vec![
                f_fatal(&path, world, self.kernel.as_ref()),
                f_noise(&path, world),
            ],
        };
        PartyObjectives::from(vec![efficiency, safety])
    }

    fn constraint_violations(&self, x: &DecisionVector) -> Option<Vec<f64>> {
        let path = decode_path(&self.genome(x), &self.world);
        Some(constraint_violations(&path, &self.world).as_vec())
    }

    fn has_repair(&self) -> bool {
        true
    }

    fn repair(&self, x: &mut [f64]) -> bool {
        smooth_worst_violation(x, &self.world)
    }
}

/// Build one case over a shared world.
pub fn make_uav_case(case: UavCase, world: Arc<World>) -> UavProblem {
    UavProblem::new(case, world)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::uav::world::{generate_world, WorldConfig};

    fn world() -> Arc<World> {
        Arc::new(generate_world(1, &WorldConfig::default()).unwrap())
    }

    fn genome(scale: f64) -> DecisionVector {
        let genes: Vec<f64> = (0..GENOME_LEN)
            .map(|i| ((i as f64 * 0.618 + scale) % 1.0).abs())
            .collect();
        DecisionVector::new(genes).unwrap()
    }

    #[test]
    fn case_names_round_trip() {
        for case in UavCase::all() {
            assert_eq!(case.name().parse::<UavCase>().unwrap(), case);
        }
        assert!("C7".parse::<UavCase>().is_err());
    }

    #[test]
    fn shape_matches_the_competition_setup() {
        let problem = make_uav_case(UavCase::C1, world());
        assert_eq!(problem.dimension(), 88);
        assert_eq!(problem.party_count(), 2);
        assert_eq!(problem.arities(), &[2, 2]);
        assert_eq!(problem.id(), "C1");
        assert_eq!(problem.bounds().lower(), vec![0.0; 88].as_slice());
        assert_eq!(problem.bounds().upper(), vec![1.0; 88].as_slice());
    }

    #[test]
    fn c1_and_c4_share_the_efficiency_party() {
        let w = world();
        let c1 = make_uav_case(UavCase::C1, w.clone());
        let c4 = make_uav_case(UavCase::C4, w);
        for s in [0.1, 0.4, 0.9] {
            let x = genome(s);
            assert_eq!(c1.evaluate(&x).party(0), c4.evaluate(&x).party(0));
        }
    }

    #[test]
    fn c2_adds_height_changes_on_top_of_length() {
        let w = world();
        let c1 = make_uav_case(UavCase::C1, w.clone());
        let c2 = make_uav_case(UavCase::C2, w.clone());
        // Constant-altitude genome: height term vanishes, C2 = C1.
        let mut genes = vec![0.25; GENOME_LEN];
        for z in genes.iter_mut().skip(1).step_by(2) {
            *z = 0.5;
        }
        let x = DecisionVector::new(genes).unwrap();
        let a = c1.evaluate(&x);
        let b = c2.evaluate(&x);
        assert_eq!(a.party(0).values()[0], b.party(0).values()[0]);
        // A varying-altitude genome strictly separates them.
        let x = genome(0.3);
        assert!(c2.evaluate(&x).party(0).values()[0] > c1.evaluate(&x).party(0).values()[0]);
    }

    #[test]
    fn c3_efficiency_leads_with_fuel() {
        let w = world();
        let c3 = make_uav_case(UavCase::C3, w.clone());
        let x = genome(0.7);
        let genome_typed = Genome::new(x.values().to_vec()).unwrap();
        let path = decode_path(&genome_typed, &w);
        assert_eq!(c3.evaluate(&x).party(0).values()[0], f_fuel(&path, &w));
    }

    #[test]
    fn safety_party_swaps_eco_for_noise_in_c4_to_c6() {
        let w = world();
        let x = genome(0.5);
        let c1 = make_uav_case(UavCase::C1, w.clone()).evaluate(&x);
        let c4 = make_uav_case(UavCase::C4, w.clone()).evaluate(&x);
        assert_eq!(c1.party(1).values()[0], c4.party(1).values()[0]);
        let genome_typed = Genome::new(x.values().to_vec()).unwrap();
        let path = decode_path(&genome_typed, &w);
        assert_eq!(c1.party(1).values()[1], f_eco(&path, &w));
        assert_eq!(c4.party(1).values()[1], f_noise(&path, &w));
    }

    #[test]
    fn objectives_are_nonnegative_and_deterministic() {
        let w = world();
        for case in UavCase::all() {
            let problem = make_uav_case(case, w.clone());
            for s in [0.0, 0.33, 0.77] {
                let x = genome(s);
                let a = problem.evaluate(&x);
                let b = problem.evaluate(&x);
                assert_eq!(a, b);
                for party in a.parties() {
                    for &v in party.values() {
                        assert!(v >= 0.0 && v.is_finite());
                    }
                }
                let violations = problem.constraint_violations(&x).unwrap();
                assert_eq!(violations.len(), 3);
                assert!(violations.iter().all(|&v| v >= 0.0));
            }
        }
    }
}
