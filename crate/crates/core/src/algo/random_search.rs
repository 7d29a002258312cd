//! Random-search comparator: uniform sampling with an online archive of
//! feasible, mutually multiparty-nondominated individuals.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algo::baseline::{evaluate_individual, Individual};
use crate::dominance::mp_dominates;
use crate::error::{Error, Result};
use crate::types::MpProblem;

/// Sample `fe_budget` points uniformly in the bounds, keeping an archive
/// with no dominated or infeasible members. The archive is maintained
/// online: each arrival is tested against current members only, which keeps
/// memory bounded by the archive itself.
pub fn run_random_search(
    problem: &dyn MpProblem,
    seed: u64,
    fe_budget: usize,
) -> Result<Vec<Individual>> {
    if fe_budget == 0 {
        return Err(Error::InvalidConfig("budget must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bounds = problem.bounds();
    let mut archive: Vec<Individual> = Vec::new();
    for _ in 0..fe_budget {
        let ind = evaluate_individual(problem, bounds.sample_uniform(&mut rng));
        if ind.violation > 0.0 {
            continue;
        }
        if archive.iter().any(|a| mp_dominates(&a.objs, &ind.objs)) {
            continue;
        }
        archive.retain(|a| !mp_dominates(&ind.objs, &a.objs));
        archive.push(ind);
    }
    Ok(archive)
}
