//! Multiparty nondominated sorting: per-party Pareto ranks first, then an
//! ordinary nondominated sort over the rank vectors. The rank-0 class and
//! the multiparty-nondominated set overlap heavily but neither contains the
//! other in general; see the characterization test.

use crate::dominance::nondominated_sort;
use crate::types::{ObjectiveVector, PartyObjectives};

/// Two-stage multiparty rank, contiguous from 0. Panics on an empty or
/// structurally inconsistent population.
pub fn mpnds_rank(pop: &[PartyObjectives]) -> Vec<usize> {
    assert!(!pop.is_empty(), "cannot rank an empty population");
    assert!(
        pop.iter().all(|p| p.same_structure(&pop[0])),
        "population has inconsistent party structures"
    );
    let parties = pop[0].party_count();
    let mut rank_vectors = vec![vec![0.0f64; parties]; pop.len()];
    for j in 0..parties {
        let objs: Vec<&ObjectiveVector> = pop.iter().map(|p| p.party(j)).collect();
        for (i, rank) in nondominated_sort(&objs).into_iter().enumerate() {
            rank_vectors[i][j] = rank as f64;
        }
    }
    nondominated_sort(&rank_vectors)
}
