//! Quality metrics: multiparty inverted generational distance against a
//! reference front, and multiparty hypervolume over normalized objectives.
//! Everything here is deterministic given its inputs (Monte-Carlo volumes
//! take an explicit seed).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dominance::{mp_nondominated_filter, pareto_nondominated_filter};
use crate::suite::ReferenceFront;
use crate::types::{ObjectiveVector, PartyObjectives};

/// Reference coordinate per normalized objective for hypervolume.
pub const HV_REFERENCE_COORD: f64 = 1.1;

/// Mean, over reference points, of the minimum summed per-party Euclidean
/// distance to the obtained set. Zero iff every reference point is matched
/// exactly in all parties at once. Lower is better.
pub fn mpigd(reference: &ReferenceFront, obtained: &[PartyObjectives]) -> f64 {
    mpigd_points(&reference.points, obtained)
}

pub fn mpigd_points(reference: &[PartyObjectives], obtained: &[PartyObjectives]) -> f64 {
    assert!(!reference.is_empty(), "empty reference front");
    assert!(!obtained.is_empty(), "empty obtained set");
    assert!(
        reference[0].same_structure(&obtained[0]),
        "reference and obtained party structures differ"
    );
    let mut total = 0.0;
    for v in reference {
        let mut best = f64::INFINITY;
        for s in obtained {
            let mut dist = 0.0;
            for (pv, ps) in v.parties().iter().zip(s.parties()) {
                let sq: f64 = pv
                    .values()
                    .iter()
                    .zip(ps.values())
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum();
                dist += sq.sqrt();
            }
            if dist < best {
                best = dist;
            }
        }
        total += best;
    }
    total / reference.len() as f64
}

/// Exact hypervolume of a 2-objective set against `reference`
/// (minimization): the area of the dominated region inside the reference
/// box, computed with a sorted sweep. Points with any coordinate at or
/// beyond the reference contribute nothing.
pub fn hv2d(points: &[ObjectiveVector], reference: [f64; 2]) -> f64 {
    let (r1, r2) = (reference[0], reference[1]);
    let mut pts: Vec<(f64, f64)> = points
        .iter()
        .map(|p| {
            let v = p.values();
            assert_eq!(v.len(), 2, "hv2d requires exactly two objectives");
            (v[0], v[1])
        })
        .filter(|&(x, y)| x < r1 && y < r2)
        .collect();
    if pts.is_empty() {
        return 0.0;
    }
    pts.sort_by(|a, b| a.partial_cmp(b).expect("objectives must not be NaN"));
    let mut hv = 0.0;
    let mut y_prev = r2;
    for (x, y) in pts {
        if y < y_prev {
            hv += (r1 - x) * (y_prev - y);
            y_prev = y;
        }
    }
    hv
}

/// Monte-Carlo hypervolume for any objective count: the fraction of seeded
/// uniform samples in the [0, reference] box weakly dominated by some point,
/// times the box volume.
pub fn hv_monte_carlo(
    points: &[ObjectiveVector],
    reference: &[f64],
    samples: usize,
    seed: u64,
) -> f64 {
    assert!(!reference.is_empty(), "empty reference point");
    assert!(samples > 0, "need at least one sample");
    assert!(
        reference.iter().all(|&r| r > 0.0),
        "reference coordinates must be positive"
    );
    let dim = reference.len();
    for p in points {
        assert_eq!(p.len(), dim, "point/reference dimension mismatch");
    }
    // Dominated points never extend the covered region; drop them once.
    let lean: Vec<&ObjectiveVector> = if points.is_empty() {
        Vec::new()
    } else {
        pareto_nondominated_filter(points)
            .into_iter()
            .map(|i| &points[i])
            .collect()
    };
    let vol: f64 = reference.iter().product();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sample = vec![0.0f64; dim];
    let mut hits = 0usize;
    for _ in 0..samples {
        for (s, &r) in sample.iter_mut().zip(reference) {
            *s = rng.gen::<f64>() * r;
        }
        if lean
            .iter()
            .any(|p| p.values().iter().zip(&sample).all(|(&pv, &sv)| pv <= sv))
        {
            hits += 1;
        }
    }
    vol * hits as f64 / samples as f64
}

/// Per-party, per-objective ideal (min) and nadir (max), taken over the
/// multiparty-nondominated union of all input sets.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalizationBounds {
    pub ideal: Vec<Vec<f64>>,
    pub nadir: Vec<Vec<f64>>,
}

pub fn normalization_bounds(sets: &[Vec<PartyObjectives>]) -> NormalizationBounds {
    let union: Vec<PartyObjectives> = sets.iter().flatten().cloned().collect();
    assert!(!union.is_empty(), "cannot derive bounds from empty sets");
    assert!(
        union.iter().all(|p| p.same_structure(&union[0])),
        "sets have inconsistent party structures"
    );
    let survivors = mp_nondominated_filter(&union);
    let arities = union[0].arities();
    let mut ideal: Vec<Vec<f64>> = arities.iter().map(|&a| vec![f64::INFINITY; a]).collect();
    let mut nadir: Vec<Vec<f64>> = arities.iter().map(|&a| vec![f64::NEG_INFINITY; a]).collect();
    for &i in &survivors {
        for (j, party) in union[i].parties().iter().enumerate() {
            for (k, &v) in party.values().iter().enumerate() {
                ideal[j][k] = ideal[j][k].min(v);
                nadir[j][k] = nadir[j][k].max(v);
            }
        }
    }
    NormalizationBounds { ideal, nadir }
}

/// Map every value to (v - ideal) / (nadir - ideal); a degenerate dimension
/// (nadir = ideal) maps to 0.
pub fn apply_normalization(
    set: &[PartyObjectives],
    bounds: &NormalizationBounds,
) -> Vec<PartyObjectives> {
    set.iter()
        .map(|p| {
            PartyObjectives::from(
                p.parties()
                    .iter()
                    .enumerate()
                    .map(|(j, party)| {
                        party
                            .values()
                            .iter()
                            .enumerate()
                            .map(|(k, &v)| {
                                let span = bounds.nadir[j][k] - bounds.ideal[j][k];
                                if span > 0.0 {
                                    (v - bounds.ideal[j][k]) / span
                                } else {
                                    0.0
                                }
                            })
                            .collect::<Vec<f64>>()
                    })
                    .collect::<Vec<Vec<f64>>>(),
            )
        })
        .collect()
}

/// Normalize several sets against shared bounds derived from their union.
pub fn normalize_sets(
    sets: &[Vec<PartyObjectives>],
) -> (Vec<Vec<PartyObjectives>>, NormalizationBounds) {
    let bounds = normalization_bounds(sets);
    let normalized = sets
        .iter()
        .map(|s| apply_normalization(s, &bounds))
        .collect();
    (normalized, bounds)
}

/// Multiparty hypervolume of one normalized set: per-party hypervolume
/// against (1.1, ..., 1.1), exact for two objectives and Monte-Carlo
/// otherwise. The scored value is the sum over parties; the average is also
/// reported. Higher is better.
#[derive(Debug, Clone, PartialEq)]
pub struct MphvScore {
    pub per_party: Vec<f64>,
    pub total: f64,
    pub averaged: f64,
}

pub fn mphv(
    set: &[PartyObjectives],
    arities: &[usize],
    mc_samples: usize,
    mc_seed: u64,
) -> MphvScore {
    assert!(!arities.is_empty(), "at least one party required");
    if let Some(first) = set.first() {
        assert_eq!(first.arities(), arities, "set does not match arities");
    }
    let per_party: Vec<f64> = arities
        .iter()
        .enumerate()
        .map(|(j, &arity)| {
            let pts: Vec<ObjectiveVector> = set.iter().map(|p| p.party(j).clone()).collect();
            if arity == 2 {
                hv2d(&pts, [HV_REFERENCE_COORD; 2])
            } else {
                hv_monte_carlo(
                    &pts,
                    &vec![HV_REFERENCE_COORD; arity],
                    mc_samples,
                    mc_seed.wrapping_add(j as u64),
                )
            }
        })
        .collect();
    let total: f64 = per_party.iter().sum();
    MphvScore {
        averaged: total / arities.len() as f64,
        per_party,
        total,
    }
}
