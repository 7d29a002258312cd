//! Pareto and multiparty dominance relations, plus the nondominated sorting
//! and filtering built on them.
//!
//! Multiparty dominance: `a` mp-dominates `b` when no party's objectives of
//! `b` Pareto-dominate those of `a`, and at least one party's objectives of
//! `a` Pareto-dominate those of `b`. Unlike Pareto dominance this relation is
//! NOT transitive, so nothing here may assume transitivity.
//!
//! All comparisons are exact floating-point comparisons; callers who want
//! tolerance must pre-round.

use crate::types::PartyObjectives;

/// True when `a` is componentwise <= `b` with at least one strict <
/// (minimization).
///
/// Panics on length mismatch or empty input.
pub fn pareto_dominates(a: &[f64], b: &[f64]) -> bool {
    assert_eq!(a.len(), b.len(), "objective vectors differ in length");
    assert!(!a.is_empty(), "objective vectors must be non-empty");
    let mut strict = false;
    for (&ai, &bi) in a.iter().zip(b) {
        if ai > bi {
            return false;
        }
        if ai < bi {
            strict = true;
        }
    }
    strict
}

/// Fast nondominated sorting. Returns the Pareto rank of each point; ranks
/// are contiguous starting at 0 (0 = nondominated).
///
/// Panics on an empty slice or ragged lengths.
pub fn nondominated_sort<T: AsRef<[f64]>>(points: &[T]) -> Vec<usize> {
    assert!(!points.is_empty(), "cannot sort an empty set");
    let n = points.len();
    let dim = points[0].as_ref().len();
    assert!(
        points.iter().all(|p| p.as_ref().len() == dim),
        "points differ in objective count"
    );

    let mut dominates: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut dominated_by = vec![0usize; n];
    for i in 0..n {
        for j in (i + 1)..n {
            if pareto_dominates(points[i].as_ref(), points[j].as_ref()) {
                dominates[i].push(j);
                dominated_by[j] += 1;
            } else if pareto_dominates(points[j].as_ref(), points[i].as_ref()) {
                dominates[j].push(i);
                dominated_by[i] += 1;
            }
        }
    }

    let mut rank = vec![usize::MAX; n];
    let mut front: Vec<usize> = (0..n).filter(|&i| dominated_by[i] == 0).collect();
    let mut level = 0;
    while !front.is_empty() {
        let mut next = Vec::new();
        for &i in &front {
            rank[i] = level;
            for &j in &dominates[i] {
                dominated_by[j] -= 1;
                if dominated_by[j] == 0 {
                    next.push(j);
                }
            }
        }
        front = next;
        level += 1;
    }
    debug_assert!(rank.iter().all(|&r| r != usize::MAX));
    rank
}

/// Indices whose objective vectors are Pareto-nondominated within `points`.
pub fn pareto_nondominated_filter<T: AsRef<[f64]>>(points: &[T]) -> Vec<usize> {
    assert!(!points.is_empty(), "cannot filter an empty set");
    (0..points.len())
        .filter(|&i| {
            !points
                .iter()
                .any(|q| pareto_dominates(q.as_ref(), points[i].as_ref()))
        })
        .collect()
}

/// Multiparty dominance: no party where `b` Pareto-dominates `a`, and at
/// least one party where `a` Pareto-dominates `b`.
///
/// Panics when the party structures differ.
pub fn mp_dominates(a: &PartyObjectives, b: &PartyObjectives) -> bool {
    assert!(
        a.same_structure(b),
        "party structures differ: {:?} vs {:?}",
        a.arities(),
        b.arities()
    );
    let mut any_strict = false;
    for (pa, pb) in a.parties().iter().zip(b.parties()) {
        if pareto_dominates(pb.values(), pa.values()) {
            return false;
        }
        if pareto_dominates(pa.values(), pb.values()) {
            any_strict = true;
        }
    }
    any_strict
}

/// Indices of the multiparty-nondominated members of `pop`: index `i` is
/// retained iff no `j` with `mp_dominates(pop[j], pop[i])`. Definitional
/// O(n^2 M) scan; kept simple because mp-dominance is not transitive.
///
/// Panics on an empty population.
pub fn mp_nondominated_filter(pop: &[PartyObjectives]) -> Vec<usize> {
    assert!(!pop.is_empty(), "cannot filter an empty population");
    (0..pop.len())
        .filter(|&i| !pop.iter().any(|q| mp_dominates(q, &pop[i])))
        .collect()
}
