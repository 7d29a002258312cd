//! Baseline multiparty EA: NSGA-II machinery driven by multiparty ranks.
//! Selection is lexicographic on (violation, mp_rank, crowding) everywhere,
//! so feasibility always wins first. One run is single-threaded and fully
//! deterministic per seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algo::mpnds::mpnds_rank;
use crate::algo::operators::{polynomial_mutation, sbx_crossover};
use crate::dominance::mp_nondominated_filter;
use crate::error::{Error, Result};
use crate::types::{DecisionVector, MpProblem, PartyObjectives};

#[derive(Debug, Clone, PartialEq)]
pub struct EaConfig {
    pub population_size: usize,
    pub fe_budget: usize,
    pub seed: u64,
    pub crossover_prob: f64,
    pub crossover_eta: f64,
    pub mutation_eta: f64,
    /// Per-variable mutation probability; `None` means 1/dimension.
    pub mutation_prob: Option<f64>,
    /// Fraction of offspring handed to the problem's repair heuristic, when
    /// it has one; feasible offspring are never altered by it.
    pub repair_prob: f64,
    /// Repair moves applied per repaired offspring.
    pub repair_passes: usize,
    /// Number of evenly spaced convergence snapshots; the final state is
    /// always appended.
    pub trace_points: usize,
}

impl EaConfig {
    pub fn new(fe_budget: usize, seed: u64) -> EaConfig {
        EaConfig {
            population_size: 100,
            fe_budget,
            seed,
            crossover_prob: 0.9,
            crossover_eta: 20.0,
            mutation_eta: 20.0,
            mutation_prob: None,
            repair_prob: 0.5,
            repair_passes: 3,
            trace_points: 20,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.population_size < 2 || self.population_size % 2 != 0 {
            return Err(Error::InvalidConfig(format!(
                "population size must be even and at least 2, got {}",
                self.population_size
            )));
        }
        if self.fe_budget < self.population_size {
            return Err(Error::InvalidConfig(format!(
                "budget {} cannot cover the initial population of {}",
                self.fe_budget, self.population_size
            )));
        }
        if !(0.0..=1.0).contains(&self.repair_prob) {
            return Err(Error::InvalidConfig(format!(
                "repair probability must lie in [0, 1], got {}",
                self.repair_prob
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub x: DecisionVector,
    pub objs: PartyObjectives,
    /// Sum of constraint violation magnitudes; 0 when feasible.
    pub violation: f64,
    pub mp_rank: usize,
    pub crowding: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceSnapshot {
    pub evaluations: usize,
    pub archive: Vec<PartyObjectives>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EaRun {
    /// Feasible, mutually multiparty-nondominated subset of the final
    /// population.
    pub archive: Vec<Individual>,
    pub trace: Vec<TraceSnapshot>,
    pub evaluations: usize,
}

pub(crate) fn evaluate_individual(problem: &dyn MpProblem, genes: Vec<f64>) -> Individual {
    let x = DecisionVector::new(genes).expect("operators keep genes finite");
    let objs = problem.evaluate(&x);
    let violation = problem
        .constraint_violations(&x)
        .map(|v| v.iter().sum())
        .unwrap_or(0.0);
    Individual {
        x,
        objs,
        violation,
        mp_rank: 0,
        crowding: 0.0,
    }
}

/// Strictly better on (violation, mp_rank, crowding): feasibility first,
/// then rank, then sparser neighbourhoods.
fn better(a: &Individual, b: &Individual) -> bool {
    if a.violation != b.violation {
        return a.violation < b.violation;
    }
    if a.mp_rank != b.mp_rank {
        return a.mp_rank < b.mp_rank;
    }
    a.crowding > b.crowding
}

fn tournament<'a, R: Rng>(pop: &'a [Individual], rng: &mut R) -> &'a Individual {
    let a = &pop[rng.gen_range(0..pop.len())];
    let b = &pop[rng.gen_range(0..pop.len())];
    if better(a, b) {
        a
    } else {
        b
    }
}

/// Recompute mp_rank and crowding for everyone. Crowding is the classic
/// per-front distance, taken per party and averaged; boundary individuals
/// keep infinity.
fn annotate(pop: &mut [Individual]) {
    let objs: Vec<PartyObjectives> = pop.iter().map(|i| i.objs.clone()).collect();
    let ranks = mpnds_rank(&objs);
    for (ind, &r) in pop.iter_mut().zip(&ranks) {
        ind.mp_rank = r;
        ind.crowding = 0.0;
    }
    let parties = objs[0].party_count();
    let max_rank = *ranks.iter().max().expect("nonempty population");
    for rank in 0..=max_rank {
        let class: Vec<usize> = (0..pop.len()).filter(|&i| ranks[i] == rank).collect();
        let mut total = vec![0.0f64; class.len()];
        for party in 0..parties {
            for obj in 0..objs[class[0]].party(party).len() {
                let mut order: Vec<usize> = (0..class.len()).collect();
                order.sort_by(|&a, &b| {
                    let va = objs[class[a]].party(party).values()[obj];
                    let vb = objs[class[b]].party(party).values()[obj];
                    va.partial_cmp(&vb).expect("finite objectives")
                });
                let lo = objs[class[order[0]]].party(party).values()[obj];
                let hi = objs[class[*order.last().unwrap()]].party(party).values()[obj];
                total[order[0]] = f64::INFINITY;
                total[*order.last().unwrap()] = f64::INFINITY;
                if hi > lo {
                    for w in order.windows(3) {
                        let prev = objs[class[w[0]]].party(party).values()[obj];
                        let next = objs[class[w[2]]].party(party).values()[obj];
                        total[w[1]] += (next - prev) / (hi - lo);
                    }
                }
            }
        }
        for (k, &i) in class.iter().enumerate() {
            pop[i].crowding = total[k] / parties as f64;
        }
    }
}

/// Indices of the feasible, mutually multiparty-nondominated members.
fn archive_members(pop: &[Individual]) -> Vec<usize> {
    let feasible: Vec<usize> = pop
        .iter()
        .enumerate()
        .filter(|(_, ind)| ind.violation == 0.0)
        .map(|(i, _)| i)
        .collect();
    if feasible.is_empty() {
        return Vec::new();
    }
    let objs: Vec<PartyObjectives> = feasible.iter().map(|&i| pop[i].objs.clone()).collect();
    mp_nondominated_filter(&objs)
        .into_iter()
        .map(|k| feasible[k])
        .collect()
}

fn snapshot(pop: &[Individual], evaluations: usize) -> TraceSnapshot {
    TraceSnapshot {
        evaluations,
        archive: archive_members(pop)
            .into_iter()
            .map(|i| pop[i].objs.clone())
            .collect(),
    }
}

/// Generational loop: seeded uniform initialization, binary tournaments,
/// SBX plus polynomial mutation, environmental selection of the union by
/// the same lexicographic key as the tournament. Evaluation stops exactly
/// at the budget, truncating the last generation if needed.
pub fn run_baseline(problem: &dyn MpProblem, cfg: &EaConfig) -> Result<EaRun> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let bounds = problem.bounds().clone();
    let p_mut = cfg
        .mutation_prob
        .unwrap_or(1.0 / problem.dimension() as f64);
    let use_repair = cfg.repair_passes > 0 && cfg.repair_prob > 0.0 && problem.has_repair();

    let checkpoints: Vec<usize> = (1..=cfg.trace_points)
        .map(|k| (cfg.fe_budget * k).div_ceil(cfg.trace_points))
        .collect();
    let mut next_checkpoint = 0usize;
    let mut trace: Vec<TraceSnapshot> = Vec::new();

    let mut used = 0usize;
    let mut pop: Vec<Individual> = (0..cfg.population_size)
        .map(|_| {
            used += 1;
            evaluate_individual(problem, bounds.sample_uniform(&mut rng))
        })
        .collect();
    annotate(&mut pop);
    while next_checkpoint < checkpoints.len() && used >= checkpoints[next_checkpoint] {
        trace.push(snapshot(&pop, used));
        next_checkpoint += 1;
    }

    while used < cfg.fe_budget {
        let quota = (cfg.fe_budget - used).min(cfg.population_size);
        let mut union = pop.clone();
        while union.len() - pop.len() < quota {
            let pa = tournament(&pop, &mut rng).x.values().to_vec();
            let pb = tournament(&pop, &mut rng).x.values().to_vec();
            let (c1, c2) =
                sbx_crossover(&pa, &pb, &bounds, cfg.crossover_eta, cfg.crossover_prob, &mut rng);
            for mut genes in [c1, c2] {
                if union.len() - pop.len() == quota {
                    break;
                }
                polynomial_mutation(&mut genes, &bounds, cfg.mutation_eta, p_mut, &mut rng);
                if use_repair && rng.gen::<f64>() < cfg.repair_prob {
                    for _ in 0..cfg.repair_passes {
                        if !problem.repair(&mut genes) {
                            break;
                        }
                    }
                }
                used += 1;
                union.push(evaluate_individual(problem, genes));
            }
        }
        annotate(&mut union);
        union.sort_by(|a, b| {
            a.violation
                .partial_cmp(&b.violation)
                .expect("finite violations")
                .then(a.mp_rank.cmp(&b.mp_rank))
                .then(b.crowding.partial_cmp(&a.crowding).expect("ordered crowding"))
        });
        union.truncate(cfg.population_size);
        pop = union;
        while next_checkpoint < checkpoints.len() && used >= checkpoints[next_checkpoint] {
            trace.push(snapshot(&pop, used));
            next_checkpoint += 1;
        }
    }

    if trace.last().map(|s| s.evaluations) != Some(used) {
        trace.push(snapshot(&pop, used));
    }
    let archive = archive_members(&pop)
        .into_iter()
        .map(|i| pop[i].clone())
        .collect();
    Ok(EaRun {
        archive,
        trace,
        evaluations: used,
    })
}
