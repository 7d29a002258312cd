//! Acceptance gate: eight release criteria, one test per criterion, each
//! ending in a single PASS line with the quantities it verified.

use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mpmo::algo::{run_baseline, EaConfig};
use mpmo::bf::BfContext;
use mpmo::dominance::{mp_nondominated_filter, pareto_dominates, pareto_nondominated_filter};
use mpmo::harness::table::STAT_NAMES;
use mpmo::harness::{
    aggregate_values, build_table, emit_csv, emit_text, parse_csv, run_experiment,
    AlgorithmId, ExperimentConfig, ProblemRef, RunRecord,
};
use mpmo::metrics::{hv2d, hv_monte_carlo, mpigd, mpigd_points};
use mpmo::suite::{build_reference_front, SuiteId};
use mpmo::types::{MpProblem, ObjectiveVector, PartyObjectives};
use mpmo::uav::objectives::{f_fatal, f_fuel, f_noise};
use mpmo::uav::{
    decode_path, generate_world, EnergyLogisticKernel, Genome, UavCase, UavProblem, WorldConfig,
    GENOME_LEN,
};

fn scratch(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mpmo-accept-{tag}-{}", std::process::id()));
    std::fs::remove_dir_all(&dir).ok();
    dir
}

#[test]
fn criterion_1_pareto_sets_zero_their_distance_term() {
    let mut pairs: Vec<(mpmo::bf::BfFamily, f64)> = Vec::new();
    for id in SuiteId::all() {
        for pair in id.parties() {
            if !pairs.contains(&pair) {
                pairs.push(pair);
            }
        }
    }
    let mut checked = 0usize;
    for &(family, t) in &pairs {
        let ctx = BfContext::new(family, t);
        let n = family.min_dimension().max(10);
        let sample = ctx.ps_sample(1000, 0, n).unwrap();
        assert_eq!(sample.len(), 1000);
        for x in &sample {
            let d = ctx.distance(x.values());
            assert!(
                (d - 1.0).abs() <= 1e-9,
                "{family:?} t={t}: distance {d} off the optimal value"
            );
            checked += 1;
        }
    }
    println!(
        "PASS criterion 1: {checked} sampled optima across {} (family, t) pairs keep the distance term at 1 within 1e-9",
        pairs.len()
    );
}

fn brute_force_mp_dominates(a: &PartyObjectives, b: &PartyObjectives) -> bool {
    let m = a.party_count();
    let b_beats_a_somewhere =
        (0..m).any(|j| pareto_dominates(b.party(j).values(), a.party(j).values()));
    let a_beats_b_somewhere =
        (0..m).any(|j| pareto_dominates(a.party(j).values(), b.party(j).values()));
    !b_beats_a_somewhere && a_beats_b_somewhere
}

#[test]
fn criterion_2_filter_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(1702);
    let mut single_party_checked = 0usize;
    for _ in 0..200 {
        let size = rng.gen_range(1..=100);
        let parties = rng.gen_range(1..=3usize);
        let arities: Vec<usize> = (0..parties).map(|_| rng.gen_range(1..=3)).collect();
        let pop: Vec<PartyObjectives> = (0..size)
            .map(|_| {
                PartyObjectives::new(
                    arities
                        .iter()
                        .map(|&k| {
                            ObjectiveVector::new(
                                (0..k).map(|_| rng.gen_range(0..4) as f64).collect(),
                            )
                        })
                        .collect(),
                )
            })
            .collect();
        let expected: Vec<usize> = (0..pop.len())
            .filter(|&i| {
                !pop.iter()
                    .enumerate()
                    .any(|(j, other)| j != i && brute_force_mp_dominates(other, &pop[i]))
            })
            .collect();
        assert_eq!(mp_nondominated_filter(&pop), expected);
        if parties == 1 {
            let flat: Vec<&[f64]> = pop.iter().map(|p| p.party(0).values()).collect();
            assert_eq!(mp_nondominated_filter(&pop), pareto_nondominated_filter(&flat));
            single_party_checked += 1;
        }
    }
    println!(
        "PASS criterion 2: 200 random populations match pairwise brute force exactly ({single_party_checked} single-party cases also match Pareto filtering)"
    );
}

#[test]
fn criterion_3_mpigd_identities() {
    for id in SuiteId::all() {
        let front = build_reference_front(id, 10, 300, 0).unwrap();
        assert_eq!(mpigd(&front, &front.points), 0.0, "{id} self-distance");
    }
    let reference = vec![PartyObjectives::new(vec![
        ObjectiveVector::new(vec![0.0, 0.0]),
        ObjectiveVector::new(vec![0.0, 0.0]),
    ])];
    let obtained = vec![PartyObjectives::new(vec![
        ObjectiveVector::new(vec![1.0, 0.0]),
        ObjectiveVector::new(vec![0.0, 1.0]),
    ])];
    assert_eq!(mpigd_points(&reference, &obtained), 2.0);
    println!(
        "PASS criterion 3: every generated front has self-distance 0 and the hand example scores 2.0 exactly"
    );
}

#[test]
fn criterion_4_hypervolume_agrees_with_monte_carlo() {
    let exact = hv2d(&[ObjectiveVector::new(vec![0.5, 0.5])], [1.0, 1.0]);
    assert_eq!(exact, 0.25);

    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let samples = 1_000_000usize;
    let mut max_sigma = 0.0f64;
    for set_index in 0..100u64 {
        let size = rng.gen_range(1..=30);
        let set: Vec<ObjectiveVector> = (0..size)
            .map(|_| ObjectiveVector::new(vec![rng.gen(), rng.gen()]))
            .collect();
        let exact = hv2d(&set, [1.0, 1.0]);
        let mc = hv_monte_carlo(&set, &[1.0, 1.0], samples, 20_000 + set_index);
        let p = mc.clamp(0.0, 1.0);
        let se = (p * (1.0 - p) / samples as f64).sqrt();
        let sigmas = (exact - mc).abs() / se.max(1e-12);
        max_sigma = max_sigma.max(sigmas);
        assert!(
            (exact - mc).abs() <= 3.0 * se,
            "set {set_index}: exact {exact} vs mc {mc} ({sigmas:.2} standard errors)"
        );
    }
    println!(
        "PASS criterion 4: 100 random fronts agree with Monte-Carlo within 3 standard errors (worst {max_sigma:.2}) and the unit example is 0.25 exactly"
    );
}

#[test]
fn criterion_5_budget_and_bitwise_reproducibility() {
    let dirs = [scratch("budget-a"), scratch("budget-b")];
    let mut paired: Vec<Vec<RunRecord>> = Vec::new();
    for dir in &dirs {
        let mut cfg = ExperimentConfig::new(dir.clone());
        cfg.problems = vec![ProblemRef::Suite(SuiteId::E1, 10), ProblemRef::Uav(UavCase::C1)];
        cfg.seeds = vec![1, 2];
        cfg.reference_resolution = 2_000;
        cfg.mc_samples = 100_000;
        paired.push(run_experiment(&cfg).unwrap());
    }
    let (a, b) = (&paired[0], &paired[1]);
    assert_eq!(a.len(), 4);
    for (ra, rb) in a.iter().zip(b) {
        let budget = if ra.problem.starts_with('E') { 20_000 } else { 100_000 };
        assert_eq!(ra.fe_used, budget, "{} seed {}", ra.problem, ra.seed);
        assert_eq!(rb.fe_used, budget);
        assert_eq!(
            ra.value.to_bits(),
            rb.value.to_bits(),
            "{} seed {} not bit-reproducible",
            ra.problem,
            ra.seed
        );
        let trace_a: Vec<u64> = ra.trace.iter().map(|t| t.value.to_bits()).collect();
        let trace_b: Vec<u64> = rb.trace.iter().map(|t| t.value.to_bits()).collect();
        assert_eq!(trace_a, trace_b);
    }
    println!(
        "PASS criterion 5: E1@d10 consumed 20000 and C1 consumed 100000 evaluations per run; repeated runs reproduce every metric bit-for-bit"
    );
}

#[test]
fn criterion_6_baseline_beats_random_within_the_time_box() {
    let out = scratch("sweep");
    let started = Instant::now();

    let mut ea_cfg = ExperimentConfig::new(out.clone());
    ea_cfg.problems = SuiteId::all()
        .into_iter()
        .map(|id| ProblemRef::Suite(id, 10))
        .collect();
    ea_cfg.seeds = (1..=11).collect();
    let ea_records = run_experiment(&ea_cfg).unwrap();
    assert_eq!(ea_records.len(), 11 * 11);

    let mut rnd_cfg = ExperimentConfig::new(out);
    rnd_cfg.problems = [SuiteId::E1, SuiteId::E2, SuiteId::E5]
        .into_iter()
        .map(|id| ProblemRef::Suite(id, 10))
        .collect();
    rnd_cfg.seeds = (1..=11).collect();
    rnd_cfg.algorithm = AlgorithmId::Random;
    let rnd_records = run_experiment(&rnd_cfg).unwrap();
    let elapsed = started.elapsed().as_secs_f64();
    assert!(elapsed < 1800.0, "sweep took {elapsed:.0}s");

    let median = |records: &[RunRecord], problem: &str| -> f64 {
        let values: Vec<f64> = records
            .iter()
            .filter(|r| r.problem == problem)
            .map(|r| r.value)
            .collect();
        assert_eq!(values.len(), 11);
        aggregate_values(&values, false).median
    };
    let mut ratios = Vec::new();
    for problem in ["E1", "E2", "E5"] {
        let ea = median(&ea_records, problem);
        let random = median(&rnd_records, problem);
        assert!(
            ea < random,
            "{problem}: baseline median {ea} not below random {random}"
        );
        assert!(
            ea <= 0.5 * random,
            "{problem}: baseline median {ea} above half of random {random}"
        );
        ratios.push(format!("{problem} {:.3}", ea / random));
    }
    println!(
        "PASS criterion 6: full 11-problem d=10 sweep in {elapsed:.0}s; baseline/random median ratios {}",
        ratios.join(", ")
    );
}

#[test]
fn criterion_7_uav_feasibility_and_physics_probes() {
    let world = Arc::new(generate_world(1, &WorldConfig::default()).unwrap());

    for case in UavCase::all() {
        let problem = UavProblem::new(case, world.clone());
        let run = run_baseline(&problem, &EaConfig::new(100_000, 1)).unwrap();
        assert!(!run.archive.is_empty(), "{case:?}: empty archive");
        for member in &run.archive {
            assert_eq!(member.violation, 0.0);
            let sums = problem.constraint_violations(&member.x).unwrap();
            assert_eq!(sums, vec![0.0; 3], "{case:?}: infeasible archive member");
        }
    }

    // Level path pinned over the heaviest population centre, flown at two
    // altitudes.
    let center = world
        .pop_centers
        .iter()
        .max_by(|a, b| a.weight.partial_cmp(&b.weight).unwrap())
        .unwrap();
    let level_genes = |z_m: f64| -> Vec<f64> {
        let mut genes = vec![0.0; GENOME_LEN];
        let z_gene = (z_m - world.limits.h_min_m) / (world.limits.h_max_m - world.limits.h_min_m);
        for i in 1..=44 {
            genes[2 * i - 2] = (center.cy - 1.0) / 44.0;
            genes[2 * i - 1] = z_gene;
        }
        genes
    };
    let kernel = EnergyLogisticKernel;
    let low = decode_path(&Genome::new(level_genes(30.0)).unwrap(), &world);
    let high = decode_path(&Genome::new(level_genes(60.0)).unwrap(), &world);
    let (noise_low, noise_high) = (f_noise(&low, &world), f_noise(&high, &world));
    let (fuel_low, fuel_high) = (f_fuel(&low, &world), f_fuel(&high, &world));
    assert!(noise_low > 0.0 && noise_high < noise_low, "noise must fall with altitude");
    assert!(fuel_high > fuel_low, "fuel must rise with altitude");

    let empty = generate_world(
        1,
        &WorldConfig {
            peak_density: 0.0,
            ..WorldConfig::default()
        },
    )
    .unwrap();
    assert_eq!(f_fatal(&low, &empty, &kernel), 0.0);
    assert_eq!(f_noise(&low, &empty), 0.0);

    let psi = world.building_height_density(world.building_mu.exp());
    assert!((psi - 0.02493).abs() <= 1e-5, "psi {psi}");

    println!(
        "PASS criterion 7: C1-C6 archives are non-empty and feasible at 100000 evaluations; altitude probes hold (noise {noise_low:.4}->{noise_high:.4}, fuel {fuel_low:.0}->{fuel_high:.0} J); empty ground zeroes fatality and noise; psi(e^mu) = {psi:.7}"
    );
}

#[test]
fn criterion_8_table_structure_and_csv_round_trip() {
    let record = |problem: &str, dim: usize, seed: u64, value: f64, metric: &str| RunRecord {
        problem: problem.into(),
        dimension: dim,
        seed,
        algorithm: "mpnds".into(),
        metric: metric.into(),
        value,
        mphv_averaged: None,
        fe_used: 1000,
        archive_size: 4,
        wall_time_s: 0.5,
        config_hash: "f00d".into(),
        reference_version: "v1".into(),
        trace: Vec::new(),
    };
    let mut records = Vec::new();
    for seed in 1..=5u64 {
        records.push(record("E3", 10, seed, seed as f64 * 0.5, "mpigd"));
        records.push(record("E9", 30, seed, seed as f64 * 0.25, "mpigd"));
        records.push(record("C5", 88, seed, seed as f64 * 0.125, "mphv"));
    }
    let table = build_table(&records, "mpnds");

    assert_eq!(table.blocks.len(), 3);
    assert_eq!(table.blocks[0].problems, ["E1", "E2", "E3", "E4", "E5", "E6"]);
    assert_eq!(table.blocks[1].problems, ["E7", "E8", "E9", "E10", "E11"]);
    assert_eq!(table.blocks[2].problems, ["C1", "C2", "C3", "C4", "C5", "C6"]);
    let dims: Vec<Vec<usize>> = table
        .blocks
        .iter()
        .map(|b| b.sections.iter().map(|s| s.dimension).collect())
        .collect();
    assert_eq!(dims, vec![vec![10, 30, 50], vec![10, 30, 50], vec![88]]);

    let text = emit_text(&table);
    for block in &table.blocks {
        for _section in &block.sections {
            for stat in STAT_NAMES {
                assert!(text.contains(stat));
            }
        }
    }
    assert_eq!(STAT_NAMES.len(), 5);

    let round_tripped = parse_csv(&emit_csv(&table)).unwrap();
    assert_eq!(table, round_tripped);
    println!(
        "PASS criterion 8: three-block table with five statistic rows per dimension section (C block at d=88); CSV round-trip is lossless"
    );
}
