//! End-to-end acceptance: each test is one numbered criterion and prints
//! one PASS line when its checks hold at the stated tolerances.

use cyclerank::estimator::{
    self, nonadditivity_experiment, plan, EstimateMode, EstimatorPlan,
};
use cyclerank::families::{
    ComponentMixture, FamilySpec, FiniteGraphOracle, MixtureComponent, RegularTree,
};
use cyclerank::generate;
use cyclerank::graph::{self, EdgeSet, FiniteGraph, SubmodularConfig};
use cyclerank::graphing::{self, WeightedGraphing};
use cyclerank::minorize::{self, ChainOrder, MinorizeConfig};
use cyclerank::oracle::LocalOracle;
use cyclerank::partition::{self, Partition, WeightedSpace};
use cyclerank::ratio::{self, ratio, Rational};
use cyclerank::stream::{child_rng, derive_seed};
use rand::Rng;
use std::sync::Arc;
use std::time::{Duration, Instant};

#[test]
fn acceptance_01_rank_submodularity_exhaustive() {
    let start = Instant::now();
    let config = SubmodularConfig::default();
    let mut pairs = 0u64;
    let mut graphs = 0u64;
    let k4 = FiniteGraph::complete(4);
    let report = graph::check_submodular(&k4, &config);
    assert!(report.exhaustive, "K4 must be checked exhaustively");
    assert!(report.violations.is_empty(), "K4 violations: {:?}", report.violations);
    pairs += report.pairs_checked;
    for n in 1..=5 {
        for g in generate::all_graphs(n) {
            let report = graph::check_submodular(&g, &config);
            assert!(report.exhaustive);
            assert!(
                report.violations.is_empty(),
                "violations on n={n} edges={:?}: {:?}",
                g.edges(),
                report.violations
            );
            pairs += report.pairs_checked;
            graphs += 1;
        }
    }
    // The 5-node sweep alone contributes sum over all graphs of 4^|E|,
    // which is 5^10 pairs.
    assert!(pairs >= 9_765_625, "only {pairs} pairs checked");
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    println!(
        "ACCEPTANCE 1 rank submodularity, exhaustive pairs on K4 and all {graphs} graphs up to 5 nodes ({pairs} pairs, {elapsed:?}): PASS"
    );
}

#[test]
fn acceptance_02_partition_supermodularity_randomized() {
    let trials = 10_000u64;
    let mut flagged_instances = 0u64;
    for trial in 0..trials {
        let mut rng = child_rng(0xACC2, trial);
        let points = rng.gen_range(2..=12usize);
        let (p, q, r) = generate::random_uniform_triple(points, 0.3, &mut rng);
        if p.has_flags() || q.has_flags() || r.has_flags() {
            flagged_instances += 1;
        }
        let result = partition::check_supermodular_triple(&p, &q, &r)
            .expect("generated triple is valid");
        assert!(
            result.holds,
            "trial {trial}: slack {} negative",
            ratio::format(&result.slack)
        );
        let defect_sum: Rational = (0..p.point_count())
            .map(|x| {
                partition::defect(&p, &q, &r, x).expect("valid triple") * r.space().weight(x)
            })
            .sum();
        assert_eq!(
            defect_sum, result.slack,
            "trial {trial}: defect sum does not reproduce the slack"
        );
    }
    assert!(
        flagged_instances > 2_000,
        "flag coverage too thin: {flagged_instances}"
    );
    println!(
        "ACCEPTANCE 2 reciprocal-class-size supermodularity on {trials} random triples ({flagged_instances} with flagged classes), slack identity exact every time: PASS"
    );
}

fn bias_within(plan: &EstimatorPlan, oracle: &FiniteGraphOracle) -> (Rational, Rational) {
    let expected = estimator::expected_estimate_exact(oracle, plan, oracle.handles());
    let exact = oracle.known_total_rank().expect("finite oracle");
    let bias = match plan.mode {
        EstimateMode::Radius => exact - expected,
        EstimateMode::VertexCap => expected - exact,
    };
    (bias, ratio(1, plan.k as i64))
}

#[test]
fn acceptance_03_estimator_bias_is_one_sided_and_small() {
    let cycle = FiniteGraphOracle::new(FiniteGraph::cycle(100));
    let triangles = FiniteGraphOracle::new(FiniteGraph::disjoint_triangles(50));
    for mode in [EstimateMode::Radius, EstimateMode::VertexCap] {
        let plan = plan(0.1).unwrap().with_mode(mode);
        for (name, oracle) in [("cycle 100", &cycle), ("50 triangles", &triangles)] {
            let (bias, cap) = bias_within(&plan, oracle);
            assert!(
                bias >= ratio(0, 1),
                "{name} {mode}: bias {} out of direction",
                ratio::format(&bias)
            );
            assert!(
                bias <= cap,
                "{name} {mode}: bias {} above 1/k",
                ratio::format(&bias)
            );
        }
    }
    println!(
        "ACCEPTANCE 3 exact estimator expectation within 1/k of the true rank, correct sign per mode, on cycle 100 and 50 triangles: PASS"
    );
}

#[test]
fn acceptance_04_estimator_accuracy_guarantee() {
    let start = Instant::now();
    let epsilon = 0.2;
    let plan = plan(epsilon).unwrap();
    let runs = 200u64;
    let threshold = epsilon + 3.0 * (epsilon * (1.0 - epsilon) / runs as f64).sqrt();
    let mixture = ComponentMixture::new(vec![
        MixtureComponent {
            graph: FiniteGraph::cycle(3),
            probability: ratio(1, 2),
        },
        MixtureComponent {
            graph: FiniteGraph::complete(2),
            probability: ratio(1, 2),
        },
    ])
    .unwrap();
    let cycle = FiniteGraphOracle::new(FiniteGraph::cycle(1000));
    let tree = RegularTree::new(3).unwrap();
    let mut summary = Vec::new();
    let mut run_family = |name: &str, salt: u64, run_one: &dyn Fn(u64) -> (f64, Rational)| {
        let mut failures = 0u64;
        for run in 0..runs {
            let (value, exact) = run_one(derive_seed(0xACC4 ^ salt, run));
            if (value - ratio::to_f64(&exact)).abs() >= epsilon {
                failures += 1;
            }
        }
        let fraction = failures as f64 / runs as f64;
        assert!(
            fraction <= threshold,
            "{name}: failure fraction {fraction} above {threshold}"
        );
        summary.push(format!("{name} {failures}/{runs}"));
    };
    run_family("cycle 1000", 1, &|seed| {
        let e = estimator::estimate_total_rank(&cycle, &plan, seed);
        (e.value, cycle.known_total_rank().unwrap())
    });
    run_family("triangle/edge mixture", 2, &|seed| {
        let e = estimator::estimate_total_rank(&mixture, &plan, seed);
        (e.value, mixture.known_total_rank().unwrap())
    });
    run_family("3-regular tree", 3, &|seed| {
        let e = estimator::estimate_total_rank(&tree, &plan, seed);
        (e.value, tree.known_total_rank().unwrap())
    });
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(300), "took {elapsed:?}");
    println!(
        "ACCEPTANCE 4 estimator accuracy at epsilon 0.2 over 200 seeded runs per family, failures {} all under the binomial threshold ({elapsed:?}): PASS",
        summary.join(", ")
    );
}

#[test]
fn acceptance_05_convergence_tables() {
    let plan = plan(0.05).unwrap();
    let cycle_rows =
        estimator::convergence_table(&FamilySpec::parse("cycle").unwrap(), &[10, 100, 1000], &plan, 5)
            .unwrap();
    for (row, n) in cycle_rows.iter().zip([10i64, 100, 1000]) {
        assert_eq!(row.exact, ratio(n - 1, n));
    }
    assert!(
        cycle_rows.windows(2).all(|w| w[0].exact < w[1].exact),
        "cycle ranks must increase with size"
    );
    let one = ratio(1, 1);
    let gap = one - cycle_rows.last().unwrap().exact.clone();
    assert!(gap <= ratio(1, 1000), "cycle 1000 gap {}", ratio::format(&gap));
    let triangle_rows = estimator::convergence_table(
        &FamilySpec::parse("triangles").unwrap(),
        &[10, 100, 1000],
        &plan,
        6,
    )
    .unwrap();
    for row in &triangle_rows {
        assert_eq!(row.exact, ratio(2, 3), "triangle rank is constant");
    }
    let limit = estimator::estimate_for_spec(
        &FamilySpec::parse("triangles").unwrap(),
        &plan,
        7,
    )
    .unwrap();
    assert_eq!(limit.exact, Some(ratio(2, 3)));
    for row in &triangle_rows {
        assert!(
            (row.estimate - limit.estimate.value).abs() <= 0.05,
            "finite estimate {} vs limit {}",
            row.estimate,
            limit.estimate.value
        );
    }
    println!(
        "ACCEPTANCE 5 convergence: cycle ranks rise to within exactly 1/1000 of 1, triangle ranks constant at 2/3 and within 0.05 of the limit oracle: PASS"
    );
}

#[test]
fn acceptance_06_forest_additivity_exact() {
    let forests = 100u64;
    let mut subsets = 0u64;
    for trial in 0..forests {
        let mut rng = child_rng(0xACC6, trial);
        let g = loop {
            let n = rng.gen_range(2..=50u32);
            let g = generate::random_forest(n, &mut rng);
            if g.edge_count() > 0 {
                break g;
            }
        };
        let report = minorize::forest_additivity_check(&g, 100, derive_seed(0xACC6, trial))
            .expect("generated forests qualify");
        assert!(
            report.violations.is_empty(),
            "trial {trial}: {:?}",
            report.violations
        );
        subsets += report.subsets_checked;
    }
    println!(
        "ACCEPTANCE 6 forest additivity, rank equals half the average degree times the edge measure on {subsets} subsets across {forests} random forests, exact: PASS"
    );
}

#[test]
fn acceptance_07_minorizing_measures_verified_exhaustively() {
    let config = MinorizeConfig::default();
    let mut measures = 0u64;
    for trial in 0..50u64 {
        let mut rng = child_rng(0xACC7, trial);
        let g = loop {
            let n = rng.gen_range(3..=7u32);
            let g = generate::random_graph(n, 0.5, &mut rng);
            if (1..=12).contains(&g.edge_count()) {
                break g;
            }
        };
        for _ in 0..10 {
            let order = ChainOrder::random(g.edge_count(), &mut rng);
            let measure = minorize::greedy_minorizer(&g, &order).unwrap();
            let report = minorize::verify_minorizing(&g, &measure, &config).unwrap();
            assert!(report.exhaustive);
            assert!(report.base_exact, "trial {trial}: greedy base not exact");
            assert!(
                report.violations.is_empty(),
                "trial {trial}: greedy violations {:?}",
                report.violations
            );
            measures += 1;
        }
        let forest = graph::spanning_forest(&g);
        let measure = minorize::forest_minorizer(&g, &forest).unwrap();
        let report = minorize::verify_minorizing(&g, &measure, &config).unwrap();
        assert!(report.exhaustive && report.base_exact && report.violations.is_empty());
        measures += 1;
    }
    println!(
        "ACCEPTANCE 7 greedy and forest measures minorize the rank on every subset, {measures} measures over 50 random graphs, exhaustive with exact full-set equality: PASS"
    );
}

#[test]
fn acceptance_08_degree_measure_sandwich() {
    let trials = 10_000u64;
    for trial in 0..trials {
        let mut rng = child_rng(0xACC8, trial);
        let g = loop {
            let n = rng.gen_range(2..=8u32);
            let g = generate::random_graph(n, 0.5, &mut rng);
            if g.edge_count() > 0 {
                break g;
            }
        };
        let weights = generate::component_constant_weights(&g, &mut rng);
        let wg = WeightedGraphing::new(g.clone(), Arc::new(weights)).expect("preserving weights");
        let x = generate::random_edge_set(&g, 0.5, &mut rng);
        let check = graphing::check_rho_eta_sandwich(&wg, &x).unwrap();
        assert!(
            check.holds,
            "trial {trial}: {} <= {} <= {} fails",
            ratio::format(&check.lower),
            ratio::format(&check.rho),
            ratio::format(&check.upper)
        );
    }
    let k3 = WeightedGraphing::uniform(FiniteGraph::cycle(3));
    let full = EdgeSet::full(k3.graph());
    let tight = graphing::check_rho_eta_sandwich(&k3, &full).unwrap();
    assert_eq!(tight.lower, ratio(2, 3));
    assert_eq!(tight.rho, ratio(2, 3));
    assert!(tight.holds);
    println!(
        "ACCEPTANCE 8 degree-measure sandwich on {trials} random weighted graphs with zero violations, triangle lower bound tight at 2/3: PASS"
    );
}

#[test]
fn acceptance_09_rank_is_not_additive_on_trees() {
    let plan = plan(0.1).unwrap();
    let report = nonadditivity_experiment(5, 3, &plan, 0xACC9).unwrap();
    assert!(
        report.sum >= 4.0 / 3.0,
        "sum {} under the bound",
        report.sum
    );
    assert!(report.bound_satisfied);
    assert!(report.sum >= 1.9, "sum {} not near 2", report.sum);
    assert_eq!(report.full_tree_estimate, 1.0);
    println!(
        "ACCEPTANCE 9 color-split tree halves sum to {} >= 1.9 against the additivity ceiling {} while the full tree estimates exactly 1: PASS",
        report.sum, report.lower_bound
    );
}

#[test]
fn acceptance_10_rerandomizing_stability() {
    let trials = 10_000u64;
    let mut splits = 0u64;
    for trial in 0..trials {
        let mut rng = child_rng(0xACC10, trial);
        let (p, q) = generate::random_rerand_pair(&mut rng);
        assert!(partition::has_rerandomizing_property(&p), "trial {trial}: p");
        assert!(partition::has_rerandomizing_property(&q), "trial {trial}: q");
        if let Some(split) = generate::split_random_class(&p, &mut rng) {
            assert!(
                partition::has_rerandomizing_property(&split),
                "trial {trial}: split"
            );
            splits += 1;
        }
        let joined = partition::join(&p, &q).unwrap();
        assert!(
            partition::has_rerandomizing_property(&joined),
            "trial {trial}: join"
        );
    }
    // Unequal point weights in one class resample to a genuinely
    // different law: (1/3, 2/3) flattens to (1/2, 1/2).
    let skew = Arc::new(WeightedSpace::new(vec![ratio(1, 3), ratio(2, 3)]).unwrap());
    let lumped = Partition::from_class_ids(skew, vec![0, 0], []).unwrap();
    assert!(!partition::has_rerandomizing_property(&lumped));
    let resampled = partition::rerandomized_distribution(&lumped);
    assert_eq!(resampled.probabilities(), &[ratio(1, 2), ratio(1, 2)]);
    println!(
        "ACCEPTANCE 10 re-randomizing property preserved across {trials} instances ({splits} class splits and {trials} joins), and the skewed two-point class correctly fails with resampled law (1/2, 1/2): PASS"
    );
}
