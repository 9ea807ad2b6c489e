//! Sublinear estimation of the total normalized rank from local access.
//!
//! The total rank equals one minus the expected reciprocal component size
//! of a random node. Each sample explores a bounded neighborhood of a
//! sampled root and contributes an estimate of that reciprocal: in radius
//! mode the reciprocal of the radius-k ball size, in cap mode the exact
//! reciprocal when the component has fewer than k nodes and zero once k
//! nodes are seen. Either way the per-sample error is one-sided and at
//! most 1/k, and averaging N samples controls the sampling noise.
//!
//! Accumulation is exact rational arithmetic; only the final mean is
//! rounded to a float. Sample i draws from an RNG keyed by (seed, i), so
//! results do not depend on evaluation order.

use crate::error::Error;
use crate::families::{
    ColoredTreeSubgraph, ComponentMixture, FamilySpec, FiniteGraphOracle, InfinitePath, Lattice,
    MixtureComponent, RegularTree,
};
use crate::graph::FiniteGraph;
use crate::io;
use crate::oracle::{ball, component_capped, CapOutcome, LocalOracle};
use crate::ratio::{self, Rational};
use crate::stream;
use num::Zero;
use std::fmt;
use std::time::{Duration, Instant};

/// How a sample turns its exploration budget k into a term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EstimateMode {
    /// Reciprocal size of the radius-k ball. Underestimates component
    /// sizes, so the rank estimate has a nonnegative upward bias below 1/k.
    Radius,
    /// Exact reciprocal component size when under k nodes, else zero.
    /// The rank estimate has a nonnegative downward bias below 1/k.
    #[default]
    VertexCap,
}

impl EstimateMode {
    pub fn parse(s: &str) -> Result<Self, Error> {
        match s {
            "radius" => Ok(EstimateMode::Radius),
            "cap" => Ok(EstimateMode::VertexCap),
            _ => Err(Error::usage(format!(
                "unknown mode {s:?}, expected radius or cap"
            ))),
        }
    }
}

impl fmt::Display for EstimateMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EstimateMode::Radius => "radius",
            EstimateMode::VertexCap => "cap",
        })
    }
}

/// Exploration depth and sample count for a target accuracy.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimatorPlan {
    pub epsilon: f64,
    pub k: usize,
    pub samples: usize,
    pub mode: EstimateMode,
}

/// Sizes the estimator for accuracy `epsilon`: the exploration budget
/// k = ceil(2/eps) keeps the per-sample bias under eps/2, and
/// N = ceil((2/eps^2) ln(2/eps)) samples push the noise tail probability
/// under eps as well.
pub fn plan(epsilon: f64) -> Result<EstimatorPlan, Error> {
    if !epsilon.is_finite() || epsilon <= 0.0 || epsilon >= 1.0 {
        return Err(Error::usage(format!(
            "epsilon must be strictly between 0 and 1, got {epsilon}"
        )));
    }
    let inv = 2.0 / epsilon;
    let k = inv.ceil() as usize;
    let samples = ((2.0 / (epsilon * epsilon)) * inv.ln()).ceil() as usize;
    Ok(EstimatorPlan {
        epsilon,
        k,
        samples,
        mode: EstimateMode::default(),
    })
}

impl EstimatorPlan {
    pub fn with_mode(mut self, mode: EstimateMode) -> Self {
        self.mode = mode;
        self
    }
}

/// Result of one estimator run.
#[derive(Debug, Clone)]
pub struct Estimate {
    /// Estimated total rank, 1 minus the sample mean.
    pub value: f64,
    pub plan: EstimatorPlan,
    pub seed: u64,
    /// The sample mean of the reciprocal-size terms.
    pub inverse_size_mean: f64,
    /// Neighbor lists fetched across all samples.
    pub queries: u64,
    pub wall_time: Duration,
}

fn sample_term<O: LocalOracle>(
    oracle: &O,
    root: &O::Handle,
    plan: &EstimatorPlan,
    queries: &mut u64,
) -> Rational {
    match plan.mode {
        EstimateMode::Radius => {
            let report = ball(oracle, root, plan.k);
            *queries += report.edges_queried;
            ratio::recip(report.size)
        }
        EstimateMode::VertexCap => {
            let report = component_capped(oracle, root, plan.k as u64);
            *queries += report.edges_queried;
            match report.outcome {
                CapOutcome::Exact(size) => ratio::recip(size),
                CapOutcome::OverCap => Rational::zero(),
            }
        }
    }
}

/// Runs the estimator. Deterministic in (oracle, plan, seed).
pub fn estimate_total_rank<O: LocalOracle>(
    oracle: &O,
    plan: &EstimatorPlan,
    seed: u64,
) -> Estimate {
    let start = Instant::now();
    let mut sum = Rational::zero();
    let mut queries = 0u64;
    for i in 0..plan.samples {
        let mut rng = stream::child_rng(seed, i as u64);
        let root = oracle.sample_root(&mut rng);
        sum += sample_term(oracle, &root, plan, &mut queries);
    }
    let mean = sum / Rational::from_integer(plan.samples.into());
    let inverse_size_mean = ratio::to_f64(&mean);
    Estimate {
        value: 1.0 - inverse_size_mean,
        plan: plan.clone(),
        seed,
        inverse_size_mean,
        queries,
        wall_time: start.elapsed(),
    }
}

/// The exact expectation of the estimator over a uniform root drawn from
/// `roots`, with no sampling noise. Exposes the bias of the exploration
/// rule itself.
pub fn expected_estimate_exact<O: LocalOracle>(
    oracle: &O,
    plan: &EstimatorPlan,
    roots: impl IntoIterator<Item = O::Handle>,
) -> Rational {
    let mut sum = Rational::zero();
    let mut count: u64 = 0;
    let mut ignored = 0u64;
    for root in roots {
        sum += sample_term(oracle, &root, plan, &mut ignored);
        count += 1;
    }
    assert!(count > 0, "expectation needs at least one root");
    Rational::from_integer(1.into()) - sum / Rational::from_integer(count.into())
}

/// One size step of a convergence run.
#[derive(Debug, Clone)]
pub struct ConvergenceRow {
    pub size: u64,
    pub exact: Rational,
    pub estimate: f64,
    pub abs_error: f64,
    pub queries: u64,
}

/// Estimates a sized family at each listed size and tabulates the error
/// against the exact rank. Row i runs with a seed derived from (seed, i).
pub fn convergence_table(
    spec: &FamilySpec,
    sizes: &[u64],
    plan: &EstimatorPlan,
    seed: u64,
) -> Result<Vec<ConvergenceRow>, Error> {
    let mut rows = Vec::with_capacity(sizes.len());
    for (i, &size) in sizes.iter().enumerate() {
        let sized = spec.with_size(size)?;
        let run = estimate_for_spec(&sized, plan, stream::derive_seed(seed, i as u64))?;
        let exact = run.exact.ok_or_else(|| {
            Error::usage("convergence table needs a family with known exact rank")
        })?;
        let estimate = run.estimate.value;
        rows.push(ConvergenceRow {
            size,
            exact: exact.clone(),
            estimate,
            abs_error: (estimate - ratio::to_f64(&exact)).abs(),
            queries: run.estimate.queries,
        });
    }
    Ok(rows)
}

/// An estimator run together with the exact rank when the family knows it.
#[derive(Debug, Clone)]
pub struct SpecEstimate {
    pub estimate: Estimate,
    pub exact: Option<Rational>,
}

fn run<O: LocalOracle>(oracle: &O, plan: &EstimatorPlan, seed: u64) -> SpecEstimate {
    SpecEstimate {
        estimate: estimate_total_rank(oracle, plan, seed),
        exact: oracle.known_total_rank(),
    }
}

fn all_triangles() -> ComponentMixture {
    ComponentMixture::new(vec![MixtureComponent {
        graph: FiniteGraph::cycle(3),
        probability: Rational::from_integer(1.into()),
    }])
    .expect("single connected template")
}

/// Builds the oracle a family spec names and estimates it.
pub fn estimate_for_spec(
    spec: &FamilySpec,
    plan: &EstimatorPlan,
    seed: u64,
) -> Result<SpecEstimate, Error> {
    match spec {
        FamilySpec::Path => Ok(run(&InfinitePath, plan, seed)),
        FamilySpec::Cycle(None) => Err(Error::usage(
            "cycle needs a size to estimate, e.g. cycle:1000",
        )),
        FamilySpec::Cycle(Some(n)) => {
            if *n < 3 {
                return Err(Error::usage("cycle size must be at least 3"));
            }
            let n = u32::try_from(*n).map_err(|_| Error::usage("cycle size too large"))?;
            Ok(run(&FiniteGraphOracle::new(FiniteGraph::cycle(n)), plan, seed))
        }
        FamilySpec::Grid { dim, side: None } => Ok(run(&Lattice::new(*dim)?, plan, seed)),
        FamilySpec::Grid {
            dim,
            side: Some(side),
        } => {
            if *dim != 2 {
                return Err(Error::unsupported(
                    "sized grids are only built in dimension 2",
                ));
            }
            let side =
                u32::try_from(*side).map_err(|_| Error::usage("grid side too large"))?;
            if side < 3 {
                return Err(Error::usage("grid side must be at least 3"));
            }
            Ok(run(&FiniteGraphOracle::new(FiniteGraph::torus2(side)), plan, seed))
        }
        FamilySpec::Tree { degree } => Ok(run(&RegularTree::new(*degree)?, plan, seed)),
        FamilySpec::ColoredTree { degree, colors } => Ok(run(
            &ColoredTreeSubgraph::new(*degree, colors.iter().copied())?,
            plan,
            seed,
        )),
        FamilySpec::Triangles(None) => Ok(run(&all_triangles(), plan, seed)),
        FamilySpec::Triangles(Some(count)) => {
            if *count == 0 {
                return Err(Error::usage("triangle count must be positive"));
            }
            let count =
                u32::try_from(*count).map_err(|_| Error::usage("triangle count too large"))?;
            Ok(run(
                &FiniteGraphOracle::new(FiniteGraph::disjoint_triangles(count)),
                plan,
                seed,
            ))
        }
        FamilySpec::Mixture(parts) => {
            let components = parts
                .iter()
                .map(|(graph, probability)| MixtureComponent {
                    graph: graph.clone(),
                    probability: probability.clone(),
                })
                .collect();
            Ok(run(&ComponentMixture::new(components)?, plan, seed))
        }
        FamilySpec::File(path) => {
            Ok(run(&FiniteGraphOracle::new(io::load_graph(path)?), plan, seed))
        }
    }
}

/// Estimates for the two halves of a color split of a regular tree, next
/// to the additivity floor their true ranks must respect.
#[derive(Debug, Clone)]
pub struct NonadditivityReport {
    pub degree: u32,
    pub split: u32,
    pub lower_estimate: f64,
    pub upper_estimate: f64,
    pub sum: f64,
    /// 2 - 2/r: no decomposition into r forests can beat this sum.
    pub lower_bound: f64,
    pub bound_satisfied: bool,
    pub full_tree_estimate: f64,
}

/// Splits the (2r-1)-regular tree's colors into 1..=r and r+1..=2r-1 and
/// estimates both color subgraphs. Each half keeps every vertex, together
/// they cover every edge, yet their ranks sum to about 2, far above the
/// single tree's rank of 1.
pub fn nonadditivity_experiment(
    degree: u32,
    split: u32,
    plan: &EstimatorPlan,
    seed: u64,
) -> Result<NonadditivityReport, Error> {
    if split < 3 {
        return Err(Error::precondition("split parameter must be at least 3"));
    }
    if degree != 2 * split - 1 {
        return Err(Error::precondition(format!(
            "degree must be 2*split-1, got degree {degree} with split {split}"
        )));
    }
    let low = ColoredTreeSubgraph::new(degree, 1..=split as u8)?;
    let high = ColoredTreeSubgraph::new(degree, (split as u8 + 1)..=degree as u8)?;
    let full = RegularTree::new(degree)?;
    let lower_estimate = estimate_total_rank(&low, plan, stream::derive_seed(seed, 0)).value;
    let upper_estimate = estimate_total_rank(&high, plan, stream::derive_seed(seed, 1)).value;
    let full_tree_estimate = estimate_total_rank(&full, plan, stream::derive_seed(seed, 2)).value;
    let sum = lower_estimate + upper_estimate;
    let lower_bound = 2.0 - 2.0 / split as f64;
    Ok(NonadditivityReport {
        degree,
        split,
        lower_estimate,
        upper_estimate,
        sum,
        lower_bound,
        bound_satisfied: sum >= lower_bound,
        full_tree_estimate,
    })
}
