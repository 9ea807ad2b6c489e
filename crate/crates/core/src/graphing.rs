//! Finite graphs carrying a stationary node measure.
//!
//! A [`WeightedGraphing`] couples a bounded-degree graph with a weighted
//! space over its nodes such that mass is preserved along edges; for
//! simple graphs that means weights are constant on connected components.
//! On top of it live the average degree, the edge measure `eta`, the
//! normalized rank `rho` of an edge set (intrinsic to the subgraph it
//! spans), and the sandwich bounds pinning `rho` between multiples of
//! `eta`.

use crate::error::Error;
use crate::graph::{self, EdgeSet, FiniteGraph};
use crate::partition::{psi, Partition, WeightedSpace};
use crate::ratio::{self, Rational};
use num::{One, Zero};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// One edge whose endpoints exchange unequal mass.
#[derive(Debug, Clone)]
pub struct PreservationViolation {
    pub a: u32,
    pub b: u32,
    /// Mass sent from `a` toward `b`.
    pub lhs: Rational,
    /// Mass sent from `b` toward `a`.
    pub rhs: Rational,
}

/// Checks mass preservation edge by edge: across every edge `(a, b)` the
/// weight of `a` times the number of edges from `a` to `{b}` must equal
/// the weight of `b` times the number of edges from `b` to `{a}`. In a
/// simple graph both counts are one, so the condition is weight equality
/// across every edge.
pub fn check_measure_preservation(
    g: &FiniteGraph,
    weights: &WeightedSpace,
) -> Result<Vec<PreservationViolation>, Error> {
    if weights.point_count() != g.node_count() as usize {
        return Err(Error::usage("weight count does not match node count"));
    }
    let mut violations = Vec::new();
    for &(a, b) in g.edges() {
        let lhs = weights.weight(a as usize);
        let rhs = weights.weight(b as usize);
        if lhs != rhs {
            violations.push(PreservationViolation {
                a,
                b,
                lhs: lhs.clone(),
                rhs: rhs.clone(),
            });
        }
    }
    Ok(violations)
}

/// Graph plus stationary node measure.
#[derive(Debug, Clone)]
pub struct WeightedGraphing {
    graph: FiniteGraph,
    weights: Arc<WeightedSpace>,
}

impl WeightedGraphing {
    /// Validates mass preservation before accepting the pair.
    pub fn new(graph: FiniteGraph, weights: Arc<WeightedSpace>) -> Result<Self, Error> {
        let violations = check_measure_preservation(&graph, &weights)?;
        if let Some(v) = violations.first() {
            return Err(Error::precondition(format!(
                "measure not preserved across edge ({}, {}): {} vs {}",
                v.a,
                v.b,
                ratio::format(&v.lhs),
                ratio::format(&v.rhs)
            )));
        }
        Ok(WeightedGraphing { graph, weights })
    }

    /// Skips validation. Only for constructing deliberately broken
    /// instances in tests of the checker itself.
    pub fn new_unchecked(graph: FiniteGraph, weights: Arc<WeightedSpace>) -> Self {
        WeightedGraphing { graph, weights }
    }

    /// Uniform node weights, which preserve mass on any graph.
    pub fn uniform(graph: FiniteGraph) -> Self {
        let weights = Arc::new(WeightedSpace::uniform(graph.node_count() as usize));
        WeightedGraphing { graph, weights }
    }

    pub fn graph(&self) -> &FiniteGraph {
        &self.graph
    }

    pub fn weights(&self) -> &Arc<WeightedSpace> {
        &self.weights
    }
}

/// Weighted average node degree.
pub fn average_degree(wg: &WeightedGraphing) -> Rational {
    let mut acc = Rational::zero();
    for v in 0..wg.graph.node_count() {
        acc += wg.weights.weight(v as usize)
            * Rational::from_integer(wg.graph.degree(v).into());
    }
    acc
}

/// Edge measure of `x`: the weighted average of degrees into `x`, divided
/// by the average degree. Fails when the graphing has no edges to measure
/// (average degree zero).
pub fn edge_measure(wg: &WeightedGraphing, x: &EdgeSet) -> Result<Rational, Error> {
    x.belongs_to(&wg.graph)?;
    let dbar = average_degree(wg);
    if dbar.is_zero() {
        return Err(Error::precondition(
            "edge measure undefined: average degree is zero",
        ));
    }
    let mut acc = Rational::zero();
    for v in 0..wg.graph.node_count() {
        acc += wg.weights.weight(v as usize)
            * Rational::from_integer(wg.graph.degree_in(v, x).into());
    }
    Ok(acc / dbar)
}

/// Connected components of `(V, x)` as a partition of the graphing's
/// weighted space. Never flagged; weights are constant on each class
/// because classes refine the graph's components.
pub fn component_partition(wg: &WeightedGraphing, x: &EdgeSet) -> Result<Partition, Error> {
    let uniform = graph::components(&wg.graph, x)?;
    let assignment: Vec<u32> = (0..wg.graph.node_count() as usize)
        .map(|v| uniform.class_of(v))
        .collect();
    Partition::from_class_ids(wg.weights.clone(), assignment, [])
}

/// Normalized rank of `x` through the class-size functional `psi` of its
/// component partition.
pub fn rho(wg: &WeightedGraphing, x: &EdgeSet) -> Result<Rational, Error> {
    Ok(Rational::one() - psi(&component_partition(wg, x)?))
}

/// Both sides of the sandwich `dbar/(1+D) * eta(x) <= rho(x) <= dbar *
/// eta(x)`, with `D` the graph's degree bound.
#[derive(Debug, Clone)]
pub struct SandwichCheck {
    pub lower: Rational,
    pub rho: Rational,
    pub upper: Rational,
    pub holds: bool,
}

/// Evaluates the sandwich exactly. Requires positive average degree.
pub fn check_rho_eta_sandwich(wg: &WeightedGraphing, x: &EdgeSet) -> Result<SandwichCheck, Error> {
    let eta = edge_measure(wg, x)?;
    let rho = rho(wg, x)?;
    let dbar = average_degree(wg);
    let bound = Rational::from_integer((1 + wg.graph.degree_bound()).into());
    let lower = &dbar / bound * &eta;
    let upper = dbar * eta;
    let holds = lower <= rho && rho <= upper;
    Ok(SandwichCheck {
        lower,
        rho,
        upper,
        holds,
    })
}

/// A graphing restricted to a subset of its edges, remembering where each
/// surviving edge sat in the parent edge list.
#[derive(Debug, Clone)]
pub struct Subgraphing {
    pub model: WeightedGraphing,
    parent_edges: Vec<u32>,
}

/// Restricts a graphing to the edges in `f`, keeping nodes and weights.
/// The result is a valid graphing: components only split, so weights stay
/// constant on them.
pub fn subgraphing(wg: &WeightedGraphing, f: &EdgeSet) -> Result<Subgraphing, Error> {
    f.belongs_to(&wg.graph)?;
    let parent_edges = f.indices();
    let edges = parent_edges
        .iter()
        .map(|&e| wg.graph.edge(e))
        .collect::<Vec<_>>();
    let graph = FiniteGraph::with_degree_bound(
        wg.graph.node_count(),
        edges,
        wg.graph.degree_bound(),
    )
    .expect("restriction of a simple graph is simple");
    let model = WeightedGraphing::new(graph, wg.weights.clone())
        .expect("weights constant on components stay constant on subcomponents");
    Ok(Subgraphing {
        model,
        parent_edges,
    })
}

impl Subgraphing {
    /// Translates a parent edge set `x` contained in the restriction into
    /// the subgraphing's numbering.
    pub fn restrict(&self, x: &EdgeSet) -> Result<EdgeSet, Error> {
        let indices: Vec<u32> = self
            .parent_edges
            .iter()
            .enumerate()
            .filter(|&(_, &parent)| x.contains(parent))
            .map(|(sub, _)| sub as u32)
            .collect();
        let carried: u32 = indices.len() as u32;
        if carried != x.len() {
            return Err(Error::usage(
                "edge set is not contained in the restriction",
            ));
        }
        EdgeSet::from_indices(self.model.graph(), &indices)
    }
}

/// Serialized graphing: node count, edge list, weights as `p/q` strings.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphingJson {
    pub n: u32,
    pub edges: Vec<(u32, u32)>,
    pub weights: Vec<String>,
}

impl GraphingJson {
    pub fn from_graphing(wg: &WeightedGraphing) -> Self {
        GraphingJson {
            n: wg.graph.node_count(),
            edges: wg.graph.edges().to_vec(),
            weights: wg.weights.weights().iter().map(ratio::format).collect(),
        }
    }

    pub fn to_graphing(&self) -> Result<WeightedGraphing, Error> {
        let graph = FiniteGraph::new(self.n, self.edges.clone())?;
        let weights = self
            .weights
            .iter()
            .map(|s| ratio::parse(s))
            .collect::<Result<Vec<_>, _>>()?;
        WeightedGraphing::new(graph, Arc::new(WeightedSpace::new(weights)?))
    }
}
