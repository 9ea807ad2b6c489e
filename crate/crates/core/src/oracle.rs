//! Local access to bounded-degree graphs.
//!
//! A [`LocalOracle`] exposes a graph only through root sampling and
//! neighbor queries, which is all the total-rank estimator needs. Handles
//! identify nodes for the duration of one exploration; infinite families
//! encode the path from the sampled root instead of storing anything
//! global.

use crate::ratio::Rational;
use rand::RngCore;
use std::collections::{HashMap, HashSet, VecDeque};
use std::hash::Hash;

/// Neighborhood-query access to a graph with a global degree bound.
pub trait LocalOracle {
    /// Node identity, stable and hashable within one exploration.
    type Handle: Clone + Eq + Hash;

    /// Upper bound on every node degree.
    fn degree_bound(&self) -> usize;

    /// Draws a root according to the oracle's node distribution.
    fn sample_root(&self, rng: &mut dyn RngCore) -> Self::Handle;

    /// All neighbors of `h`, at most [`LocalOracle::degree_bound`] many.
    fn neighbors(&self, h: &Self::Handle) -> Vec<Self::Handle>;

    /// Exact total rank when the family knows it.
    fn known_total_rank(&self) -> Option<Rational> {
        None
    }
}

/// What one radius-bounded exploration saw.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallReport {
    /// Nodes within the radius.
    pub size: u64,
    /// True when the frontier emptied before the radius bound, i.e. the
    /// ball is the whole component.
    pub exhausted: bool,
    /// Largest distance actually reached.
    pub radius_reached: usize,
    /// Adjacency queries spent, counting each returned neighbor.
    pub edges_queried: u64,
}

/// Breadth-first ball of the given radius around `root`.
pub fn ball<O: LocalOracle>(oracle: &O, root: &O::Handle, radius: usize) -> BallReport {
    let mut seen: HashSet<O::Handle> = HashSet::new();
    seen.insert(root.clone());
    let mut frontier = vec![root.clone()];
    let mut edges_queried = 0u64;
    let mut radius_reached = 0;
    let mut exhausted = false;
    for depth in 1..=radius {
        let mut next = Vec::new();
        for node in &frontier {
            let neighbors = oracle.neighbors(node);
            edges_queried += neighbors.len() as u64;
            for n in neighbors {
                if seen.insert(n.clone()) {
                    next.push(n);
                }
            }
        }
        if next.is_empty() {
            exhausted = true;
            break;
        }
        radius_reached = depth;
        frontier = next;
    }
    BallReport {
        size: seen.len() as u64,
        exhausted,
        radius_reached,
        edges_queried,
    }
}

/// Result of component discovery with a node budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CapOutcome {
    /// The component was exhausted below the cap; this is its exact size.
    Exact(u64),
    /// `cap` distinct nodes were discovered, so the component has at
    /// least that many.
    OverCap,
}

/// Component discovery outcome plus query cost.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CapReport {
    pub outcome: CapOutcome,
    pub edges_queried: u64,
}

/// Explores the component of `root` until it either ends or `cap` nodes
/// have been discovered. Queries at most `cap * degree_bound` adjacency
/// entries.
pub fn component_capped<O: LocalOracle>(oracle: &O, root: &O::Handle, cap: u64) -> CapReport {
    assert!(cap >= 1, "cap must be positive");
    let mut seen: HashSet<O::Handle> = HashSet::new();
    seen.insert(root.clone());
    let mut edges_queried = 0u64;
    if seen.len() as u64 >= cap {
        return CapReport {
            outcome: CapOutcome::OverCap,
            edges_queried,
        };
    }
    let mut queue = VecDeque::new();
    queue.push_back(root.clone());
    while let Some(node) = queue.pop_front() {
        let neighbors = oracle.neighbors(&node);
        edges_queried += neighbors.len() as u64;
        for n in neighbors {
            if seen.insert(n.clone()) {
                if seen.len() as u64 >= cap {
                    return CapReport {
                        outcome: CapOutcome::OverCap,
                        edges_queried,
                    };
                }
                queue.push_back(n);
            }
        }
    }
    CapReport {
        outcome: CapOutcome::Exact(seen.len() as u64),
        edges_queried,
    }
}

/// Explores a ball and reports every ordered pair `(a, b)` where `b` is a
/// neighbor of `a` but `a` is not a neighbor of `b`. Test harness for the
/// symmetry contract.
pub fn asymmetric_edges<O: LocalOracle>(
    oracle: &O,
    root: &O::Handle,
    radius: usize,
) -> Vec<(O::Handle, O::Handle)> {
    let mut distance: HashMap<O::Handle, usize> = HashMap::new();
    distance.insert(root.clone(), 0);
    let mut queue = VecDeque::new();
    queue.push_back(root.clone());
    let mut bad = Vec::new();
    while let Some(node) = queue.pop_front() {
        let d = distance[&node];
        if d == radius {
            continue;
        }
        for n in oracle.neighbors(&node) {
            if !oracle.neighbors(&n).contains(&node) {
                bad.push((node.clone(), n.clone()));
            }
            if !distance.contains_key(&n) {
                distance.insert(n.clone(), d + 1);
                queue.push_back(n);
            }
        }
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::FiniteGraphOracle;
    use crate::graph::FiniteGraph;
    use crate::stream::child_rng;

    #[test]
    fn triangle_ball_exhausts_quickly() {
        let o = FiniteGraphOracle::new(FiniteGraph::cycle(3));
        let report = ball(&o, &0, 5);
        assert_eq!(report.size, 3);
        assert!(report.exhausted);
        assert_eq!(report.radius_reached, 1);
    }

    #[test]
    fn cycle_ball_counts_both_arms() {
        let o = FiniteGraphOracle::new(FiniteGraph::cycle(100));
        let report = ball(&o, &0, 20);
        assert_eq!(report.size, 41);
        assert!(!report.exhausted);
        assert_eq!(report.radius_reached, 20);
    }

    #[test]
    fn radius_zero_ball_is_the_root() {
        let o = FiniteGraphOracle::new(FiniteGraph::cycle(5));
        let report = ball(&o, &0, 0);
        assert_eq!(report.size, 1);
        assert!(!report.exhausted);
        assert_eq!(report.edges_queried, 0);
    }

    #[test]
    fn capped_discovery_reports_exact_small_components() {
        let o = FiniteGraphOracle::new(FiniteGraph::disjoint_triangles(4));
        let report = component_capped(&o, &5, 20);
        assert_eq!(report.outcome, CapOutcome::Exact(3));
    }

    #[test]
    fn capped_discovery_stops_at_the_cap() {
        let o = FiniteGraphOracle::new(FiniteGraph::cycle(100));
        let report = component_capped(&o, &0, 20);
        assert_eq!(report.outcome, CapOutcome::OverCap);
        assert!(report.edges_queried <= 20 * 2);
    }

    #[test]
    fn component_of_exact_cap_size_is_over_cap() {
        let o = FiniteGraphOracle::new(FiniteGraph::cycle(5));
        assert_eq!(
            component_capped(&o, &0, 5).outcome,
            CapOutcome::OverCap
        );
        assert_eq!(
            component_capped(&o, &0, 6).outcome,
            CapOutcome::Exact(5)
        );
    }

    #[test]
    fn cap_of_one_is_immediately_over() {
        let o = FiniteGraphOracle::new(FiniteGraph::cycle(5));
        let report = component_capped(&o, &0, 1);
        assert_eq!(report.outcome, CapOutcome::OverCap);
        assert_eq!(report.edges_queried, 0);
    }

    #[test]
    fn finite_oracle_neighbors_are_symmetric() {
        let o = FiniteGraphOracle::new(FiniteGraph::torus2(4));
        let mut rng = child_rng(9, 0);
        for _ in 0..10 {
            let root = o.sample_root(&mut rng);
            assert!(asymmetric_edges(&o, &root, 3).is_empty());
        }
    }
}
