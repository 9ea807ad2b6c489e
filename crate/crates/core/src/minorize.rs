//! Minorizing measures: edge weights that never exceed the normalized
//! rank on any edge subset and spend the full rank budget on all edges.
//!
//! The greedy construction walks the edges in a chosen order and gives
//! each edge the rank increase it causes, which is 1/n when it links two
//! previously separate components and 0 when it closes a cycle. Every
//! prefix of the order then carries exactly its own rank, and subsets in
//! between can only fall short. A maximal forest induces the same kind of
//! measure directly: 1/n on the forest edges, 0 elsewhere.
//!
//! Spreading the total rank uniformly over the edges is not minorizing in
//! general; the verifier here finds the offending subsets.

use crate::error::Error;
use crate::generate;
use crate::graph::{self, EdgeSet, FiniteGraph};
use crate::graphing::{self, WeightedGraphing};
use crate::ratio::{self, Rational};
use crate::stream;
use crate::unionfind::UnionFind;
use num::Zero;
use rand::Rng;

/// Nonnegative weights on the edges of one graph.
#[derive(Debug, Clone, PartialEq)]
pub struct MinorizingMeasure {
    tag: u64,
    weights: Vec<Rational>,
}

impl MinorizingMeasure {
    /// Wraps explicit weights, one per edge, all nonnegative.
    pub fn new(g: &FiniteGraph, weights: Vec<Rational>) -> Result<Self, Error> {
        if weights.len() != g.edge_count() as usize {
            return Err(Error::usage(format!(
                "expected {} weights, got {}",
                g.edge_count(),
                weights.len()
            )));
        }
        if weights.iter().any(|w| *w < Rational::zero()) {
            return Err(Error::usage("measure weights must be nonnegative"));
        }
        Ok(MinorizingMeasure {
            tag: g.tag(),
            weights,
        })
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn total(&self) -> Rational {
        self.weights.iter().sum()
    }

    /// Total weight of a subset. The set must come from the same graph.
    pub fn mass(&self, x: &EdgeSet) -> Result<Rational, Error> {
        self.check_tag(x)?;
        Ok(x.indices()
            .into_iter()
            .map(|e| self.weights[e as usize].clone())
            .sum())
    }

    fn check_tag(&self, x: &EdgeSet) -> Result<(), Error> {
        if !x.matches_tag(self.tag, self.weights.len() as u32) {
            return Err(Error::usage("edge set does not belong to this measure's graph"));
        }
        Ok(())
    }

    fn matches_graph(&self, g: &FiniteGraph) -> Result<(), Error> {
        if self.tag != g.tag() || self.weights.len() != g.edge_count() as usize {
            return Err(Error::usage("measure does not belong to this graph"));
        }
        Ok(())
    }
}

/// A permutation of the edge ids, the order the greedy walk consumes them.
#[derive(Debug, Clone)]
pub struct ChainOrder {
    order: Vec<u32>,
}

impl ChainOrder {
    pub fn identity(edge_count: u32) -> Self {
        ChainOrder {
            order: (0..edge_count).collect(),
        }
    }

    /// Validates that `order` is a permutation of the edge ids.
    pub fn new(order: Vec<u32>) -> Result<Self, Error> {
        let mut sorted = order.clone();
        sorted.sort_unstable();
        if sorted.iter().enumerate().any(|(i, &e)| e != i as u32) {
            return Err(Error::usage("order is not a permutation of the edge ids"));
        }
        Ok(ChainOrder { order })
    }

    pub fn random(edge_count: u32, rng: &mut impl Rng) -> Self {
        ChainOrder {
            order: generate::random_order(edge_count, rng),
        }
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.order
    }
}

/// Weights each edge with the normalized rank increase of appending it to
/// the growing prefix: 1/n when it merges two components, 0 otherwise.
pub fn greedy_minorizer(g: &FiniteGraph, order: &ChainOrder) -> Result<MinorizingMeasure, Error> {
    if order.order.len() != g.edge_count() as usize {
        return Err(Error::usage(format!(
            "order has {} entries for {} edges",
            order.order.len(),
            g.edge_count()
        )));
    }
    let n = g.node_count() as u64;
    let mut uf = UnionFind::new(g.node_count() as usize);
    let mut weights = vec![Rational::zero(); g.edge_count() as usize];
    for &e in &order.order {
        let (a, b) = g.edge(e);
        if uf.unite(a, b) {
            weights[e as usize] = ratio::recip(n);
        }
    }
    MinorizingMeasure::new(g, weights)
}

/// Weights the edges of a maximal forest with 1/n each and everything
/// else with 0. The forest must be acyclic and meet the graph's full rank.
pub fn forest_minorizer(g: &FiniteGraph, forest: &EdgeSet) -> Result<MinorizingMeasure, Error> {
    forest.belongs_to(g)?;
    if !graph::is_acyclic(g, forest)? {
        return Err(Error::precondition("forest edge set contains a cycle"));
    }
    let full = EdgeSet::full(g);
    if graph::rank(g, forest)? != graph::rank(g, &full)? {
        return Err(Error::precondition("forest is not maximal in the graph"));
    }
    let n = g.node_count() as u64;
    let weights = (0..g.edge_count())
        .map(|e| {
            if forest.contains(e) {
                ratio::recip(n)
            } else {
                Rational::zero()
            }
        })
        .collect();
    MinorizingMeasure::new(g, weights)
}

/// Spreads the total normalized rank evenly over the edges. A natural
/// guess that the verifier refutes on most graphs with a cycle.
pub fn uniform_measure(g: &FiniteGraph) -> Result<MinorizingMeasure, Error> {
    if g.edge_count() == 0 {
        return Err(Error::usage("uniform measure needs at least one edge"));
    }
    let per_edge =
        graph::total_rank_exact(g) / Rational::from_integer(u64::from(g.edge_count()).into());
    MinorizingMeasure::new(g, vec![per_edge; g.edge_count() as usize])
}

/// A subset whose measure exceeds its normalized rank.
#[derive(Debug, Clone)]
pub struct MinorizeViolation {
    pub edges: Vec<u32>,
    pub mass: Rational,
    pub rho: Rational,
}

#[derive(Debug, Clone)]
pub struct MinorizeConfig {
    /// Check every subset when the graph has at most this many edges.
    pub exhaustive_edge_limit: u32,
    pub sampled_subsets: u64,
    pub seed: u64,
}

impl Default for MinorizeConfig {
    fn default() -> Self {
        MinorizeConfig {
            exhaustive_edge_limit: 12,
            sampled_subsets: 4096,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct MinorizeReport {
    /// Whether the measure of all edges equals the total normalized rank.
    pub base_exact: bool,
    pub total: Rational,
    pub rho_total: Rational,
    pub subsets_checked: u64,
    pub exhaustive: bool,
    pub violations: Vec<MinorizeViolation>,
}

impl MinorizeReport {
    pub fn is_minorizing(&self) -> bool {
        self.base_exact && self.violations.is_empty()
    }
}

/// Checks a measure against the subset inequality and the full-set
/// equality, exhaustively on small edge counts and by sampling otherwise.
pub fn verify_minorizing(
    g: &FiniteGraph,
    measure: &MinorizingMeasure,
    config: &MinorizeConfig,
) -> Result<MinorizeReport, Error> {
    measure.matches_graph(g)?;
    let total = measure.total();
    let rho_total = graph::total_rank_exact(g);
    let base_exact = total == rho_total;
    let m = g.edge_count();
    let mut violations = Vec::new();
    let (subsets_checked, exhaustive) = if m <= config.exhaustive_edge_limit {
        assert!(m <= 20, "exhaustive subset scan capped at 20 edges");
        let n = Rational::from_integer(u64::from(g.node_count()).into());
        // Subset sums by reusing the mask without its lowest bit.
        let mut alpha = vec![Rational::zero(); 1usize << m];
        for mask in 1usize..1 << m {
            let low = mask.trailing_zeros();
            alpha[mask] = alpha[mask & (mask - 1)].clone() + &measure.weights[low as usize];
        }
        for (mask, mass) in alpha.iter().enumerate() {
            let mut uf = UnionFind::new(g.node_count() as usize);
            for e in 0..m {
                if mask >> e & 1 == 1 {
                    let (a, b) = g.edge(e);
                    uf.unite(a, b);
                }
            }
            let rank = u64::from(g.node_count() - uf.set_count());
            let rho = Rational::from_integer(rank.into()) / &n;
            if *mass > rho {
                violations.push(MinorizeViolation {
                    edges: (0..m).filter(|e| mask >> e & 1 == 1).collect(),
                    mass: mass.clone(),
                    rho,
                });
            }
        }
        (1u64 << m, true)
    } else {
        let mut rng = stream::child_rng(config.seed, 0);
        for _ in 0..config.sampled_subsets {
            let p = rng.gen::<f64>();
            let x = generate::random_edge_set(g, p, &mut rng);
            let mass = measure.mass(&x)?;
            let rho = graph::normalized_rank(g, &x)?;
            if mass > rho {
                violations.push(MinorizeViolation {
                    edges: x.indices(),
                    mass,
                    rho,
                });
            }
        }
        (config.sampled_subsets, false)
    };
    Ok(MinorizeReport {
        base_exact,
        total,
        rho_total,
        subsets_checked,
        exhaustive,
        violations,
    })
}

/// One subset where the rank identity for forests failed.
#[derive(Debug, Clone)]
pub struct AdditivityViolation {
    pub edges: Vec<u32>,
    pub rho: Rational,
    pub scaled_eta: Rational,
}

#[derive(Debug, Clone)]
pub struct ForestAdditivityReport {
    pub subsets_checked: u64,
    pub violations: Vec<AdditivityViolation>,
}

/// On a forest the normalized rank of any edge subset is its share of the
/// edge measure scaled back by half the average degree, which comes out
/// to the subset size over the node count. Checks both equalities exactly
/// on random subsets plus the empty and full sets.
pub fn forest_additivity_check(
    g: &FiniteGraph,
    trials: u64,
    seed: u64,
) -> Result<ForestAdditivityReport, Error> {
    let full = EdgeSet::full(g);
    if !graph::is_acyclic(g, &full)? {
        return Err(Error::precondition("graph is not a forest"));
    }
    if g.edge_count() == 0 {
        return Err(Error::precondition("forest check needs at least one edge"));
    }
    let wg = WeightedGraphing::uniform(g.clone());
    let half_degree = graphing::average_degree(&wg) / Rational::from_integer(2.into());
    let n = u64::from(g.node_count());
    let mut rng = stream::child_rng(seed, 0);
    let mut violations = Vec::new();
    let mut subsets_checked = 0;
    let mut check = |x: &EdgeSet| -> Result<(), Error> {
        let rho = graphing::rho(&wg, x)?;
        let scaled_eta = graphing::edge_measure(&wg, x)? * &half_degree;
        let direct = Rational::from_integer(u64::from(x.len()).into())
            / Rational::from_integer(n.into());
        if rho != scaled_eta || rho != direct {
            violations.push(AdditivityViolation {
                edges: x.indices(),
                rho,
                scaled_eta,
            });
        }
        Ok(())
    };
    check(&EdgeSet::empty(g))?;
    check(&full)?;
    subsets_checked += 2;
    for _ in 0..trials {
        let p = rng.gen::<f64>();
        let x = generate::random_edge_set(g, p, &mut rng);
        check(&x)?;
        subsets_checked += 1;
    }
    Ok(ForestAdditivityReport {
        subsets_checked,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::ratio;
    use crate::stream::child_rng;

    #[test]
    fn triangle_greedy_weights() {
        let g = FiniteGraph::cycle(3);
        let m = greedy_minorizer(&g, &ChainOrder::identity(3)).unwrap();
        assert_eq!(m.weights(), &[ratio(1, 3), ratio(1, 3), ratio(0, 1)]);
        let report = verify_minorizing(&g, &m, &MinorizeConfig::default()).unwrap();
        assert!(report.is_minorizing());
        assert!(report.exhaustive);
        assert_eq!(report.subsets_checked, 8);
    }

    #[test]
    fn greedy_matches_rank_increments() {
        let mut rng = child_rng(31, 0);
        for _ in 0..25 {
            let g = generate::random_graph(6, 0.5, &mut rng);
            if g.edge_count() == 0 {
                continue;
            }
            let order = ChainOrder::random(g.edge_count(), &mut rng);
            let m = greedy_minorizer(&g, &order).unwrap();
            let mut prefix = Vec::new();
            let mut last = Rational::zero();
            for &e in order.as_slice() {
                prefix.push(e);
                let x = EdgeSet::from_indices(&g, &prefix).unwrap();
                let rho = graph::normalized_rank(&g, &x).unwrap();
                assert_eq!(m.weights()[e as usize], rho.clone() - last);
                assert_eq!(m.mass(&x).unwrap(), rho, "prefixes stay tight");
                last = rho;
            }
        }
    }

    #[test]
    fn uniform_measure_fails_on_triangle_with_pendant() {
        let g = FiniteGraph::new(4, vec![(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        let m = uniform_measure(&g).unwrap();
        assert_eq!(m.total(), ratio(3, 4));
        let report = verify_minorizing(&g, &m, &MinorizeConfig::default()).unwrap();
        assert!(report.base_exact);
        assert!(!report.is_minorizing());
        let triangle = report
            .violations
            .iter()
            .find(|v| v.edges == vec![0, 1, 2])
            .expect("the triangle overshoots");
        assert_eq!(triangle.mass, ratio(9, 16));
        assert_eq!(triangle.rho, ratio(1, 2));
    }

    #[test]
    fn forest_measure_agrees_with_greedy_on_a_forest_first_order() {
        let g = FiniteGraph::cycle(3);
        let forest = graph::spanning_forest(&g);
        assert_eq!(forest.indices(), vec![0, 2]);
        let from_forest = forest_minorizer(&g, &forest).unwrap();
        let order = ChainOrder::new(vec![0, 2, 1]).unwrap();
        let from_greedy = greedy_minorizer(&g, &order).unwrap();
        assert_eq!(from_forest, from_greedy);
    }

    #[test]
    fn forest_minorizer_rejects_cycles_and_partial_forests() {
        let g = FiniteGraph::cycle(4);
        assert!(forest_minorizer(&g, &EdgeSet::full(&g)).is_err());
        let partial = EdgeSet::from_indices(&g, &[0]).unwrap();
        assert!(forest_minorizer(&g, &partial).is_err());
        let maximal = EdgeSet::from_indices(&g, &[0, 1, 2]).unwrap();
        assert!(forest_minorizer(&g, &maximal).is_ok());
    }

    #[test]
    fn measures_stay_bound_to_their_graph() {
        let g = FiniteGraph::cycle(3);
        let h = FiniteGraph::path(3);
        let m = greedy_minorizer(&g, &ChainOrder::identity(3)).unwrap();
        assert!(m.mass(&EdgeSet::full(&h)).is_err());
        assert!(verify_minorizing(&h, &m, &MinorizeConfig::default()).is_err());
        assert!(greedy_minorizer(&g, &ChainOrder::identity(2)).is_err());
        assert!(ChainOrder::new(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn sampled_verification_on_larger_graphs() {
        let mut rng = child_rng(32, 0);
        let g = loop {
            let g = generate::random_graph(10, 0.4, &mut rng);
            if g.edge_count() > 12 {
                break g;
            }
        };
        let m = greedy_minorizer(&g, &ChainOrder::identity(g.edge_count())).unwrap();
        let config = MinorizeConfig {
            sampled_subsets: 500,
            ..MinorizeConfig::default()
        };
        let report = verify_minorizing(&g, &m, &config).unwrap();
        assert!(!report.exhaustive);
        assert_eq!(report.subsets_checked, 500);
        assert!(report.is_minorizing());
    }

    #[test]
    fn forest_additivity_holds_on_paths_and_stars() {
        for g in [FiniteGraph::path(8), FiniteGraph::star(6)] {
            let report = forest_additivity_check(&g, 200, 9).unwrap();
            assert!(report.violations.is_empty());
            assert_eq!(report.subsets_checked, 202);
        }
    }

    #[test]
    fn forest_additivity_rejects_cyclic_graphs() {
        assert!(forest_additivity_check(&FiniteGraph::cycle(4), 10, 0).is_err());
        let isolated = FiniteGraph::new(3, vec![]).unwrap();
        assert!(forest_additivity_check(&isolated, 10, 0).is_err());
    }
}
