//! Finite simple graphs, edge sets, and the cycle-matroid rank.
//!
//! The rank of an edge set `X` is `r(X) = |V| - c(X)` where `c(X)` counts
//! the connected components of `(V, X)`; dividing by `|V|` gives the
//! normalized rank `rho`. Both are exact. The module also builds spanning
//! forests and checks submodularity and monotonicity of `rho` over pairs
//! of edge sets, exhaustively when the graph is small enough.

use crate::error::Error;
use crate::partition::{Partition, WeightedSpace};
use crate::ratio::{self, Rational};
use crate::unionfind::UnionFind;
use std::collections::VecDeque;
use std::sync::Arc;

fn fnv1a(words: impl IntoIterator<Item = u64>) -> u64 {
    let mut h = 0xcbf29ce484222325u64;
    for w in words {
        for byte in w.to_le_bytes() {
            h ^= byte as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    }
    h
}

/// Finite simple graph on nodes `0..node_count`.
///
/// Edges are an ordered list of unordered node pairs; edge sets index into
/// that list, so the edge order fixed at construction is part of the
/// graph's identity.
#[derive(Debug, Clone)]
pub struct FiniteGraph {
    node_count: u32,
    edges: Vec<(u32, u32)>,
    degree_bound: u32,
    degrees: Vec<u32>,
    adjacency: Vec<Vec<(u32, u32)>>,
    tag: u64,
}

impl FiniteGraph {
    /// Builds a graph, rejecting self-loops, duplicate edges, and out of
    /// range endpoints. The degree bound is set to the observed maximum.
    pub fn new(node_count: u32, edges: Vec<(u32, u32)>) -> Result<Self, Error> {
        Self::build(node_count, edges, None)
    }

    /// Like [`FiniteGraph::new`] but with an explicit degree bound, which
    /// must dominate every node degree.
    pub fn with_degree_bound(
        node_count: u32,
        edges: Vec<(u32, u32)>,
        bound: u32,
    ) -> Result<Self, Error> {
        Self::build(node_count, edges, Some(bound))
    }

    fn build(node_count: u32, edges: Vec<(u32, u32)>, bound: Option<u32>) -> Result<Self, Error> {
        if node_count == 0 {
            return Err(Error::usage("graph needs at least one node"));
        }
        let mut degrees = vec![0u32; node_count as usize];
        let mut adjacency: Vec<Vec<(u32, u32)>> = vec![Vec::new(); node_count as usize];
        let mut seen = std::collections::HashSet::with_capacity(edges.len());
        for (id, &(a, b)) in edges.iter().enumerate() {
            if a >= node_count || b >= node_count {
                return Err(Error::usage(format!(
                    "edge ({a}, {b}) out of range for {node_count} nodes"
                )));
            }
            if a == b {
                return Err(Error::usage(format!("self-loop at node {a}")));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(Error::usage(format!("duplicate edge ({a}, {b})")));
            }
            degrees[a as usize] += 1;
            degrees[b as usize] += 1;
            adjacency[a as usize].push((b, id as u32));
            adjacency[b as usize].push((a, id as u32));
        }
        let observed = degrees.iter().copied().max().unwrap_or(0);
        let degree_bound = match bound {
            Some(d) if d < observed => {
                return Err(Error::usage(format!(
                    "declared degree bound {d} below observed maximum {observed}"
                )))
            }
            Some(d) => d,
            None => observed,
        };
        for list in &mut adjacency {
            list.sort_unstable();
        }
        let tag = fnv1a(
            std::iter::once(node_count as u64)
                .chain(edges.iter().map(|&(a, b)| ((a as u64) << 32) | b as u64)),
        );
        Ok(FiniteGraph {
            node_count,
            edges,
            degree_bound,
            degrees,
            adjacency,
            tag,
        })
    }

    pub fn node_count(&self) -> u32 {
        self.node_count
    }

    pub fn edge_count(&self) -> u32 {
        self.edges.len() as u32
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn edge(&self, id: u32) -> (u32, u32) {
        self.edges[id as usize]
    }

    pub fn degree(&self, node: u32) -> u32 {
        self.degrees[node as usize]
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    /// Neighbors of `node` as `(neighbor, edge id)`, ascending by neighbor.
    pub fn adjacency(&self, node: u32) -> &[(u32, u32)] {
        &self.adjacency[node as usize]
    }

    pub(crate) fn tag(&self) -> u64 {
        self.tag
    }

    /// Degree of `node` counting only edges in `x`.
    pub fn degree_in(&self, node: u32, x: &EdgeSet) -> u32 {
        self.adjacency[node as usize]
            .iter()
            .filter(|&&(_, e)| x.contains(e))
            .count() as u32
    }

    /// Cycle `C_n`, `n >= 3`.
    pub fn cycle(n: u32) -> Self {
        assert!(n >= 3, "cycle needs at least 3 nodes");
        let edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::new(n, edges).expect("cycle is simple")
    }

    /// Path on `n` nodes (`n - 1` edges).
    pub fn path(n: u32) -> Self {
        assert!(n >= 1);
        let edges = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        Self::new(n, edges).expect("path is simple")
    }

    /// Complete graph `K_n`.
    pub fn complete(n: u32) -> Self {
        let mut edges = Vec::new();
        for a in 0..n {
            for b in (a + 1)..n {
                edges.push((a, b));
            }
        }
        Self::new(n, edges).expect("complete graph is simple")
    }

    /// Star with one hub and `leaves` leaves.
    pub fn star(leaves: u32) -> Self {
        let edges = (1..=leaves).map(|v| (0, v)).collect();
        Self::new(leaves + 1, edges).expect("star is simple")
    }

    /// Two-dimensional torus grid on `side x side` nodes, `side >= 3`.
    pub fn torus2(side: u32) -> Self {
        assert!(side >= 3, "torus grid needs side >= 3");
        let id = |i: u32, j: u32| i * side + j;
        let mut edges = Vec::new();
        for i in 0..side {
            for j in 0..side {
                edges.push((id(i, j), id(i, (j + 1) % side)));
                edges.push((id(i, j), id((i + 1) % side, j)));
            }
        }
        Self::new(side * side, edges).expect("torus grid is simple")
    }

    /// Disjoint union of `count` triangles.
    pub fn disjoint_triangles(count: u32) -> Self {
        assert!(count >= 1);
        let mut edges = Vec::new();
        for t in 0..count {
            let base = 3 * t;
            edges.push((base, base + 1));
            edges.push((base + 1, base + 2));
            edges.push((base, base + 2));
        }
        Self::new(3 * count, edges).expect("triangles are simple")
    }
}

/// Subset of a graph's edge list, stored as a positional bit mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSet {
    tag: u64,
    edge_count: u32,
    words: Vec<u64>,
}

impl EdgeSet {
    pub fn empty(g: &FiniteGraph) -> Self {
        let m = g.edge_count();
        EdgeSet {
            tag: g.tag(),
            edge_count: m,
            words: vec![0; (m as usize).div_ceil(64)],
        }
    }

    pub fn full(g: &FiniteGraph) -> Self {
        let mut set = Self::empty(g);
        for e in 0..g.edge_count() {
            set.insert(e);
        }
        set
    }

    /// Builds a set from edge indices, rejecting out of range ids.
    pub fn from_indices(g: &FiniteGraph, indices: &[u32]) -> Result<Self, Error> {
        let mut set = Self::empty(g);
        for &e in indices {
            if e >= g.edge_count() {
                return Err(Error::usage(format!(
                    "edge index {e} out of range for {} edges",
                    g.edge_count()
                )));
            }
            set.insert(e);
        }
        Ok(set)
    }

    fn insert(&mut self, e: u32) {
        self.words[(e / 64) as usize] |= 1u64 << (e % 64);
    }

    pub(crate) fn matches_tag(&self, tag: u64, edge_count: u32) -> bool {
        self.tag == tag && self.edge_count == edge_count
    }

    pub fn contains(&self, e: u32) -> bool {
        e < self.edge_count && self.words[(e / 64) as usize] >> (e % 64) & 1 == 1
    }

    pub fn len(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Ascending edge indices in the set.
    pub fn indices(&self) -> Vec<u32> {
        (0..self.edge_count).filter(|&e| self.contains(e)).collect()
    }

    /// Checks that the set was built against `g`.
    pub fn belongs_to(&self, g: &FiniteGraph) -> Result<(), Error> {
        if self.tag != g.tag() || self.edge_count != g.edge_count() {
            return Err(Error::usage("edge set does not belong to this graph"));
        }
        Ok(())
    }

    fn zip(&self, other: &EdgeSet, f: impl Fn(u64, u64) -> u64) -> Result<EdgeSet, Error> {
        if self.tag != other.tag || self.edge_count != other.edge_count {
            return Err(Error::usage("edge sets belong to different graphs"));
        }
        Ok(EdgeSet {
            tag: self.tag,
            edge_count: self.edge_count,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn union(&self, other: &EdgeSet) -> Result<EdgeSet, Error> {
        self.zip(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &EdgeSet) -> Result<EdgeSet, Error> {
        self.zip(other, |a, b| a & b)
    }

    pub fn complement(&self, g: &FiniteGraph) -> Result<EdgeSet, Error> {
        self.belongs_to(g)?;
        EdgeSet::full(g).zip(self, |a, b| a & !b)
    }

    pub fn is_subset_of(&self, other: &EdgeSet) -> Result<bool, Error> {
        Ok(self
            .zip(other, |a, b| a & !b)?
            .words
            .iter()
            .all(|&w| w == 0))
    }
}

fn union_find_over(g: &FiniteGraph, x: &EdgeSet) -> UnionFind {
    let mut uf = UnionFind::new(g.node_count() as usize);
    for (id, &(a, b)) in g.edges().iter().enumerate() {
        if x.contains(id as u32) {
            uf.unite(a, b);
        }
    }
    uf
}

/// Connected components of `(V, X)` as a partition of the uniform space on
/// the nodes, classes numbered by smallest contained node. Computed by
/// breadth-first search.
pub fn components(g: &FiniteGraph, x: &EdgeSet) -> Result<Partition, Error> {
    x.belongs_to(g)?;
    let n = g.node_count() as usize;
    let mut class_of = vec![u32::MAX; n];
    let mut next = 0u32;
    let mut queue = VecDeque::new();
    for start in 0..n as u32 {
        if class_of[start as usize] != u32::MAX {
            continue;
        }
        class_of[start as usize] = next;
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            for &(v, e) in g.adjacency(u) {
                if x.contains(e) && class_of[v as usize] == u32::MAX {
                    class_of[v as usize] = next;
                    queue.push_back(v);
                }
            }
        }
        next += 1;
    }
    let space = Arc::new(WeightedSpace::uniform(n));
    Partition::from_class_ids(space, class_of, [])
}

/// Number of connected components of `(V, X)`, by union-find.
pub fn component_count(g: &FiniteGraph, x: &EdgeSet) -> Result<u32, Error> {
    x.belongs_to(g)?;
    Ok(union_find_over(g, x).set_count())
}

/// Cycle-matroid rank `r(X) = |V| - c(X)`.
pub fn rank(g: &FiniteGraph, x: &EdgeSet) -> Result<u32, Error> {
    Ok(g.node_count() - component_count(g, x)?)
}

/// Normalized rank `rho(X) = r(X) / |V|`.
pub fn normalized_rank(g: &FiniteGraph, x: &EdgeSet) -> Result<Rational, Error> {
    Ok(ratio::ratio(
        rank(g, x)? as i64,
        g.node_count() as i64,
    ))
}

/// Normalized rank through the component-size expectation: one minus the
/// average over nodes of the reciprocal size of the node's component in
/// `(V, X)`. Agrees with [`normalized_rank`] on every input.
pub fn normalized_rank_by_expectation(g: &FiniteGraph, x: &EdgeSet) -> Result<Rational, Error> {
    x.belongs_to(g)?;
    let mut uf = union_find_over(g, x);
    let n = g.node_count();
    let mut size = vec![0u64; n as usize];
    for v in 0..n {
        size[uf.find(v) as usize] += 1;
    }
    let mut acc = Rational::from_integer(0.into());
    for v in 0..n {
        let s = size[uf.find(v) as usize];
        acc += Rational::new(1.into(), (s * n as u64).into());
    }
    Ok(Rational::from_integer(1.into()) - acc)
}

/// Normalized rank of the full edge set.
pub fn total_rank_exact(g: &FiniteGraph) -> Rational {
    normalized_rank(g, &EdgeSet::full(g)).expect("full set belongs to its graph")
}

/// True if `(V, X)` has no cycle.
pub fn is_acyclic(g: &FiniteGraph, x: &EdgeSet) -> Result<bool, Error> {
    Ok(rank(g, x)? == x.len())
}

/// Breadth-first spanning forest. Roots are taken in ascending node order
/// and each frontier expands toward its smallest unvisited neighbor first,
/// so the result is determined by the edge ordering.
pub fn spanning_forest(g: &FiniteGraph) -> EdgeSet {
    let n = g.node_count();
    let mut visited = vec![false; n as usize];
    let mut forest = EdgeSet::empty(g);
    let mut queue = VecDeque::new();
    for root in 0..n {
        if visited[root as usize] {
            continue;
        }
        visited[root as usize] = true;
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            for &(v, e) in g.adjacency(u) {
                if !visited[v as usize] {
                    visited[v as usize] = true;
                    forest.insert(e);
                    queue.push_back(v);
                }
            }
        }
    }
    forest
}

/// What went wrong for a pair of edge sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairViolation {
    /// `rho(X u Y) + rho(X n Y) > rho(X) + rho(Y)`.
    Submodularity,
    /// `X` is a subset of `Y` but `rho(X) > rho(Y)`.
    Monotonicity,
}

/// One failed pair, with both sides of the failed inequality.
#[derive(Debug, Clone)]
pub struct SubmodularViolation {
    pub x: Vec<u32>,
    pub y: Vec<u32>,
    pub kind: PairViolation,
    pub lhs: Rational,
    pub rhs: Rational,
}

/// Outcome of a submodularity sweep.
#[derive(Debug, Clone)]
pub struct SubmodularReport {
    pub pairs_checked: u64,
    pub exhaustive: bool,
    pub violations: Vec<SubmodularViolation>,
}

/// Configuration for [`check_submodular`].
#[derive(Debug, Clone)]
pub struct SubmodularConfig {
    /// Enumerate all pairs when the graph has at most this many edges.
    pub exhaustive_edge_limit: u32,
    /// Number of random pairs above the exhaustive limit.
    pub sampled_pairs: u64,
    pub seed: u64,
}

impl Default for SubmodularConfig {
    fn default() -> Self {
        SubmodularConfig {
            exhaustive_edge_limit: 12,
            sampled_pairs: 4096,
            seed: 0,
        }
    }
}

fn rank_of_mask(g: &FiniteGraph, mask: u64) -> u32 {
    let mut uf = UnionFind::new(g.node_count() as usize);
    for (id, &(a, b)) in g.edges().iter().enumerate() {
        if mask >> id & 1 == 1 {
            uf.unite(a, b);
        }
    }
    g.node_count() - uf.set_count()
}

fn mask_indices(mask: u64, m: u32) -> Vec<u32> {
    (0..m).filter(|&e| mask >> e & 1 == 1).collect()
}

/// Checks submodularity and monotonicity of `rho` over pairs of edge sets:
/// exhaustively over all `4^|E|` pairs when the graph is small enough,
/// otherwise over seeded random pairs.
pub fn check_submodular(g: &FiniteGraph, config: &SubmodularConfig) -> SubmodularReport {
    let m = g.edge_count();
    if m <= config.exhaustive_edge_limit {
        check_submodular_exhaustive(g)
    } else {
        check_submodular_sampled(g, config.sampled_pairs, config.seed)
    }
}

/// Exhaustive sweep over every pair of edge subsets. Intended for graphs
/// with few edges; the pair count is `4^|E|`.
pub fn check_submodular_exhaustive(g: &FiniteGraph) -> SubmodularReport {
    let m = g.edge_count();
    assert!(m <= 16, "exhaustive pair sweep limited to 16 edges");
    let n = g.node_count() as i64;
    let subsets: u64 = 1u64 << m;
    let mut rank_table = vec![0u32; subsets as usize];
    for mask in 0..subsets {
        rank_table[mask as usize] = rank_of_mask(g, mask);
    }
    let mut violations = Vec::new();
    let mut pairs = 0u64;
    for x in 0..subsets {
        let rx = rank_table[x as usize];
        for y in 0..subsets {
            pairs += 1;
            let ry = rank_table[y as usize];
            let ru = rank_table[(x | y) as usize];
            let ri = rank_table[(x & y) as usize];
            if ru + ri > rx + ry {
                violations.push(SubmodularViolation {
                    x: mask_indices(x, m),
                    y: mask_indices(y, m),
                    kind: PairViolation::Submodularity,
                    lhs: ratio::ratio((ru + ri) as i64, n),
                    rhs: ratio::ratio((rx + ry) as i64, n),
                });
            }
            if x & y == x && rx > ry {
                violations.push(SubmodularViolation {
                    x: mask_indices(x, m),
                    y: mask_indices(y, m),
                    kind: PairViolation::Monotonicity,
                    lhs: ratio::ratio(rx as i64, n),
                    rhs: ratio::ratio(ry as i64, n),
                });
            }
        }
    }
    SubmodularReport {
        pairs_checked: pairs,
        exhaustive: true,
        violations,
    }
}

fn check_submodular_sampled(g: &FiniteGraph, pairs: u64, seed: u64) -> SubmodularReport {
    use rand::RngCore;
    let mut rng = crate::stream::child_rng(seed, 0);
    let m = g.edge_count();
    let n = g.node_count() as i64;
    let random_set = |rng: &mut dyn RngCore| {
        let mut set = EdgeSet::empty(g);
        for e in 0..m {
            if rng.next_u32() & 1 == 1 {
                set.insert(e);
            }
        }
        set
    };
    let mut violations = Vec::new();
    for _ in 0..pairs {
        let x = random_set(&mut rng);
        let y = random_set(&mut rng);
        let rx = rank(g, &x).expect("set built against g");
        let ry = rank(g, &y).expect("set built against g");
        let u = x.union(&y).expect("same graph");
        let i = x.intersection(&y).expect("same graph");
        let ru = rank(g, &u).expect("same graph");
        let ri = rank(g, &i).expect("same graph");
        if ru + ri > rx + ry {
            violations.push(SubmodularViolation {
                x: x.indices(),
                y: y.indices(),
                kind: PairViolation::Submodularity,
                lhs: ratio::ratio((ru + ri) as i64, n),
                rhs: ratio::ratio((rx + ry) as i64, n),
            });
        }
        if rx > ru {
            violations.push(SubmodularViolation {
                x: x.indices(),
                y: u.indices(),
                kind: PairViolation::Monotonicity,
                lhs: ratio::ratio(rx as i64, n),
                rhs: ratio::ratio(ru as i64, n),
            });
        }
    }
    SubmodularReport {
        pairs_checked: pairs,
        exhaustive: false,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::ratio;

    fn graph(n: u32, edges: &[(u32, u32)]) -> FiniteGraph {
        FiniteGraph::new(n, edges.to_vec()).unwrap()
    }

    #[test]
    fn rejects_self_loops_duplicates_and_range() {
        assert!(FiniteGraph::new(3, vec![(0, 0)]).is_err());
        assert!(FiniteGraph::new(3, vec![(0, 1), (1, 0)]).is_err());
        assert!(FiniteGraph::new(3, vec![(0, 3)]).is_err());
        assert!(FiniteGraph::new(0, vec![]).is_err());
        assert!(FiniteGraph::with_degree_bound(3, vec![(0, 1), (0, 2)], 1).is_err());
        assert!(FiniteGraph::with_degree_bound(3, vec![(0, 1), (0, 2)], 5).is_ok());
    }

    #[test]
    fn two_component_path_splits_into_expected_classes() {
        let g = graph(4, &[(0, 1), (2, 3)]);
        let parts = components(&g, &EdgeSet::full(&g)).unwrap();
        assert_eq!(parts.classes(), vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(component_count(&g, &EdgeSet::full(&g)).unwrap(), 2);
    }

    #[test]
    fn isolated_nodes_are_singletons() {
        let g = graph(3, &[(0, 1)]);
        let parts = components(&g, &EdgeSet::full(&g)).unwrap();
        assert_eq!(parts.classes(), vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn empty_edge_set_gives_rank_zero() {
        let g = FiniteGraph::complete(4);
        let empty = EdgeSet::empty(&g);
        assert_eq!(rank(&g, &empty).unwrap(), 0);
        assert_eq!(normalized_rank(&g, &empty).unwrap(), ratio(0, 1));
    }

    #[test]
    fn two_triangles_have_normalized_rank_two_thirds() {
        let g = FiniteGraph::disjoint_triangles(2);
        let full = EdgeSet::full(&g);
        assert_eq!(rank(&g, &full).unwrap(), 4);
        assert_eq!(normalized_rank(&g, &full).unwrap(), ratio(2, 3));
        assert_eq!(
            normalized_rank_by_expectation(&g, &full).unwrap(),
            ratio(2, 3)
        );
    }

    #[test]
    fn cycle_total_rank_is_one_minus_reciprocal() {
        assert_eq!(total_rank_exact(&FiniteGraph::cycle(10)), ratio(9, 10));
        assert_eq!(total_rank_exact(&FiniteGraph::cycle(100)), ratio(99, 100));
    }

    #[test]
    fn edge_set_from_wrong_graph_is_rejected() {
        let k3 = FiniteGraph::complete(3);
        let k4 = FiniteGraph::complete(4);
        let x = EdgeSet::full(&k3);
        assert!(matches!(rank(&k4, &x), Err(Error::Usage(_))));
        assert!(x.union(&EdgeSet::full(&k4)).is_err());
    }

    #[test]
    fn edge_set_algebra() {
        let g = FiniteGraph::complete(4);
        let x = EdgeSet::from_indices(&g, &[0, 1, 2]).unwrap();
        let y = EdgeSet::from_indices(&g, &[2, 3]).unwrap();
        assert_eq!(x.union(&y).unwrap().indices(), vec![0, 1, 2, 3]);
        assert_eq!(x.intersection(&y).unwrap().indices(), vec![2]);
        assert_eq!(x.complement(&g).unwrap().indices(), vec![3, 4, 5]);
        assert_eq!(x.len(), 3);
        assert!(EdgeSet::from_indices(&g, &[9]).is_err());
        assert!(y.is_subset_of(&EdgeSet::full(&g)).unwrap());
        assert!(!EdgeSet::full(&g).is_subset_of(&y).unwrap());
    }

    #[test]
    fn spanning_forest_of_k4_has_full_rank_and_no_cycle() {
        let g = FiniteGraph::complete(4);
        let f = spanning_forest(&g);
        assert_eq!(f.len(), 3);
        assert!(is_acyclic(&g, &f).unwrap());
        assert_eq!(rank(&g, &f).unwrap(), rank(&g, &EdgeSet::full(&g)).unwrap());
    }

    #[test]
    fn spanning_forest_of_a_forest_is_the_forest_itself() {
        let g = graph(6, &[(0, 1), (1, 2), (3, 4)]);
        assert_eq!(spanning_forest(&g), EdgeSet::full(&g));
    }

    #[test]
    fn spanning_forest_prefers_small_node_ids() {
        // Triangle 0-1-2: BFS from 0 reaches 1 and 2 directly.
        let g = FiniteGraph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(spanning_forest(&g).indices(), vec![0, 2]);
    }

    #[test]
    fn k4_exhaustive_sweep_is_clean() {
        let report = check_submodular_exhaustive(&FiniteGraph::complete(4));
        assert_eq!(report.pairs_checked, 4096);
        assert!(report.exhaustive);
        assert!(report.violations.is_empty());
    }

    #[test]
    fn sampled_sweep_is_clean_on_a_larger_graph() {
        let g = FiniteGraph::torus2(4);
        let config = SubmodularConfig {
            sampled_pairs: 500,
            seed: 7,
            ..SubmodularConfig::default()
        };
        let report = check_submodular(&g, &config);
        assert!(!report.exhaustive);
        assert_eq!(report.pairs_checked, 500);
        assert!(report.violations.is_empty());
    }

    #[test]
    fn rank_equals_cardinality_iff_acyclic() {
        let g = FiniteGraph::cycle(5);
        let full = EdgeSet::full(&g);
        assert_eq!(rank(&g, &full).unwrap(), 4);
        assert!(!is_acyclic(&g, &full).unwrap());
        let four = EdgeSet::from_indices(&g, &[0, 1, 2, 3]).unwrap();
        assert!(is_acyclic(&g, &four).unwrap());
        assert_eq!(rank(&g, &four).unwrap(), 4);
    }
}
