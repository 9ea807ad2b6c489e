//! Seeded random and exhaustive instance generators.
//!
//! Everything here feeds the randomized checks: graphs, edge subsets,
//! forests, partitions with consistent infinite flags, and weighted spaces
//! whose weights are constant on prescribed groups. All generators take an
//! explicit RNG so callers control reproducibility.

use crate::graph::{EdgeSet, FiniteGraph};
use crate::partition::{Partition, WeightedSpace};
use crate::ratio::Rational;
use rand::Rng;
use std::sync::Arc;

fn pairs(n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            out.push((a, b));
        }
    }
    out
}

/// All labeled graphs on exactly `n` nodes, one per subset of node pairs.
pub fn all_graphs(n: u32) -> impl Iterator<Item = FiniteGraph> {
    let all = pairs(n);
    let count = 1u64 << all.len();
    (0..count).map(move |mask| {
        let edges = all
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        FiniteGraph::new(n, edges).expect("generated edges are simple")
    })
}

/// Random graph on `n` nodes with independent edge probability `p`.
pub fn random_graph(n: u32, p: f64, rng: &mut impl Rng) -> FiniteGraph {
    let edges = pairs(n).into_iter().filter(|_| rng.gen_bool(p)).collect();
    FiniteGraph::new(n, edges).expect("generated edges are simple")
}

/// Random subset of a graph's edges, each kept with probability `p`.
pub fn random_edge_set(g: &FiniteGraph, p: f64, rng: &mut impl Rng) -> EdgeSet {
    let indices: Vec<u32> = (0..g.edge_count()).filter(|_| rng.gen_bool(p)).collect();
    EdgeSet::from_indices(g, &indices).expect("indices in range")
}

/// Random forest on `n` nodes: each node after the first either starts a
/// new component or attaches to a uniformly chosen earlier node.
pub fn random_forest(n: u32, rng: &mut impl Rng) -> FiniteGraph {
    let mut edges = Vec::new();
    for v in 1..n {
        if rng.gen_bool(0.8) {
            edges.push((rng.gen_range(0..v), v));
        }
    }
    FiniteGraph::new(n, edges).expect("attachment forest is simple")
}

/// Node weights constant on the connected components of `g`, normalized to
/// a probability space. Component values are small random integers.
pub fn component_constant_weights(g: &FiniteGraph, rng: &mut impl Rng) -> WeightedSpace {
    let parts = crate::graph::components(g, &EdgeSet::full(g)).expect("full set");
    let values: Vec<u64> = (0..parts.class_count())
        .map(|_| rng.gen_range(1..=5u64))
        .collect();
    let raw: Vec<u64> = (0..g.node_count() as usize)
        .map(|x| values[parts.class_of(x) as usize])
        .collect();
    let total: u64 = raw.iter().sum();
    WeightedSpace::new(
        raw.into_iter()
            .map(|v| Rational::new(v.into(), total.into()))
            .collect(),
    )
    .expect("normalized weights sum to one")
}

fn geometric_count(max: usize, rng: &mut impl Rng) -> usize {
    let mut k = 1;
    while k < max && rng.gen_bool(0.5) {
        k += 1;
    }
    k
}

fn random_assignment(points: usize, classes: usize, rng: &mut impl Rng) -> Vec<u32> {
    (0..points)
        .map(|_| rng.gen_range(0..classes as u32))
        .collect()
}

/// Random partition of a uniform space, with each class flagged infinite
/// with probability `flag_prob`. Class counts are sampled geometrically.
pub fn random_partition(
    space: Arc<WeightedSpace>,
    flag_prob: f64,
    rng: &mut impl Rng,
) -> Partition {
    let n = space.point_count();
    let k = geometric_count(n, rng);
    let assignment = random_assignment(n, k, rng);
    let p = Partition::from_class_ids(space, assignment, []).expect("valid assignment");
    let flags: Vec<u32> =
        (0..p.class_count()).filter(|_| rng.gen_bool(flag_prob)).collect();
    let classes = p.classes();
    Partition::new(p.space().clone(), classes, flags).expect("valid flags")
}

fn coarsen(r: &Partition, rng: &mut impl Rng) -> Vec<u32> {
    let k = r.class_count() as usize;
    let targets = rng.gen_range(1..=k);
    let map: Vec<u32> = (0..k).map(|_| rng.gen_range(0..targets as u32)).collect();
    (0..r.point_count())
        .map(|x| map[r.class_of(x) as usize])
        .collect()
}

/// Random supermodularity instance on the uniform space with `points`
/// points: a refinement `r` and two coarsenings `p`, `q`, flagged so that
/// every flagged class of `r` lies inside flagged classes of both `p` and
/// `q`. Returns `(p, q, r)`.
pub fn random_uniform_triple(
    points: usize,
    flag_prob: f64,
    rng: &mut impl Rng,
) -> (Partition, Partition, Partition) {
    let space = Arc::new(WeightedSpace::uniform(points));
    let base = random_partition(space.clone(), 0.0, rng);
    let p_raw = coarsen(&base, rng);
    let q_raw = coarsen(&base, rng);
    let p_plain = Partition::from_class_ids(space.clone(), p_raw, []).expect("valid");
    let q_plain = Partition::from_class_ids(space.clone(), q_raw, []).expect("valid");
    let p_flags: Vec<u32> = (0..p_plain.class_count())
        .filter(|_| rng.gen_bool(flag_prob))
        .collect();
    let q_flags: Vec<u32> = (0..q_plain.class_count())
        .filter(|_| rng.gen_bool(flag_prob))
        .collect();
    let p = Partition::new(space.clone(), p_plain.classes(), p_flags).expect("valid");
    let q = Partition::new(space.clone(), q_plain.classes(), q_flags).expect("valid");
    let mut r_flags = Vec::new();
    for class in 0..base.class_count() {
        let point = (0..points as u32)
            .find(|&x| base.class_of(x as usize) == class)
            .expect("classes are nonempty");
        let in_p = p.class_of(point as usize);
        let in_q = q.class_of(point as usize);
        if p.is_flagged(in_p) && q.is_flagged(in_q) && rng.gen_bool(flag_prob) {
            r_flags.push(class);
        }
    }
    let r = Partition::new(space, base.classes(), r_flags).expect("valid");
    (p, q, r)
}

/// Random space whose points are grouped into equal-weight blocks, plus a
/// partition that is re-randomizing for it: unflagged classes stay inside
/// one block, flagged classes are unconstrained.
fn random_grouped_space(rng: &mut impl Rng) -> (Arc<WeightedSpace>, Vec<u32>) {
    let n = rng.gen_range(2..=12usize);
    let group_count = rng.gen_range(1..=3usize.min(n));
    let groups = random_assignment(n, group_count, rng);
    let multiplier: Vec<u64> = (0..group_count).map(|_| rng.gen_range(1..=5u64)).collect();
    let raw: Vec<u64> = groups.iter().map(|&g| multiplier[g as usize]).collect();
    let total: u64 = raw.iter().sum();
    let space = Arc::new(
        WeightedSpace::new(
            raw.into_iter()
                .map(|v| Rational::new(v.into(), total.into()))
                .collect(),
        )
        .expect("normalized"),
    );
    (space, groups)
}

pub fn random_rerand_instance(rng: &mut impl Rng) -> Partition {
    let (space, groups) = random_grouped_space(rng);
    random_rerand_partition_on(space, &groups, rng)
}

/// Two independent re-randomizing partitions over one shared space, the
/// setup for join and split experiments.
pub fn random_rerand_pair(rng: &mut impl Rng) -> (Partition, Partition) {
    let (space, groups) = random_grouped_space(rng);
    let p = random_rerand_partition_on(space.clone(), &groups, rng);
    let q = random_rerand_partition_on(space, &groups, rng);
    (p, q)
}

/// Random re-randomizing partition for a space whose weights are constant
/// on the given `groups`. A fifth of the points, on average, are routed
/// into flagged classes.
pub fn random_rerand_partition_on(
    space: Arc<WeightedSpace>,
    groups: &[u32],
    rng: &mut impl Rng,
) -> Partition {
    let n = space.point_count();
    assert_eq!(groups.len(), n);
    let flagged_points: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.2)).collect();
    let mut class_of = vec![u32::MAX; n];
    let mut next = 0u32;
    let mut flags = Vec::new();
    if !flagged_points.is_empty() {
        let k = geometric_count(flagged_points.len(), rng);
        let sub = random_assignment(flagged_points.len(), k, rng);
        let mut used = std::collections::HashMap::new();
        for (i, &x) in flagged_points.iter().enumerate() {
            let id = *used.entry(sub[i]).or_insert_with(|| {
                let id = next;
                next += 1;
                flags.push(id);
                id
            });
            class_of[x] = id;
        }
    }
    let group_count = groups.iter().copied().max().map_or(0, |g| g + 1);
    for g in 0..group_count {
        let members: Vec<usize> = (0..n)
            .filter(|&x| groups[x] == g && class_of[x] == u32::MAX)
            .collect();
        if members.is_empty() {
            continue;
        }
        let k = geometric_count(members.len(), rng);
        let sub = random_assignment(members.len(), k, rng);
        let mut used = std::collections::HashMap::new();
        for (i, &x) in members.iter().enumerate() {
            let id = *used.entry(sub[i]).or_insert_with(|| {
                let id = next;
                next += 1;
                id
            });
            class_of[x] = id;
        }
    }
    Partition::from_class_ids(space, class_of, flags).expect("valid assignment")
}

/// Splits one randomly chosen unflagged class of size at least two into
/// two nonempty halves. Returns `None` when no class qualifies.
pub fn split_random_class(p: &Partition, rng: &mut impl Rng) -> Option<Partition> {
    let candidates: Vec<u32> = (0..p.class_count())
        .filter(|&c| !p.is_flagged(c) && p.class_size(c) >= 2)
        .collect();
    if candidates.is_empty() {
        return None;
    }
    let target = candidates[rng.gen_range(0..candidates.len())];
    let members: Vec<usize> = (0..p.point_count())
        .filter(|&x| p.class_of(x) == target)
        .collect();
    let mut side = vec![false; members.len()];
    side[1] = true;
    for s in side.iter_mut().skip(2) {
        *s = rng.gen_bool(0.5);
    }
    let mut class_of: Vec<u32> = (0..p.point_count()).map(|x| p.class_of(x)).collect();
    let new_id = p.class_count();
    for (i, &x) in members.iter().enumerate() {
        if side[i] {
            class_of[x] = new_id;
        }
    }
    Some(
        Partition::from_class_ids(p.space().clone(), class_of, p.flagged_classes())
            .expect("valid split"),
    )
}

/// Random permutation of `0..m`.
pub fn random_order(m: u32, rng: &mut impl Rng) -> Vec<u32> {
    let mut order: Vec<u32> = (0..m).collect();
    for i in (1..m as usize).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    order
}
