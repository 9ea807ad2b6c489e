//! Oracle families: concrete [`LocalOracle`] implementations.
//!
//! Infinite families never materialize nodes; a handle encodes the walk
//! that produced it. The lattice uses coordinate offsets from the sampled
//! origin. Trees use reduced color words over a proper edge coloring: the
//! root hands colors `1..=D` to its incident edges in index order, and a
//! vertex reached through color `c` hands the remaining colors out in
//! ascending order. Appending a color extends the word, repeating the last
//! color steps back, so a node's identity is independent of the walk.
//!
//! Finite graphs and mixtures of finite components sample roots uniformly
//! over nodes; mixture components must be connected, and the mixture
//! probability of each template is the chance that a sampled node lives in
//! a component of that shape. Templates are expected to look the same from
//! every node (as the bundled ones do), since a uniform root within a
//! template is how that template's node distribution is modelled.

use crate::error::Error;
use crate::graph::{self, EdgeSet, FiniteGraph};
use crate::oracle::LocalOracle;
use crate::ratio::{self, Rational};
use num::{BigInt, One, Zero};
use rand::{Rng, RngCore};
use std::collections::BTreeSet;
use std::path::PathBuf;

/// The two-sided infinite path.
#[derive(Debug, Clone)]
pub struct InfinitePath;

impl LocalOracle for InfinitePath {
    type Handle = i64;

    fn degree_bound(&self) -> usize {
        2
    }

    fn sample_root(&self, _rng: &mut dyn RngCore) -> i64 {
        0
    }

    fn neighbors(&self, h: &i64) -> Vec<i64> {
        vec![h - 1, h + 1]
    }

    fn known_total_rank(&self) -> Option<Rational> {
        Some(Rational::one())
    }
}

/// The integer lattice of the given dimension.
#[derive(Debug, Clone)]
pub struct Lattice {
    dim: u32,
}

impl Lattice {
    pub fn new(dim: u32) -> Result<Self, Error> {
        if dim == 0 {
            return Err(Error::usage("lattice dimension must be positive"));
        }
        Ok(Lattice { dim })
    }
}

impl LocalOracle for Lattice {
    type Handle = Vec<i64>;

    fn degree_bound(&self) -> usize {
        2 * self.dim as usize
    }

    fn sample_root(&self, _rng: &mut dyn RngCore) -> Vec<i64> {
        vec![0; self.dim as usize]
    }

    fn neighbors(&self, h: &Vec<i64>) -> Vec<Vec<i64>> {
        let mut out = Vec::with_capacity(2 * self.dim as usize);
        for axis in 0..self.dim as usize {
            for delta in [-1, 1] {
                let mut next = h.clone();
                next[axis] += delta;
                out.push(next);
            }
        }
        out
    }

    fn known_total_rank(&self) -> Option<Rational> {
        Some(Rational::one())
    }
}

fn color_word_neighbors(word: &[u8], colors: impl Iterator<Item = u8>) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    for c in colors {
        if word.last() == Some(&c) {
            out.push(word[..word.len() - 1].to_vec());
        } else {
            let mut next = word.to_vec();
            next.push(c);
            out.push(next);
        }
    }
    out
}

/// The infinite `degree`-regular tree.
#[derive(Debug, Clone)]
pub struct RegularTree {
    degree: u8,
}

impl RegularTree {
    pub fn new(degree: u32) -> Result<Self, Error> {
        if !(2..=255).contains(&degree) {
            return Err(Error::usage("regular tree needs degree between 2 and 255"));
        }
        Ok(RegularTree {
            degree: degree as u8,
        })
    }
}

impl LocalOracle for RegularTree {
    type Handle = Vec<u8>;

    fn degree_bound(&self) -> usize {
        self.degree as usize
    }

    fn sample_root(&self, _rng: &mut dyn RngCore) -> Vec<u8> {
        Vec::new()
    }

    fn neighbors(&self, h: &Vec<u8>) -> Vec<Vec<u8>> {
        color_word_neighbors(h, 1..=self.degree)
    }

    fn known_total_rank(&self) -> Option<Rational> {
        Some(Rational::one())
    }
}

/// The subgraph of the `degree`-regular tree spanned by a set of edge
/// colors. With `c` colors every vertex keeps exactly `c` incident edges.
#[derive(Debug, Clone)]
pub struct ColoredTreeSubgraph {
    degree: u8,
    colors: BTreeSet<u8>,
}

impl ColoredTreeSubgraph {
    pub fn new(degree: u32, colors: impl IntoIterator<Item = u8>) -> Result<Self, Error> {
        if !(2..=255).contains(&degree) {
            return Err(Error::usage("tree degree must be between 2 and 255"));
        }
        let colors: BTreeSet<u8> = colors.into_iter().collect();
        if let Some(&bad) = colors.iter().find(|&&c| c == 0 || c as u32 > degree) {
            return Err(Error::usage(format!(
                "color {bad} outside 1..={degree}"
            )));
        }
        Ok(ColoredTreeSubgraph {
            degree: degree as u8,
            colors,
        })
    }

    pub fn ambient_degree(&self) -> u32 {
        self.degree as u32
    }

    pub fn color_count(&self) -> usize {
        self.colors.len()
    }
}

impl LocalOracle for ColoredTreeSubgraph {
    type Handle = Vec<u8>;

    fn degree_bound(&self) -> usize {
        self.colors.len()
    }

    fn sample_root(&self, _rng: &mut dyn RngCore) -> Vec<u8> {
        Vec::new()
    }

    fn neighbors(&self, h: &Vec<u8>) -> Vec<Vec<u8>> {
        color_word_neighbors(h, self.colors.iter().copied())
    }

    /// Zero colors leave isolated nodes, one color leaves disjoint edges,
    /// two or more colors leave infinite components.
    fn known_total_rank(&self) -> Option<Rational> {
        Some(match self.colors.len() {
            0 => Rational::zero(),
            1 => ratio::ratio(1, 2),
            _ => Rational::one(),
        })
    }
}

/// Uniform-root local access to one finite graph.
#[derive(Debug, Clone)]
pub struct FiniteGraphOracle {
    graph: FiniteGraph,
    total_rank: Rational,
}

impl FiniteGraphOracle {
    pub fn new(graph: FiniteGraph) -> Self {
        let total_rank = graph::total_rank_exact(&graph);
        FiniteGraphOracle { graph, total_rank }
    }

    pub fn graph(&self) -> &FiniteGraph {
        &self.graph
    }

    /// Every node handle, for exact expectations over the root choice.
    pub fn handles(&self) -> impl Iterator<Item = u32> {
        0..self.graph.node_count()
    }
}

impl LocalOracle for FiniteGraphOracle {
    type Handle = u32;

    fn degree_bound(&self) -> usize {
        self.graph.degree_bound() as usize
    }

    fn sample_root(&self, rng: &mut dyn RngCore) -> u32 {
        rng.gen_range(0..self.graph.node_count())
    }

    fn neighbors(&self, h: &u32) -> Vec<u32> {
        self.graph.adjacency(*h).iter().map(|&(v, _)| v).collect()
    }

    fn known_total_rank(&self) -> Option<Rational> {
        Some(self.total_rank.clone())
    }
}

/// One shape in a [`ComponentMixture`].
#[derive(Debug, Clone)]
pub struct MixtureComponent {
    pub graph: FiniteGraph,
    pub probability: Rational,
}

/// A graph whose components are drawn from finite connected templates.
///
/// `probability` is the chance that a uniformly random node lies in a
/// component of the given shape; sampling picks a template accordingly and
/// then a uniform node inside it.
#[derive(Debug, Clone)]
pub struct ComponentMixture {
    components: Vec<MixtureComponent>,
    cumulative: Vec<Rational>,
    degree_bound: usize,
}

impl ComponentMixture {
    pub fn new(components: Vec<MixtureComponent>) -> Result<Self, Error> {
        if components.is_empty() {
            return Err(Error::usage("mixture needs at least one component"));
        }
        let mut cumulative = Vec::with_capacity(components.len());
        let mut acc = Rational::zero();
        for c in &components {
            if c.probability <= Rational::zero() {
                return Err(Error::usage("mixture probabilities must be positive"));
            }
            let full = EdgeSet::full(&c.graph);
            if graph::component_count(&c.graph, &full).expect("own set") != 1 {
                return Err(Error::usage("mixture templates must be connected"));
            }
            acc += &c.probability;
            cumulative.push(acc.clone());
        }
        if !acc.is_one() {
            return Err(Error::usage(format!(
                "mixture probabilities must sum to 1, got {}",
                ratio::format(&acc)
            )));
        }
        let degree_bound = components
            .iter()
            .map(|c| c.graph.degree_bound() as usize)
            .max()
            .unwrap_or(0);
        Ok(ComponentMixture {
            components,
            cumulative,
            degree_bound,
        })
    }

    pub fn components(&self) -> &[MixtureComponent] {
        &self.components
    }
}

impl LocalOracle for ComponentMixture {
    type Handle = (u32, u32);

    fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    fn sample_root(&self, rng: &mut dyn RngCore) -> (u32, u32) {
        // Exact inverse-CDF draw: compare u/2^64 against the cumulative
        // template probabilities.
        let u = rng.next_u64();
        let point = Rational::new(BigInt::from(u), BigInt::one() << 64u32);
        let template = self
            .cumulative
            .iter()
            .position(|c| point < *c)
            .expect("cumulative ends at 1 > u/2^64");
        let node = rng.gen_range(0..self.components[template].graph.node_count());
        (template as u32, node)
    }

    fn neighbors(&self, &(t, v): &(u32, u32)) -> Vec<(u32, u32)> {
        self.components[t as usize]
            .graph
            .adjacency(v)
            .iter()
            .map(|&(w, _)| (t, w))
            .collect()
    }

    /// One minus the probability-weighted reciprocal template sizes.
    fn known_total_rank(&self) -> Option<Rational> {
        let mut acc = Rational::zero();
        for c in &self.components {
            acc += &c.probability
                / Rational::from_integer(c.graph.node_count().into());
        }
        Some(Rational::one() - acc)
    }
}

/// Parsed family selector, as accepted on the command line.
///
/// Grammar: `path`, `cycle[:n]`, `grid:d[:side]`, `tree:D`,
/// `ctree:D:colors` (colors `a-b` or a comma list), `triangles[:count]`,
/// `mixture:name@prob,...`, `file:path`. Families with an optional
/// parameter left out are size ranges for convergence tables and must be
/// sized before estimation.
#[derive(Debug, Clone)]
pub enum FamilySpec {
    Path,
    Cycle(Option<u64>),
    Grid { dim: u32, side: Option<u64> },
    Tree { degree: u32 },
    ColoredTree { degree: u32, colors: Vec<u8> },
    Triangles(Option<u64>),
    Mixture(Vec<(FiniteGraph, Rational)>),
    File(PathBuf),
}

/// Builds a named template graph: `triangle`, `edge`, `node`, or a sized
/// name like `cycle5`, `path4`, `complete4`.
pub fn parse_template(name: &str) -> Result<FiniteGraph, Error> {
    let sized = |rest: &str, what: &str| -> Result<u32, Error> {
        rest.parse()
            .map_err(|_| Error::parse(format!("bad {what} size in template {name:?}")))
    };
    match name {
        "triangle" => Ok(FiniteGraph::cycle(3)),
        "edge" => Ok(FiniteGraph::complete(2)),
        "node" => Ok(FiniteGraph::new(1, vec![]).expect("single node")),
        _ => {
            if let Some(rest) = name.strip_prefix("cycle") {
                let n = sized(rest, "cycle")?;
                if n < 3 {
                    return Err(Error::parse("cycle template needs at least 3 nodes"));
                }
                Ok(FiniteGraph::cycle(n))
            } else if let Some(rest) = name.strip_prefix("path") {
                let n = sized(rest, "path")?;
                if n < 1 {
                    return Err(Error::parse("path template needs at least 1 node"));
                }
                Ok(FiniteGraph::path(n))
            } else if let Some(rest) = name.strip_prefix("complete") {
                let n = sized(rest, "complete")?;
                if n < 1 {
                    return Err(Error::parse("complete template needs at least 1 node"));
                }
                Ok(FiniteGraph::complete(n))
            } else {
                Err(Error::parse(format!("unknown template {name:?}")))
            }
        }
    }
}

fn parse_colors(spec: &str, degree: u32) -> Result<Vec<u8>, Error> {
    let mut colors = BTreeSet::new();
    let mut push = |c: u32| -> Result<(), Error> {
        if c == 0 || c > degree {
            return Err(Error::parse(format!("color {c} outside 1..={degree}")));
        }
        colors.insert(c as u8);
        Ok(())
    };
    for part in spec.split(',') {
        if let Some((a, b)) = part.split_once('-') {
            let a: u32 = a
                .parse()
                .map_err(|_| Error::parse(format!("bad color {a:?}")))?;
            let b: u32 = b
                .parse()
                .map_err(|_| Error::parse(format!("bad color {b:?}")))?;
            if a > b {
                return Err(Error::parse(format!("empty color range {part:?}")));
            }
            for c in a..=b {
                push(c)?;
            }
        } else {
            let c: u32 = part
                .trim()
                .parse()
                .map_err(|_| Error::parse(format!("bad color {part:?}")))?;
            push(c)?;
        }
    }
    if colors.is_empty() {
        return Err(Error::parse("color set must be nonempty"));
    }
    Ok(colors.into_iter().collect())
}

impl FamilySpec {
    pub fn parse(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let (head, rest) = match s.split_once(':') {
            Some((h, r)) => (h, Some(r)),
            None => (s, None),
        };
        let parse_u64 = |v: &str, what: &str| -> Result<u64, Error> {
            v.parse()
                .map_err(|_| Error::parse(format!("bad {what} {v:?} in family {s:?}")))
        };
        match (head, rest) {
            ("path", None) => Ok(FamilySpec::Path),
            ("cycle", None) => Ok(FamilySpec::Cycle(None)),
            ("cycle", Some(r)) => Ok(FamilySpec::Cycle(Some(parse_u64(r, "size")?))),
            ("grid", Some(r)) => {
                let (d, side) = match r.split_once(':') {
                    Some((d, n)) => (d, Some(parse_u64(n, "side")?)),
                    None => (r, None),
                };
                let dim = d
                    .parse()
                    .map_err(|_| Error::parse(format!("bad dimension {d:?}")))?;
                Ok(FamilySpec::Grid { dim, side })
            }
            ("tree", Some(r)) => Ok(FamilySpec::Tree {
                degree: parse_u64(r, "degree")? as u32,
            }),
            ("ctree", Some(r)) => {
                let (d, colors) = r
                    .split_once(':')
                    .ok_or_else(|| Error::parse("ctree needs degree and colors"))?;
                let degree = parse_u64(d, "degree")? as u32;
                Ok(FamilySpec::ColoredTree {
                    degree,
                    colors: parse_colors(colors, degree)?,
                })
            }
            ("triangles", None) => Ok(FamilySpec::Triangles(None)),
            ("triangles", Some(r)) => Ok(FamilySpec::Triangles(Some(parse_u64(r, "count")?))),
            ("mixture", Some(r)) => {
                let mut components = Vec::new();
                for part in r.split(',') {
                    let (name, prob) = part.split_once('@').ok_or_else(|| {
                        Error::parse(format!("mixture component {part:?} needs name@prob"))
                    })?;
                    components.push((parse_template(name.trim())?, ratio::parse(prob)?));
                }
                Ok(FamilySpec::Mixture(components))
            }
            ("file", Some(r)) => Ok(FamilySpec::File(PathBuf::from(r))),
            _ => Err(Error::parse(format!("unknown family {s:?}"))),
        }
    }

    /// True when the family still needs a size before it can be sampled.
    /// An unsized grid is the infinite lattice and unsized triangles are
    /// an all-triangle mixture, so only the cycle range is left abstract.
    pub fn needs_size(&self) -> bool {
        matches!(self, FamilySpec::Cycle(None))
    }

    /// Fixes the size parameter of a range family: node count for cycles,
    /// side length for grids, triangle count for the triangle family.
    pub fn with_size(&self, size: u64) -> Result<FamilySpec, Error> {
        match self {
            FamilySpec::Cycle(_) => Ok(FamilySpec::Cycle(Some(size))),
            FamilySpec::Grid { dim, .. } => Ok(FamilySpec::Grid {
                dim: *dim,
                side: Some(size),
            }),
            FamilySpec::Triangles(_) => Ok(FamilySpec::Triangles(Some(size))),
            _ => Err(Error::usage("family does not take a size range")),
        }
    }
}
