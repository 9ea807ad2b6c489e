//! Weighted point spaces and flagged partitions.
//!
//! A [`WeightedSpace`] is a finite probability space with exact rational
//! weights. A [`Partition`] splits its points into classes, any of which
//! may be flagged as standing in for an infinite class: flagged classes
//! contribute nothing to the class-size functional [`psi`] and are held
//! fixed by re-randomization.
//!
//! `psi(P)` is the expected reciprocal class size, the quantity that turns
//! component partitions into normalized rank. Its supermodularity over a
//! common refinement, checked exactly by [`check_supermodular_triple`], is
//! what makes rank submodular.

use crate::error::Error;
use crate::ratio::{self, Rational};
use crate::unionfind::UnionFind;
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::sync::Arc;

/// Finite probability space: positive point count, nonnegative exact
/// weights summing to one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedSpace {
    weights: Vec<Rational>,
}

impl WeightedSpace {
    pub fn new(weights: Vec<Rational>) -> Result<Self, Error> {
        if weights.is_empty() {
            return Err(Error::usage("space needs at least one point"));
        }
        if weights.iter().any(|w| w.is_negative()) {
            return Err(Error::usage("weights must be nonnegative"));
        }
        let total: Rational = weights.iter().sum();
        if !total.is_one() {
            return Err(Error::usage(format!(
                "weights must sum to 1, got {}",
                ratio::format(&total)
            )));
        }
        Ok(WeightedSpace { weights })
    }

    pub fn uniform(n: usize) -> Self {
        assert!(n >= 1);
        WeightedSpace {
            weights: vec![Rational::new(1.into(), (n as u64).into()); n],
        }
    }

    pub fn point_count(&self) -> usize {
        self.weights.len()
    }

    pub fn weight(&self, x: usize) -> &Rational {
        &self.weights[x]
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }
}

/// Partition of a weighted space with optional infinite-class flags.
///
/// Class ids are canonical: numbered by first appearance in point order.
#[derive(Debug, Clone)]
pub struct Partition {
    space: Arc<WeightedSpace>,
    class_of: Vec<u32>,
    class_sizes: Vec<u64>,
    infinite: BTreeSet<u32>,
}

impl Partition {
    /// Builds a partition from explicit classes, which must be nonempty,
    /// disjoint, and cover the space. `infinite` lists flagged class ids
    /// (positions in `classes`).
    pub fn new(
        space: Arc<WeightedSpace>,
        classes: Vec<Vec<u32>>,
        infinite: impl IntoIterator<Item = u32>,
    ) -> Result<Self, Error> {
        let n = space.point_count();
        let mut class_of = vec![u32::MAX; n];
        for (id, class) in classes.iter().enumerate() {
            if class.is_empty() {
                return Err(Error::usage("empty class in partition"));
            }
            for &x in class {
                if x as usize >= n {
                    return Err(Error::usage(format!("point {x} out of range")));
                }
                if class_of[x as usize] != u32::MAX {
                    return Err(Error::usage(format!("point {x} listed twice")));
                }
                class_of[x as usize] = id as u32;
            }
        }
        if class_of.contains(&u32::MAX) {
            return Err(Error::usage("classes do not cover the space"));
        }
        let flagged: BTreeSet<u32> = infinite.into_iter().collect();
        if let Some(&bad) = flagged.iter().find(|&&c| c as usize >= classes.len()) {
            return Err(Error::usage(format!("flagged class {bad} does not exist")));
        }
        Self::from_raw(space, class_of, flagged)
    }

    /// Builds a partition from a per-point class assignment. Class ids are
    /// renumbered canonically; `infinite` refers to the ids as given.
    pub fn from_class_ids(
        space: Arc<WeightedSpace>,
        class_of: Vec<u32>,
        infinite: impl IntoIterator<Item = u32>,
    ) -> Result<Self, Error> {
        if class_of.len() != space.point_count() {
            return Err(Error::usage("class assignment length mismatch"));
        }
        Self::from_raw(space, class_of, infinite.into_iter().collect())
    }

    fn from_raw(
        space: Arc<WeightedSpace>,
        raw: Vec<u32>,
        raw_flags: BTreeSet<u32>,
    ) -> Result<Self, Error> {
        let mut remap: std::collections::HashMap<u32, u32> = std::collections::HashMap::new();
        let mut class_of = Vec::with_capacity(raw.len());
        for &c in &raw {
            let next = remap.len() as u32;
            let id = *remap.entry(c).or_insert(next);
            class_of.push(id);
        }
        let count = remap.len();
        let mut infinite = BTreeSet::new();
        for old in raw_flags {
            match remap.get(&old) {
                Some(&new) => {
                    infinite.insert(new);
                }
                None => return Err(Error::usage(format!("flagged class {old} does not exist"))),
            }
        }
        let mut class_sizes = vec![0u64; count];
        for &c in &class_of {
            class_sizes[c as usize] += 1;
        }
        Ok(Partition {
            space,
            class_of,
            class_sizes,
            infinite,
        })
    }

    /// Every point in its own class.
    pub fn discrete(space: Arc<WeightedSpace>) -> Self {
        let n = space.point_count();
        Self::from_raw(space, (0..n as u32).collect(), BTreeSet::new()).expect("valid")
    }

    /// All points in one class.
    pub fn single(space: Arc<WeightedSpace>) -> Self {
        let n = space.point_count();
        Self::from_raw(space, vec![0; n], BTreeSet::new()).expect("valid")
    }

    pub fn space(&self) -> &Arc<WeightedSpace> {
        &self.space
    }

    pub fn point_count(&self) -> usize {
        self.class_of.len()
    }

    pub fn class_count(&self) -> u32 {
        self.class_sizes.len() as u32
    }

    pub fn class_of(&self, x: usize) -> u32 {
        self.class_of[x]
    }

    pub fn class_size(&self, class: u32) -> u64 {
        self.class_sizes[class as usize]
    }

    pub fn is_flagged(&self, class: u32) -> bool {
        self.infinite.contains(&class)
    }

    pub fn flagged_classes(&self) -> impl Iterator<Item = u32> + '_ {
        self.infinite.iter().copied()
    }

    pub fn has_flags(&self) -> bool {
        !self.infinite.is_empty()
    }

    /// Classes as sorted point lists, in class-id order.
    pub fn classes(&self) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new(); self.class_sizes.len()];
        for (x, &c) in self.class_of.iter().enumerate() {
            out[c as usize].push(x as u32);
        }
        out
    }

    fn same_space(&self, other: &Partition) -> Result<(), Error> {
        if Arc::ptr_eq(&self.space, &other.space) || self.space == other.space {
            Ok(())
        } else {
            Err(Error::usage("partitions live on different spaces"))
        }
    }

    /// Structural equality: same classes and same flags.
    pub fn same_partition(&self, other: &Partition) -> bool {
        self.class_of == other.class_of && self.infinite == other.infinite
    }
}

/// Probability distribution on a space, produced by re-randomization.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    space: Arc<WeightedSpace>,
    probabilities: Vec<Rational>,
}

impl Distribution {
    pub fn probabilities(&self) -> &[Rational] {
        &self.probabilities
    }

    pub fn probability(&self, x: usize) -> &Rational {
        &self.probabilities[x]
    }
}

/// Expected reciprocal class size: each point of an unflagged class `C`
/// contributes `weight / |C|`; flagged classes contribute nothing.
pub fn psi(p: &Partition) -> Rational {
    let mut acc = Rational::zero();
    for (x, &c) in p.class_of.iter().enumerate() {
        if p.is_flagged(c) {
            continue;
        }
        acc += p.space.weight(x) / Rational::from_integer(p.class_size(c).into());
    }
    acc
}

/// Coarsest common coarsening. A joined class is flagged iff it contains a
/// flagged class of either input.
pub fn join(p: &Partition, q: &Partition) -> Result<Partition, Error> {
    p.same_space(q)?;
    let n = p.point_count();
    let mut uf = UnionFind::new(n);
    let mut first_in_class: std::collections::HashMap<(bool, u32), u32> =
        std::collections::HashMap::new();
    for x in 0..n as u32 {
        for key in [(false, p.class_of(x as usize)), (true, q.class_of(x as usize))] {
            match first_in_class.get(&key) {
                Some(&y) => {
                    uf.unite(x, y);
                }
                None => {
                    first_in_class.insert(key, x);
                }
            }
        }
    }
    let labels = uf.labeling();
    let mut flags = BTreeSet::new();
    for (x, &label) in labels.iter().enumerate() {
        if p.is_flagged(p.class_of(x)) || q.is_flagged(q.class_of(x)) {
            flags.insert(label);
        }
    }
    Partition::from_raw(p.space.clone(), labels, flags)
}

/// Finest common refinement: nonempty pairwise intersections of classes.
/// Defined only for unflagged inputs.
pub fn meet(p: &Partition, q: &Partition) -> Result<Partition, Error> {
    p.same_space(q)?;
    if p.has_flags() || q.has_flags() {
        return Err(Error::unsupported(
            "meet of partitions with flagged infinite classes",
        ));
    }
    let n = p.point_count();
    let mut remap: std::collections::HashMap<(u32, u32), u32> = std::collections::HashMap::new();
    let mut class_of = Vec::with_capacity(n);
    for x in 0..n {
        let key = (p.class_of(x), q.class_of(x));
        let next = remap.len() as u32;
        let id = *remap.entry(key).or_insert(next);
        class_of.push(id);
    }
    Partition::from_raw(p.space.clone(), class_of, BTreeSet::new())
}

/// True if every class of `fine` lies inside a class of `coarse` and every
/// flagged class of `fine` lies inside a flagged class of `coarse`.
pub fn refines(fine: &Partition, coarse: &Partition) -> Result<bool, Error> {
    fine.same_space(coarse)?;
    let n = fine.point_count();
    let mut rep: Vec<Option<u32>> = vec![None; fine.class_count() as usize];
    for x in 0..n {
        let c = fine.class_of(x) as usize;
        match rep[c] {
            None => rep[c] = Some(coarse.class_of(x)),
            Some(d) => {
                if d != coarse.class_of(x) {
                    return Ok(false);
                }
            }
        }
    }
    for c in fine.flagged_classes() {
        let d = rep[c as usize].expect("classes are nonempty");
        if !coarse.is_flagged(d) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The law after one re-randomization step: weight is shared equally
/// inside each unflagged class, and left untouched on flagged classes.
pub fn rerandomized_distribution(p: &Partition) -> Distribution {
    let mut class_weight = vec![Rational::zero(); p.class_count() as usize];
    for (x, &c) in p.class_of.iter().enumerate() {
        class_weight[c as usize] += p.space.weight(x);
    }
    let probabilities = p
        .class_of
        .iter()
        .enumerate()
        .map(|(x, &c)| {
            if p.is_flagged(c) {
                p.space.weight(x).clone()
            } else {
                &class_weight[c as usize] / Rational::from_integer(p.class_size(c).into())
            }
        })
        .collect();
    Distribution {
        space: p.space.clone(),
        probabilities,
    }
}

/// Whether re-randomizing inside `p` leaves the law of the space fixed.
///
/// Two equivalent criteria are evaluated: the re-randomized distribution
/// equals the weights, and the weights are constant on every unflagged
/// class. They must agree; the function returns their common value.
pub fn has_rerandomizing_property(p: &Partition) -> bool {
    let by_distribution =
        rerandomized_distribution(p).probabilities() == p.space.weights();
    let mut by_constancy = true;
    'outer: for class in 0..p.class_count() {
        if p.is_flagged(class) {
            continue;
        }
        let mut seen: Option<&Rational> = None;
        for (x, &c) in p.class_of.iter().enumerate() {
            if c != class {
                continue;
            }
            match seen {
                None => seen = Some(p.space.weight(x)),
                Some(w) => {
                    if w != p.space.weight(x) {
                        by_constancy = false;
                        break 'outer;
                    }
                }
            }
        }
    }
    assert_eq!(
        by_distribution, by_constancy,
        "re-randomization criteria must coincide"
    );
    by_distribution
}

/// Integral-vanishing check used by the supermodularity tests.
///
/// Requires `p` re-randomizing, `f` zero on flagged classes, and the sum
/// of `f` zero over every unflagged class; returns whether the weighted
/// sum of `f` over the space vanishes (it always does when the
/// preconditions hold).
pub fn check_rrand_zero_sum(p: &Partition, f: &[Rational]) -> Result<bool, Error> {
    if f.len() != p.point_count() {
        return Err(Error::usage("function length mismatch"));
    }
    if !has_rerandomizing_property(p) {
        return Err(Error::precondition(
            "partition is not re-randomizing for its space",
        ));
    }
    let mut class_sum = vec![Rational::zero(); p.class_count() as usize];
    for (x, &c) in p.class_of.iter().enumerate() {
        if p.is_flagged(c) {
            if !f[x].is_zero() {
                return Err(Error::precondition(
                    "function must vanish on flagged classes",
                ));
            }
        } else {
            class_sum[c as usize] += &f[x];
        }
    }
    for (c, sum) in class_sum.iter().enumerate() {
        if !p.is_flagged(c as u32) && !sum.is_zero() {
            return Err(Error::precondition(format!(
                "function must sum to zero on class {c}"
            )));
        }
    }
    let total: Rational = p
        .class_of
        .iter()
        .enumerate()
        .map(|(x, _)| p.space.weight(x) * &f[x])
        .sum();
    Ok(total.is_zero())
}

/// The four functional values behind one supermodularity check.
#[derive(Debug, Clone)]
pub struct SupermodularCheck {
    pub psi_r: Rational,
    pub psi_join: Rational,
    pub psi_p: Rational,
    pub psi_q: Rational,
    /// `psi(r) + psi(p v q) - psi(p) - psi(q)`; nonnegative when the
    /// inequality holds.
    pub slack: Rational,
    pub holds: bool,
}

fn validate_triple(p: &Partition, q: &Partition, r: &Partition) -> Result<(), Error> {
    if !refines(r, p)? {
        return Err(Error::precondition("r does not refine p"));
    }
    if !refines(r, q)? {
        return Err(Error::precondition("r does not refine q"));
    }
    for (name, part) in [("p", p), ("q", q), ("r", r)] {
        if !has_rerandomizing_property(part) {
            return Err(Error::precondition(format!(
                "{name} is not re-randomizing for its space"
            )));
        }
    }
    Ok(())
}

/// Checks `psi(r) + psi(p v q) >= psi(p) + psi(q)` for a common refinement
/// `r` of `p` and `q`. Precondition failures are errors; an inequality
/// failure comes back as a report with `holds == false`.
pub fn check_supermodular_triple(
    p: &Partition,
    q: &Partition,
    r: &Partition,
) -> Result<SupermodularCheck, Error> {
    validate_triple(p, q, r)?;
    let joined = join(p, q)?;
    let psi_r = psi(r);
    let psi_join = psi(&joined);
    let psi_p = psi(p);
    let psi_q = psi(q);
    let slack = &psi_r + &psi_join - &psi_p - &psi_q;
    let holds = !slack.is_negative();
    Ok(SupermodularCheck {
        psi_r,
        psi_join,
        psi_p,
        psi_q,
        slack,
        holds,
    })
}

fn reciprocal_class_size(p: &Partition, x: usize) -> Rational {
    let c = p.class_of(x);
    if p.is_flagged(c) {
        Rational::zero()
    } else {
        Rational::new(1.into(), p.class_size(c).into())
    }
}

/// Pointwise defect of the supermodularity inequality at `x`:
/// `1/|r_x| + 1/|(p v q)_x| - 1/|p_x| - 1/|q_x|`, with flagged classes
/// counting as infinite. Its weighted sum over the space equals the slack
/// reported by [`check_supermodular_triple`].
pub fn defect(p: &Partition, q: &Partition, r: &Partition, x: usize) -> Result<Rational, Error> {
    validate_triple(p, q, r)?;
    if x >= p.point_count() {
        return Err(Error::usage(format!("point {x} out of range")));
    }
    let joined = join(p, q)?;
    Ok(reciprocal_class_size(r, x) + reciprocal_class_size(&joined, x)
        - reciprocal_class_size(p, x)
        - reciprocal_class_size(q, x))
}

/// Serialized form of a partition together with its space.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PartitionJson {
    pub weights: Vec<String>,
    pub classes: Vec<Vec<u32>>,
    pub infinite: Vec<u32>,
}

impl PartitionJson {
    pub fn from_partition(p: &Partition) -> Self {
        PartitionJson {
            weights: p.space.weights().iter().map(ratio::format).collect(),
            classes: p.classes(),
            infinite: p.flagged_classes().collect(),
        }
    }

    pub fn to_partition(&self) -> Result<Partition, Error> {
        let weights = self
            .weights
            .iter()
            .map(|s| ratio::parse(s))
            .collect::<Result<Vec<_>, _>>()?;
        let space = Arc::new(WeightedSpace::new(weights)?);
        Partition::new(space, self.classes.clone(), self.infinite.iter().copied())
    }
}
