//! Command line front end for the rank library: exact ranks, seeded
//! estimates, convergence tables, randomized property sweeps, minorizing
//! measures and the tree non-additivity experiment.
//!
//! Output is machine readable: one JSON object per run, or CSV where a
//! table is the natural shape. Rationals print as "p/q" and floats with
//! twelve significant digits, so identical invocations produce identical
//! bytes. Exit codes: 0 clean, 1 a checked property was violated, 2 bad
//! usage, 3 I/O failure.

use clap::{Parser, Subcommand, ValueEnum};
use cyclerank::estimator::{self, EstimateMode};
use cyclerank::families::FamilySpec;
use cyclerank::generate;
use cyclerank::graph::{self, EdgeSet, SubmodularConfig};
use cyclerank::graphing::{self, WeightedGraphing};
use cyclerank::io;
use cyclerank::minorize::{self, ChainOrder, MinorizeConfig};
use cyclerank::partition::{self, PartitionJson};
use cyclerank::ratio::{self, Rational};
use cyclerank::stream;
use cyclerank::Error;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

#[derive(Parser)]
#[command(name = "cyclerank", version, about = "Normalized cycle-matroid rank toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact normalized rank of a graph or one of its edge subsets.
    Rank {
        /// Edge list file, one "a b" pair per line, optional "n COUNT" header.
        #[arg(long)]
        input: PathBuf,
        /// File of edge indices restricting the rank to a subset.
        #[arg(long)]
        subset: Option<PathBuf>,
    },
    /// Seeded sublinear estimate of the total rank of a family.
    Estimate {
        /// Family spec, e.g. cycle:1000, tree:5, mixture:triangle@0.5,edge@0.5.
        #[arg(long)]
        family: String,
        #[arg(long)]
        epsilon: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Exploration rule: radius ball or vertex cap.
        #[arg(long, default_value_t = ModeArg::Cap)]
        mode: ModeArg,
    },
    /// Estimate a sized family along a size ramp and tabulate the error.
    Converge {
        #[arg(long)]
        family: String,
        /// Comma separated sizes, e.g. 10,100,1000.
        #[arg(long)]
        sizes: String,
        #[arg(long)]
        epsilon: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Randomized sweeps over the library's exact inequalities.
    Check {
        what: CheckKind,
        #[arg(long)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Node count for graph checks, point count for partition checks.
        #[arg(long)]
        nodes: Option<u32>,
    },
    /// Builds a minorizing measure for a graph and verifies it.
    Minorize {
        #[arg(long)]
        input: PathBuf,
        /// Chain order: the file's edge order, or a seeded shuffle.
        #[arg(long, default_value_t = OrderArg::Given)]
        order: OrderArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Weight a maximal forest instead of walking a chain.
        #[arg(long)]
        forest: bool,
    },
    /// Standalone experiments.
    Experiment {
        #[command(subcommand)]
        which: Experiment,
    },
}

#[derive(Subcommand)]
enum Experiment {
    /// Rank is not additive under edge splits: estimate both color halves
    /// of a (2r-1)-regular tree and compare their sum against 2 - 2/r.
    Nonadd {
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        epsilon: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    /// Rank submodularity and monotonicity over subset pairs.
    Submodular,
    /// Reciprocal-class-size supermodularity over partition triples.
    Supermod,
    /// The degree-measure sandwich around the normalized rank.
    Sandwich,
    /// Stability of the re-randomizing property under splits and joins.
    Rerand,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Radius,
    Cap,
}

impl std::fmt::Display for ModeArg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ModeArg::Radius => "radius",
            ModeArg::Cap => "cap",
        })
    }
}

impl From<ModeArg> for EstimateMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Radius => EstimateMode::Radius,
            ModeArg::Cap => EstimateMode::VertexCap,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Given,
    Random,
}

impl std::fmt::Display for OrderArg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            OrderArg::Given => "given",
            OrderArg::Random => "random",
        })
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Io(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

/// Twelve significant digits, plain notation in the everyday range.
fn fmt_f64(x: f64) -> String {
    if x == 0.0 {
        return "0.0".to_string();
    }
    let mag = x.abs().log10().floor() as i32;
    if !(-9..15).contains(&mag) {
        return format!("{x:.11e}");
    }
    let prec = (11 - mag).max(0) as usize;
    format!("{x:.prec$}")
}

/// Flat JSON assembly with full control over number formatting.
struct Json {
    buf: String,
    first: bool,
}

impl Json {
    fn new() -> Self {
        Json {
            buf: String::from("{"),
            first: true,
        }
    }

    fn key(&mut self, k: &str) {
        if !self.first {
            self.buf.push(',');
        }
        self.first = false;
        self.buf.push_str(&serde_json::to_string(k).expect("string"));
        self.buf.push(':');
    }

    fn raw(mut self, k: &str, v: &str) -> Self {
        self.key(k);
        self.buf.push_str(v);
        self
    }

    fn str(self, k: &str, v: &str) -> Self {
        let quoted = serde_json::to_string(v).expect("string");
        self.raw(k, &quoted)
    }

    fn rational(self, k: &str, v: &Rational) -> Self {
        let formatted = ratio::format(v);
        self.str(k, &formatted)
    }

    fn float(self, k: &str, v: f64) -> Self {
        let formatted = fmt_f64(v);
        self.raw(k, &formatted)
    }

    fn int(self, k: &str, v: impl Into<i128>) -> Self {
        let literal = v.into().to_string();
        self.raw(k, &literal)
    }

    fn bool(self, k: &str, v: bool) -> Self {
        self.raw(k, if v { "true" } else { "false" })
    }

    fn array(self, k: &str, items: &[String]) -> Self {
        let joined = format!("[{}]", items.join(","));
        self.raw(k, &joined)
    }

    fn finish(mut self) -> String {
        self.buf.push('}');
        self.buf
    }
}

fn edge_id_array(edges: &[u32]) -> String {
    let items: Vec<String> = edges.iter().map(|e| e.to_string()).collect();
    format!("[{}]", items.join(","))
}

fn run(command: Command) -> Result<bool, Error> {
    match command {
        Command::Rank { input, subset } => {
            let g = io::load_graph(&input)?;
            let x = match subset {
                Some(path) => io::load_edge_set(&path, &g)?,
                None => EdgeSet::full(&g),
            };
            let out = Json::new()
                .rational("rho", &graph::normalized_rank(&g, &x)?)
                .int("rank", graph::rank(&g, &x)?)
                .int("components", graph::component_count(&g, &x)?)
                .finish();
            println!("{out}");
            Ok(false)
        }
        Command::Estimate {
            family,
            epsilon,
            seed,
            mode,
        } => {
            let spec = FamilySpec::parse(&family)?;
            let plan = estimator::plan(epsilon)?.with_mode(mode.into());
            let run = estimator::estimate_for_spec(&spec, &plan, seed)?;
            let mut out = Json::new()
                .str("family", &family)
                .float("epsilon", epsilon)
                .int("k", run.estimate.plan.k as u64)
                .int("samples", run.estimate.plan.samples as u64)
                .str("mode", &run.estimate.plan.mode.to_string())
                .int("seed", seed)
                .float("estimate", run.estimate.value)
                .float("inverse_size_mean", run.estimate.inverse_size_mean)
                .int("queries", run.estimate.queries);
            if let Some(exact) = &run.exact {
                out = out.rational("exact", exact);
            }
            println!("{}", out.finish());
            Ok(false)
        }
        Command::Converge {
            family,
            sizes,
            epsilon,
            seed,
        } => {
            let spec = FamilySpec::parse(&family)?;
            let sizes: Vec<u64> = sizes
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse()
                        .map_err(|_| Error::usage(format!("bad size {s:?}")))
                })
                .collect::<Result<_, _>>()?;
            if sizes.is_empty() {
                return Err(Error::usage("at least one size is required"));
            }
            let plan = estimator::plan(epsilon)?;
            let rows = estimator::convergence_table(&spec, &sizes, &plan, seed)?;
            println!("size,exact,estimate,abs_error,queries");
            for row in rows {
                println!(
                    "{},{},{},{},{}",
                    row.size,
                    ratio::format(&row.exact),
                    fmt_f64(row.estimate),
                    fmt_f64(row.abs_error),
                    row.queries
                );
            }
            Ok(false)
        }
        Command::Check {
            what,
            trials,
            seed,
            nodes,
        } => check(what, trials, seed, nodes),
        Command::Minorize {
            input,
            order,
            seed,
            forest,
        } => {
            let g = io::load_graph(&input)?;
            let (measure, order_ids) = if forest {
                let f = graph::spanning_forest(&g);
                (minorize::forest_minorizer(&g, &f)?, f.indices())
            } else {
                let chain = match order {
                    OrderArg::Given => ChainOrder::identity(g.edge_count()),
                    OrderArg::Random => {
                        ChainOrder::random(g.edge_count(), &mut stream::child_rng(seed, 0))
                    }
                };
                let ids = chain.as_slice().to_vec();
                (minorize::greedy_minorizer(&g, &chain)?, ids)
            };
            let config = MinorizeConfig {
                seed,
                ..MinorizeConfig::default()
            };
            let report = minorize::verify_minorizing(&g, &measure, &config)?;
            let weights: Vec<String> = measure
                .weights()
                .iter()
                .map(|w| serde_json::to_string(&ratio::format(w)).expect("string"))
                .collect();
            let violations: Vec<String> = report
                .violations
                .iter()
                .take(10)
                .map(|v| {
                    Json::new()
                        .raw("edges", &edge_id_array(&v.edges))
                        .rational("mass", &v.mass)
                        .rational("rho", &v.rho)
                        .finish()
                })
                .collect();
            let out = Json::new()
                .str("order", &if forest { "forest".to_string() } else { order.to_string() })
                .raw("chain", &edge_id_array(&order_ids))
                .array("weights", &weights)
                .rational("total", &report.total)
                .rational("rho_total", &report.rho_total)
                .bool("base_exact", report.base_exact)
                .bool("exhaustive", report.exhaustive)
                .int("subsets_checked", report.subsets_checked)
                .int("violation_count", report.violations.len() as u64)
                .array("violations", &violations)
                .bool("minorizing", report.is_minorizing())
                .finish();
            println!("{out}");
            Ok(!report.is_minorizing())
        }
        Command::Experiment {
            which:
                Experiment::Nonadd {
                    degree,
                    r,
                    epsilon,
                    seed,
                },
        } => {
            let plan = estimator::plan(epsilon)?;
            let report = estimator::nonadditivity_experiment(degree, r, &plan, seed)?;
            let out = Json::new()
                .int("degree", report.degree)
                .int("r", report.split)
                .float("epsilon", epsilon)
                .int("seed", seed)
                .float("rho_low_colors", report.lower_estimate)
                .float("rho_high_colors", report.upper_estimate)
                .float("sum", report.sum)
                .float("lower_bound", report.lower_bound)
                .bool("bound_satisfied", report.bound_satisfied)
                .float("full_tree", report.full_tree_estimate)
                .finish();
            println!("{out}");
            Ok(!report.bound_satisfied)
        }
    }
}

fn check(what: CheckKind, trials: u64, seed: u64, nodes: Option<u32>) -> Result<bool, Error> {
    match what {
        CheckKind::Submodular => check_submodular(trials, seed, nodes.unwrap_or(7)),
        CheckKind::Supermod => check_supermod(trials, seed, nodes.unwrap_or(12)),
        CheckKind::Sandwich => check_sandwich(trials, seed, nodes.unwrap_or(8)),
        CheckKind::Rerand => {
            if nodes.is_some() {
                return Err(Error::usage("rerand sizes its own spaces; drop --nodes"));
            }
            check_rerand(trials, seed)
        }
    }
}

fn check_submodular(trials: u64, seed: u64, nodes: u32) -> Result<bool, Error> {
    if nodes == 0 {
        return Err(Error::usage("--nodes must be positive"));
    }
    let config = SubmodularConfig::default();
    let mut pairs = 0u64;
    let mut violations = Vec::new();
    for trial in 0..trials {
        let mut rng = stream::child_rng(seed, trial);
        let g = generate::random_graph(nodes, 0.5, &mut rng);
        let report = graph::check_submodular(&g, &config);
        pairs += report.pairs_checked;
        for v in report.violations {
            violations.push(
                Json::new()
                    .int("trial", trial)
                    .raw("x", &edge_id_array(&v.x))
                    .raw("y", &edge_id_array(&v.y))
                    .str("kind", &format!("{:?}", v.kind))
                    .rational("lhs", &v.lhs)
                    .rational("rhs", &v.rhs)
                    .finish(),
            );
        }
    }
    let found = !violations.is_empty();
    let out = Json::new()
        .str("check", "submodular")
        .int("trials", trials)
        .int("nodes", nodes)
        .int("seed", seed)
        .int("pairs_checked", pairs)
        .int("violation_count", violations.len() as u64)
        .array("violations", &violations[..violations.len().min(10)])
        .finish();
    println!("{out}");
    Ok(found)
}

fn check_supermod(trials: u64, seed: u64, points: u32) -> Result<bool, Error> {
    if points == 0 {
        return Err(Error::usage("--nodes must be positive"));
    }
    let mut violations = Vec::new();
    for trial in 0..trials {
        let mut rng = stream::child_rng(seed, trial);
        let (p, q, r) = generate::random_uniform_triple(points as usize, 0.3, &mut rng);
        let result = partition::check_supermodular_triple(&p, &q, &r)?;
        let weighted_defects: Rational = (0..r.point_count())
            .map(|x| {
                partition::defect(&p, &q, &r, x).expect("validated triple")
                    * r.space().weight(x)
            })
            .sum();
        if !result.holds || weighted_defects != result.slack {
            violations.push(
                Json::new()
                    .int("trial", trial)
                    .str("p", &partition_json(&p))
                    .str("q", &partition_json(&q))
                    .str("r", &partition_json(&r))
                    .rational("slack", &result.slack)
                    .rational("defect_sum", &weighted_defects)
                    .finish(),
            );
        }
    }
    let found = !violations.is_empty();
    let out = Json::new()
        .str("check", "supermod")
        .int("trials", trials)
        .int("points", points)
        .int("seed", seed)
        .int("violation_count", violations.len() as u64)
        .array("violations", &violations[..violations.len().min(10)])
        .finish();
    println!("{out}");
    Ok(found)
}

fn partition_json(p: &partition::Partition) -> String {
    serde_json::to_string(&PartitionJson::from_partition(p)).expect("serializable")
}

fn check_sandwich(trials: u64, seed: u64, nodes: u32) -> Result<bool, Error> {
    if nodes < 2 {
        return Err(Error::usage("--nodes must be at least 2"));
    }
    let mut violations = Vec::new();
    for trial in 0..trials {
        let mut rng = stream::child_rng(seed, trial);
        let g = loop {
            let g = generate::random_graph(nodes, 0.5, &mut rng);
            if g.edge_count() > 0 {
                break g;
            }
        };
        let weights = generate::component_constant_weights(&g, &mut rng);
        let wg = WeightedGraphing::new(g.clone(), Arc::new(weights))?;
        let x = generate::random_edge_set(&g, 0.5, &mut rng);
        let result = graphing::check_rho_eta_sandwich(&wg, &x)?;
        if !result.holds {
            violations.push(
                Json::new()
                    .int("trial", trial)
                    .raw("x", &edge_id_array(&x.indices()))
                    .rational("lower", &result.lower)
                    .rational("rho", &result.rho)
                    .rational("upper", &result.upper)
                    .finish(),
            );
        }
    }
    let found = !violations.is_empty();
    let out = Json::new()
        .str("check", "sandwich")
        .int("trials", trials)
        .int("nodes", nodes)
        .int("seed", seed)
        .int("violation_count", violations.len() as u64)
        .array("violations", &violations[..violations.len().min(10)])
        .finish();
    println!("{out}");
    Ok(found)
}

fn check_rerand(trials: u64, seed: u64) -> Result<bool, Error> {
    let mut violations = Vec::new();
    for trial in 0..trials {
        let mut rng = stream::child_rng(seed, trial);
        let (p, q) = generate::random_rerand_pair(&mut rng);
        let mut failed = Vec::new();
        if !partition::has_rerandomizing_property(&p) {
            failed.push("p");
        }
        if !partition::has_rerandomizing_property(&q) {
            failed.push("q");
        }
        if let Some(split) = generate::split_random_class(&p, &mut rng) {
            if !partition::has_rerandomizing_property(&split) {
                failed.push("split");
            }
        }
        if !partition::has_rerandomizing_property(&partition::join(&p, &q)?) {
            failed.push("join");
        }
        if !failed.is_empty() {
            violations.push(
                Json::new()
                    .int("trial", trial)
                    .str("failed", &failed.join(","))
                    .str("p", &partition_json(&p))
                    .str("q", &partition_json(&q))
                    .finish(),
            );
        }
    }
    let found = !violations.is_empty();
    let out = Json::new()
        .str("check", "rerand")
        .int("trials", trials)
        .int("seed", seed)
        .int("violation_count", violations.len() as u64)
        .array("violations", &violations[..violations.len().min(10)])
        .finish();
    println!("{out}");
    Ok(found)
}
