//! Command-line interface: solvers, oracles, bound computations, lower
//! bound experiments, and strategy evaluation, with JSON/CSV/DOT artifacts.

use crate::costs::{CostModel, TargetDistribution};
use crate::error::{Error, Result};
use crate::gen;
use crate::graph::Tree;
use crate::line_solver::{
    binary_search_strategy, bs_cost_upper_bound, gamma_strategy, opt_lower_bounds,
    solve_line_bivariate, solve_line_distributional, solve_line_poly, threshold_instance,
    SolveResult,
};
use crate::oracle;
use crate::strategy::{
    convert_to_kcut, simulate, validate_stt, worst_case_cost, AdversaryPolicy, SearchTree,
};
use crate::tree_solver::solve_tree_kcut;
use clap::{Args, Parser, Subcommand};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "distsearch", version, about = "Search with distance-dependent query costs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

/// Instance source: a path graph of a given size, a tree file, or a seeded
/// random tree.
#[derive(Args)]
struct Instance {
    /// Number of vertices (the instance is the path 1..=n, or a random
    /// tree when --seed is given)
    #[arg(long, conflicts_with = "tree")]
    n: Option<usize>,
    /// Tree file (JSON with "n" and "edges")
    #[arg(long)]
    tree: Option<PathBuf>,
    /// Generate a random tree on --n vertices from this seed
    #[arg(long, requires = "n")]
    seed: Option<u64>,
}

impl Instance {
    fn load(&self) -> Result<Tree> {
        match (&self.tree, self.n) {
            (Some(path), None) => Tree::from_json(&read(path)?),
            (None, Some(n)) => Ok(match self.seed {
                Some(seed) => gen::random_tree(&mut gen::rng(seed), n),
                None => Tree::path(n),
            }),
            _ => Err(Error::InvalidInput("give exactly one of --n or --tree".into())),
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve the minimax search problem on a path
    SolveLine {
        /// Number of vertices of the path
        #[arg(long)]
        n: usize,
        /// Cost model (sym:..., asym:a/b, table:..., preset:..., file:...)
        #[arg(long)]
        cost: String,
        /// Target distribution file: solve for expected cost instead of
        /// worst case
        #[arg(long)]
        dist: Option<PathBuf>,
        /// Write the value and strategy as JSON
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the strategy in DOT format
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Solve the minimax search problem on a tree over k-cut strategies
    SolveTree {
        #[command(flatten)]
        instance: Instance,
        #[arg(long)]
        cost: String,
        /// Boundary budget for the strategy (k >= 2)
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Approximation target: sets k = max(3, ceil(2/epsilon))
        #[arg(long, conflicts_with = "k")]
        epsilon: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Brute-force minimax oracle for small instances
    Oracle {
        #[command(flatten)]
        instance: Instance,
        #[arg(long)]
        cost: String,
    },
    /// Evaluate a strategy file: worst-case cost and worst target
    Eval {
        /// Strategy file (JSON)
        #[arg(long)]
        strategy: PathBuf,
        #[command(flatten)]
        instance: Instance,
        #[arg(long)]
        cost: String,
    },
    /// Convert a strategy into a k-cut strategy
    ConvertKcut {
        #[arg(long)]
        strategy: PathBuf,
        #[command(flatten)]
        instance: Instance,
        /// Boundary budget (k >= 3)
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the Binary Search upper bound and the adversary lower bounds
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        cost: String,
    },
    /// Sweep OPT(n)/n over a list of sizes, writing a CSV
    Constant {
        #[arg(long)]
        cost: String,
        /// Comma-separated sizes, e.g. 32,64,128
        #[arg(long, value_delimiter = ',')]
        n_list: Vec<usize>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Run the lower-bound experiments: threshold instances and the gamma
    /// strategy versus Binary Search
    Lowerbound {
        /// Threshold instance sizes (each 2^k - 1)
        #[arg(long, value_delimiter = ',', default_value = "15,31,63")]
        threshold_n: Vec<usize>,
        /// Size for the gamma-strategy experiment with linear cost
        #[arg(long, default_value_t = 4096)]
        gamma_n: usize,
    },
    /// Run a strategy against an adversary and print the transcript
    Simulate {
        #[command(flatten)]
        instance: Instance,
        #[arg(long)]
        cost: String,
        /// Strategy file; defaults to Binary Search on a path
        #[arg(long)]
        strategy: Option<PathBuf>,
        /// Fixed adversary target
        #[arg(long, conflicts_with = "larger_side")]
        target: Option<usize>,
        /// Adversary that always answers toward the larger side (paths)
        #[arg(long)]
        larger_side: bool,
    },
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text)
        .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display())))
}

/// Accepts either a bare strategy or a solver artifact wrapping one.
fn load_strategy(path: &Path) -> Result<SearchTree> {
    let text = read(path)?;
    if let Ok(s) = SearchTree::from_json(&text) {
        return Ok(s);
    }
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let inner = value
        .get("strategy")
        .ok_or_else(|| Error::Parse(format!("{}: no strategy found", path.display())))?;
    SearchTree::from_json(&inner.to_string())
}

fn solve_artifact(r: &SolveResult) -> String {
    serde_json::to_string_pretty(&serde_json::json!({
        "schema_version": SCHEMA_VERSION,
        "value": r.value.to_string(),
        "strategy": serde_json::from_str::<serde_json::Value>(&r.strategy.to_json()).unwrap(),
        "stats": {
            "states_expanded": r.stats.states_expanded,
            "memo_hits": r.stats.memo_hits,
            "runtime_ms": r.stats.runtime_ms as u64,
        },
    }))
    .unwrap()
}

fn strategy_artifact(s: &SearchTree) -> String {
    serde_json::to_string_pretty(&serde_json::json!({
        "schema_version": SCHEMA_VERSION,
        "strategy": serde_json::from_str::<serde_json::Value>(&s.to_json()).unwrap(),
    }))
    .unwrap()
}

fn emit_solution(
    r: &SolveResult,
    out: &Option<PathBuf>,
    dot: &Option<PathBuf>,
) -> Result<()> {
    println!("value: {}", r.value);
    println!("root query: {}", r.strategy.query);
    println!(
        "states: {}, memo hits: {}, runtime: {} ms",
        r.stats.states_expanded, r.stats.memo_hits, r.stats.runtime_ms
    );
    if let Some(path) = out {
        write_file(path, &solve_artifact(r))?;
        println!("wrote {}", path.display());
    }
    if let Some(path) = dot {
        write_file(path, &r.strategy.to_dot())?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.cmd {
        Cmd::SolveLine { n, cost, dist, out, dot } => {
            let c = CostModel::parse_spec(&cost)?;
            if let Some(dist_path) = dist {
                let d = TargetDistribution::from_json(&read(&dist_path)?)?;
                let r = solve_line_distributional(n, &c, &d)?;
                println!("expected value: {}", r.value);
                println!("root query: {}", r.strategy.query);
                if let Some(path) = out {
                    write_file(path.as_path(), &strategy_artifact(&r.strategy))?;
                    println!("wrote {}", path.display());
                }
                if let Some(path) = dot {
                    write_file(path.as_path(), &r.strategy.to_dot())?;
                    println!("wrote {}", path.display());
                }
                return Ok(());
            }
            let r = match &c {
                CostModel::BivariatePoly { .. } => solve_line_bivariate(n, &c)?,
                _ => solve_line_poly(n, &c)?,
            };
            emit_solution(&r, &out, &dot)
        }
        Cmd::SolveTree { instance, cost, k, epsilon, out, dot } => {
            let tree = instance.load()?;
            let c = CostModel::parse_spec(&cost)?;
            let k = match epsilon {
                Some(e) if e > 0.0 => ((2.0 / e).ceil() as usize).max(3),
                Some(e) => {
                    return Err(Error::InvalidInput(format!("epsilon must be positive, got {e}")))
                }
                None => k,
            };
            let r = solve_tree_kcut(&tree, &c, k)?;
            println!("k: {k}");
            emit_solution(&r, &out, &dot)
        }
        Cmd::Oracle { instance, cost } => {
            let tree = instance.load()?;
            let c = CostModel::parse_spec(&cost)?;
            let r = if tree.is_line() && tree.n() <= oracle::LINE_LIMIT {
                let lr = oracle::brute_force_line(tree.n(), &c)?;
                println!("value: {} ({} states)", lr.value, lr.nodes_explored);
                lr
            } else {
                let tr = oracle::brute_force_tree(&tree, &c)?;
                println!("value: {} ({} states)", tr.value, tr.nodes_explored);
                tr
            };
            println!("root query: {}", r.strategy.query);
            Ok(())
        }
        Cmd::Eval { strategy, instance, cost } => {
            let tree = instance.load()?;
            let c = CostModel::parse_spec(&cost)?;
            let s = load_strategy(&strategy)?;
            validate_stt(&tree, &s)?;
            let (value, worst_target) = worst_case_cost(&tree, &c, &s)?;
            println!("worst-case cost: {value}");
            println!("worst target: {worst_target}");
            Ok(())
        }
        Cmd::ConvertKcut { strategy, instance, k, out } => {
            let tree = instance.load()?;
            let s = load_strategy(&strategy)?;
            let converted = convert_to_kcut(&tree, &s, k)?;
            println!("converted to a {k}-cut strategy, root query {}", converted.query);
            if let Some(path) = out {
                write_file(&path, &strategy_artifact(&converted))?;
                println!("wrote {}", path.display());
            }
            Ok(())
        }
        Cmd::Bounds { n, cost } => {
            let c = CostModel::parse_spec(&cost)?;
            c.validate(n)?;
            let ub = bs_cost_upper_bound(n, &c)?;
            let (lb1, lb2, lb3) = opt_lower_bounds(n, &c)?;
            println!("binary search upper bound: {ub}");
            println!("lower bounds: {lb1} {lb2} {lb3}");
            println!("best lower bound: {}", lb1.max(lb2).max(lb3));
            Ok(())
        }
        Cmd::Constant { cost, n_list, csv } => {
            let c = CostModel::parse_spec(&cost)?;
            let mut rows = String::from("n,opt,bs,ratio,opt_over_n,runtime_ms\n");
            for n in n_list {
                let r = solve_line_poly(n, &c)?;
                let tree = Tree::path(n);
                let bs = worst_case_cost(&tree, &c, &binary_search_strategy(n)?)?.0;
                let line = format!(
                    "{n},{},{bs},{:.4},{:.4},{}\n",
                    r.value,
                    bs as f64 / r.value as f64,
                    r.value as f64 / n as f64,
                    r.stats.runtime_ms
                );
                print!("{line}");
                rows.push_str(&line);
            }
            if let Some(path) = csv {
                write_file(&path, &rows)?;
                println!("wrote {}", path.display());
            }
            Ok(())
        }
        Cmd::Lowerbound { threshold_n, gamma_n } => {
            for n in threshold_n {
                let (c, s) = threshold_instance(n)?;
                let tree = Tree::path(n);
                let opt = worst_case_cost(&tree, &c, &s)?.0;
                let bs = worst_case_cost(&tree, &c, &binary_search_strategy(n)?)?.0;
                println!("threshold n={n}: strategy {opt}, binary search {bs}");
            }
            let c = CostModel::SymmetricPoly { coeffs: vec![0, 1] };
            let tree = Tree::path(gamma_n);
            let g = worst_case_cost(&tree, &c, &gamma_strategy(gamma_n)?)?.0;
            let bs = worst_case_cost(&tree, &c, &binary_search_strategy(gamma_n)?)?.0;
            println!(
                "gamma n={gamma_n}: gamma {g}, binary search {bs}, ratio {:.4}",
                bs as f64 / g as f64
            );
            Ok(())
        }
        Cmd::Simulate { instance, cost, strategy, target, larger_side } => {
            let tree = instance.load()?;
            let c = CostModel::parse_spec(&cost)?;
            let s = match strategy {
                Some(path) => load_strategy(&path)?,
                None => {
                    if !tree.is_line() {
                        return Err(Error::InvalidInput(
                            "give --strategy for non-path instances".into(),
                        ));
                    }
                    binary_search_strategy(tree.n())?
                }
            };
            let policy = match (target, larger_side) {
                (Some(t), false) => AdversaryPolicy::FixedTarget(t),
                (None, true) => AdversaryPolicy::LargerSide,
                _ => {
                    return Err(Error::InvalidInput(
                        "give exactly one of --target or --larger-side".into(),
                    ))
                }
            };
            let tr = simulate(&tree, &c, &s, policy)?;
            for (i, (q, resp)) in tr.queries.iter().zip(&tr.responses).enumerate() {
                println!("query {}: {q} -> {resp:?}", i + 1);
            }
            println!("target: {}", tr.target);
            println!("total cost: {}", tr.total_cost);
            Ok(())
        }
    }
}

/// Entry point used by the binary; maps errors to the documented exit
/// codes (0 ok, 2 input error, 3 size-limit refusal).
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
