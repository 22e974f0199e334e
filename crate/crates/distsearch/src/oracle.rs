//! Brute-force minimax oracles on small instances. These are deliberately
//! simple (plain memoized recursion, no pruning) so they can serve as
//! ground truth for the solvers.

use crate::costs::{Cost, CostModel, TargetDistribution};
use crate::error::{Error, Result};
use crate::graph::{Tree, VertexSet};
use crate::strategy::SearchTree;
use num::rational::BigRational;
use num::Zero;
use std::collections::HashMap;

/// Default size limit for the line oracle.
pub const LINE_LIMIT: usize = 14;
/// Default size limit for the tree oracle.
pub const TREE_LIMIT: usize = 10;
/// Default size limit for the expected-cost oracle.
pub const EXPECTED_LIMIT: usize = 10;

/// Result of a brute-force minimax search.
#[derive(Debug, Clone)]
pub struct OracleResult {
    pub value: Cost,
    pub strategy: SearchTree,
    pub nodes_explored: u64,
}

/// Result of the brute-force expected-cost search (exact rationals).
#[derive(Debug, Clone)]
pub struct ExpectedOracleResult {
    pub value: BigRational,
    pub strategy: SearchTree,
    pub strategies_enumerated: u64,
}

/// Exact minimax value over all canonical strategies on the path `1..=n`.
pub fn brute_force_line(n: usize, c: &CostModel) -> Result<OracleResult> {
    if n > LINE_LIMIT {
        return Err(Error::SizeLimit(format!(
            "line oracle limited to n <= {LINE_LIMIT}, got {n}"
        )));
    }
    if n == 0 {
        return Err(Error::InvalidInput("empty instance".into()));
    }
    let tree = Tree::path(n);
    let mut memo: HashMap<(usize, usize, u32), (Cost, SearchTree)> = HashMap::new();
    let mut nodes = 0u64;
    let (value, strategy) = line_rec(&tree, c, 0, n + 1, 0, &mut memo, &mut nodes)?;
    Ok(OracleResult { value, strategy, nodes_explored: nodes })
}

fn line_rec(
    tree: &Tree,
    c: &CostModel,
    lo: usize,
    hi: usize,
    queried: u32,
    memo: &mut HashMap<(usize, usize, u32), (Cost, SearchTree)>,
    nodes: &mut u64,
) -> Result<(Cost, SearchTree)> {
    if let Some(hit) = memo.get(&(lo, hi, queried)) {
        return Ok(hit.clone());
    }
    *nodes += 1;
    let hit_cost = |q: usize| -> Result<Cost> {
        let mut sum = 0;
        for v in 1..=tree.n() {
            if queried >> (v - 1) & 1 == 1 {
                sum += c.eval_cost(tree, v, q)?;
            }
        }
        Ok(sum)
    };
    let mut best: Option<(Cost, SearchTree)> = None;
    for q in lo + 1..hi {
        let with_q = queried | 1 << (q - 1);
        let mut worst = hit_cost(q)?;
        let mut children = Vec::new();
        if q > lo + 1 {
            let (v, s) = line_rec(tree, c, lo, q, with_q, memo, nodes)?;
            worst = worst.max(v);
            children.push(s);
        }
        if q < hi - 1 {
            let (v, s) = line_rec(tree, c, q, hi, with_q, memo, nodes)?;
            worst = worst.max(v);
            children.push(s);
        }
        if best.as_ref().is_none_or(|(b, _)| worst < *b) {
            best = Some((worst, SearchTree::node(q, children)));
        }
    }
    let out = best.expect("nonempty interval");
    memo.insert((lo, hi, queried), out.clone());
    Ok(out)
}

/// Exact minimax value over all canonical strategies on an arbitrary tree,
/// for symmetric distance costs.
pub fn brute_force_tree(tree: &Tree, c: &CostModel) -> Result<OracleResult> {
    let n = tree.n();
    if n > TREE_LIMIT {
        return Err(Error::SizeLimit(format!(
            "tree oracle limited to n <= {TREE_LIMIT}, got {n}"
        )));
    }
    if c.line_only() && !tree.is_line() {
        return Err(Error::ModelMismatch(
            "asymmetric and bivariate cost models require the tree to be the line".into(),
        ));
    }
    let mut memo: HashMap<(u32, u32), (Cost, SearchTree)> = HashMap::new();
    let mut nodes = 0u64;
    let full = VertexSet::full(n);
    let (value, strategy) = tree_rec(tree, c, &full, 0, &mut memo, &mut nodes)?;
    Ok(OracleResult { value, strategy, nodes_explored: nodes })
}

fn set_mask(s: &VertexSet) -> u32 {
    s.iter().fold(0, |m, &v| m | 1 << (v - 1))
}

fn tree_rec(
    tree: &Tree,
    c: &CostModel,
    s: &VertexSet,
    queried: u32,
    memo: &mut HashMap<(u32, u32), (Cost, SearchTree)>,
    nodes: &mut u64,
) -> Result<(Cost, SearchTree)> {
    let key = (set_mask(s), queried);
    if let Some(hit) = memo.get(&key) {
        return Ok(hit.clone());
    }
    *nodes += 1;
    let mut best: Option<(Cost, SearchTree)> = None;
    for &q in s.iter() {
        debug_assert!(queried >> (q - 1) & 1 == 0, "canonical strategies stay feasible");
        let mut worst = 0;
        for v in 1..=tree.n() {
            if queried >> (v - 1) & 1 == 1 {
                worst += c.eval_cost(tree, v, q)?;
            }
        }
        let with_q = queried | 1 << (q - 1);
        let mut children = Vec::new();
        for comp in tree.components_after_removal(s, q)? {
            let (v, sub) = tree_rec(tree, c, &comp, with_q, memo, nodes)?;
            worst = worst.max(v);
            children.push(sub);
        }
        if best.as_ref().is_none_or(|(b, _)| worst < *b) {
            best = Some((worst, SearchTree::node(q, children)));
        }
    }
    let out = best.expect("nonempty set");
    memo.insert(key, out.clone());
    Ok(out)
}

/// All canonical strategies for the interval `lo..=hi` of a path.
fn all_interval_strategies(lo: usize, hi: usize) -> Vec<SearchTree> {
    let mut out = Vec::new();
    for q in lo..=hi {
        let lefts = if q > lo { all_interval_strategies(lo, q - 1) } else { Vec::new() };
        let rights = if q < hi { all_interval_strategies(q + 1, hi) } else { Vec::new() };
        match (lefts.is_empty(), rights.is_empty()) {
            (true, true) => out.push(SearchTree::leaf(q)),
            (false, true) => {
                out.extend(lefts.into_iter().map(|l| SearchTree::node(q, vec![l])))
            }
            (true, false) => {
                out.extend(rights.into_iter().map(|r| SearchTree::node(q, vec![r])))
            }
            (false, false) => {
                for l in &lefts {
                    for r in &rights {
                        out.push(SearchTree::node(q, vec![l.clone(), r.clone()]));
                    }
                }
            }
        }
    }
    out
}

/// Minimum expected cost over all canonical line strategies, by full
/// enumeration (independent of any decomposition the solver uses).
pub fn brute_force_expected_line(
    n: usize,
    c: &CostModel,
    d: &TargetDistribution,
) -> Result<ExpectedOracleResult> {
    if n > EXPECTED_LIMIT {
        return Err(Error::SizeLimit(format!(
            "expected-cost oracle limited to n <= {EXPECTED_LIMIT}, got {n}"
        )));
    }
    if d.n() != n {
        return Err(Error::InvalidInput(format!(
            "distribution covers {} vertices, instance has {n}",
            d.n()
        )));
    }
    let tree = Tree::path(n);
    let mut best: Option<(BigRational, SearchTree)> = None;
    let mut count = 0u64;
    for s in all_interval_strategies(1, n) {
        count += 1;
        let mut expected = BigRational::zero();
        for t in 1..=n {
            let cost = crate::strategy::cost_for_target(&tree, c, &s, t)?;
            expected += d.prob(t) * BigRational::from_integer(cost.into());
        }
        if best.as_ref().is_none_or(|(b, _)| expected < *b) {
            best = Some((expected, s));
        }
    }
    let (value, strategy) = best.expect("at least one strategy");
    Ok(ExpectedOracleResult { value, strategy, strategies_enumerated: count })
}
