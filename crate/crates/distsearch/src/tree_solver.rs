//! Exact minimax solver on arbitrary trees, restricted to strategies whose
//! every subtree has at most k boundary vertices.
//!
//! The key compression: once the feasible set shrinks to a connected set S,
//! every past query reaches a target t in S through the boundary vertex of
//! S on its path. Grouping queries by that entry vertex and keeping power
//! sums of their distances to it gives a sketch per interface vertex that
//! fully determines the committed cost of any t in S. With at most k
//! interfaces per state the state space stays manageable.

use crate::costs::{binomial, ipow, Cost, CostModel};
use crate::error::{Error, Result};
use crate::graph::{Tree, VertexSet};
use crate::line_solver::{SolveResult, SolveStats};
use crate::strategy::SearchTree;
use std::collections::HashMap;
use std::time::Instant;

/// Largest instance the k-cut solver accepts.
pub const TREE_N_LIMIT: usize = 40;
/// Largest k the solver accepts.
pub const TREE_K_LIMIT: usize = 4;
/// Largest cost polynomial degree the solver accepts.
pub const TREE_P_LIMIT: usize = 2;

/// Power sums of query distances through one entry vertex of the feasible
/// set: `sigma[m] = sum over queries routed via anchor of d(q, anchor)^m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InterfaceSketch {
    pub anchor: usize,
    pub sigma: Vec<Cost>,
}

/// Re-anchor a sketch a distance `r` further away: if `sigma[m]` is the sum
/// of d(q, v)^m, the result is the sum of (d(q, v) + r)^m.
pub fn shift_sketch(sigma: &[Cost], r: usize) -> Vec<Cost> {
    let mut out = vec![0; sigma.len()];
    for (m, entry) in out.iter_mut().enumerate() {
        for (j, pw) in (0..=m).map(|j| (j, ipow(r as Cost, j))) {
            *entry += binomial(m, j) * pw * sigma[m - j];
        }
    }
    out
}

/// The vertices of the feasible set adjacent to an already eliminated part
/// of the tree. Every sketch anchor is one of these.
pub fn interface_vertices(tree: &Tree, s: &VertexSet) -> Vec<usize> {
    s.iter()
        .copied()
        .filter(|&v| tree.neighbors(v).iter().any(|w| !s.contains(*w)))
        .collect()
}

/// Queries within `s` that keep every resulting component's boundary at
/// most `k`, i.e. the moves available to a k-cut strategy.
pub fn candidate_queries(tree: &Tree, s: &VertexSet, k: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for &q in s.iter() {
        let ok = tree
            .components_after_removal(s, q)?
            .iter()
            .all(|comp| tree.boundary(comp).len() <= k);
        if ok {
            out.push(q);
        }
    }
    Ok(out)
}

/// Sketches for the component `comp` entered after query `q` is answered
/// "target lies in comp". Interfaces already anchored inside `comp` carry
/// over; every other interface, and `q` itself, now routes through the
/// unique neighbor of `q` inside `comp` and is folded into one sketch there.
pub fn merge_into_new_interface(
    tree: &Tree,
    q: usize,
    comp: &VertexSet,
    interfaces: &[InterfaceSketch],
    p: usize,
) -> Result<Vec<InterfaceSketch>> {
    let entry = *tree
        .neighbors(q)
        .iter()
        .find(|&&v| comp.contains(v))
        .ok_or_else(|| Error::InvalidInput(format!("vertex {q} is not adjacent to the component")))?;
    let mut merged: Vec<Cost> = (0..=p).map(|m| ipow(1, m)).collect(); // q itself, at distance 1
    let mut out = Vec::new();
    for itf in interfaces {
        if comp.contains(itf.anchor) && itf.anchor != entry {
            out.push(itf.clone());
        } else {
            let r = tree.distance(itf.anchor, entry)?;
            for (m, v) in shift_sketch(&itf.sigma, r).into_iter().enumerate() {
                merged[m] += v;
            }
        }
    }
    out.push(InterfaceSketch { anchor: entry, sigma: merged });
    out.sort_by_key(|itf| itf.anchor);
    Ok(out)
}

type TreeKey = (Vec<usize>, Vec<InterfaceSketch>);

struct KcutSolver<'a> {
    tree: &'a Tree,
    coeffs: Vec<Cost>,
    k: usize,
    memo: HashMap<TreeKey, Option<(Cost, usize)>>,
    states: u64,
    hits: u64,
}

impl KcutSolver<'_> {
    /// Committed cost revealed when the target turns out to be `t`: shift
    /// every sketch to `t` and evaluate the cost polynomial on it.
    fn hit_cost(&self, interfaces: &[InterfaceSketch], t: usize) -> Result<Cost> {
        let mut total = 0;
        for itf in interfaces {
            let shifted = shift_sketch(&itf.sigma, self.tree.distance(itf.anchor, t)?);
            for (m, &b) in self.coeffs.iter().enumerate() {
                total += b * shifted[m];
            }
        }
        Ok(total)
    }

    /// Minimax value of the state, or None if no k-cut strategy can finish
    /// from here.
    fn solve(&mut self, s: &VertexSet, interfaces: &[InterfaceSketch]) -> Result<Option<Cost>> {
        let key = (s.as_slice().to_vec(), interfaces.to_vec());
        if let Some(hit) = self.memo.get(&key) {
            self.hits += 1;
            return Ok(hit.map(|(v, _)| v));
        }
        self.states += 1;
        let p = self.coeffs.len() - 1;
        let mut best: Option<(Cost, usize)> = None;
        'queries: for q in candidate_queries(self.tree, s, self.k)? {
            let mut worst = self.hit_cost(interfaces, q)?;
            for comp in self.tree.components_after_removal(s, q)? {
                let sub = merge_into_new_interface(self.tree, q, &comp, interfaces, p)?;
                match self.solve(&comp, &sub)? {
                    Some(v) => worst = worst.max(v),
                    None => continue 'queries,
                }
            }
            if best.is_none_or(|(b, _)| worst < b) {
                best = Some((worst, q));
            }
        }
        self.memo.insert(key, best);
        Ok(best.map(|(v, _)| v))
    }

    fn extract(&self, s: &VertexSet, interfaces: &[InterfaceSketch]) -> Result<SearchTree> {
        let key = (s.as_slice().to_vec(), interfaces.to_vec());
        let (_, q) = self.memo[&key].expect("extraction follows a solved state");
        let p = self.coeffs.len() - 1;
        let mut children = Vec::new();
        for comp in self.tree.components_after_removal(s, q)? {
            let sub = merge_into_new_interface(self.tree, q, &comp, interfaces, p)?;
            children.push(self.extract(&comp, &sub)?);
        }
        Ok(SearchTree::node(q, children))
    }
}

/// Exact minimax value over k-cut strategies on an arbitrary tree, for a
/// symmetric distance-polynomial cost.
pub fn solve_tree_kcut(tree: &Tree, c: &CostModel, k: usize) -> Result<SolveResult> {
    let CostModel::SymmetricPoly { coeffs } = c else {
        return Err(Error::ModelMismatch(
            "the k-cut tree solver needs a symmetric polynomial cost".into(),
        ));
    };
    if k < 2 {
        return Err(Error::InvalidInput(format!("k-cut solving needs k >= 2, got {k}")));
    }
    let n = tree.n();
    if n > TREE_N_LIMIT || k > TREE_K_LIMIT || c.degree() > TREE_P_LIMIT {
        return Err(Error::SizeLimit(format!(
            "k-cut tree solver limited to n <= {TREE_N_LIMIT}, k <= {TREE_K_LIMIT}, \
             degree <= {TREE_P_LIMIT}; got n = {n}, k = {k}, degree = {}",
            c.degree()
        )));
    }
    c.validate(n)?;
    let start = Instant::now();
    let mut solver = KcutSolver {
        tree,
        coeffs: coeffs.clone(),
        k,
        memo: HashMap::new(),
        states: 0,
        hits: 0,
    };
    let full = VertexSet::full(n);
    let value = solver.solve(&full, &[])?.ok_or_else(|| {
        Error::InvalidInput(format!("no {k}-cut strategy exists for this tree"))
    })?;
    let strategy = solver.extract(&full, &[])?;
    Ok(SolveResult {
        value,
        strategy,
        stats: SolveStats {
            states_expanded: solver.states,
            memo_hits: solver.hits,
            runtime_ms: start.elapsed().as_millis(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::line_solver::solve_line_poly;
    use crate::oracle;
    use crate::strategy::{is_kcut, validate_stt, worst_case_cost};

    fn linear() -> CostModel {
        CostModel::SymmetricPoly { coeffs: vec![0, 1] }
    }

    #[test]
    fn shift_sketch_matches_definition() {
        // queries at distances 1 and 3 from the anchor; shift by 2
        let sigma = vec![2, 4, 10]; // counts, sum d, sum d^2
        assert_eq!(shift_sketch(&sigma, 2), vec![2, 8, 34]); // distances 3 and 5
        assert_eq!(shift_sketch(&sigma, 0), sigma);
        let empty = vec![0, 0, 0];
        assert_eq!(shift_sketch(&empty, 7), empty);
    }

    #[test]
    fn interfaces_and_candidates_on_star() {
        let star = Tree::new(5, &[(1, 2), (1, 3), (1, 4), (1, 5)]).unwrap();
        let full = VertexSet::full(5);
        assert!(interface_vertices(&star, &full).is_empty());
        // removing the center splits into four singleton components
        assert_eq!(candidate_queries(&star, &full, 2).unwrap(), vec![1, 2, 3, 4, 5]);
        // a leaf set including the center: removing a leaf leaves one
        // component whose boundary is just the vertices next to the hole
        let s = VertexSet::from_iter([1, 2, 3]);
        assert_eq!(interface_vertices(&star, &s), vec![1]);
    }

    #[test]
    fn merge_matches_direct_distance_sums() {
        let tree = crate::strategy::test_fixtures::arms_tree();
        let full = VertexSet::full(tree.n());
        // query 1, target in the component containing 8-9-10
        let comps = tree.components_after_removal(&full, 1).unwrap();
        let comp = comps.iter().find(|c| c.contains(9)).unwrap();
        let sketches = merge_into_new_interface(&tree, 1, comp, &[], 2).unwrap();
        assert_eq!(sketches.len(), 1);
        assert_eq!(sketches[0].anchor, 8);
        assert_eq!(sketches[0].sigma, vec![1, 1, 1]); // just q = 1 at distance 1

        // follow with query 9 and descend to {8}: both queries re-anchor at 8
        let comps2 = tree.components_after_removal(comp, 9).unwrap();
        let comp8 = comps2.iter().find(|c| c.contains(8)).unwrap();
        let s2 = merge_into_new_interface(&tree, 9, comp8, &sketches, 2).unwrap();
        assert_eq!(s2.len(), 1);
        assert_eq!(s2[0].anchor, 8);
        // d(1,8) = 1 and d(9,8) = 1
        assert_eq!(s2[0].sigma, vec![2, 2, 2]);

        // hit costs from sketches equal brute-force sums of d^m
        let d18 = tree.distance(1, 8).unwrap() as Cost;
        let d98 = tree.distance(9, 8).unwrap() as Cost;
        let shifted = shift_sketch(&s2[0].sigma, 0);
        assert_eq!(shifted[1], d18 + d98);
    }

    #[test]
    fn matches_tree_oracle() {
        let trees = [
            Tree::path(7),
            Tree::new(5, &[(1, 2), (1, 3), (1, 4), (1, 5)]).unwrap(),
            crate::strategy::test_fixtures::arms_tree(),
            Tree::new(8, &[(1, 2), (2, 3), (2, 4), (1, 5), (5, 6), (6, 7), (6, 8)]).unwrap(),
        ];
        let costs = [linear(), CostModel::SymmetricPoly { coeffs: vec![1, 0, 1] }];
        for t in &trees {
            for c in &costs {
                let solved = solve_tree_kcut(t, c, 3).unwrap();
                let exact = oracle::brute_force_tree(t, c).unwrap();
                // k = 3 admits every strategy on trees of maximum degree <= 3
                let max_deg = (1..=t.n()).map(|v| t.degree(v)).max().unwrap();
                assert!(validate_stt(t, &solved.strategy).is_ok());
                assert!(is_kcut(t, &solved.strategy, 3));
                assert_eq!(worst_case_cost(t, c, &solved.strategy).unwrap().0, solved.value);
                assert!(solved.value >= exact.value);
                if max_deg <= 3 {
                    assert_eq!(solved.value, exact.value);
                }
            }
        }
    }

    #[test]
    fn path_k2_matches_line_solver() {
        for n in [5, 10, 16] {
            let t = Tree::path(n);
            let solved = solve_tree_kcut(&t, &linear(), 2).unwrap();
            assert_eq!(solved.value, solve_line_poly(n, &linear()).unwrap().value, "n={n}");
            assert!(is_kcut(&t, &solved.strategy, 2));
        }
    }

    #[test]
    fn path10_fixture() {
        let t = Tree::path(10);
        assert_eq!(solve_tree_kcut(&t, &linear(), 2).unwrap().value, 6);
    }

    #[test]
    fn candidates_never_empty_and_k2_usable() {
        // a spider with three legs: 2-cut strategies exist but are
        // constrained, so the value can only improve as k grows
        let spider =
            Tree::new(7, &[(1, 2), (2, 3), (1, 4), (4, 5), (1, 6), (6, 7)]).unwrap();
        let v2 = solve_tree_kcut(&spider, &linear(), 2).unwrap().value;
        let v3 = solve_tree_kcut(&spider, &linear(), 3).unwrap().value;
        assert!(v3 <= v2);
        assert_eq!(v3, oracle::brute_force_tree(&spider, &linear()).unwrap().value);

        // candidate sets are nonempty on every reachable state: querying a
        // current boundary vertex always keeps component boundaries small
        let full = VertexSet::full(7);
        for &q in full.iter() {
            for comp in spider.components_after_removal(&full, q).unwrap() {
                assert!(!candidate_queries(&spider, &comp, 2).unwrap().is_empty());
            }
        }
    }

    #[test]
    fn envelope_enforced() {
        let t = Tree::path(41);
        assert!(matches!(solve_tree_kcut(&t, &linear(), 3), Err(Error::SizeLimit(_))));
        let t2 = Tree::path(5);
        assert!(matches!(solve_tree_kcut(&t2, &linear(), 5), Err(Error::SizeLimit(_))));
        let cubic = CostModel::SymmetricPoly { coeffs: vec![0, 0, 0, 1] };
        assert!(matches!(solve_tree_kcut(&t2, &cubic, 3), Err(Error::SizeLimit(_))));
        assert!(solve_tree_kcut(&t2, &CostModel::pricing(), 3).is_err());
    }
}
