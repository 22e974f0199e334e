//! Exact minimax solvers on the path, the Binary Search baseline with its
//! bounds, the lower-bound instances separating Binary Search from the
//! optimum, and the known-distribution expected-cost solver.
//!
//! The adversarial solvers compress the query history into power-sum
//! sketches: the interval endpoints plus the sketches fully determine the
//! cost any future target will reveal, so subproblems can be memoized.

use crate::costs::{binomial, ipow, Cost, CostModel, TargetDistribution};
use crate::error::{Error, Result};
use crate::graph::Tree;
use crate::strategy::SearchTree;
use num::rational::BigRational;
use num::Zero;
use std::collections::HashMap;
use std::time::Instant;

/// Power sums of one side's query history: `a[j] = sum of q^j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SketchVector {
    a: Vec<Cost>,
}

impl SketchVector {
    pub fn zero(p: usize) -> SketchVector {
        SketchVector { a: vec![0; p + 1] }
    }

    /// The sketch with one extra query added.
    pub fn with_query(&self, q: usize) -> SketchVector {
        let mut a = self.a.clone();
        let mut pw: Cost = 1;
        for entry in a.iter_mut() {
            *entry += pw;
            pw *= q as Cost;
        }
        SketchVector { a }
    }

    pub fn as_slice(&self) -> &[Cost] {
        &self.a
    }
}

/// `a[j] = sum over q in qs of q^j`, for j = 0..=p.
pub fn power_sums(qs: &[usize], p: usize) -> SketchVector {
    qs.iter().fold(SketchVector::zero(p), |s, &q| s.with_query(q))
}

/// Coefficients of t^j for the committed cost of a query history with the
/// given side sketches, under the asymmetric distance polynomials
/// h-(x) = sum minus[m] x^m (queries below) and h+ (queries above).
fn t_coefficients(minus: &[Cost], plus: &[Cost], am: &[Cost], ap: &[Cost]) -> Vec<Cost> {
    let p = am.len() - 1;
    let mut out = vec![0; p + 1];
    for (j, c) in out.iter_mut().enumerate() {
        for m in j..=p {
            let b = binomial(m, j);
            let sign_minus: Cost = if (m - j) % 2 == 0 { 1 } else { -1 };
            let sign_plus: Cost = if j % 2 == 0 { 1 } else { -1 };
            if let Some(&bm) = minus.get(m) {
                *c += bm * b * sign_minus * am[m - j];
            }
            if let Some(&bp) = plus.get(m) {
                *c += bp * b * sign_plus * ap[m - j];
            }
        }
    }
    out
}

fn horner(coeffs: &[Cost], t: Cost) -> Cost {
    coeffs.iter().rev().fold(0, |acc, &c| acc * t + c)
}

/// Total cost the query history summarized by `am` (queries below the
/// target) and `ap` (queries above) will have incurred once the target is
/// revealed as `t`. Equals the brute sum of h-(t-q) and h+(q-t).
pub fn seqcost_eval(
    minus: &[Cost],
    plus: &[Cost],
    am: &SketchVector,
    ap: &SketchVector,
    t: usize,
) -> Cost {
    horner(&t_coefficients(minus, plus, am.as_slice(), ap.as_slice()), t as Cost)
}

/// Counters reported by the solvers.
#[derive(Debug, Clone, Default)]
pub struct SolveStats {
    pub states_expanded: u64,
    pub memo_hits: u64,
    pub runtime_ms: u128,
}

/// An exact solver result: minimax value and a witnessing strategy.
#[derive(Debug, Clone)]
pub struct SolveResult {
    pub value: Cost,
    pub strategy: SearchTree,
    pub stats: SolveStats,
}

/// An expected-cost solver result (exact rational value).
#[derive(Debug, Clone)]
pub struct DistributionalResult {
    pub value: BigRational,
    pub strategy: SearchTree,
    pub stats: SolveStats,
}

/// Which side a revealed query joins: `Minus` when the answer was
/// "target above q" (the query undershot), `Plus` when below.
#[derive(Clone, Copy)]
enum Side {
    Minus,
    Plus,
}

/// The per-query coefficient updates for the two line cost families.
enum DeltaTables {
    /// Distance polynomials h-(t - q), h+(q - t), re-parameterized in t.
    Poly { minus: Vec<Cost>, plus: Vec<Cost> },
    /// Bivariate tables `table[i][j]` multiplying q^i t^j.
    Bivar { minus: Vec<Vec<Cost>>, plus: Vec<Vec<Cost>> },
}

/// Interval DP over normalized committed-cost polynomials.
///
/// The state is (L, R, c) where `sum c[j] t^j` is the cost the query
/// history will have committed once the target is revealed as t. Distinct
/// histories with the same polynomial are interchangeable, which shrinks
/// the state space dramatically compared to keying on raw sketches.
/// Moreover the constant term c[0] only shifts every outcome uniformly, so
/// it is normalized to zero and carried as an additive offset instead.
struct CoeffSolver {
    p: usize,
    tables: DeltaTables,
    /// Admissible lower bound on the future cost of any strategy on a
    /// fresh sub-interval, indexed by interval width (zero when no
    /// distance-based bound applies).
    future: Vec<Cost>,
    memo: HashMap<(u16, u16, Vec<Cost>), (Cost, u16)>,
    states: u64,
    hits: u64,
}

impl CoeffSolver {
    /// Contribution of the revealed query `q` to the committed-cost
    /// coefficients.
    fn query_delta(&self, q: usize, side: Side) -> Vec<Cost> {
        let mut out = vec![0; self.p + 1];
        match (&self.tables, side) {
            (DeltaTables::Poly { minus, plus }, side) => {
                let table = match side {
                    Side::Minus => minus,
                    Side::Plus => plus,
                };
                for (j, entry) in out.iter_mut().enumerate() {
                    for m in j..=self.p {
                        let Some(&b) = table.get(m) else { continue };
                        if b == 0 {
                            continue;
                        }
                        let sign: Cost = match side {
                            Side::Minus if (m - j) % 2 == 1 => -1,
                            Side::Plus if j % 2 == 1 => -1,
                            _ => 1,
                        };
                        *entry += b * binomial(m, j) * sign * ipow(q as Cost, m - j);
                    }
                }
            }
            (DeltaTables::Bivar { minus, plus }, side) => {
                let table = match side {
                    Side::Minus => minus,
                    Side::Plus => plus,
                };
                for (i, row) in table.iter().enumerate() {
                    for (j, &g) in row.iter().enumerate() {
                        if g != 0 {
                            out[j] += g * ipow(q as Cost, i);
                        }
                    }
                }
            }
        }
        out
    }

    /// The child state after adding `q` to the given side: normalized
    /// coefficients plus the additive offset split off the constant term.
    fn child(&self, c: &[Cost], q: usize, side: Side) -> (Vec<Cost>, Cost) {
        let delta = self.query_delta(q, side);
        let mut out: Vec<Cost> = c.iter().zip(&delta).map(|(a, b)| a + b).collect();
        let offset = out[0];
        out[0] = 0;
        (out, offset)
    }

    /// Lower bound on a state value: the largest committed cost any
    /// feasible target would reveal, and the smallest committed cost plus
    /// the fresh-interval adversary bound.
    fn state_lb(&self, lo: usize, hi: usize, c: &[Cost]) -> Cost {
        let mut cmax = Cost::MIN;
        let mut cmin = Cost::MAX;
        for t in lo + 1..hi {
            let v = horner(c, t as Cost);
            cmax = cmax.max(v);
            cmin = cmin.min(v);
        }
        cmax.max(cmin + self.future[hi - lo - 1])
    }

    fn solve(&mut self, lo: usize, hi: usize, c: &[Cost]) -> Cost {
        let key = (lo as u16, hi as u16, c.to_vec());
        if let Some(&(v, _)) = self.memo.get(&key) {
            self.hits += 1;
            return v;
        }
        self.states += 1;
        let mut best: Option<(Cost, u16)> = None;
        for q in lo + 1..hi {
            let hit = horner(c, q as Cost);
            let left = (q > lo + 1).then(|| self.child(c, q, Side::Plus));
            let right = (q < hi - 1).then(|| self.child(c, q, Side::Minus));
            // admissible pruning: skip q when its value provably cannot
            // beat the best found so far (strictly), which also preserves
            // the smallest-q tie-break
            if let Some((b, _)) = best {
                let mut lb = hit;
                if let Some((cl, off)) = &left {
                    lb = lb.max(off + self.state_lb(lo, q, cl));
                }
                if let Some((cr, off)) = &right {
                    lb = lb.max(off + self.state_lb(q, hi, cr));
                }
                if lb >= b {
                    continue;
                }
            }
            let mut worst = hit;
            if let Some((cl, off)) = &left {
                worst = worst.max(off + self.solve(lo, q, cl));
            }
            if best.is_some_and(|(b, _)| worst >= b) {
                continue;
            }
            if let Some((cr, off)) = &right {
                worst = worst.max(off + self.solve(q, hi, cr));
            }
            if best.is_none_or(|(b, _)| worst < b) {
                best = Some((worst, q as u16));
            }
        }
        let (value, arg) = best.expect("nonempty interval");
        self.memo.insert(key, (value, arg));
        value
    }

    fn extract(&self, lo: usize, hi: usize, c: &[Cost]) -> SearchTree {
        let key = (lo as u16, hi as u16, c.to_vec());
        let q = self.memo[&key].1 as usize;
        let mut children = Vec::new();
        if q > lo + 1 {
            children.push(self.extract(lo, q, &self.child(c, q, Side::Plus).0));
        }
        if q < hi - 1 {
            children.push(self.extract(q, hi, &self.child(c, q, Side::Minus).0));
        }
        SearchTree::node(q, children)
    }

    fn run(mut self, n: usize, start: Instant) -> SolveResult {
        let zero = vec![0; self.p + 1];
        let value = self.solve(0, n + 1, &zero);
        let strategy = self.extract(0, n + 1, &zero);
        SolveResult {
            value,
            strategy,
            stats: SolveStats {
                states_expanded: self.states,
                memo_hits: self.hits,
                runtime_ms: start.elapsed().as_millis(),
            },
        }
    }
}

/// The three adversary bounds for a fresh interval of width w, using
/// `hlb(x)` as a lower bound on the cost any single query adds.
fn future_bounds(n: usize, hlb: impl Fn(usize) -> Cost) -> Vec<Cost> {
    let h = |x: usize| if x == 0 { 0 } else { hlb(x) };
    let mut future = vec![0; n + 1];
    for (w, f) in future.iter_mut().enumerate() {
        let lb1 = h(w / 2);
        let lb2 = h(w / 4) + h(w / 8);
        let mut tail = 0;
        let mut i = 4;
        while w >> i >= 1 {
            tail += h(w >> i);
            i += 1;
        }
        let lb3 = (tail + 1) / 2;
        *f = lb1.max(lb2).max(lb3);
    }
    future
}

/// Exact minimax solver for distance-polynomial costs on the path `1..=n`.
pub fn solve_line_poly(n: usize, c: &CostModel) -> Result<SolveResult> {
    let (minus, plus) = match c {
        CostModel::SymmetricPoly { coeffs } => (coeffs.clone(), coeffs.clone()),
        CostModel::AsymmetricPoly { minus, plus } => (minus.clone(), plus.clone()),
        _ => {
            return Err(Error::ModelMismatch(
                "the distance-polynomial solver needs a symmetric or asymmetric polynomial cost"
                    .into(),
            ))
        }
    };
    if n == 0 {
        return Err(Error::InvalidInput("empty instance".into()));
    }
    c.validate(n)?;
    let start = Instant::now();
    let p = minus.len().max(plus.len()) - 1;
    // min(h-, h+) lower-bounds the cost of any future miss at distance x
    let future = future_bounds(n, |x| {
        horner(&minus, x as Cost).min(horner(&plus, x as Cost))
    });
    let solver = CoeffSolver {
        p,
        tables: DeltaTables::Poly { minus, plus },
        future,
        memo: HashMap::new(),
        states: 0,
        hits: 0,
    };
    Ok(solver.run(n, start))
}

/// Exact minimax solver for bivariate position-dependent polynomial costs
/// on the path `1..=n`.
pub fn solve_line_bivariate(n: usize, c: &CostModel) -> Result<SolveResult> {
    let CostModel::BivariatePoly { minus, plus, degree, .. } = c else {
        return Err(Error::ModelMismatch(
            "the bivariate solver needs a bivariate polynomial cost".into(),
        ));
    };
    if n == 0 {
        return Err(Error::InvalidInput("empty instance".into()));
    }
    c.validate(n)?;
    let start = Instant::now();
    let solver = CoeffSolver {
        p: *degree,
        tables: DeltaTables::Bivar { minus: minus.clone(), plus: plus.clone() },
        // validated models are nonnegative, so committed costs alone are a
        // sound bound; no distance-based future bound applies
        future: vec![0; n + 1],
        memo: HashMap::new(),
        states: 0,
        hits: 0,
    };
    Ok(solver.run(n, start))
}

fn bs_interval(lo: usize, hi: usize) -> SearchTree {
    let m = (lo + hi) / 2;
    let mut children = Vec::new();
    if m > lo {
        children.push(bs_interval(lo, m - 1));
    }
    if m < hi {
        children.push(bs_interval(m + 1, hi));
    }
    SearchTree::node(m, children)
}

/// The Binary Search strategy: always query the lower median of the
/// remaining feasible interval.
pub fn binary_search_strategy(n: usize) -> Result<SearchTree> {
    if n == 0 {
        return Err(Error::InvalidInput("empty instance".into()));
    }
    Ok(bs_interval(1, n))
}

/// Closed-form upper bound on the Binary Search cost for a symmetric
/// monotone distance cost: sum of h(floor(n/2^i)) for i = 1..floor(log2 n).
pub fn bs_cost_upper_bound(n: usize, c: &CostModel) -> Result<Cost> {
    let mut total = 0;
    let mut i = 1;
    while n >> i >= 1 {
        total += c.distance_cost(n >> i)?;
        i += 1;
    }
    Ok(total)
}

/// The three adversary lower bounds on the optimal worst-case cost for a
/// symmetric monotone distance cost:
/// h(floor(n/2)), h(floor(n/4)) + h(floor(n/8)), and
/// ceil of half the tail sum of h(floor(n/2^i)) for i >= 4.
pub fn opt_lower_bounds(n: usize, c: &CostModel) -> Result<(Cost, Cost, Cost)> {
    let lb1 = c.distance_cost(n / 2)?;
    let lb2 = c.distance_cost(n / 4)? + c.distance_cost(n / 8)?;
    let mut tail = 0;
    let mut i = 4;
    while n >> i >= 1 {
        tail += c.distance_cost(n >> i)?;
        i += 1;
    }
    Ok((lb1, lb2, (tail + 1) / 2))
}

/// An ascending linear-search chain over `lo..=hi`, if nonempty.
fn chain(lo: usize, hi: usize) -> Option<SearchTree> {
    if lo > hi {
        return None;
    }
    let mut node = SearchTree::leaf(hi);
    for q in (lo..hi).rev() {
        node = SearchTree::node(q, vec![node]);
    }
    Some(node)
}

/// The threshold instance separating Binary Search from the optimum by a
/// factor of 2: cost 1 exactly at distances >= floor(n/4), together with
/// the three-query strategy of worst-case cost 1 (n = 2^k - 1, n >= 15).
pub fn threshold_instance(n: usize) -> Result<(CostModel, SearchTree)> {
    if n < 15 || !(n + 1).is_power_of_two() {
        return Err(Error::InvalidInput(format!(
            "threshold instance needs n = 2^k - 1 with n >= 15, got {n}"
        )));
    }
    let thresh = n / 4;
    let values = (1..n).map(|x| if x >= thresh { 1 } else { 0 }).collect();
    let cost = CostModel::Tabulated { values };

    let root = n / 2 + 1; // ceil(n/2), n odd
    let a = n.div_ceil(6);
    let b = n.div_ceil(3);
    let (am, bm) = (n + 1 - a, n + 1 - b); // mirrored queries
    let branch = |outer: Option<SearchTree>, inner: SearchTree, q: usize| {
        let mut children: Vec<SearchTree> = outer.into_iter().collect();
        children.push(inner);
        SearchTree::node(q, children)
    };
    let left = branch(
        chain(1, a - 1),
        branch(chain(a + 1, b - 1), chain(b + 1, root - 1).expect("nonempty"), b),
        a,
    );
    let right = branch(
        chain(am + 1, n),
        branch(chain(bm + 1, am - 1), chain(root + 1, bm - 1).expect("nonempty"), bm),
        am,
    );
    let strategy = SearchTree::node(root, vec![left, right]);
    Ok((cost, strategy))
}

/// The gamma strategy for linear costs: query the midpoint, then split the
/// revealed half at a fraction gamma = (sqrt(33) - 5) / 8 of the current
/// interval; Binary Search handles the outer part, and the inner part
/// recurses. Its cost approaches (sqrt(33) - 3) / 4 * n.
pub fn gamma_strategy(n: usize) -> Result<SearchTree> {
    if n == 0 {
        return Err(Error::InvalidInput("empty instance".into()));
    }
    let gamma = (33f64.sqrt() - 5.0) / 8.0;
    fn build(lo: usize, hi: usize, gamma: f64) -> SearchTree {
        if lo == hi {
            return SearchTree::leaf(lo);
        }
        let m = (lo + hi) / 2;
        let len = hi - lo + 1;
        let split = ((gamma * len as f64).round() as usize).max(1);
        let mut children = Vec::new();
        if m > lo {
            let s = (lo + split).min(m - 1);
            let mut sub = Vec::new();
            if s > lo {
                sub.push(bs_interval(lo, s - 1));
            }
            if s < m - 1 {
                sub.push(build(s + 1, m - 1, gamma));
            }
            children.push(SearchTree::node(s, sub));
        }
        if hi > m {
            let s = (hi - split).max(m + 1);
            let mut sub = Vec::new();
            if s < hi {
                sub.push(bs_interval(s + 1, hi));
            }
            if s > m + 1 {
                sub.push(build(m + 1, s - 1, gamma));
            }
            children.push(SearchTree::node(s, sub));
        }
        SearchTree::node(m, children)
    }
    Ok(build(1, n, gamma))
}

/// Optimal expected cost when the target is drawn from a known
/// distribution: E(interval) = min over q of the expected query cost plus
/// the two sub-interval expectations.
pub fn solve_line_distributional(
    n: usize,
    c: &CostModel,
    d: &TargetDistribution,
) -> Result<DistributionalResult> {
    if n == 0 {
        return Err(Error::InvalidInput("empty instance".into()));
    }
    if d.n() != n {
        return Err(Error::InvalidInput(format!(
            "distribution covers {} vertices, instance has {n}",
            d.n()
        )));
    }
    c.validate(n)?;
    let start = Instant::now();
    let tree = Tree::path(n);
    // expected cost of querying q against every target in (lo, hi)
    let mut memo: HashMap<(usize, usize), (BigRational, usize)> = HashMap::new();
    let mut states = 0u64;
    fn solve(
        tree: &Tree,
        c: &CostModel,
        d: &TargetDistribution,
        lo: usize,
        hi: usize,
        memo: &mut HashMap<(usize, usize), (BigRational, usize)>,
        states: &mut u64,
    ) -> Result<BigRational> {
        if hi <= lo + 1 {
            return Ok(BigRational::zero());
        }
        if let Some((v, _)) = memo.get(&(lo, hi)) {
            return Ok(v.clone());
        }
        *states += 1;
        let mut best: Option<(BigRational, usize)> = None;
        for q in lo + 1..hi {
            let mut total = BigRational::zero();
            for t in lo + 1..hi {
                let g = c.eval_cost(tree, q, t)?;
                if g != 0 {
                    total += d.prob(t) * BigRational::from_integer(g.into());
                }
            }
            total += solve(tree, c, d, lo, q, memo, states)?;
            total += solve(tree, c, d, q, hi, memo, states)?;
            if best.as_ref().is_none_or(|(b, _)| total < *b) {
                best = Some((total, q));
            }
        }
        let (value, arg) = best.expect("nonempty interval");
        memo.insert((lo, hi), (value.clone(), arg));
        Ok(value)
    }
    let value = solve(&tree, c, d, 0, n + 1, &mut memo, &mut states)?;
    fn extract(memo: &HashMap<(usize, usize), (BigRational, usize)>, lo: usize, hi: usize) -> SearchTree {
        let q = memo[&(lo, hi)].1;
        let mut children = Vec::new();
        if q > lo + 1 {
            children.push(extract(memo, lo, q));
        }
        if q < hi - 1 {
            children.push(extract(memo, q, hi));
        }
        SearchTree::node(q, children)
    }
    let strategy = extract(&memo, 0, n + 1);
    Ok(DistributionalResult {
        value,
        strategy,
        stats: SolveStats {
            states_expanded: states,
            memo_hits: 0,
            runtime_ms: start.elapsed().as_millis(),
        },
    })
}
