//! Seeded random instance generators, shared by the property-test suites
//! and the CLI's `--seed` option. Everything is deterministic for a fixed
//! seed and draws only from `ChaCha8Rng` so artifacts are reproducible
//! across platforms.

use crate::costs::{Cost, CostModel, TargetDistribution};
use crate::graph::{Tree, VertexSet};
use crate::strategy::SearchTree;
use num::rational::BigRational;
use num::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The RNG used by every generator.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniformly random labeled tree on `n` vertices, via a random Pruefer
/// sequence.
pub fn random_tree(rng: &mut ChaCha8Rng, n: usize) -> Tree {
    if n <= 2 {
        return Tree::path(n);
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(1..=n)).collect();
    let mut degree = vec![1usize; n + 1];
    for &v in &seq {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &v in &seq {
        let leaf = (1..=n).find(|&u| degree[u] == 1).expect("a leaf always remains");
        edges.push((leaf, v));
        degree[leaf] -= 1;
        degree[v] -= 1;
    }
    let rest: Vec<usize> = (1..=n).filter(|&u| degree[u] == 1).collect();
    edges.push((rest[0], rest[1]));
    Tree::new(n, &edges).expect("Pruefer decoding yields a tree")
}

/// A random monotone tabulated cost: nondecreasing values over distances
/// `1..=max_dist`, each increment drawn from `0..=max_step`.
pub fn random_monotone_table(rng: &mut ChaCha8Rng, max_dist: usize, max_step: Cost) -> CostModel {
    let mut values = Vec::with_capacity(max_dist);
    let mut v: Cost = rng.gen_range(0..=max_step);
    for _ in 0..max_dist {
        values.push(v);
        v += rng.gen_range(0..=max_step);
    }
    CostModel::Tabulated { values }
}

/// A random symmetric polynomial cost of the given degree with nonnegative
/// coefficients in `0..=max_coeff` (constant term included, as the model
/// only charges misses).
pub fn random_symmetric_poly(rng: &mut ChaCha8Rng, degree: usize, max_coeff: Cost) -> CostModel {
    CostModel::SymmetricPoly { coeffs: random_coeffs(rng, degree, max_coeff) }
}

/// A random asymmetric polynomial cost (independent undershoot/overshoot
/// polynomials of the given degree).
pub fn random_asymmetric_poly(rng: &mut ChaCha8Rng, degree: usize, max_coeff: Cost) -> CostModel {
    CostModel::AsymmetricPoly {
        minus: random_coeffs(rng, degree, max_coeff),
        plus: random_coeffs(rng, degree, max_coeff),
    }
}

fn random_coeffs(rng: &mut ChaCha8Rng, degree: usize, max_coeff: Cost) -> Vec<Cost> {
    let mut coeffs: Vec<Cost> = (0..=degree).map(|_| rng.gen_range(0..=max_coeff)).collect();
    if coeffs.iter().all(|&c| c == 0) {
        coeffs[0] = 1; // keep the model nondegenerate: misses must cost something
    }
    coeffs
}

/// A uniformly random canonical strategy for the tree: each node queries a
/// uniform vertex of its feasible set.
pub fn random_stt(rng: &mut ChaCha8Rng, tree: &Tree) -> SearchTree {
    fn build(rng: &mut ChaCha8Rng, tree: &Tree, s: &VertexSet) -> SearchTree {
        let q = s.as_slice()[rng.gen_range(0..s.len())];
        let children = tree
            .components_after_removal(s, q)
            .expect("feasible sets stay connected")
            .iter()
            .map(|comp| build(rng, tree, comp))
            .collect();
        SearchTree::node(q, children)
    }
    build(rng, tree, &VertexSet::full(tree.n()))
}

/// A random target distribution on `1..=n`: integer weights in `0..=9`
/// normalized to exact rationals (at least one weight is forced positive).
pub fn random_distribution(rng: &mut ChaCha8Rng, n: usize) -> TargetDistribution {
    let mut weights: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=9)).collect();
    if weights.iter().all(|&w| w == 0) {
        weights[rng.gen_range(0..n)] = 1;
    }
    let total: u32 = weights.iter().sum();
    let probs = weights
        .into_iter()
        .map(|w| BigRational::new(BigInt::from(w), BigInt::from(total)))
        .collect();
    TargetDistribution::new(probs).expect("weights normalize to a distribution")
}
