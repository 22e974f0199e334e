//! End-to-end acceptance suite. Each criterion prints a single PASS/FAIL
//! line (run with `--nocapture` to see them on success).

use distsearch::costs::{Cost, CostModel, TargetDistribution};
use distsearch::gen;
use distsearch::graph::Tree;
use distsearch::line_solver::{
    binary_search_strategy, bs_cost_upper_bound, gamma_strategy, opt_lower_bounds,
    solve_line_bivariate, solve_line_distributional, solve_line_poly, threshold_instance,
};
use distsearch::oracle;
use distsearch::strategy::{
    convert_to_kcut, cost_for_target, is_kcut, validate_stt, worst_case_cost,
};
use distsearch::tree_solver::solve_tree_kcut;
use num::rational::BigRational;
use num::BigInt;
use rand::Rng;
use std::time::Instant;

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err(format!($($arg)+));
        }
    };
}

fn report(criterion: u32, desc: &str, run: impl FnOnce() -> Result<(), String>) {
    match run() {
        Ok(()) => println!("criterion {criterion}: PASS - {desc}"),
        Err(e) => {
            println!("criterion {criterion}: FAIL - {desc}: {e}");
            panic!("criterion {criterion} failed: {e}");
        }
    }
}

fn linear() -> CostModel {
    CostModel::SymmetricPoly { coeffs: vec![0, 1] }
}

#[test]
fn criterion_1_line_fixture() {
    report(1, "n=10 linear-cost fixture (optimum 6, binary search 8)", || {
        let start = Instant::now();
        let r = solve_line_poly(10, &linear()).map_err(|e| e.to_string())?;
        ensure!(r.value == 6, "optimum {} != 6", r.value);
        let t = Tree::path(10);
        let bs = binary_search_strategy(10).map_err(|e| e.to_string())?;
        let (bv, _) = worst_case_cost(&t, &linear(), &bs).map_err(|e| e.to_string())?;
        ensure!(bv == 8, "binary search {bv} != 8");
        let elapsed = start.elapsed();
        ensure!(elapsed.as_secs() < 1, "took {elapsed:?}, limit 1 s");
        Ok(())
    });
}

#[test]
fn criterion_2_pricing_fixture() {
    report(2, "pricing fixture (optimum 17, binary search 23)", || {
        // 17/23 is the optimum/binary-search pair for a 19-vertex path
        // under the pricing model; both values are pinned exactly
        let start = Instant::now();
        let pricing = CostModel::pricing();
        let r = solve_line_bivariate(19, &pricing).map_err(|e| e.to_string())?;
        ensure!(r.value == 17, "optimum {} != 17", r.value);
        let t = Tree::path(19);
        let bs = binary_search_strategy(19).map_err(|e| e.to_string())?;
        let (bv, _) = worst_case_cost(&t, &pricing, &bs).map_err(|e| e.to_string())?;
        ensure!(bv == 23, "binary search {bv} != 23");
        let elapsed = start.elapsed();
        ensure!(elapsed.as_secs() < 5, "took {elapsed:?}, limit 5 s");
        Ok(())
    });
}

#[test]
fn criterion_3_oracle_equivalence() {
    report(3, "solver equals brute-force oracle on 200 random instances", || {
        let start = Instant::now();
        let mut rng = gen::rng(0xACC3);
        for case in 0..200 {
            let n = rng.gen_range(1..=12);
            let degree = rng.gen_range(0..=3);
            let c = if case % 2 == 0 {
                gen::random_symmetric_poly(&mut rng, degree, 5)
            } else {
                gen::random_asymmetric_poly(&mut rng, degree, 5)
            };
            let solved = solve_line_poly(n, &c).map_err(|e| e.to_string())?;
            let exact = oracle::brute_force_line(n, &c).map_err(|e| e.to_string())?;
            ensure!(
                solved.value == exact.value,
                "case {case}: solver {} != oracle {} (n={n}, {c:?})",
                solved.value,
                exact.value
            );
            // the bivariate solver agrees on the bivariate encoding
            if let CostModel::AsymmetricPoly { minus, plus } = &c {
                let enc = CostModel::bivariate_from_asymmetric(minus, plus, n);
                let bv = solve_line_bivariate(n, &enc).map_err(|e| e.to_string())?;
                ensure!(
                    bv.value == exact.value,
                    "case {case}: bivariate encoding {} != oracle {}",
                    bv.value,
                    exact.value
                );
            }
        }
        let elapsed = start.elapsed();
        ensure!(elapsed.as_secs() < 300, "took {elapsed:?}, limit 5 min");
        Ok(())
    });
}

#[test]
fn criterion_4_binary_search_4_approximation() {
    report(4, "binary search is a 4-approximation on 200 monotone costs", || {
        let mut rng = gen::rng(0xACC4);
        for case in 0..200 {
            let n = rng.gen_range(1..=12);
            let c = gen::random_monotone_table(&mut rng, n.max(2) - 1, 4);
            let t = Tree::path(n);
            let bs = binary_search_strategy(n).map_err(|e| e.to_string())?;
            let (bv, _) = worst_case_cost(&t, &c, &bs).map_err(|e| e.to_string())?;
            let opt = oracle::brute_force_line(n, &c).map_err(|e| e.to_string())?.value;
            ensure!(bv <= 4 * opt, "case {case}: BS {bv} > 4 * OPT {opt} (n={n})");
            let ub = bs_cost_upper_bound(n, &c).map_err(|e| e.to_string())?;
            ensure!(bv <= ub, "case {case}: BS {bv} > upper bound {ub}");
            let (lb1, lb2, lb3) = opt_lower_bounds(n, &c).map_err(|e| e.to_string())?;
            ensure!(
                opt >= lb1 && opt >= lb2 && opt >= lb3,
                "case {case}: OPT {opt} below a lower bound ({lb1}, {lb2}, {lb3})"
            );
        }
        Ok(())
    });
}

#[test]
fn criterion_5_kcut_conversion_inflation() {
    report(5, "k-cut conversion inflates per-target costs by <= 2 (k=3) and <= 1.5 (k=5)", || {
        let mut rng = gen::rng(0xACC5);
        let costs =
            [linear(), CostModel::SymmetricPoly { coeffs: vec![0, 0, 1] }];
        for case in 0..100 {
            let n = rng.gen_range(2..=14);
            let tree = gen::random_tree(&mut rng, n);
            let s = gen::random_stt(&mut rng, &tree);
            for (k, num, den) in [(3usize, 2 as Cost, 1 as Cost), (5, 3, 2)] {
                let converted = convert_to_kcut(&tree, &s, k).map_err(|e| e.to_string())?;
                ensure!(is_kcut(&tree, &converted, k), "case {case}: k={k} output not k-cut");
                validate_stt(&tree, &converted).map_err(|e| e.to_string())?;
                for c in &costs {
                    for target in 1..=n {
                        let before =
                            cost_for_target(&tree, c, &s, target).map_err(|e| e.to_string())?;
                        let after = cost_for_target(&tree, c, &converted, target)
                            .map_err(|e| e.to_string())?;
                        ensure!(
                            den * after <= num * before,
                            "case {case}: k={k} target {target}: {after} > {num}/{den} * {before}"
                        );
                    }
                }
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_6_tree_solver_sandwich() {
    report(6, "k-cut tree solver sandwiched by the oracle; path case exact", || {
        let start = Instant::now();
        let mut rng = gen::rng(0xACC6);
        for case in 0..50 {
            let n = rng.gen_range(2..=10);
            let tree = gen::random_tree(&mut rng, n);
            let opt = oracle::brute_force_tree(&tree, &linear())
                .map_err(|e| e.to_string())?
                .value;
            let solved = solve_tree_kcut(&tree, &linear(), 3).map_err(|e| e.to_string())?;
            ensure!(
                opt <= solved.value && solved.value <= 2 * opt,
                "case {case}: OPT {opt}, 3-cut {} (n={n})",
                solved.value
            );
        }
        for n in 2..=30 {
            let tree = Tree::path(n);
            let kcut = solve_tree_kcut(&tree, &linear(), 2).map_err(|e| e.to_string())?;
            let line = solve_line_poly(n, &linear()).map_err(|e| e.to_string())?;
            ensure!(
                kcut.value == line.value,
                "path n={n}: 2-cut {} != line solver {}",
                kcut.value,
                line.value
            );
        }
        let elapsed = start.elapsed();
        ensure!(elapsed.as_secs() < 600, "took {elapsed:?}, limit 10 min");
        Ok(())
    });
}

#[test]
fn criterion_7_constant_bracketing() {
    report(7, "OPT(n)/n for linear cost brackets the limit constant", || {
        let mut last_ratio = 0.0;
        for n in [32usize, 64, 128] {
            let r = solve_line_poly(n, &linear()).map_err(|e| e.to_string())?;
            let ratio = r.value as f64 / n as f64;
            ensure!(
                (0.60..=0.66).contains(&ratio),
                "OPT({n})/{n} = {ratio:.4} outside [0.60, 0.66]"
            );
            last_ratio = ratio;
        }
        ensure!(
            (last_ratio - 0.6245).abs() <= 0.02,
            "OPT(128)/128 = {last_ratio:.4} not within 0.02 of 0.6245"
        );
        Ok(())
    });
}

#[test]
fn criterion_8_lower_bound_instances() {
    report(8, "threshold instances beat binary search 1 vs 2; gamma ratio >= 1.40", || {
        let start = Instant::now();
        for n in [15usize, 31, 63] {
            let (c, s) = threshold_instance(n).map_err(|e| e.to_string())?;
            let t = Tree::path(n);
            validate_stt(&t, &s).map_err(|e| e.to_string())?;
            let (sv, _) = worst_case_cost(&t, &c, &s).map_err(|e| e.to_string())?;
            ensure!(sv == 1, "threshold n={n}: strategy cost {sv} != 1");
            let bs = binary_search_strategy(n).map_err(|e| e.to_string())?;
            let (bv, _) = worst_case_cost(&t, &c, &bs).map_err(|e| e.to_string())?;
            ensure!(bv == 2, "threshold n={n}: binary search {bv} != 2");
        }
        let n = 4096;
        let t = Tree::path(n);
        let g = gamma_strategy(n).map_err(|e| e.to_string())?;
        validate_stt(&t, &g).map_err(|e| e.to_string())?;
        let (gv, _) = worst_case_cost(&t, &linear(), &g).map_err(|e| e.to_string())?;
        let bs = binary_search_strategy(n).map_err(|e| e.to_string())?;
        let (bv, _) = worst_case_cost(&t, &linear(), &bs).map_err(|e| e.to_string())?;
        let ratio = bv as f64 / gv as f64;
        ensure!(ratio >= 1.40, "gamma n={n}: BS/gamma = {ratio:.4} < 1.40");
        let elapsed = start.elapsed();
        ensure!(elapsed.as_secs() < 60, "took {elapsed:?}, limit 1 min");
        Ok(())
    });
}

#[test]
fn criterion_9_distributional_dp() {
    report(9, "expected-cost DP equals the enumeration oracle on 100 instances", || {
        let mut rng = gen::rng(0xACC9);
        for case in 0..100 {
            let n = rng.gen_range(1..=10);
            let c = if case % 2 == 0 {
                linear()
            } else {
                gen::random_monotone_table(&mut rng, n.max(2) - 1, 3)
            };
            let d = gen::random_distribution(&mut rng, n);
            let solved = solve_line_distributional(n, &c, &d).map_err(|e| e.to_string())?;
            let exact =
                oracle::brute_force_expected_line(n, &c, &d).map_err(|e| e.to_string())?;
            ensure!(
                solved.value == exact.value,
                "case {case}: DP {} != oracle {} (n={n})",
                solved.value,
                exact.value
            );
        }
        let r = solve_line_distributional(3, &linear(), &TargetDistribution::uniform(3))
            .map_err(|e| e.to_string())?;
        let expected = BigRational::new(BigInt::from(2), BigInt::from(3));
        ensure!(r.value == expected, "uniform n=3: {} != 2/3", r.value);
        Ok(())
    });
}
