//! Cost models g(q, t) and their validation.
//!
//! All arithmetic is exact in `i64`; overflow checks stay enabled in every
//! build profile, so sketch magnitudes up to n^(p+1) and n^(s+p+1) are
//! handled without silent wrapping.

use crate::error::{Error, Result};
use crate::graph::Tree;
use num::rational::BigRational;
use num::{BigInt, Zero};
use serde::{Deserialize, Serialize};

/// Exact integer cost value.
pub type Cost = i64;

/// A cost model for queries. `q = t` always costs 0; the variants define the
/// cost of an incorrect query.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum CostModel {
    /// h(x) = sum of coeffs[m] * x^m, evaluated at x = distance(q, t).
    #[serde(rename = "sym-poly")]
    SymmetricPoly { coeffs: Vec<Cost> },
    /// g(q,t) = h_minus(t-q) when q < t, h_plus(q-t) when q > t.
    /// Line only.
    #[serde(rename = "asym-poly")]
    AsymmetricPoly { minus: Vec<Cost>, plus: Vec<Cost> },
    /// g(q,t) = sum of minus[i][j] * q^i * t^j when q < t (plus[i][j] when
    /// q > t), over i + j <= degree. Line only. Coefficient magnitudes are
    /// declared bounded by max(n, 2)^coeff_bound_exp.
    #[serde(rename = "bivar-poly")]
    BivariatePoly {
        minus: Vec<Vec<Cost>>,
        plus: Vec<Vec<Cost>>,
        degree: usize,
        coeff_bound_exp: u32,
    },
    /// Explicit monotone table h(1..=len); symmetric distance cost.
    #[serde(rename = "table")]
    Tabulated { values: Vec<Cost> },
}

pub(crate) fn binomial(n: usize, k: usize) -> Cost {
    if k > n {
        return 0;
    }
    let mut out: Cost = 1;
    for i in 0..k {
        out = out * (n - i) as Cost / (i + 1) as Cost;
    }
    out
}

pub(crate) fn ipow(base: Cost, exp: usize) -> Cost {
    let mut out: Cost = 1;
    for _ in 0..exp {
        out *= base;
    }
    out
}

fn eval_poly(coeffs: &[Cost], x: Cost) -> Cost {
    coeffs.iter().rev().fold(0, |acc, &c| acc * x + c)
}

impl CostModel {
    /// Polynomial degree of the model (table length minus 1 for tables).
    pub fn degree(&self) -> usize {
        match self {
            CostModel::SymmetricPoly { coeffs } => coeffs.len().saturating_sub(1),
            CostModel::AsymmetricPoly { minus, plus } => {
                minus.len().max(plus.len()).saturating_sub(1)
            }
            CostModel::BivariatePoly { degree, .. } => *degree,
            CostModel::Tabulated { values } => values.len().saturating_sub(1),
        }
    }

    /// True for the line-only variants (asymmetric and bivariate).
    pub fn line_only(&self) -> bool {
        matches!(
            self,
            CostModel::AsymmetricPoly { .. } | CostModel::BivariatePoly { .. }
        )
    }

    /// h(x) for the symmetric distance-cost variants.
    pub fn distance_cost(&self, x: usize) -> Result<Cost> {
        if x == 0 {
            return Ok(0);
        }
        match self {
            CostModel::SymmetricPoly { coeffs } => Ok(eval_poly(coeffs, x as Cost)),
            CostModel::Tabulated { values } => values.get(x - 1).copied().ok_or_else(|| {
                Error::InvalidInput(format!("tabulated cost has no entry for distance {x}"))
            }),
            _ => Err(Error::ModelMismatch(
                "not a symmetric distance cost".into(),
            )),
        }
    }

    /// The cost of querying `q` when the target is `t`.
    pub fn eval_cost(&self, tree: &Tree, q: usize, t: usize) -> Result<Cost> {
        if self.line_only() && !tree.is_line() {
            return Err(Error::ModelMismatch(
                "asymmetric and bivariate cost models require the tree to be the line".into(),
            ));
        }
        if q == t {
            tree.distance(q, t)?; // vertex validity
            return Ok(0);
        }
        match self {
            CostModel::SymmetricPoly { .. } | CostModel::Tabulated { .. } => {
                let d = tree.distance(q, t)?;
                self.distance_cost(d)
            }
            CostModel::AsymmetricPoly { minus, plus } => {
                tree.distance(q, t)?;
                if q < t {
                    Ok(eval_poly(minus, (t - q) as Cost))
                } else {
                    Ok(eval_poly(plus, (q - t) as Cost))
                }
            }
            CostModel::BivariatePoly { minus, plus, .. } => {
                tree.distance(q, t)?;
                let table = if q < t { minus } else { plus };
                let mut total: Cost = 0;
                for (i, row) in table.iter().enumerate() {
                    for (j, &c) in row.iter().enumerate() {
                        if c != 0 {
                            total += c * ipow(q as Cost, i) * ipow(t as Cost, j);
                        }
                    }
                }
                Ok(total)
            }
        }
    }

    /// Checks all model invariants over the finite domain `1..=n`.
    ///
    /// Returns a list of non-fatal warnings on success (currently: bivariate
    /// models whose cost is not monotone in |q - t| along some fixed t).
    pub fn validate(&self, n: usize) -> Result<Vec<String>> {
        let check_monotone = |name: &str, h: &dyn Fn(usize) -> Result<Cost>| -> Result<()> {
            let mut prev: Cost = 0;
            for x in 1..n {
                let v = h(x)?;
                if v < 0 {
                    return Err(Error::InvalidInput(format!("{name}({x}) = {v} is negative")));
                }
                if v < prev {
                    return Err(Error::InvalidInput(format!(
                        "{name} is not monotone: {name}({x}) = {v} < {name}({}) = {prev}",
                        x - 1
                    )));
                }
                prev = v;
            }
            Ok(())
        };
        match self {
            CostModel::SymmetricPoly { coeffs } => {
                check_monotone("h", &|x| Ok(eval_poly(coeffs, x as Cost)))?;
                Ok(Vec::new())
            }
            CostModel::Tabulated { values } => {
                if values.len() < n.saturating_sub(1) {
                    return Err(Error::InvalidInput(format!(
                        "tabulated cost covers distances up to {}, need {}",
                        values.len(),
                        n - 1
                    )));
                }
                check_monotone("h", &|x| self.distance_cost(x))?;
                Ok(Vec::new())
            }
            CostModel::AsymmetricPoly { minus, plus } => {
                check_monotone("h-", &|x| Ok(eval_poly(minus, x as Cost)))?;
                check_monotone("h+", &|x| Ok(eval_poly(plus, x as Cost)))?;
                Ok(Vec::new())
            }
            CostModel::BivariatePoly {
                minus,
                plus,
                degree,
                coeff_bound_exp,
            } => {
                let bound = ipow(n.max(2) as Cost, *coeff_bound_exp as usize);
                for (name, table) in [("minus", minus), ("plus", plus)] {
                    for (i, row) in table.iter().enumerate() {
                        for (j, &c) in row.iter().enumerate() {
                            if c != 0 && i + j > *degree {
                                return Err(Error::InvalidInput(format!(
                                    "{name}[{i}][{j}] exceeds declared degree {degree}"
                                )));
                            }
                            if c.abs() > bound {
                                return Err(Error::InvalidInput(format!(
                                    "{name}[{i}][{j}] = {c} exceeds coefficient bound n^{coeff_bound_exp} = {bound}"
                                )));
                            }
                        }
                    }
                }
                let line = Tree::path(n);
                let mut warnings = Vec::new();
                let mut monotone = true;
                for t in 1..=n {
                    let mut prev_lo: Option<Cost> = None;
                    for q in (1..t).rev() {
                        let v = self.eval_cost(&line, q, t)?;
                        if v < 0 {
                            return Err(Error::InvalidInput(format!(
                                "g({q},{t}) = {v} is negative"
                            )));
                        }
                        if prev_lo.is_some_and(|p| v < p) {
                            monotone = false;
                        }
                        prev_lo = Some(v);
                    }
                    let mut prev_hi: Option<Cost> = None;
                    for q in t + 1..=n {
                        let v = self.eval_cost(&line, q, t)?;
                        if v < 0 {
                            return Err(Error::InvalidInput(format!(
                                "g({q},{t}) = {v} is negative"
                            )));
                        }
                        if prev_hi.is_some_and(|p| v < p) {
                            monotone = false;
                        }
                        prev_hi = Some(v);
                    }
                }
                if !monotone {
                    warnings.push(
                        "cost is not monotone in |q - t| along some fixed target".to_string(),
                    );
                }
                Ok(warnings)
            }
        }
    }

    /// Single-item pricing regret: cost t when q > t, t - q when q < t.
    pub fn pricing() -> CostModel {
        CostModel::BivariatePoly {
            // t - q
            minus: vec![vec![0, 1], vec![-1, 0]],
            // t
            plus: vec![vec![0, 1], vec![0, 0]],
            degree: 1,
            coeff_bound_exp: 1,
        }
    }

    /// Benign congestion regret with unit slope: |q - t| on both sides,
    /// expressed as a bivariate model.
    pub fn benign_congestion() -> CostModel {
        CostModel::BivariatePoly {
            // t - q
            minus: vec![vec![0, 1], vec![-1, 0]],
            // q - t
            plus: vec![vec![0, -1], vec![1, 0]],
            degree: 1,
            coeff_bound_exp: 1,
        }
    }

    /// Re-encodes an asymmetric distance polynomial pair as an equivalent
    /// bivariate model: expands h-(t-q) and h+(q-t) into powers of q and t.
    pub fn bivariate_from_asymmetric(minus: &[Cost], plus: &[Cost], n: usize) -> CostModel {
        let p = minus.len().max(plus.len()).saturating_sub(1);
        let mut gm = vec![vec![0 as Cost; p + 1]; p + 1];
        let mut gp = vec![vec![0 as Cost; p + 1]; p + 1];
        for (m, &b) in minus.iter().enumerate() {
            // (t - q)^m = sum_i C(m,i) (-1)^i q^i t^(m-i)
            for i in 0..=m {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                gm[i][m - i] += b * binomial(m, i) * sign;
            }
        }
        for (m, &b) in plus.iter().enumerate() {
            // (q - t)^m = sum_i C(m,i) (-1)^(m-i) q^i t^(m-i)
            for i in 0..=m {
                let sign = if (m - i) % 2 == 0 { 1 } else { -1 };
                gp[i][m - i] += b * binomial(m, i) * sign;
            }
        }
        let max_abs = gm
            .iter()
            .chain(gp.iter())
            .flatten()
            .map(|c| c.abs())
            .max()
            .unwrap_or(0);
        let mut s = 0;
        while ipow(n.max(2) as Cost, s as usize) < max_abs {
            s += 1;
        }
        CostModel::BivariatePoly {
            minus: gm,
            plus: gp,
            degree: p,
            coeff_bound_exp: s,
        }
    }

    /// Parses the CLI shorthand: `sym:0,1`, `asym:0,1/0,2`, `table:1,2,4`,
    /// `preset:pricing`, `preset:benign`, or `file:<path>` for JSON.
    pub fn parse_spec(spec: &str) -> Result<CostModel> {
        let (kind, rest) = spec
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("cost spec '{spec}' has no kind prefix")))?;
        let parse_list = |text: &str| -> Result<Vec<Cost>> {
            text.split(',')
                .map(|tok| {
                    tok.trim()
                        .parse::<Cost>()
                        .map_err(|e| Error::Parse(format!("coefficient '{tok}': {e}")))
                })
                .collect()
        };
        match kind {
            "sym" => Ok(CostModel::SymmetricPoly { coeffs: parse_list(rest)? }),
            "asym" => {
                let (m, p) = rest.split_once('/').ok_or_else(|| {
                    Error::Parse("asym spec needs minus/plus coefficient lists".into())
                })?;
                Ok(CostModel::AsymmetricPoly { minus: parse_list(m)?, plus: parse_list(p)? })
            }
            "table" => Ok(CostModel::Tabulated { values: parse_list(rest)? }),
            "preset" => match rest {
                "pricing" => Ok(CostModel::pricing()),
                "benign" => Ok(CostModel::benign_congestion()),
                other => Err(Error::Parse(format!("unknown preset '{other}'"))),
            },
            "file" => {
                let text = std::fs::read_to_string(rest)
                    .map_err(|e| Error::Parse(format!("cost file '{rest}': {e}")))?;
                CostModel::from_json(&text)
            }
            other => Err(Error::Parse(format!("unknown cost kind '{other}'"))),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("cost model serialization")
    }

    pub fn from_json(text: &str) -> Result<CostModel> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("cost model: {e}")))
    }
}

/// A known target distribution over vertices `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetDistribution {
    probs: Vec<BigRational>,
}

#[derive(Serialize, Deserialize)]
struct DistributionFile {
    /// (numerator, denominator) pairs, one per vertex.
    probs: Vec<(i64, i64)>,
}

impl TargetDistribution {
    pub fn new(probs: Vec<BigRational>) -> Result<TargetDistribution> {
        if probs.iter().any(|p| p < &BigRational::zero()) {
            return Err(Error::InvalidInput("negative probability".into()));
        }
        let total: BigRational = probs.iter().sum();
        if total != BigRational::from(BigInt::from(1)) {
            return Err(Error::InvalidInput(format!("probabilities sum to {total}, not 1")));
        }
        Ok(TargetDistribution { probs })
    }

    pub fn uniform(n: usize) -> TargetDistribution {
        let p = BigRational::new(BigInt::from(1), BigInt::from(n as i64));
        TargetDistribution { probs: vec![p; n] }
    }

    pub fn point_mass(n: usize, v: usize) -> TargetDistribution {
        let mut probs = vec![BigRational::zero(); n];
        probs[v - 1] = BigRational::from(BigInt::from(1));
        TargetDistribution { probs }
    }

    pub fn n(&self) -> usize {
        self.probs.len()
    }

    /// P(t) for a 1-based vertex id.
    pub fn prob(&self, t: usize) -> &BigRational {
        &self.probs[t - 1]
    }

    pub fn from_json(text: &str) -> Result<TargetDistribution> {
        let file: DistributionFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("distribution: {e}")))?;
        let probs = file
            .probs
            .iter()
            .map(|&(num, den)| {
                if den == 0 {
                    Err(Error::Parse("zero denominator".into()))
                } else {
                    Ok(BigRational::new(BigInt::from(num), BigInt::from(den)))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        TargetDistribution::new(probs)
    }
}
