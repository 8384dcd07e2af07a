use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::supnorm::{chebyshev_lobatto, weighted_sup_norm, GridConfig, NormReport};
use super::weight::JacobiWeight;
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::jets::jetn_partials;

/// Largest dimension accepted by [`multivariate_sobolev_norm`].
pub const MAX_TENSOR_DIM: usize = 4;

fn require_univariate(f: &Expr) -> Result<()> {
    if f.arity() != 1 {
        return Err(Error::arg(format!(
            "expected a univariate expression, got {} variables",
            f.arity()
        )));
    }
    Ok(())
}

/// `‖f^{(k)} φ^k u‖_∞`, derivatives from jets.
pub fn derivative_norm(f: &Expr, k: usize, w: &JacobiWeight, grid: &GridConfig) -> Result<NormReport> {
    require_univariate(f)?;
    if k == 0 {
        weighted_sup_norm(&|x| f.eval_at(x), w, 0, grid)
    } else {
        weighted_sup_norm(&|x| f.derivative_at(x, k), w, k as u32, grid)
    }
}

/// Both halves of a Sobolev-type norm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SobolevReport {
    pub r: usize,
    /// `‖f u‖_∞`
    pub base: NormReport,
    /// `‖f^{(r)} φ^r u‖_∞`
    pub top: NormReport,
    pub value: f64,
}

pub fn sobolev_norm_report(f: &Expr, r: usize, w: &JacobiWeight, grid: &GridConfig) -> Result<SobolevReport> {
    if r == 0 {
        return Err(Error::arg("Sobolev order must be positive"));
    }
    let base = derivative_norm(f, 0, w, grid)?;
    let top = derivative_norm(f, r, w, grid)?;
    Ok(SobolevReport {
        r,
        base,
        top,
        value: base.value + top.value,
    })
}

/// `‖f‖_{W^r_u} = ‖f u‖_∞ + ‖f^{(r)} φ^r u‖_∞`.
pub fn sobolev_norm(f: &Expr, r: usize, w: &JacobiWeight, grid: &GridConfig) -> Result<f64> {
    Ok(sobolev_norm_report(f, r, w, grid)?.value)
}

/// Per-partial sups of a multivariate norm, keyed by multi-index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiNormReport {
    pub value: f64,
    pub sups: BTreeMap<Vec<u32>, f64>,
    pub points_per_dim: usize,
}

fn tensor_points_per_dim(n: usize, grid: &GridConfig) -> usize {
    if n == 1 {
        return grid.points.max(2);
    }
    let mut k = (grid.tensor_budget as f64).powf(1.0 / n as f64).floor() as usize;
    // floor of a floating root can be off by one
    while (k + 1).pow(n as u32) <= grid.tensor_budget {
        k += 1;
    }
    while k > 2 && k.pow(n as u32) > grid.tensor_budget {
        k -= 1;
    }
    k.max(2)
}

/// `‖f‖_∞ + Σ_{1≤|ℓ|≤r} ‖D^ℓ f‖_∞` over a closed box, each sup sampled on a
/// Chebyshev tensor grid.
pub fn multivariate_sobolev_norm(
    f: &Expr,
    r: usize,
    bounds: &[(f64, f64)],
    grid: &GridConfig,
) -> Result<MultiNormReport> {
    let n = f.arity();
    if bounds.len() != n {
        return Err(Error::arg(format!(
            "box has {} sides, expression takes {n} variables",
            bounds.len()
        )));
    }
    if n == 0 {
        return Err(Error::arg("expression has no variables"));
    }
    if n > MAX_TENSOR_DIM {
        return Err(Error::ResourceLimit {
            what: "tensor grid dimension",
            cap: MAX_TENSOR_DIM as u64,
            requested: n as u64,
        });
    }
    for &(a, b) in bounds {
        if !(a.is_finite() && b.is_finite() && a <= b) {
            return Err(Error::arg(format!("invalid box side [{a}, {b}]")));
        }
    }
    let k = tensor_points_per_dim(n, grid);
    let axes: Vec<Vec<f64>> = bounds
        .iter()
        .map(|&(a, b)| if a == b { vec![a] } else { chebyshev_lobatto(k, a, b) })
        .collect();
    let total: usize = axes.iter().map(Vec::len).product();

    let point = |mut idx: usize| -> Vec<f64> {
        axes.iter()
            .map(|ax| {
                let v = ax[idx % ax.len()];
                idx /= ax.len();
                v
            })
            .collect()
    };
    let per_point: Vec<Result<Vec<(Vec<u32>, f64)>>> = (0..total)
        .into_par_iter()
        .map(|i| {
            let y = point(i);
            let jet = jetn_partials(f, &y, r)?;
            let parts = jet.partials();
            if let Some((_, v)) = parts.iter().find(|(_, v)| !v.is_finite()) {
                return Err(Error::NonFinite { x: y[0], value: *v });
            }
            Ok(parts)
        })
        .collect();

    let mut sups: BTreeMap<Vec<u32>, f64> = BTreeMap::new();
    for parts in per_point {
        for (ell, v) in parts? {
            let s = sups.entry(ell).or_insert(0.0);
            *s = s.max(v.abs());
        }
    }
    let value = sups.values().sum();
    Ok(MultiNormReport {
        value,
        sups,
        points_per_dim: k,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uni(s: &str) -> Expr {
        Expr::univariate(s).unwrap()
    }

    #[test]
    fn univariate_examples() {
        let g = GridConfig::default();
        let flat = JacobiWeight::unweighted();
        for r in 1..5 {
            assert!((sobolev_norm(&uni("1"), r, &flat, &g).unwrap() - 1.0).abs() < 1e-15);
        }
        // sampled up to the endpoint gap
        assert!((sobolev_norm(&uni("x"), 1, &flat, &g).unwrap() - 2.0).abs() < 1e-11);
    }

    #[test]
    fn exp_second_order_against_dense_grid() {
        let g = GridConfig::default();
        let v = sobolev_norm(&uni("exp(x)"), 2, &JacobiWeight::unweighted(), &g).unwrap();
        let n = 1_000_001;
        let top = (0..n)
            .map(|i| {
                let x = -1.0 + 2.0 * i as f64 / (n - 1) as f64;
                x.exp() * (1.0 - x * x)
            })
            .fold(0.0, f64::max);
        let oracle = std::f64::consts::E + top;
        assert!((v - oracle).abs() < 1e-10 * oracle, "{v} vs {oracle}");
    }

    #[test]
    fn multivariate_examples() {
        let g = GridConfig::default();
        let c = Expr::outer("-3.5", 2).unwrap();
        let rep = multivariate_sobolev_norm(&c, 3, &[(-1.0, 1.0), (0.0, 2.0)], &g).unwrap();
        assert_eq!(rep.value, 3.5);

        let y1 = Expr::outer("y1", 1).unwrap();
        let rep = multivariate_sobolev_norm(&y1, 1, &[(-1.0, 1.0)], &g).unwrap();
        assert_eq!(rep.value, 2.0);

        let prod = Expr::outer("y1*y2", 2).unwrap();
        let rep = multivariate_sobolev_norm(&prod, 2, &[(-1.0, 1.0), (-1.0, 1.0)], &g).unwrap();
        assert_eq!(rep.value, 4.0);
        assert_eq!(rep.sups[&vec![1, 1]], 1.0);
        assert_eq!(rep.sups[&vec![2, 0]], 0.0);
    }

    #[test]
    fn tensor_budget() {
        let g = GridConfig::default();
        assert_eq!(tensor_points_per_dim(1, &g), 4097);
        assert_eq!(tensor_points_per_dim(2, &g), 141);
        assert_eq!(tensor_points_per_dim(4, &g), 11);
        let f = Expr::outer("y1", 5).unwrap();
        assert!(matches!(
            multivariate_sobolev_norm(&f, 1, &[(0.0, 1.0); 5], &g),
            Err(Error::ResourceLimit { .. })
        ));
    }
}
