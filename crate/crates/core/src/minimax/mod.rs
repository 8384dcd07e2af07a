//! Weighted best polynomial approximation.
//!
//! [`weighted_remez`] estimates `E_m(f)_u = inf_P ‖(f − P)u‖_∞` by a Remez
//! exchange whose extrema are located on a Chebyshev grid and then polished
//! off the grid. [`cheb_interpolant`] is the cheap near-best alternative.

mod cheb;
mod remez;

pub use cheb::{cheb_interpolant, ChebPoly};
pub use remez::{weighted_remez, ApproxReport, Extremum, RemezOptions};

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::weighted::{derivative_norm, GridConfig, JacobiWeight};

/// `‖f^{(r)} φ^r u‖_∞ / m^r`, the Favard bound without its constant.
pub fn favard_rhs(f: &Expr, r: usize, m: usize, w: &JacobiWeight, grid: &GridConfig) -> Result<f64> {
    if r == 0 || m < r {
        return Err(Error::arg(format!("need m >= r >= 1, got m = {m}, r = {r}")));
    }
    let top = derivative_norm(f, r, w, grid)?;
    Ok(top.value / (m as f64).powi(r as i32))
}

/// [`weighted_remez`] applied to a univariate expression.
pub fn best_approximation(f: &Expr, m: usize, w: &JacobiWeight, opts: &RemezOptions) -> Result<ApproxReport> {
    if f.arity() != 1 {
        return Err(Error::arg("best approximation needs a univariate expression"));
    }
    weighted_remez(&|x| f.eval_at(x), m, w, opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn favard_examples() {
        let g = GridConfig::default();
        let flat = JacobiWeight::unweighted();
        let lin = Expr::univariate("3*x - 1").unwrap();
        assert_eq!(favard_rhs(&lin, 2, 5, &flat, &g).unwrap(), 0.0);

        let e = Expr::univariate("exp(x)").unwrap();
        let v = favard_rhs(&e, 1, 10, &flat, &g).unwrap();
        let n = 1_000_001;
        let oracle = (0..n)
            .map(|i| {
                let x = -1.0 + 2.0 * i as f64 / (n - 1) as f64;
                x.exp() * (1.0 - x * x).sqrt()
            })
            .fold(0.0, f64::max)
            / 10.0;
        assert!((v - oracle).abs() < 1e-10 * oracle);

        let scaled = Expr::univariate("-2.5*exp(x)").unwrap();
        let s = favard_rhs(&scaled, 1, 10, &flat, &g).unwrap();
        assert!((s - 2.5 * v).abs() < 1e-14 * s);
        assert!(favard_rhs(&e, 3, 2, &flat, &g).is_err());
    }

    #[test]
    fn expression_front_end() {
        let f = Expr::univariate("x^2").unwrap();
        let r = best_approximation(&f, 1, &JacobiWeight::unweighted(), &RemezOptions::default()).unwrap();
        assert!((r.error - 0.5).abs() < 1e-8);
    }
}
