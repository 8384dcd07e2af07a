//! Jacobi-weighted sup norms and the Sobolev-type norms built from them.

use compose_approx::weighted::{
    derivative_norm, multivariate_sobolev_norm, sobolev_norm_report, weighted_sup_norm, GridConfig, JacobiWeight,
};
use compose_approx::Expr;

fn main() -> compose_approx::Result<()> {
    let grid = GridConfig::default();
    let w = JacobiWeight::new(0.5, 0.25)?;

    let f = Expr::univariate("(1+x)^1.5*cos(x)")?;
    let sup = weighted_sup_norm(&|x: f64| f.eval_at(x), &w, 0, &grid)?;
    println!("||f u|| = {:.12} at x = {:.6} (refined: {})", sup.value, sup.argmax, sup.refined);

    for k in 1..=3 {
        let d = derivative_norm(&f, k, &w, &grid)?;
        println!("||f^({k}) phi^{k} u|| = {:.12}", d.value);
    }
    let s = sobolev_norm_report(&f, 3, &w, &grid)?;
    println!("W^3_u norm = {:.12} + {:.12} = {:.12}", s.base.value, s.top.value, s.value);

    // outer functions are measured on a box, without weight
    let outer = Expr::outer("y1*y2 + sin(y2)", 2)?;
    let m = multivariate_sobolev_norm(&outer, 2, &[(-0.5, 1.5), (0.0, 2.0)], &grid)?;
    println!("\nbox norm of {outer}: {:.10} ({} points per side)", m.value, m.points_per_dim);
    for (ell, v) in &m.sups {
        println!("  sup |D^{ell:?}| = {v:.10}");
    }
    Ok(())
}
