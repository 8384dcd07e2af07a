//! The derivative bound for a composition: the weighted r-th derivative of
//! f o g against n^r B_r ||f|| prod ||g_j||^{s_j}.

use compose_approx::harness::{select_exponents, verify_composite_bound};
use compose_approx::weighted::{GridConfig, JacobiWeight};
use compose_approx::Expr;

fn main() -> compose_approx::Result<()> {
    let sel = select_exponents(&[0.4, 1.0, 2.5], 3);
    println!("norms {:?} -> exponents {:?}, product {}", sel.norms, sel.exponents, sel.product());

    let grid = GridConfig::default();
    let w = JacobiWeight::new(0.5, 0.5)?;
    let f = Expr::outer("exp(y1)*y2", 2)?;
    let g = [Expr::univariate("(1+x)^2.5")?, Expr::univariate("sin(x)")?];
    for r in 1..=3 {
        let rec = verify_composite_bound(&f, &g, r, &w, None, &grid)?;
        println!(
            "r={r}: lhs {:.6e}, ||f|| {:.4e} on {:?}, s {:?}, bound/C {:.4e}, ratio {:.4e}",
            rec.lhs, rec.f_norm, rec.bounds, rec.exponents.exponents, rec.rhs_sans_c, rec.ratio
        );
    }
    Ok(())
}
