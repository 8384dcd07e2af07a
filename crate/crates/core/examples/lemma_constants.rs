//! The constants bounding intermediate derivatives by the two ends of the
//! Sobolev norm, and a direct check of the resulting inequality.

use compose_approx::harness::verify_lemma;
use compose_approx::weighted::{chained_coefficients, chained_lemma_constant, lemma_constant, GridConfig, JacobiWeight};
use compose_approx::Expr;

fn main() -> compose_approx::Result<()> {
    let w = JacobiWeight::new(0.25, 0.5)?;
    println!("single-step constants C(k):");
    for k in 1..=5 {
        println!("  k={k}: {:.6e}", lemma_constant(k, &w)?);
    }
    println!("chained constants for r=5:");
    for k in 1..5 {
        let (a, b) = chained_coefficients(5, k, &w)?;
        println!("  k={k}: a={a:.4e} b={b:.4e} -> {:.4e}", chained_lemma_constant(5, k, &w)?);
    }

    let f = Expr::univariate("(1-x)^3.5")?;
    let rec = verify_lemma(&f, 4, 2, &w, &GridConfig::default())?;
    println!(
        "\n{f}, r=4, k=2: lhs {:.6e} <= {:.4e} * ({:.6e} + {:.6e}) = {:.6e}: {}",
        rec.lhs, rec.constant, rec.base_norm, rec.top_norm, rec.rhs, rec.holds
    );
    Ok(())
}
