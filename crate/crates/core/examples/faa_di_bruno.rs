//! Derivatives of f(g_1(x), ..., g_n(x)) from the explicit expansion,
//! checked against plain jet propagation.

use compose_approx::faadibruno::{composite_derivative_1d, composite_derivative_1d_bell, composite_jet, CompositeEvaluator};
use compose_approx::jets::composite_series;
use compose_approx::Expr;

fn main() -> compose_approx::Result<()> {
    // one inner function, derivatives supplied by hand: (exp o sin)''' at 0
    let f = [1.0; 4];
    let g = [0.0, 1.0, 0.0, -1.0];
    println!(
        "(exp o sin)''' at 0: partitions {}, Bell form {}",
        composite_derivative_1d(&f, &g, 3)?,
        composite_derivative_1d_bell(&f, &g, 3)?
    );

    // two inner functions from expressions
    let inner = vec![Expr::univariate("cos(x)")?, Expr::univariate("x^3 - x")?];
    let outer = Expr::outer("y1*exp(y2) + y2^2", 2)?;
    let x0 = 0.4;
    let expansion = composite_jet(&outer, &inner, x0, 6)?;
    let jets = composite_series(&outer, &inner, x0, 6)?.derivatives();
    for (k, (a, b)) in expansion.iter().zip(&jets).enumerate() {
        println!("  order {k}: expansion {a:+.15e}  jets {b:+.15e}");
    }

    // repeated evaluation reuses the expansion plans
    let ev = CompositeEvaluator::new(&outer, &inner, 4)?;
    for x in [-0.9, 0.0, 0.9] {
        println!("  x={x:+}: value {:.6}, 4th derivative {:.6}", ev.value(x)?, ev.top_derivative(x)?);
    }
    Ok(())
}
