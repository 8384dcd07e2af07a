//! Truncated Taylor arithmetic. A jet carries f(x0), f'(x0), ... through
//! every operation, so derivatives of any order come out exact to rounding.

use compose_approx::jets::{jet_compose, jet_lift, jetn_partials, Layout};
use compose_approx::{Expr, JetN, Numeric};

fn main() -> compose_approx::Result<()> {
    // d^k/dx^k of sin(x) * exp(x) at 0.3, by hand-written jet code
    let x = jet_lift(0.3, 6);
    let y = x.sin()?.mul(&x.exp()?)?;
    println!("sin(x) exp(x) at 0.3: {:?}", y.derivatives());

    // composition of two series
    let inner = Expr::univariate("x^2 + 0.5")?.eval_jet1(0.0, 4)?;
    let outer = Expr::univariate("log(x)")?.eval_jet1(inner.derivative(0), 4)?;
    println!("log(x^2 + 1/2) at 0: {:?}", jet_compose(&outer, &inner)?.derivatives());

    // multivariate partials up to total order 3
    let layout = Layout::shared(2, 3);
    let (a, b) = (JetN::variable(0.2, 0, &layout), JetN::variable(-0.4, 1, &layout));
    let prod = a.mul(&b)?.exp()?;
    println!("partials of exp(y1 y2) at (0.2, -0.4):");
    for (ell, v) in prod.partials() {
        println!("  D^{ell:?} = {v:.10}");
    }

    // the same through the expression evaluator
    let f = Expr::outer("exp(y1*y2)", 2)?;
    let j = jetn_partials(&f, &[0.2, -0.4], 3)?;
    println!("D^[1, 2] via expression: {:.10}", j.partial(&[1, 2]).unwrap());
    Ok(())
}
