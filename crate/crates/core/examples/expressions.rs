//! The expression language: + - * / ^, unary minus, parentheses, numeric
//! constants, pi, e and the functions exp, log, sin, cos, sqrt.
//!
//! ```bash
//! cargo run --example expressions -- "sqrt(2 - x)*sin(2*x)" 0.25
//! ```

use compose_approx::Expr;

fn main() {
    let mut args = std::env::args().skip(1);
    let src = args.next().unwrap_or_else(|| "-x^2 + exp(x)/(1 + x^2)".into());
    let x: f64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(0.5);

    match Expr::univariate(&src) {
        Ok(f) => {
            println!("parsed: {f}");
            for r in 0..=4 {
                match f.derivative_at(x, r) {
                    Ok(v) => println!("  f^({r})({x}) = {v}"),
                    Err(e) => println!("  f^({r})({x}): {e}"),
                }
            }
        }
        Err(e) => println!("{e}"),
    }

    // diagnostics
    for bad in ["x +", "x^x", "foo(x)", "2 ** x"] {
        println!("{bad:>8}: {}", Expr::univariate(bad).unwrap_err());
    }
    let two = Expr::outer("y1*sin(y2)", 2).unwrap();
    println!("{two} at (2, pi/2) = {}", two.eval_scalar(&[2.0, std::f64::consts::FRAC_PI_2]).unwrap());
}
