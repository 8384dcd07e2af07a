//! Weighted best polynomial approximation by the Remez exchange.
//!
//! ```bash
//! cargo run --release --example best_approximation -- "(1+x)^1.5" 12 0 0.5
//! ```

use compose_approx::harness::RunStatus;
use compose_approx::minimax::{best_approximation, RemezOptions};
use compose_approx::weighted::JacobiWeight;
use compose_approx::Expr;

fn main() -> compose_approx::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let src = args.first().map_or("exp(x)*(1+x)^1.5", String::as_str);
    let m: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(10);
    let gamma: f64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(0.0);
    let delta: f64 = args.get(3).and_then(|s| s.parse().ok()).unwrap_or(0.25);

    let f = Expr::univariate(src)?;
    let w = JacobiWeight::new(gamma, delta)?;
    let rep = best_approximation(&f, m, &w, &RemezOptions::default())?;
    println!("E_{m}({f}) with gamma={gamma}, delta={delta}");
    println!(
        "  error {:.12e}, levelled {:.12e}, {} iterations, {:?}",
        rep.error,
        rep.levelled,
        rep.iterations,
        RunStatus::classify(&rep)
    );
    println!("  equioscillates to 1e-8: {}", rep.equioscillates(1e-8));
    for e in &rep.extrema {
        println!("    x = {:+.12}  residual {:+.6e}", e.x, e.residual);
    }
    println!("  Chebyshev coefficients: {:?}", rep.poly.coeffs());
    Ok(())
}
