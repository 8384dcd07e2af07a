//! Chebyshev interpolation at first-kind nodes with Clenshaw evaluation.

use compose_approx::minimax::{cheb_interpolant, ChebPoly};

fn main() -> compose_approx::Result<()> {
    let runge = |x: f64| Ok(1.0 / (1.0 + 25.0 * x * x));
    for m in [8, 16, 32, 64, 128] {
        let p = cheb_interpolant(&runge, m)?;
        let err = (0..=2000)
            .map(|i| -1.0 + i as f64 / 1000.0)
            .map(|x| (runge(x).unwrap() - p.eval(x)).abs())
            .fold(0.0, f64::max);
        println!("m={m:3}: max error {err:.3e}, |c_m| {:.3e}", p.coeffs()[m].abs());
    }

    // T_0 + T_2/2 evaluated directly
    let p = ChebPoly::new(vec![1.0, 0.0, 0.5]);
    println!("1 + T_2(x)/2 at 0.3 = {} (expect {})", p.eval(0.3), 1.0 + (2.0 * 0.09 - 1.0) / 2.0);
    Ok(())
}
