use super::weight::JacobiWeight;
use crate::error::{Error, Result};

/// Euler beta function `B(a, b)` for `a, b > 0`.
pub fn beta(a: f64, b: f64) -> Result<f64> {
    statrs::function::beta::checked_beta(a, b)
        .map_err(|e| Error::arg(format!("beta({a}, {b}): {e}")))
}

fn ln_factorial(k: usize) -> f64 {
    (2..=k).map(|i| (i as f64).ln()).sum()
}

/// One-step constant `C(k)` of the weighted derivative estimate
/// `‖f^{(k)} φ^k u‖ ≤ C(k) (‖f u‖ + ‖f^{(k+1)} φ^{k+1} u‖)`.
pub fn lemma_constant(k: usize, w: &JacobiWeight) -> Result<f64> {
    if k == 0 {
        return Err(Error::arg("derivative order k must be positive"));
    }
    w.require_admissible()?;
    let kf = k as f64;
    // k^k/k! and k^{k+1} in log form to stay finite for larger k
    let ln_kk = kf * kf.ln();
    let ratio = (ln_kk - ln_factorial(k)).exp();
    let edge = |e: f64| (e + kf) * 2f64.ln() + ln_kk + kf.ln() - (1.0 - e).ln();
    let inner = |e: f64| -> Result<f64> { Ok(ratio * 2f64.powf(1.5 * kf + e) * beta(1.0 - e, 0.5)?) };
    let (g, d) = (w.gamma(), w.delta());
    Ok([edge(g).exp(), edge(d).exp(), inner(g)?, inner(d)?]
        .into_iter()
        .fold(0.0, f64::max))
}

/// Coefficients `(a, b)` of the unfolded estimate
/// `‖f^{(k)} φ^k u‖ ≤ a ‖f u‖ + b ‖f^{(r)} φ^r u‖`, obtained by applying the
/// one-step estimate for `j = k, …, r−1`.
pub fn chained_coefficients(r: usize, k: usize, w: &JacobiWeight) -> Result<(f64, f64)> {
    if !(0 < k && k < r) {
        return Err(Error::arg(format!("need 0 < k < r, got k = {k}, r = {r}")));
    }
    let mut prod = 1.0;
    let mut base = 0.0;
    for j in k..r {
        prod *= lemma_constant(j, w)?;
        base += prod;
    }
    Ok((base, prod))
}

/// Single constant `C` with `‖f^{(k)} φ^k u‖ ≤ C (‖f u‖ + ‖f^{(r)} φ^r u‖)`:
/// the larger of the two [`chained_coefficients`].
pub fn chained_lemma_constant(r: usize, k: usize, w: &JacobiWeight) -> Result<f64> {
    let (a, b) = chained_coefficients(r, k, w)?;
    Ok(a.max(b))
}
