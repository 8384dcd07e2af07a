use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Polynomial in the Chebyshev basis, `Σ_j c_j T_j(x)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChebPoly {
    coeffs: Vec<f64>,
}

impl ChebPoly {
    /// Panics on an empty coefficient vector.
    pub fn new(coeffs: Vec<f64>) -> Self {
        assert!(!coeffs.is_empty(), "a polynomial needs at least one coefficient");
        ChebPoly { coeffs }
    }

    pub fn zero(m: usize) -> Self {
        ChebPoly::new(vec![0.0; m + 1])
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Clenshaw recurrence.
    pub fn eval(&self, x: f64) -> f64 {
        let (mut b1, mut b2) = (0.0, 0.0);
        let x2 = 2.0 * x;
        for &c in self.coeffs[1..].iter().rev() {
            let b0 = c + x2 * b1 - b2;
            b2 = b1;
            b1 = b0;
        }
        self.coeffs[0] + x * b1 - b2
    }
}

/// `T_j(x)` for `j = 0..=m`.
pub(crate) fn cheb_basis(x: f64, m: usize, out: &mut Vec<f64>) {
    out.clear();
    out.push(1.0);
    if m >= 1 {
        out.push(x);
    }
    for j in 2..=m {
        let t = 2.0 * x * out[j - 1] - out[j - 2];
        out.push(t);
    }
}

/// Interpolant of degree `m` at the Chebyshev points of the first kind.
pub fn cheb_interpolant(f: &(impl Fn(f64) -> Result<f64> + ?Sized), m: usize) -> Result<ChebPoly> {
    let n = m + 1;
    let theta: Vec<f64> = (0..n)
        .map(|k| std::f64::consts::PI * (k as f64 + 0.5) / n as f64)
        .collect();
    let vals: Vec<f64> = theta
        .iter()
        .map(|&t| {
            let x = t.cos();
            let v = f(x)?;
            if !v.is_finite() {
                return Err(Error::NonFinite { x, value: v });
            }
            Ok(v)
        })
        .collect::<Result<_>>()?;
    let coeffs = (0..n)
        .map(|j| {
            let s: f64 = vals
                .iter()
                .zip(&theta)
                .map(|(v, t)| v * (j as f64 * t).cos())
                .sum();
            let c = 2.0 * s / n as f64;
            if j == 0 {
                0.5 * c
            } else {
                c
            }
        })
        .collect();
    Ok(ChebPoly::new(coeffs))
}
