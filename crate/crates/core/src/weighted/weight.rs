use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Jacobi weight `u(x) = (1 − x)^γ (1 + x)^δ` on `[−1, 1]`.
///
/// [`JacobiWeight::new`] enforces `0 ≤ γ, δ < 1`, the range in which the
/// derivative estimates hold. Powers of an admissible weight (for example
/// `u^r`) may leave that range; they are fine for evaluating norms but are
/// rejected wherever an admissible weight is required.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JacobiWeight {
    gamma: f64,
    delta: f64,
}

impl JacobiWeight {
    pub fn new(gamma: f64, delta: f64) -> Result<Self> {
        for (name, v) in [("gamma", gamma), ("delta", delta)] {
            if !(0.0..1.0).contains(&v) {
                return Err(Error::arg(format!("{name} = {v} must lie in [0, 1)")));
            }
        }
        Ok(JacobiWeight { gamma, delta })
    }

    /// `u ≡ 1`.
    pub fn unweighted() -> Self {
        JacobiWeight {
            gamma: 0.0,
            delta: 0.0,
        }
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn is_unweighted(&self) -> bool {
        self.gamma == 0.0 && self.delta == 0.0
    }

    /// Both exponents in `[0, 1)`.
    pub fn is_admissible(&self) -> bool {
        (0.0..1.0).contains(&self.gamma) && (0.0..1.0).contains(&self.delta)
    }

    pub(crate) fn require_admissible(&self) -> Result<()> {
        if self.is_admissible() {
            Ok(())
        } else {
            Err(Error::arg(format!(
                "weight exponents ({}, {}) must lie in [0, 1)",
                self.gamma, self.delta
            )))
        }
    }

    /// `u^c`, exponents `(cγ, cδ)`.
    pub fn power(&self, c: f64) -> Self {
        assert!(c >= 0.0 && c.is_finite(), "weight power must be finite and nonnegative");
        JacobiWeight {
            gamma: c * self.gamma,
            delta: c * self.delta,
        }
    }

    /// `u^{1/r}`.
    pub fn root(&self, r: usize) -> Self {
        assert!(r > 0, "root order must be positive");
        self.power(1.0 / r as f64)
    }

    /// `u(x)` for `x ∈ [−1, 1]`.
    pub fn eval(&self, x: f64) -> Result<f64> {
        check_unit(x)?;
        Ok(self.eval_unchecked(x))
    }

    #[inline]
    pub(crate) fn eval_unchecked(&self, x: f64) -> f64 {
        let mut u = 1.0;
        if self.gamma != 0.0 {
            u *= (1.0 - x).powf(self.gamma);
        }
        if self.delta != 0.0 {
            u *= (1.0 + x).powf(self.delta);
        }
        u
    }
}

fn check_unit(x: f64) -> Result<()> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::arg(format!("x = {x} outside [-1, 1]")));
    }
    Ok(())
}

/// `u(x)`; see [`JacobiWeight::eval`].
pub fn weight_eval(w: &JacobiWeight, x: f64) -> Result<f64> {
    w.eval(x)
}

/// `φ(x) = √(1 − x²)`.
pub fn phi_eval(x: f64) -> Result<f64> {
    check_unit(x)?;
    Ok(phi_unchecked(x))
}

#[inline]
pub(crate) fn phi_unchecked(x: f64) -> f64 {
    ((1.0 - x) * (1.0 + x)).sqrt()
}
