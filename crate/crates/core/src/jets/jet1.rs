use super::series;
use crate::error::{Error, Result};
use crate::numeric::Numeric;

/// Truncated Taylor expansion of a univariate function at a point.
///
/// `coeffs[i] = f⁽ⁱ⁾(x₀) / i!`. Storing normalized coefficients keeps the
/// factorial growth out of the arithmetic; [`Jet1::derivative`] multiplies it
/// back in.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet1 {
    coeffs: Vec<f64>,
}

impl Jet1 {
    /// Jet from normalized Taylor coefficients. Panics on an empty vector.
    pub fn from_coeffs(coeffs: Vec<f64>) -> Self {
        assert!(!coeffs.is_empty(), "a jet needs at least the constant term");
        Jet1 { coeffs }
    }

    /// Jet from derivative values `f(x₀), f'(x₀), …`.
    pub fn from_derivatives(derivs: &[f64]) -> Self {
        let mut fact = 1.0;
        let coeffs = derivs
            .iter()
            .enumerate()
            .map(|(i, d)| {
                if i > 0 {
                    fact *= i as f64;
                }
                d / fact
            })
            .collect();
        Jet1::from_coeffs(coeffs)
    }

    /// The identity function's jet at `x0`.
    pub fn lift(x0: f64, order: usize) -> Self {
        let mut coeffs = vec![0.0; order + 1];
        coeffs[0] = x0;
        if order > 0 {
            coeffs[1] = 1.0;
        }
        Jet1 { coeffs }
    }

    pub fn constant(v: f64, order: usize) -> Self {
        let mut coeffs = vec![0.0; order + 1];
        coeffs[0] = v;
        Jet1 { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// `f⁽ⁱ⁾(x₀) = i!·cᵢ`.
    pub fn derivative(&self, i: usize) -> f64 {
        let fact: f64 = (1..=i).map(|j| j as f64).product();
        fact * self.coeffs[i]
    }

    /// All derivatives `f(x₀), …, f⁽ʳ⁾(x₀)`.
    pub fn derivatives(&self) -> Vec<f64> {
        let mut fact = 1.0;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if i > 0 {
                    fact *= i as f64;
                }
                fact * c
            })
            .collect()
    }

    fn check(&self, rhs: &Jet1) -> Result<()> {
        if self.order() != rhs.order() {
            return Err(Error::arg(format!(
                "jet orders differ: {} vs {}",
                self.order(),
                rhs.order()
            )));
        }
        Ok(())
    }

    /// Jet of `outer ∘ inner` at the base point of `inner`.
    ///
    /// `outer` must be the expansion of the outer function at `inner.value()`.
    pub fn compose(outer: &Jet1, inner: &Jet1) -> Result<Jet1> {
        outer.check(inner)?;
        let mut shift = inner.coeffs.clone();
        shift[0] = 0.0;
        let r = outer.order();
        // Horner in the shifted inner series; powers of a series with zero
        // constant term vanish beyond the truncation order.
        let mut acc = vec![0.0; r + 1];
        acc[0] = outer.coeffs[r];
        for k in (0..r).rev() {
            acc = series::mul(&acc, &shift, &());
            acc[0] += outer.coeffs[k];
        }
        Ok(Jet1 { coeffs: acc })
    }
}

impl Numeric for Jet1 {
    fn constant_like(&self, c: f64) -> Self {
        Jet1::constant(c, self.order())
    }

    fn value(&self) -> f64 {
        self.coeffs[0]
    }

    fn add(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        Ok(Jet1 {
            coeffs: series::add(&self.coeffs, &rhs.coeffs),
        })
    }

    fn sub(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        Ok(Jet1 {
            coeffs: series::sub(&self.coeffs, &rhs.coeffs),
        })
    }

    fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        Ok(Jet1 {
            coeffs: series::mul(&self.coeffs, &rhs.coeffs, &()),
        })
    }

    fn div(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        Ok(Jet1 {
            coeffs: series::div(&self.coeffs, &rhs.coeffs, &())?,
        })
    }

    fn neg(&self) -> Self {
        Jet1 {
            coeffs: series::neg(&self.coeffs),
        }
    }

    fn powf(&self, p: f64) -> Result<Self> {
        Ok(Jet1 {
            coeffs: series::powf(&self.coeffs, p, &())?,
        })
    }

    fn exp(&self) -> Result<Self> {
        Ok(Jet1 {
            coeffs: series::exp(&self.coeffs, &()),
        })
    }

    fn ln(&self) -> Result<Self> {
        Ok(Jet1 {
            coeffs: series::ln(&self.coeffs, &())?,
        })
    }

    fn sin(&self) -> Result<Self> {
        Ok(Jet1 {
            coeffs: series::sin_cos(&self.coeffs, &()).0,
        })
    }

    fn cos(&self) -> Result<Self> {
        Ok(Jet1 {
            coeffs: series::sin_cos(&self.coeffs, &()).1,
        })
    }

    fn sqrt(&self) -> Result<Self> {
        Ok(Jet1 {
            coeffs: series::sqrt(&self.coeffs, &())?,
        })
    }
}
