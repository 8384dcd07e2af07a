use crate::error::{Error, Result};

/// Arithmetic needed to evaluate an expression tree.
///
/// Implemented for plain `f64` and for the jet types, so one evaluator
/// produces values, univariate derivatives, or mixed partials.
pub trait Numeric: Sized + Clone {
    /// A constant with the same shape (order, dimension) as `self`.
    fn constant_like(&self, c: f64) -> Self;
    /// Constant term.
    fn value(&self) -> f64;

    fn add(&self, rhs: &Self) -> Result<Self>;
    fn sub(&self, rhs: &Self) -> Result<Self>;
    fn mul(&self, rhs: &Self) -> Result<Self>;
    fn div(&self, rhs: &Self) -> Result<Self>;
    fn neg(&self) -> Self;
    fn powf(&self, p: f64) -> Result<Self>;
    fn exp(&self) -> Result<Self>;
    fn ln(&self) -> Result<Self>;
    fn sin(&self) -> Result<Self>;
    fn cos(&self) -> Result<Self>;
    fn sqrt(&self) -> Result<Self>;
}

/// Exponents that are exact small integers take the integer-power path.
pub(crate) fn integer_exponent(p: f64) -> Option<i32> {
    if p.fract() == 0.0 && p.abs() <= i32::MAX as f64 {
        Some(p as i32)
    } else {
        None
    }
}

impl Numeric for f64 {
    fn constant_like(&self, c: f64) -> Self {
        c
    }

    fn value(&self) -> f64 {
        *self
    }

    fn add(&self, rhs: &Self) -> Result<Self> {
        Ok(self + rhs)
    }

    fn sub(&self, rhs: &Self) -> Result<Self> {
        Ok(self - rhs)
    }

    fn mul(&self, rhs: &Self) -> Result<Self> {
        Ok(self * rhs)
    }

    fn div(&self, rhs: &Self) -> Result<Self> {
        if *rhs == 0.0 {
            return Err(Error::Domain {
                func: "division",
                value: *rhs,
            });
        }
        Ok(self / rhs)
    }

    fn neg(&self) -> Self {
        -self
    }

    fn powf(&self, p: f64) -> Result<Self> {
        match integer_exponent(p) {
            Some(k) if k < 0 && *self == 0.0 => Err(Error::Domain {
                func: "pow",
                value: *self,
            }),
            Some(_) => Ok(f64::powf(*self, p)),
            None if *self < 0.0 => Err(Error::Domain {
                func: "pow",
                value: *self,
            }),
            None => Ok(f64::powf(*self, p)),
        }
    }

    fn exp(&self) -> Result<Self> {
        Ok(f64::exp(*self))
    }

    fn ln(&self) -> Result<Self> {
        if *self <= 0.0 {
            return Err(Error::Domain {
                func: "log",
                value: *self,
            });
        }
        Ok(f64::ln(*self))
    }

    fn sin(&self) -> Result<Self> {
        Ok(f64::sin(*self))
    }

    fn cos(&self) -> Result<Self> {
        Ok(f64::cos(*self))
    }

    fn sqrt(&self) -> Result<Self> {
        if *self < 0.0 {
            return Err(Error::Domain {
                func: "sqrt",
                value: *self,
            });
        }
        Ok(f64::sqrt(*self))
    }
}
