use serde::Serialize;

use crate::error::Result;
use crate::expr::Expr;
use crate::weighted::JacobiWeight;

/// A named univariate test function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CorpusFn {
    pub name: &'static str,
    pub src: &'static str,
}

impl CorpusFn {
    pub fn expr(&self) -> Result<Expr> {
        Expr::univariate(self.src)
    }
}

const fn cf(name: &'static str, src: &'static str) -> CorpusFn {
    CorpusFn { name, src }
}

/// Ten functions, smooth or with algebraic endpoint behaviour, all with
/// bounded `f^{(r)} φ^r` for `r ≤ 5`.
pub const LEMMA_CORPUS: [CorpusFn; 10] = [
    cf("exp", "exp(x)"),
    cf("cos3", "cos(3*x)"),
    cf("sin-quad", "sin(x) + x^2"),
    cf("runge", "1/(1 + 4*x^2)"),
    cf("log-shift", "log(3 + x)"),
    cf("plus-5-2", "(1+x)^2.5"),
    cf("minus-7-2", "(1-x)^3.5"),
    cf("quintic", "x^5 - x"),
    cf("gauss", "exp(-x^2)"),
    cf("mixed", "sqrt(2 - x)*sin(2*x)"),
];

/// The sixteen weights `(γ, δ) ∈ {0, 1/4, 1/2, 3/4}²`.
pub fn weight_grid() -> Vec<JacobiWeight> {
    let e = [0.0, 0.25, 0.5, 0.75];
    e.iter()
        .flat_map(|&g| e.iter().map(move |&d| JacobiWeight::new(g, d).expect("in range")))
        .collect()
}

/// Function and weight with `f ∈ W^r_u` for `r ≤ 3`:
/// each has an endpoint term `(1 ± x)^α` with `α` plus the matching weight
/// exponent at least `3/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FavardCase {
    pub f: CorpusFn,
    pub gamma: f64,
    pub delta: f64,
}

impl FavardCase {
    pub fn weight(&self) -> JacobiWeight {
        JacobiWeight::new(self.gamma, self.delta).expect("in range")
    }
}

pub const FAVARD_CORPUS: [FavardCase; 5] = [
    FavardCase {
        f: cf("plus-3-2", "(1+x)^1.5"),
        gamma: 0.0,
        delta: 0.0,
    },
    FavardCase {
        f: cf("minus-5-2", "(1-x)^2.5"),
        gamma: 0.0,
        delta: 0.0,
    },
    FavardCase {
        f: cf("exp-plus-3-2", "exp(x)*(1+x)^1.5"),
        gamma: 0.0,
        delta: 0.0,
    },
    FavardCase {
        f: cf("plus-5-4-weighted", "(1+x)^1.25*cos(x)"),
        gamma: 0.0,
        delta: 0.25,
    },
    FavardCase {
        f: cf("minus-3-4-weighted", "(1-x)^0.75*exp(x)"),
        gamma: 0.75,
        delta: 0.0,
    },
];

/// A composite-rate case: outer `f` in `y1..yn`, inner `g_j` in `x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateCase {
    pub name: &'static str,
    pub f: &'static str,
    pub g: &'static [&'static str],
    pub r: usize,
}

impl RateCase {
    pub fn exprs(&self) -> Result<(Expr, Vec<Expr>)> {
        let f = Expr::outer(self.f, self.g.len())?;
        let g = self.g.iter().map(|s| Expr::univariate(s)).collect::<Result<_>>()?;
        Ok((f, g))
    }
}

/// Inner functions with exactly `W^r` smoothness: `(1+x)^{r+1/2}` has a
/// bounded `r`-th derivative times `φ^r` but not one order more.
pub const RATE_CORPUS: [RateCase; 3] = [
    RateCase {
        name: "exp-of-plus-7-2",
        f: "exp(y1)",
        g: &["(1+x)^3.5"],
        r: 3,
    },
    RateCase {
        name: "sin-of-minus-5-2",
        f: "sin(y1)",
        g: &["(1-x)^2.5"],
        r: 2,
    },
    RateCase {
        name: "product-pair",
        f: "y1*y2 + y2",
        g: &["(1+x)^2.5", "cos(x)"],
        r: 2,
    },
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_parses() {
        for c in LEMMA_CORPUS {
            c.expr().unwrap();
        }
        for c in FAVARD_CORPUS {
            c.f.expr().unwrap();
            c.weight();
        }
        for c in RATE_CORPUS {
            c.exprs().unwrap();
        }
        assert_eq!(weight_grid().len(), 16);
    }
}
