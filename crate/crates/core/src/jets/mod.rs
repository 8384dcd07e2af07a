//! Truncated Taylor-series ("jet") arithmetic.
//!
//! [`Jet1`] carries the derivatives of a univariate function at a point,
//! [`JetN`] all mixed partials up to a total degree. Both implement
//! [`Numeric`](crate::numeric::Numeric), so any [`Expr`](crate::expr::Expr)
//! can be evaluated on them directly.

mod jet1;
mod jetn;
pub(crate) mod series;

pub use jet1::Jet1;
pub use jetn::{JetN, Layout};

use crate::error::{Error, Result};
use crate::expr::Expr;

/// Caps on multivariate jets.
pub const MAX_JET_DIM: usize = 6;
pub const MAX_JET_ORDER: usize = 10;

/// Identity jet at `x0`.
pub fn jet_lift(x0: f64, order: usize) -> Jet1 {
    Jet1::lift(x0, order)
}

/// Jet of `outer ∘ inner`; see [`Jet1::compose`].
pub fn jet_compose(outer: &Jet1, inner: &Jet1) -> Result<Jet1> {
    Jet1::compose(outer, inner)
}

/// All mixed partials `D^ℓ f(y0)` with `|ℓ| ≤ order`.
pub fn jetn_partials(f: &Expr, y0: &[f64], order: usize) -> Result<JetN> {
    let n = f.arity();
    if y0.len() != n {
        return Err(Error::arg(format!(
            "point has {} coordinates, expression takes {n}",
            y0.len()
        )));
    }
    if n > MAX_JET_DIM {
        return Err(Error::ResourceLimit {
            what: "jet dimension",
            cap: MAX_JET_DIM as u64,
            requested: n as u64,
        });
    }
    if order > MAX_JET_ORDER {
        return Err(Error::ResourceLimit {
            what: "jet order",
            cap: MAX_JET_ORDER as u64,
            requested: order as u64,
        });
    }
    let layout = Layout::shared(n, order);
    let vars: Vec<JetN> = y0
        .iter()
        .enumerate()
        .map(|(i, &v)| JetN::variable(v, i, &layout))
        .collect();
    f.eval(&vars)
}

/// Jet of `f(g_1(x), …, g_n(x))` at `x0`, obtained by evaluating `f` directly
/// on the inner jets. Independent of the explicit Faà di Bruno expansion.
pub fn composite_series(f: &Expr, g: &[Expr], x0: f64, order: usize) -> Result<Jet1> {
    if g.len() != f.arity() {
        return Err(Error::arg(format!(
            "outer function takes {} variables but {} inner functions were given",
            f.arity(),
            g.len()
        )));
    }
    let inner: Vec<Jet1> = g
        .iter()
        .map(|e| e.eval_jet1(x0, order))
        .collect::<Result<_>>()?;
    f.eval(&inner)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Numeric;

    #[test]
    fn partials_of_product() {
        let f = Expr::parse("y1*y2", &["y1", "y2"]).unwrap();
        let j = jetn_partials(&f, &[2.0, 3.0], 2).unwrap();
        assert_eq!(j.partial(&[0, 0]), Some(6.0));
        assert_eq!(j.partial(&[1, 1]), Some(1.0));
        assert_eq!(j.partial(&[2, 0]), Some(0.0));
    }

    #[test]
    fn partials_of_constant() {
        let f = Expr::parse("5", &["y1", "y2", "y3"]).unwrap();
        let j = jetn_partials(&f, &[0.1, 0.2, 0.3], 3).unwrap();
        for (ell, v) in j.partials() {
            let expect = if ell.iter().sum::<u32>() == 0 { 5.0 } else { 0.0 };
            assert_eq!(v, expect);
        }
    }

    #[test]
    fn caps() {
        let f = Expr::parse("y1", &["y1"]).unwrap();
        assert!(matches!(
            jetn_partials(&f, &[0.0], 11),
            Err(Error::ResourceLimit { .. })
        ));
        let names: Vec<String> = (1..=7).map(|i| format!("y{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let g = Expr::parse("y1", &refs).unwrap();
        assert!(jetn_partials(&g, &[0.0; 7], 2).is_err());
        assert!(jetn_partials(&f, &[0.0, 1.0], 2).is_err());
    }

    #[test]
    fn one_dimensional_jetn_matches_jet1_bitwise() {
        let srcs = [
            "exp(sin(x))*x^3 - 2/(1+x^2)",
            "log(2+cos(x))^2.5",
            "sqrt(3+x)*(x-1)^4/exp(x)",
        ];
        for src in srcs {
            let f = Expr::parse(src, &["x"]).unwrap();
            for &x0 in &[-0.7, 0.0, 0.4] {
                let j1 = f.eval_jet1(x0, 7).unwrap();
                let jn = jetn_partials(&f, &[x0], 7).unwrap();
                for i in 0..=7u32 {
                    let c = jn.coeff(&[i]).unwrap();
                    assert_eq!(c.to_bits(), j1.coeffs()[i as usize].to_bits(), "{src} at {x0}, coeff {i}");
                }
                assert_eq!(jn.value(), j1.value());
            }
        }
    }
}
