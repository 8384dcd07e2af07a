use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::exponents::{select_exponents, ExponentSelector};
use crate::combinatorics::bell_number;
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::faadibruno::CompositeEvaluator;
use crate::weighted::{
    chained_lemma_constant, chebyshev_lobatto, derivative_norm, multivariate_sobolev_norm, sobolev_norm,
    weighted_sup_norm, GridConfig, JacobiWeight,
};

/// Relative slack allowed in the lemma comparison.
pub const LEMMA_SLACK: f64 = 1e-9;

/// Relative widening of the sampled image of `g` on each side.
pub const BOX_MARGIN: f64 = 0.05;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaRecord {
    pub r: usize,
    pub k: usize,
    pub gamma: f64,
    pub delta: f64,
    /// `‖f^{(k)} φ^k u‖`
    pub lhs: f64,
    /// `‖f u‖`
    pub base_norm: f64,
    /// `‖f^{(r)} φ^r u‖`
    pub top_norm: f64,
    pub constant: f64,
    pub rhs: f64,
    pub holds: bool,
    pub ratio: f64,
}

fn lemma_record(r: usize, k: usize, w: &JacobiWeight, norms: &[f64]) -> Result<LemmaRecord> {
    let constant = chained_lemma_constant(r, k, w)?;
    let (lhs, base, top) = (norms[k], norms[0], norms[r]);
    let rhs = constant * (base + top);
    let ratio = if rhs > 0.0 { lhs / rhs } else { 0.0 };
    Ok(LemmaRecord {
        r,
        k,
        gamma: w.gamma(),
        delta: w.delta(),
        lhs,
        base_norm: base,
        top_norm: top,
        constant,
        rhs,
        holds: lhs <= rhs * (1.0 + LEMMA_SLACK),
        ratio,
    })
}

fn derivative_norms(f: &Expr, max_r: usize, w: &JacobiWeight, grid: &GridConfig) -> Result<Vec<f64>> {
    (0..=max_r)
        .map(|k| Ok(derivative_norm(f, k, w, grid)?.value))
        .collect()
}

/// Checks `‖f^{(k)} φ^k u‖ ≤ C (‖f u‖ + ‖f^{(r)} φ^r u‖)` with the chained constant.
pub fn verify_lemma(f: &Expr, r: usize, k: usize, w: &JacobiWeight, grid: &GridConfig) -> Result<LemmaRecord> {
    if !(0 < k && k < r) {
        return Err(Error::arg(format!("need 0 < k < r, got k = {k}, r = {r}")));
    }
    w.require_admissible()?;
    let mut norms = vec![0.0; r + 1];
    for d in [0, k, r] {
        norms[d] = derivative_norm(f, d, w, grid)?.value;
    }
    lemma_record(r, k, w, &norms)
}

/// [`verify_lemma`] for every `1 ≤ k < r ≤ max_r`, sharing the norm estimates.
pub fn lemma_sweep(f: &Expr, max_r: usize, w: &JacobiWeight, grid: &GridConfig) -> Result<Vec<LemmaRecord>> {
    w.require_admissible()?;
    let norms = derivative_norms(f, max_r, w, grid)?;
    let mut out = Vec::new();
    for r in 2..=max_r {
        for k in 1..r {
            out.push(lemma_record(r, k, w, &norms)?);
        }
    }
    Ok(out)
}

/// Sampled image of each `g_j` on `[−1, 1]`, widened by [`BOX_MARGIN`].
pub fn image_box(g: &[Expr], grid: &GridConfig) -> Result<Vec<(f64, f64)>> {
    let xs = chebyshev_lobatto(grid.points.max(3), -1.0 + grid.endpoint_gap, 1.0 - grid.endpoint_gap);
    g.iter()
        .map(|gj| {
            let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
            for &x in &xs {
                let v = gj.eval_at(x)?;
                if !v.is_finite() {
                    return Err(Error::NonFinite { x, value: v });
                }
                lo = lo.min(v);
                hi = hi.max(v);
            }
            let width = hi - lo;
            let pad = if width > 0.0 {
                BOX_MARGIN * width
            } else {
                BOX_MARGIN * lo.abs().max(1.0)
            };
            Ok((lo - pad, hi + pad))
        })
        .collect()
}

fn check_inside(g: &[Expr], bounds: &[(f64, f64)], grid: &GridConfig) -> Result<()> {
    let xs = chebyshev_lobatto(grid.points.max(3), -1.0 + grid.endpoint_gap, 1.0 - grid.endpoint_gap);
    for (j, (gj, &(lo, hi))) in g.iter().zip(bounds).enumerate() {
        for &x in &xs {
            let v = gj.eval_at(x)?;
            if !(lo..=hi).contains(&v) {
                return Err(Error::OutsideBox {
                    x,
                    component: j + 1,
                    value: v,
                });
            }
        }
    }
    Ok(())
}

/// Outer box: the declared one after a containment check, or the widened image.
pub(crate) fn resolve_box(g: &[Expr], bounds: Option<&[(f64, f64)]>, grid: &GridConfig) -> Result<Vec<(f64, f64)>> {
    match bounds {
        Some(b) => {
            if b.len() != g.len() {
                return Err(Error::arg(format!(
                    "box has {} sides for {} inner functions",
                    b.len(),
                    g.len()
                )));
            }
            check_inside(g, b, grid)?;
            Ok(b.to_vec())
        }
        None => image_box(g, grid),
    }
}

/// `B_r` as a float; exact up to `r = 25`, rounded beyond.
pub(crate) fn bell_f64(r: usize) -> Result<f64> {
    Ok(bell_number(r)?.to_f64().unwrap_or(f64::INFINITY))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompositeRecord {
    pub r: usize,
    pub gamma: f64,
    pub delta: f64,
    /// `‖(f∘g)^{(r)} φ^r u^r‖`
    pub lhs: f64,
    /// `‖f‖_{W^r}` over `bounds`.
    pub f_norm: f64,
    pub bounds: Vec<(f64, f64)>,
    pub exponents: ExponentSelector,
    pub bell: f64,
    /// `n^r B_r ‖f‖ Π ‖g_j‖^{s_j}`
    pub rhs_sans_c: f64,
    /// `lhs / rhs_sans_c`, an empirical lower estimate of the missing constant.
    pub ratio: f64,
}

/// Measures both sides of the composite derivative bound.
///
/// `bounds` is the box for the outer norm; `None` uses the sampled image of
/// `g` widened by 5% on each side.
pub fn verify_composite_bound(
    f: &Expr,
    g: &[Expr],
    r: usize,
    w: &JacobiWeight,
    bounds: Option<&[(f64, f64)]>,
    grid: &GridConfig,
) -> Result<CompositeRecord> {
    if r == 0 {
        return Err(Error::arg("order r must be positive"));
    }
    w.require_admissible()?;
    let eval = CompositeEvaluator::new(f, g, r)?;
    let bounds = resolve_box(g, bounds, grid)?;
    let wr = w.power(r as f64);
    let lhs = weighted_sup_norm(&|x| eval.top_derivative(x), &wr, r as u32, grid)?.value;
    let f_norm = multivariate_sobolev_norm(f, r, &bounds, grid)?.value;
    let g_norms: Vec<f64> = g.iter().map(|gj| sobolev_norm(gj, r, w, grid)).collect::<Result<_>>()?;
    let exponents = select_exponents(&g_norms, r as u32);
    let bell = bell_f64(r)?;
    let n = g.len() as f64;
    let rhs_sans_c = n.powi(r as i32) * bell * f_norm * exponents.product();
    let ratio = if rhs_sans_c > 0.0 { lhs / rhs_sans_c } else { 0.0 };
    Ok(CompositeRecord {
        r,
        gamma: w.gamma(),
        delta: w.delta(),
        lhs,
        f_norm,
        bounds,
        exponents,
        bell,
        rhs_sans_c,
        ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uni(s: &str) -> Expr {
        Expr::univariate(s).unwrap()
    }

    #[test]
    fn lemma_examples() {
        let g = GridConfig::default();
        let flat = JacobiWeight::unweighted();
        let c = verify_lemma(&uni("4"), 3, 1, &flat, &g).unwrap();
        assert_eq!(c.lhs, 0.0);
        assert!(c.holds);
        let e = verify_lemma(&uni("exp(x)"), 2, 1, &flat, &g).unwrap();
        assert!(e.holds && e.ratio > 0.0 && e.ratio < 1.0);
        let w = JacobiWeight::new(0.5, 0.5).unwrap();
        let p = verify_lemma(&uni("(1+x)^2.5"), 2, 1, &w, &g).unwrap();
        assert!(p.holds);
        assert!(verify_lemma(&uni("x"), 2, 2, &flat, &g).is_err());
    }

    #[test]
    fn sweep_matches_single_checks() {
        let g = GridConfig::default();
        let w = JacobiWeight::new(0.25, 0.75).unwrap();
        let f = uni("cos(3*x)");
        let all = lemma_sweep(&f, 4, &w, &g).unwrap();
        assert_eq!(all.len(), 6);
        let one = verify_lemma(&f, 4, 2, &w, &g).unwrap();
        assert_eq!(all.iter().find(|l| l.r == 4 && l.k == 2).unwrap(), &one);
    }

    #[test]
    fn composite_examples() {
        let g = GridConfig::default();
        let flat = JacobiWeight::unweighted();
        let id = verify_composite_bound(&Expr::outer("y1", 1).unwrap(), &[uni("x")], 2, &flat, None, &g).unwrap();
        assert_eq!(id.lhs, 0.0);

        let rec = verify_composite_bound(
            &Expr::outer("y1*y2", 2).unwrap(),
            &[uni("x"), uni("x^2")],
            2,
            &flat,
            None,
            &g,
        )
        .unwrap();
        // (x^3)'' φ^2 = 6x(1 − x²), maximal at x = 1/√3
        let expect = 6.0 / 3f64.sqrt() * (2.0 / 3.0);
        assert!((rec.lhs - expect).abs() < 1e-10);
        assert_eq!(rec.bell, 2.0);
        // ‖x‖ sits at 1 up to the endpoint gap, ‖x²‖ = 3
        assert_eq!(rec.exponents.exponents, vec![0, 2]);
        assert_eq!(rec.exponents.boundary_margins.len(), 1);
        assert!(rec.ratio > 0.0);
    }

    #[test]
    fn declared_box_must_contain_image() {
        let g = GridConfig::default();
        let err = verify_composite_bound(
            &Expr::outer("y1", 1).unwrap(),
            &[uni("2*x")],
            1,
            &JacobiWeight::unweighted(),
            Some(&[(-1.0, 1.0)]),
            &g,
        )
        .unwrap_err();
        assert!(matches!(err, Error::OutsideBox { component: 1, .. }));
    }
}
