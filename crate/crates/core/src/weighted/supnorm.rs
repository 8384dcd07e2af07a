use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::weight::{phi_unchecked, JacobiWeight};
use crate::error::{Error, Result};

/// Sampling configuration for sup-norm estimates on `[−1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridConfig {
    /// Chebyshev-spaced samples on `[−1, 1]`.
    pub points: usize,
    /// Relative stopping tolerance of the local refinement.
    pub rel_tol: f64,
    /// Samples are kept at least this far from `±1`.
    pub endpoint_gap: f64,
    /// Total sample budget of tensor grids for multivariate norms.
    pub tensor_budget: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            points: 4097,
            rel_tol: 1e-10,
            endpoint_gap: 1e-12,
            tensor_budget: 20_000,
        }
    }
}

/// Result of a sup-norm estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormReport {
    pub value: f64,
    pub argmax: f64,
    pub grid_size: usize,
    /// Whether local refinement improved on the best sample.
    pub refined: bool,
}

/// Chebyshev–Lobatto points on `[a, b]`, increasing.
pub fn chebyshev_lobatto(n: usize, a: f64, b: f64) -> Vec<f64> {
    assert!(n >= 2, "need at least two points");
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    (0..n)
        .map(|i| {
            let t = -(std::f64::consts::PI * i as f64 / (n - 1) as f64).cos();
            // exact endpoints and centre
            if i == 0 {
                a
            } else if i == n - 1 {
                b
            } else if 2 * i == n - 1 {
                mid
            } else {
                mid + half * t
            }
        })
        .collect()
}

/// Maximizes `h` on `[a, b]` by Brent's parabolic/golden-section search,
/// starting from the interior point `x0`. Returns the best `(x, h(x))` seen.
pub(crate) fn maximize(
    h: &(impl Fn(f64) -> Result<f64> + ?Sized),
    a: f64,
    b: f64,
    x0: f64,
    h0: f64,
    rel_tol: f64,
) -> Result<(f64, f64)> {
    const GOLD: f64 = 0.381_966_011_250_105_1;
    const MAX_ITER: usize = 100;
    let (mut a, mut b) = (a, b);
    let (mut x, mut w, mut v) = (x0, x0, x0);
    let (mut fx, mut fw, mut fv) = (-h0, -h0, -h0);
    let mut d: f64 = 0.0;
    let mut e: f64 = 0.0;
    let mut last_best = fx;
    for _ in 0..MAX_ITER {
        let m = 0.5 * (a + b);
        let tol = 1e-9 * x.abs() + 1e-15;
        let t2 = 2.0 * tol;
        if (x - m).abs() <= t2 - 0.5 * (b - a) {
            break;
        }
        let mut golden = true;
        if e.abs() > tol {
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            }
            q = q.abs();
            let etemp = e;
            e = d;
            if p.abs() < (0.5 * q * etemp).abs() && p > q * (a - x) && p < q * (b - x) {
                d = p / q;
                let u = x + d;
                if u - a < t2 || b - u < t2 {
                    d = if x < m { tol } else { -tol };
                }
                golden = false;
            }
        }
        if golden {
            e = if x < m { b - x } else { a - x };
            d = GOLD * e;
        }
        let u = if d.abs() >= tol {
            x + d
        } else {
            x + tol.copysign(d)
        };
        let fu = -h(u)?;
        if fu <= fx {
            if u < x {
                b = x;
            } else {
                a = x;
            }
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
            if (fx - last_best).abs() <= rel_tol * fx.abs() && last_best != -h0 {
                break;
            }
            last_best = fx;
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if fu <= fv || v == x || v == w {
                v = u;
                fv = fu;
            }
        }
    }
    Ok((x, -fx))
}

/// Indices of sampled local maxima worth refining: strict rise on the left,
/// no rise on the right, value within 10% of the best sample; at most 64.
pub(crate) fn peak_candidates(vals: &[f64]) -> Vec<usize> {
    let best = vals.iter().cloned().fold(0.0, f64::max);
    let n = vals.len();
    let mut idx: Vec<usize> = (0..n)
        .filter(|&i| {
            let left = i == 0 || vals[i] > vals[i - 1];
            let right = i == n - 1 || vals[i] >= vals[i + 1];
            left && right && vals[i] >= 0.9 * best
        })
        .collect();
    idx.sort_by(|&i, &j| vals[j].total_cmp(&vals[i]).then(i.cmp(&j)));
    idx.truncate(64);
    idx
}

/// Estimates `sup_{[−1,1]} |f(x)|·φ(x)^p·u(x)`.
///
/// Samples `grid.points` Chebyshev-spaced points kept `grid.endpoint_gap` away
/// from `±1`, then refines around the largest sampled local maxima.
pub fn weighted_sup_norm(
    f: &(impl Fn(f64) -> Result<f64> + Sync + ?Sized),
    w: &JacobiWeight,
    phi_power: u32,
    grid: &GridConfig,
) -> Result<NormReport> {
    if grid.points < 3 {
        return Err(Error::arg("grid needs at least 3 points"));
    }
    let lo = -1.0 + grid.endpoint_gap;
    let hi = 1.0 - grid.endpoint_gap;
    let xs = chebyshev_lobatto(grid.points, lo, hi);
    let h = |x: f64| -> Result<f64> {
        let v = f(x)?;
        if !v.is_finite() {
            return Err(Error::NonFinite { x, value: v });
        }
        let mut p = v.abs() * w.eval_unchecked(x);
        if phi_power > 0 {
            p *= phi_unchecked(x).powi(phi_power as i32);
        }
        Ok(p)
    };
    let samples: Vec<Result<f64>> = xs.par_iter().map(|&x| h(x)).collect();
    let vals = samples.into_iter().collect::<Result<Vec<f64>>>()?;

    let (mut best_i, mut best) = (0, vals[0]);
    for (i, &v) in vals.iter().enumerate() {
        if v > best {
            best = v;
            best_i = i;
        }
    }
    let mut report = NormReport {
        value: best,
        argmax: xs[best_i],
        grid_size: grid.points,
        refined: false,
    };
    if best == 0.0 {
        return Ok(report);
    }
    for i in peak_candidates(&vals) {
        let a = xs[i.saturating_sub(1)];
        let b = xs[(i + 1).min(xs.len() - 1)];
        let (x, v) = maximize(&h, a, b, xs[i], vals[i], grid.rel_tol)?;
        if v > report.value {
            report.value = v;
            report.argmax = x;
            report.refined = true;
        }
    }
    Ok(report)
}
