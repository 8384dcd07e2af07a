use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::cheb::{cheb_basis, ChebPoly};
use crate::error::{Error, Result};
use crate::weighted::{chebyshev_lobatto, maximize, JacobiWeight};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RemezOptions {
    /// Chebyshev–Lobatto points used to locate residual extrema.
    pub grid: usize,
    /// Stop once `(error − |h|)/error < tol`.
    pub tol: f64,
    pub max_iter: usize,
    /// Polish each extremum off the grid with a Brent search.
    pub refine: bool,
}

impl Default for RemezOptions {
    fn default() -> Self {
        RemezOptions {
            grid: 8193,
            tol: 1e-10,
            max_iter: 60,
            refine: true,
        }
    }
}

/// A point of the final alternation set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Extremum {
    pub x: f64,
    /// Weighted residual `(f − P)(x)·u(x)`.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApproxReport {
    pub m: usize,
    /// Upper estimate of `E_m(f)_u`: the largest weighted residual found.
    pub error: f64,
    /// Lower estimate: the levelled error `|h|` of the last reference.
    pub levelled: f64,
    pub poly: ChebPoly,
    pub extrema: Vec<Extremum>,
    pub iterations: usize,
    pub converged: bool,
    /// The error is at the rounding level of `f u`: `f` is reproduced up to
    /// noise and the extrema carry no alternation. Never marked converged.
    pub degenerate: bool,
    /// Estimated absolute rounding level of the weighted residual. Runs whose
    /// gap `error − levelled` fell below it stop early, converged or not.
    pub rounding_floor: f64,
}

impl ApproxReport {
    /// `error / levelled`, at least 1 up to rounding.
    pub fn sandwich_ratio(&self) -> f64 {
        self.error / self.levelled
    }

    /// At least `m + 2` strictly increasing points whose residuals alternate
    /// in sign and equal `±error` to relative accuracy `rel`.
    pub fn equioscillates(&self, rel: f64) -> bool {
        let ex = &self.extrema;
        ex.len() >= self.m + 2
            && ex.windows(2).all(|p| p[0].x < p[1].x && p[0].residual * p[1].residual < 0.0)
            && ex
                .iter()
                .all(|e| (e.residual.abs() - self.error).abs() <= rel * self.error)
    }
}

/// Solves `P(x_i) + (−1)^i h / u(x_i) = f(x_i)` for the coefficients of `P`
/// and the levelled error `h`.
fn solve_reference(reference: &[f64], fx: &[f64], ux: &[f64], m: usize) -> Result<(ChebPoly, f64)> {
    let n = m + 2;
    let mut a = DMatrix::<f64>::zeros(n, n);
    let mut t = Vec::with_capacity(m + 1);
    for (i, &x) in reference.iter().enumerate() {
        cheb_basis(x, m, &mut t);
        for (j, &tj) in t.iter().enumerate() {
            a[(i, j)] = tj;
        }
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        a[(i, m + 1)] = sign / ux[i];
    }
    let b = DVector::from_column_slice(fx);
    let sol = a
        .lu()
        .solve(&b)
        .filter(|s| s.iter().all(|v| v.is_finite()))
        .ok_or_else(|| Error::SingularSystem {
            reference: reference.to_vec(),
        })?;
    let h = sol[m + 1];
    Ok((ChebPoly::new(sol.as_slice()[..=m].to_vec()), h))
}

/// One extremum per maximal same-sign run of the sampled residual, each
/// polished by a Brent search between its grid neighbours.
fn run_extrema(
    xs: &[f64],
    res: &[f64],
    resid: &(impl Fn(f64) -> Result<f64> + Sync),
    refine: bool,
) -> Result<Vec<Extremum>> {
    let mut picks: Vec<usize> = Vec::new();
    let mut sign = 0.0;
    for (i, &e) in res.iter().enumerate() {
        if e == 0.0 {
            continue;
        }
        let s = e.signum();
        if s != sign {
            picks.push(i);
            sign = s;
        } else {
            let last = picks.last_mut().expect("run started");
            if e.abs() > res[*last].abs() {
                *last = i;
            }
        }
    }
    picks
        .par_iter()
        .map(|&i| {
            let e0 = res[i];
            if !refine {
                return Ok(Extremum { x: xs[i], residual: e0 });
            }
            let s = e0.signum();
            let a = xs[i.saturating_sub(1)];
            let b = xs[(i + 1).min(xs.len() - 1)];
            let (x, v) = maximize(&|x| Ok(s * resid(x)?), a, b, xs[i], s * e0, 1e-14)?;
            Ok(Extremum { x, residual: s * v })
        })
        .collect()
}

/// Drops end points, the smaller one first, until `keep` remain. Alternation
/// is preserved and the largest residual is never removed.
fn trim(mut ex: Vec<Extremum>, keep: usize) -> Vec<Extremum> {
    while ex.len() > keep {
        if ex[0].residual.abs() < ex[ex.len() - 1].residual.abs() {
            ex.remove(0);
        } else {
            ex.pop();
        }
    }
    ex
}

/// Best weighted approximation of degree `m` by a discretized Remez exchange
/// on `(f − P)·u`.
pub fn weighted_remez(
    f: &(impl Fn(f64) -> Result<f64> + Sync),
    m: usize,
    w: &JacobiWeight,
    opts: &RemezOptions,
) -> Result<ApproxReport> {
    if opts.grid < m + 4 {
        return Err(Error::arg(format!(
            "grid of {} points is too coarse for degree {m}",
            opts.grid
        )));
    }
    let mut xs = chebyshev_lobatto(opts.grid, -1.0, 1.0);
    // the weighted residual vanishes at an endpoint with a positive exponent
    if w.gamma() > 0.0 {
        xs.pop();
    }
    if w.delta() > 0.0 {
        xs.remove(0);
    }
    let eval_f = |x: f64| -> Result<f64> {
        let v = f(x)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite { x, value: v })
        }
    };
    let us: Vec<f64> = xs.iter().map(|&x| w.eval_unchecked(x)).collect();
    let fs: Vec<f64> = xs.par_iter().map(|&x| eval_f(x)).collect::<Result<_>>()?;
    let fu_max = fs.iter().zip(&us).map(|(f, u)| (f * u).abs()).fold(0.0, f64::max);
    let u_max = us.iter().cloned().fold(0.0, f64::max);

    let n = xs.len();
    let mut reference: Vec<f64> = (0..m + 2)
        .map(|i| xs[(2 * i * (n - 1) + m + 1) / (2 * (m + 1))])
        .collect();
    let mut best: Option<ApproxReport> = None;

    for iter in 0..opts.max_iter {
        let fx: Vec<f64> = reference.iter().map(|&x| eval_f(x)).collect::<Result<_>>()?;
        let ux: Vec<f64> = reference.iter().map(|&x| w.eval_unchecked(x)).collect();
        let (poly, h) = solve_reference(&reference, &fx, &ux, m)?;
        let resid = |x: f64| -> Result<f64> { Ok((eval_f(x)? - poly.eval(x)) * w.eval_unchecked(x)) };
        let res: Vec<f64> = (0..n)
            .into_par_iter()
            .map(|i| (fs[i] - poly.eval(xs[i])) * us[i])
            .collect();
        let grid_max = res.iter().fold(0.0f64, |a, e| a.max(e.abs()));

        let noise = 1e-13 * fu_max.max(1.0);
        if grid_max <= noise {
            return degenerate_report(m, grid_max, h, poly.clone(), &reference, &resid, iter + 1, fu_max);
        }

        let extrema = trim(run_extrema(&xs, &res, &resid, opts.refine)?, m + 2);
        let error = extrema
            .iter()
            .fold(grid_max, |a, e| a.max(e.residual.abs()));
        if error <= noise {
            return degenerate_report(m, error, h, poly.clone(), &reference, &resid, iter + 1, fu_max);
        }
        let gap = error - h.abs();
        let converged = error > 0.0 && gap < opts.tol * error;
        let coeff_sum: f64 = poly.coeffs().iter().map(|c| c.abs()).sum();
        let floor = rounding_floor(fu_max, coeff_sum * u_max);
        let report = ApproxReport {
            m,
            error,
            levelled: h.abs(),
            poly,
            extrema,
            iterations: iter + 1,
            converged,
            degenerate: false,
            rounding_floor: floor,
        };
        if converged || gap <= floor {
            return Ok(report);
        }
        if report.extrema.len() < m + 2 {
            // lost alternation, typically at the rounding floor
            best = pick_best(best, report);
            break;
        }
        reference = report.extrema.iter().map(|e| e.x).collect();
        best = pick_best(best, report);
    }
    let mut out = best.expect("at least one iteration ran");
    out.converged = false;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn degenerate_report(
    m: usize,
    error: f64,
    h: f64,
    poly: ChebPoly,
    reference: &[f64],
    resid: &dyn Fn(f64) -> Result<f64>,
    iterations: usize,
    fu_max: f64,
) -> Result<ApproxReport> {
    let extrema = reference
        .iter()
        .map(|&x| Ok(Extremum { x, residual: resid(x)? }))
        .collect::<Result<_>>()?;
    Ok(ApproxReport {
        m,
        error,
        levelled: h.abs(),
        poly,
        extrema,
        iterations,
        converged: false,
        degenerate: true,
        rounding_floor: rounding_floor(fu_max, 0.0),
    })
}

/// Generous multiple of the unit roundoff times the magnitudes in play.
fn rounding_floor(a: f64, b: f64) -> f64 {
    32.0 * f64::EPSILON * a.max(b)
}

fn pick_best(best: Option<ApproxReport>, new: ApproxReport) -> Option<ApproxReport> {
    match best {
        Some(b) if b.error <= new.error => Some(ApproxReport {
            iterations: new.iterations,
            ..b
        }),
        _ => Some(new),
    }
}
