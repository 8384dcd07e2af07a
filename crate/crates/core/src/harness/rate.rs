use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::checks::{bell_f64, resolve_box};
use super::exponents::{select_exponents, ExponentSelector};
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::minimax::{weighted_remez, ApproxReport, RemezOptions};
use crate::weighted::{derivative_norm, multivariate_sobolev_norm, sobolev_norm, GridConfig, JacobiWeight};

/// A rounding-limited run is still used when its sandwich gap is below this
/// fraction of the error.
pub const USABLE_GAP: f64 = 1e-6;

/// How far a single Remez run can be trusted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RunStatus {
    Converged,
    /// Stopped at the rounding floor with the gap still below [`USABLE_GAP`].
    RoundingLimited,
    /// The error itself is at the rounding level.
    NoiseFloor,
    NotConverged,
}

impl RunStatus {
    pub fn classify(rep: &ApproxReport) -> Self {
        let gap = rep.error - rep.levelled;
        if rep.degenerate {
            RunStatus::NoiseFloor
        } else if rep.converged {
            RunStatus::Converged
        } else if gap <= rep.rounding_floor {
            if gap <= USABLE_GAP * rep.error {
                RunStatus::RoundingLimited
            } else {
                RunStatus::NoiseFloor
            }
        } else {
            RunStatus::NotConverged
        }
    }

    /// Enters rate fits.
    pub fn usable(self) -> bool {
        matches!(self, RunStatus::Converged | RunStatus::RoundingLimited)
    }
}

/// Least-squares slope of `ln y` against `ln x`; `None` below two points.
pub fn log_log_slope(x: &[f64], y: &[f64]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = x
        .iter()
        .zip(y)
        .filter(|(a, b)| **a > 0.0 && **b > 0.0)
        .map(|(a, b)| (a.ln(), b.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

fn check_degrees(ms: &[usize], r: usize) -> Result<()> {
    if ms.is_empty() {
        return Err(Error::arg("empty degree list"));
    }
    if ms.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::arg("degrees must be strictly increasing"));
    }
    if ms[0] < r {
        return Err(Error::arg(format!("smallest degree {} is below r = {r}", ms[0])));
    }
    Ok(())
}

/// Relative growth of the running maximum of `ratios` over the upper half of
/// the usable entries.
pub fn top_half_growth(ratios: &[f64], usable: &[bool]) -> Option<f64> {
    let vals: Vec<f64> = ratios
        .iter()
        .zip(usable)
        .filter_map(|(&r, &u)| u.then_some(r))
        .collect();
    if vals.len() < 2 {
        return None;
    }
    let top = &vals[vals.len() / 2..];
    let first = top[0];
    let run_max = top.iter().cloned().fold(first, f64::max);
    Some(if first > 0.0 { run_max / first - 1.0 } else { 0.0 })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateReport {
    pub case: String,
    pub f: String,
    pub g: Vec<String>,
    pub r: usize,
    pub gamma: f64,
    pub delta: f64,
    pub seed: u64,
    pub ms: Vec<usize>,
    /// Upper estimates of `E_m(f∘g)_u`.
    pub errors: Vec<f64>,
    pub levelled: Vec<f64>,
    pub status: Vec<RunStatus>,
    /// `m^r E_m / bound_rhs`
    pub ratios: Vec<f64>,
    /// Fitted over usable runs only.
    pub slope: Option<f64>,
    pub ratio_sup: f64,
    pub top_half_growth: Option<f64>,
    /// `n^r B_r ‖f‖ Π ‖g_j‖^{s_j}`, the bound without its constant and `m^{−r}`.
    pub bound_rhs: f64,
    pub f_norm: f64,
    pub bounds: Vec<(f64, f64)>,
    /// Norms of `g_j` in `W^r` with the root weight `u^{1/r}`.
    pub exponents: ExponentSelector,
    pub bell: f64,
    pub grid: GridConfig,
    pub remez: RemezOptions,
    pub warnings: Vec<String>,
}

/// Inputs of [`verify_rate`] besides the functions themselves.
#[derive(Debug, Clone, PartialEq)]
pub struct RateConfig {
    pub case: String,
    pub r: usize,
    pub weight: JacobiWeight,
    pub ms: Vec<usize>,
    pub bounds: Option<Vec<(f64, f64)>>,
    pub grid: GridConfig,
    pub remez: RemezOptions,
    pub seed: u64,
}

/// Measures `E_m(f∘g)_u` over `cfg.ms` and compares with the `m^{−r}` bound.
pub fn verify_rate(f: &Expr, g: &[Expr], cfg: &RateConfig) -> Result<RateReport> {
    let r = cfg.r;
    if r == 0 {
        return Err(Error::arg("order r must be positive"));
    }
    if g.len() != f.arity() {
        return Err(Error::arg(format!(
            "outer function takes {} variables but {} inner functions were given",
            f.arity(),
            g.len()
        )));
    }
    check_degrees(&cfg.ms, r)?;
    let w = &cfg.weight;
    w.require_admissible()?;
    let grid = &cfg.grid;
    let bounds = resolve_box(g, cfg.bounds.as_deref(), grid)?;
    let f_norm = multivariate_sobolev_norm(f, r, &bounds, grid)?.value;
    let root = w.root(r);
    let g_norms: Vec<f64> = g.iter().map(|gj| sobolev_norm(gj, r, &root, grid)).collect::<Result<_>>()?;
    let exponents = select_exponents(&g_norms, r as u32);
    let bell = bell_f64(r)?;
    let bound_rhs = (g.len() as f64).powi(r as i32) * bell * f_norm * exponents.product();

    let composite = |x: f64| -> Result<f64> {
        let y: Vec<f64> = g.iter().map(|gj| gj.eval_at(x)).collect::<Result<_>>()?;
        f.eval_scalar(&y)
    };
    let runs: Vec<ApproxReport> = cfg
        .ms
        .par_iter()
        .map(|&m| weighted_remez(&composite, m, w, &cfg.remez))
        .collect::<Result<_>>()?;

    let status: Vec<RunStatus> = runs.iter().map(RunStatus::classify).collect();
    let usable: Vec<bool> = status.iter().map(|s| s.usable()).collect();
    let errors: Vec<f64> = runs.iter().map(|a| a.error).collect();
    let ratios: Vec<f64> = cfg
        .ms
        .iter()
        .zip(&errors)
        .map(|(&m, &e)| (m as f64).powi(r as i32) * e / bound_rhs)
        .collect();
    let (fit_m, fit_e): (Vec<f64>, Vec<f64>) = cfg
        .ms
        .iter()
        .zip(&errors)
        .zip(&usable)
        .filter(|(_, &u)| u)
        .map(|((&m, &e), _)| (m as f64, e))
        .unzip();
    let ratio_sup = ratios
        .iter()
        .zip(&usable)
        .filter(|(_, &u)| u)
        .fold(0.0f64, |a, (&b, _)| a.max(b));

    let mut warnings = Vec::new();
    for (m, s) in cfg.ms.iter().zip(&status) {
        if *s == RunStatus::NotConverged {
            warnings.push(format!("m = {m}: exchange did not converge, excluded from the fit"));
        }
    }
    let noise = status.iter().filter(|s| **s == RunStatus::NoiseFloor).count();
    if noise > 0 {
        warnings.push(format!("{noise} degree(s) at the rounding floor, excluded from the fit"));
    }
    for &(j, d) in &exponents.boundary_margins {
        warnings.push(format!("norm of g{} is within {d:e} of 1", j + 1));
    }

    Ok(RateReport {
        case: cfg.case.clone(),
        f: f.to_string(),
        g: g.iter().map(|e| e.to_string()).collect(),
        r,
        gamma: w.gamma(),
        delta: w.delta(),
        seed: cfg.seed,
        ms: cfg.ms.clone(),
        errors,
        levelled: runs.iter().map(|a| a.levelled).collect(),
        status,
        slope: log_log_slope(&fit_m, &fit_e),
        ratio_sup,
        top_half_growth: top_half_growth(&ratios, &usable),
        ratios,
        bound_rhs,
        f_norm,
        bounds,
        exponents,
        bell,
        grid: *grid,
        remez: cfg.remez,
        warnings,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FavardReport {
    pub f: String,
    pub r: usize,
    pub gamma: f64,
    pub delta: f64,
    pub ms: Vec<usize>,
    pub errors: Vec<f64>,
    pub status: Vec<RunStatus>,
    /// `‖f^{(r)} φ^r u‖`
    pub top_norm: f64,
    /// `m^r E_m / top_norm`
    pub ratios: Vec<f64>,
    /// Slope of `ln ratio` against `ln m` over usable runs.
    pub slope: Option<f64>,
    pub ratio_sup: f64,
}

/// `m^r E_m(f)_u / ‖f^{(r)} φ^r u‖` over the given degrees.
pub fn favard_sweep(
    f: &Expr,
    r: usize,
    w: &JacobiWeight,
    ms: &[usize],
    grid: &GridConfig,
    opts: &RemezOptions,
) -> Result<FavardReport> {
    let mut v = favard_sweeps(f, &[r], w, ms, grid, opts)?;
    Ok(v.remove(0))
}

/// [`favard_sweep`] for several orders, sharing the Remez runs. Each order
/// uses the degrees `m ≥ r`.
pub fn favard_sweeps(
    f: &Expr,
    rs: &[usize],
    w: &JacobiWeight,
    ms: &[usize],
    grid: &GridConfig,
    opts: &RemezOptions,
) -> Result<Vec<FavardReport>> {
    let r_min = rs.iter().copied().min().ok_or_else(|| Error::arg("no orders given"))?;
    if r_min == 0 {
        return Err(Error::arg("order r must be positive"));
    }
    check_degrees(ms, r_min)?;
    let runs: Vec<ApproxReport> = ms
        .par_iter()
        .map(|&m| weighted_remez(&|x| f.eval_at(x), m, w, opts))
        .collect::<Result<_>>()?;
    rs.iter()
        .map(|&r| {
            let top_norm = derivative_norm(f, r, w, grid)?.value;
            if top_norm == 0.0 {
                return Err(Error::arg("r-th derivative vanishes, ratio undefined"));
            }
            let keep: Vec<usize> = (0..ms.len()).filter(|&i| ms[i] >= r).collect();
            if keep.is_empty() {
                return Err(Error::arg(format!("no degree reaches r = {r}")));
            }
            let ms: Vec<usize> = keep.iter().map(|&i| ms[i]).collect();
            let status: Vec<RunStatus> = keep.iter().map(|&i| RunStatus::classify(&runs[i])).collect();
            let errors: Vec<f64> = keep.iter().map(|&i| runs[i].error).collect();
            let ratios: Vec<f64> = ms
                .iter()
                .zip(&errors)
                .map(|(&m, &e)| (m as f64).powi(r as i32) * e / top_norm)
                .collect();
            let (fit_m, fit_r): (Vec<f64>, Vec<f64>) = ms
                .iter()
                .zip(&ratios)
                .zip(&status)
                .filter(|(_, s)| s.usable())
                .map(|((&m, &q), _)| (m as f64, q))
                .unzip();
            let ratio_sup = fit_r.iter().cloned().fold(0.0, f64::max);
            Ok(FavardReport {
                f: f.to_string(),
                r,
                gamma: w.gamma(),
                delta: w.delta(),
                ms,
                errors,
                status,
                top_norm,
                slope: log_log_slope(&fit_m, &fit_r),
                ratio_sup,
                ratios,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_power_law() {
        let x: Vec<f64> = (1..20).map(|i| i as f64).collect();
        let y: Vec<f64> = x.iter().map(|v| 3.0 * v.powf(-2.5)).collect();
        assert!((log_log_slope(&x, &y).unwrap() + 2.5).abs() < 1e-12);
        assert_eq!(log_log_slope(&[1.0], &[1.0]), None);
    }

    #[test]
    fn growth_of_running_max() {
        let u = [true; 6];
        assert_eq!(top_half_growth(&[5.0, 4.0, 3.0, 2.0, 1.0, 0.5], &u), Some(0.0));
        let g = top_half_growth(&[1.0, 1.0, 1.0, 2.0, 2.2, 1.0], &u).unwrap();
        assert!((g - 0.1).abs() < 1e-12);
    }

    #[test]
    fn identity_of_polynomial_hits_noise_floor() {
        let cfg = RateConfig {
            case: "poly".into(),
            r: 2,
            weight: JacobiWeight::unweighted(),
            ms: vec![3, 4, 6],
            bounds: None,
            grid: GridConfig::default(),
            remez: RemezOptions::default(),
            seed: 0,
        };
        let f = Expr::outer("y1", 1).unwrap();
        let g = Expr::univariate("x^3 - 2*x + 1").unwrap();
        let rep = verify_rate(&f, &[g], &cfg).unwrap();
        assert!(rep.errors.iter().all(|&e| e <= 1e-12));
        assert!(rep.status.iter().all(|s| *s == RunStatus::NoiseFloor));
        assert_eq!(rep.slope, None);
    }

    #[test]
    fn favard_ratio_is_flat_for_borderline_smoothness() {
        let f = Expr::univariate("(1+x)^1.5").unwrap();
        let ms: Vec<usize> = (3..=40).step_by(3).collect();
        let rep = favard_sweep(
            &f,
            3,
            &JacobiWeight::unweighted(),
            &ms,
            &GridConfig::default(),
            &RemezOptions::default(),
        )
        .unwrap();
        assert!(rep.status.iter().all(|s| s.usable()));
        assert!(rep.slope.unwrap().abs() < 0.1, "{:?}", rep.slope);
    }
}
