use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::expr::Expr;
use crate::faadibruno::composite_jet;
use crate::jets::composite_series;

/// Relative agreement required between the two derivative pipelines.
pub const ORACLE_REL_TOL: f64 = 1e-9;
/// Absolute agreement used below [`ORACLE_SMALL`].
pub const ORACLE_ABS_TOL: f64 = 1e-12;
pub const ORACLE_SMALL: f64 = 1e-6;

fn constant(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> String {
    let c: f64 = rng.random_range(lo..hi);
    let c = (c * 100.0).round() / 100.0;
    if c < 0.0 {
        format!("({c})")
    } else {
        format!("{c}")
    }
}

/// Random expression text over `vars`, defined and smooth on all of `ℝ^n`
/// (denominators and logarithm/root arguments are bounded away from 0).
pub fn random_expression(rng: &mut ChaCha8Rng, vars: &[String], depth: u32) -> String {
    if depth == 0 || rng.random_bool(0.2) {
        return if rng.random_bool(0.75) {
            vars[rng.random_range(0..vars.len())].clone()
        } else {
            constant(rng, -2.0, 2.0)
        };
    }
    let d = depth - 1;
    let sub = |rng: &mut ChaCha8Rng| random_expression(rng, vars, d);
    match rng.random_range(0..11) {
        0 => format!("({} + {})", sub(rng), sub(rng)),
        1 => format!("({} - {})", sub(rng), sub(rng)),
        2 | 3 => format!("({} * {})", sub(rng), sub(rng)),
        4 => format!("sin({})", sub(rng)),
        5 => format!("cos({})", sub(rng)),
        6 => format!("exp(0.5 * sin({}))", sub(rng)),
        7 => format!("({} / ({} + ({})^2))", sub(rng), constant(rng, 0.5, 2.0), sub(rng)),
        8 => format!("log(2 + cos({}))", sub(rng)),
        9 => format!("sqrt(1.5 + sin({}))", sub(rng)),
        _ => {
            let p = [2.0, 3.0, 1.5, 2.5][rng.random_range(0..4)];
            format!("(1.25 + cos({}))^{p}", sub(rng))
        }
    }
}

/// One randomized comparison case.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleCase {
    pub f: String,
    pub g: Vec<String>,
    pub x0: f64,
    pub r: usize,
}

impl OracleCase {
    pub fn parse(&self) -> Result<(Expr, Vec<Expr>)> {
        let f = Expr::outer(&self.f, self.g.len())?;
        let g = self.g.iter().map(|s| Expr::univariate(s)).collect::<Result<_>>()?;
        Ok((f, g))
    }
}

/// `count` cases with `n ∈ {1, 2, 3}` and `r ≤ max_r`, reproducible from `seed`.
pub fn random_cases(seed: u64, count: usize, max_r: usize) -> Vec<OracleCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = vec!["x".to_string()];
    (0..count)
        .map(|_| {
            let n = rng.random_range(1..=3usize);
            let ys: Vec<String> = (1..=n).map(|i| format!("y{i}")).collect();
            let f = random_expression(&mut rng, &ys, 3);
            let g = (0..n).map(|_| random_expression(&mut rng, &x, 3)).collect();
            let x0 = (rng.random_range(-1.0f64..1.0) * 1000.0).round() / 1000.0;
            let r = rng.random_range(1..=max_r);
            OracleCase { f, g, x0, r }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleRecord {
    pub case: OracleCase,
    /// Derivatives `0..=r` from the explicit expansion.
    pub expansion: Vec<f64>,
    /// The same from jets evaluated through `f` directly.
    pub jets: Vec<f64>,
    /// Largest disagreement, relative where the magnitude allows.
    pub worst: f64,
    pub agree: bool,
}

/// Agreement test used by the oracle runner.
pub fn within_oracle_tolerance(a: f64, b: f64) -> bool {
    let mag = a.abs().max(b.abs());
    let d = (a - b).abs();
    if mag < ORACLE_SMALL {
        d <= ORACLE_ABS_TOL
    } else {
        d <= ORACLE_REL_TOL * mag
    }
}

/// Compares the Faà di Bruno expansion with direct jet propagation.
pub fn run_oracle(case: &OracleCase) -> Result<OracleRecord> {
    let (f, g) = case.parse()?;
    let expansion = composite_jet(&f, &g, case.x0, case.r)?;
    let jets = composite_series(&f, &g, case.x0, case.r)?.derivatives();
    let mut worst: f64 = 0.0;
    let mut agree = true;
    for (a, b) in expansion.iter().zip(&jets) {
        let mag = a.abs().max(b.abs());
        let d = (a - b).abs();
        worst = worst.max(if mag < ORACLE_SMALL { d } else { d / mag });
        agree &= within_oracle_tolerance(*a, *b);
    }
    Ok(OracleRecord {
        case: case.clone(),
        expansion,
        jets,
        worst,
        agree,
    })
}
