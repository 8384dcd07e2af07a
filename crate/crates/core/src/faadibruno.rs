//! Explicit Faà di Bruno expansions.
//!
//! The univariate form sums over partition vectors `(k_1, …, k_r)` of `r`;
//! the multivariate-outer form additionally distributes each `k_i` over the
//! `n` inner components through a
//! [`CompositionMatrix`](crate::combinatorics::CompositionMatrix). Both consume raw
//! derivative data, so they are independent of the jet engine, which serves
//! as the oracle in tests.

use std::collections::{BTreeMap, HashMap};

use num_traits::ToPrimitive;

use crate::combinatorics::{
    enumerate_composition_matrices, enumerate_partition_vectors, incomplete_bell, visit_partitions,
    PartitionVector,
};
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::jets::{jetn_partials, JetN, MAX_JET_ORDER};

/// Source of mixed partials `D^ℓ f` at the expansion point.
pub trait PartialSource {
    fn partial(&self, ell: &[u32]) -> Option<f64>;
}

impl PartialSource for JetN {
    fn partial(&self, ell: &[u32]) -> Option<f64> {
        JetN::partial(self, ell)
    }
}

impl PartialSource for BTreeMap<Vec<u32>, f64> {
    fn partial(&self, ell: &[u32]) -> Option<f64> {
        self.get(ell).copied()
    }
}

impl PartialSource for HashMap<Vec<u32>, f64> {
    fn partial(&self, ell: &[u32]) -> Option<f64> {
        self.get(ell).copied()
    }
}

/// Compensated summation.
#[derive(Debug, Default, Clone, Copy)]
struct Kahan {
    sum: f64,
    carry: f64,
}

impl Kahan {
    fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }
}

fn coefficient_f64(c: num_bigint::BigUint) -> Result<f64> {
    match c.to_f64() {
        Some(v) if v.is_finite() => Ok(v),
        _ => Err(Error::arg("Faà di Bruno coefficient overflows f64")),
    }
}

#[derive(Debug, Clone)]
struct Term {
    coef: f64,
    /// Multi-index `(p_1, …, p_n)` of the outer partial.
    ell: Vec<u32>,
    /// `(i, j, q_ij)` for every nonzero entry, rows in increasing `i`.
    factors: Vec<(usize, usize, u32)>,
}

/// Precomputed terms of the order-`r` expansion for an `n`-variate outer function.
#[derive(Debug, Clone)]
pub struct ExpansionPlan {
    r: usize,
    n: usize,
    terms: Vec<Term>,
}

impl ExpansionPlan {
    pub fn new(r: usize, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::arg("outer dimension must be positive"));
        }
        let mut terms = Vec::new();
        for p in enumerate_partition_vectors(r)? {
            for m in enumerate_composition_matrices(&p, n)? {
                let mut factors = Vec::new();
                for i in 1..=r {
                    for j in 0..n {
                        let q = m.q(i, j);
                        if q > 0 {
                            factors.push((i, j, q));
                        }
                    }
                }
                terms.push(Term {
                    coef: coefficient_f64(m.coefficient())?,
                    ell: m.column_sums(),
                    factors,
                });
            }
        }
        Ok(ExpansionPlan { r, n, terms })
    }

    pub fn order(&self) -> usize {
        self.r
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Evaluates the expansion. `g_derivs[j][i]` is `g_j^{(i)}(x0)`; each
    /// sequence needs at least `r + 1` entries.
    pub fn evaluate(&self, f: &impl PartialSource, g_derivs: &[Vec<f64>]) -> Result<f64> {
        if g_derivs.len() != self.n {
            return Err(Error::arg(format!(
                "expected {} inner derivative sequences, got {}",
                self.n,
                g_derivs.len()
            )));
        }
        if let Some(short) = g_derivs.iter().position(|g| g.len() < self.r + 1) {
            return Err(Error::arg(format!(
                "inner sequence {} has fewer than {} entries",
                short + 1,
                self.r + 1
            )));
        }
        let mut acc = Kahan::default();
        for t in &self.terms {
            let fpart = f.partial(&t.ell).ok_or_else(|| {
                Error::arg(format!("missing outer partial for multi-index {:?}", t.ell))
            })?;
            let mut prod = 1.0;
            for &(i, j, q) in &t.factors {
                prod *= g_derivs[j][i].powi(q as i32);
            }
            acc.add(t.coef * fpart * prod);
        }
        Ok(acc.sum)
    }
}

fn check_lengths(r: usize, seqs: &[&[f64]]) -> Result<()> {
    if r == 0 {
        return Err(Error::arg("order must be positive"));
    }
    for s in seqs {
        if s.len() != r + 1 {
            return Err(Error::arg(format!(
                "derivative sequence has length {}, expected {}",
                s.len(),
                r + 1
            )));
        }
    }
    Ok(())
}

/// `(f∘g)^{(r)}(x0)` by the partition sum, from `f^{(0..=r)}` at `g(x0)` and
/// `g^{(0..=r)}` at `x0`.
pub fn composite_derivative_1d(f_derivs: &[f64], g_derivs: &[f64], r: usize) -> Result<f64> {
    check_lengths(r, &[f_derivs, g_derivs])?;
    let cap = crate::combinatorics::Limits::default().max_order;
    if r > cap {
        return Err(Error::ResourceLimit {
            what: "derivative order",
            cap: cap as u64,
            requested: r as u64,
        });
    }
    let mut acc = Kahan::default();
    let mut err = Ok(());
    visit_partitions(r, |counts| {
        if err.is_err() {
            return;
        }
        let pv = PartitionVector::new(counts.to_vec()).expect("enumerated partition");
        let coef = match coefficient_f64(pv.coefficient()) {
            Ok(c) => c,
            Err(e) => {
                err = Err(e);
                return;
            }
        };
        let k = pv.block_count() as usize;
        let mut prod = 1.0;
        for (i, &ki) in counts.iter().enumerate() {
            if ki > 0 {
                prod *= g_derivs[i + 1].powi(ki as i32);
            }
        }
        acc.add(coef * f_derivs[k] * prod);
    });
    err.map(|_| acc.sum)
}

/// Same quantity through partial Bell polynomials:
/// `Σ_k f^{(k)}(g(x0)) · B_{r,k}(g', …, g^{(r-k+1)})`.
pub fn composite_derivative_1d_bell(f_derivs: &[f64], g_derivs: &[f64], r: usize) -> Result<f64> {
    check_lengths(r, &[f_derivs, g_derivs])?;
    let mut acc = Kahan::default();
    for k in 1..=r {
        let b = incomplete_bell(r, k, &g_derivs[1..=r - k + 1])?;
        acc.add(f_derivs[k] * b);
    }
    Ok(acc.sum)
}

/// `(f∘g)^{(r)}(x0)` for an `n`-variate outer `f` and inner `g = (g_1, …, g_n)`.
pub fn composite_derivative_nd(
    f_partials: &impl PartialSource,
    g_derivs: &[Vec<f64>],
    r: usize,
    n: usize,
) -> Result<f64> {
    if g_derivs.len() != n {
        return Err(Error::arg(format!(
            "expected {n} inner derivative sequences, got {}",
            g_derivs.len()
        )));
    }
    let refs: Vec<&[f64]> = g_derivs.iter().map(Vec::as_slice).collect();
    check_lengths(r, &refs)?;
    ExpansionPlan::new(r, n)?.evaluate(f_partials, g_derivs)
}

/// Evaluates `(f∘g)^{(0..=r)}` at arbitrary points, reusing the expansion plans.
#[derive(Debug, Clone)]
pub struct CompositeEvaluator {
    f: Expr,
    g: Vec<Expr>,
    plans: Vec<ExpansionPlan>,
}

impl CompositeEvaluator {
    pub fn new(f: &Expr, g: &[Expr], r: usize) -> Result<Self> {
        if g.len() != f.arity() {
            return Err(Error::arg(format!(
                "outer function takes {} variables but {} inner functions were given",
                f.arity(),
                g.len()
            )));
        }
        if let Some(bad) = g.iter().position(|e| e.arity() != 1) {
            return Err(Error::arg(format!("inner function {} is not univariate", bad + 1)));
        }
        if r > MAX_JET_ORDER {
            return Err(Error::ResourceLimit {
                what: "jet order",
                cap: MAX_JET_ORDER as u64,
                requested: r as u64,
            });
        }
        let plans = (1..=r)
            .map(|d| ExpansionPlan::new(d, g.len()))
            .collect::<Result<_>>()?;
        Ok(CompositeEvaluator {
            f: f.clone(),
            g: g.to_vec(),
            plans,
        })
    }

    pub fn order(&self) -> usize {
        self.plans.len()
    }

    /// Inner values `g(x)`.
    pub fn inner_values(&self, x: f64) -> Result<Vec<f64>> {
        self.g.iter().map(|g| g.eval_at(x)).collect()
    }

    /// `(f∘g)(x)` by direct evaluation.
    pub fn value(&self, x: f64) -> Result<f64> {
        self.f.eval_scalar(&self.inner_values(x)?)
    }

    /// `(f∘g)^{(d)}(x)` for `d = 0..=r`.
    pub fn derivatives(&self, x: f64) -> Result<Vec<f64>> {
        let r = self.order();
        let g_derivs: Vec<Vec<f64>> = self
            .g
            .iter()
            .map(|g| Ok(g.eval_jet1(x, r)?.derivatives()))
            .collect::<Result<_>>()?;
        let y0: Vec<f64> = g_derivs.iter().map(|d| d[0]).collect();
        let partials = jetn_partials(&self.f, &y0, r)?;
        let mut out = Vec::with_capacity(r + 1);
        out.push(crate::numeric::Numeric::value(&partials));
        for plan in &self.plans {
            out.push(plan.evaluate(&partials, &g_derivs)?);
        }
        Ok(out)
    }

    /// Only the top derivative `(f∘g)^{(r)}(x)`.
    pub fn top_derivative(&self, x: f64) -> Result<f64> {
        Ok(*self.derivatives(x)?.last().expect("nonempty"))
    }
}

/// `(f∘g)^{(0..=r)}(x0)` through the explicit expansion.
pub fn composite_jet(f: &Expr, g: &[Expr], x0: f64, r: usize) -> Result<Vec<f64>> {
    CompositeEvaluator::new(f, g, r)?.derivatives(x0)
}
