use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::series::{self, Part};
use crate::error::{Error, Result};
use crate::numeric::Numeric;

/// Monomials of total degree `≤ order` in `dim` variables, grouped by degree,
/// with precomputed product index tables between degrees.
#[derive(Debug)]
pub struct Layout {
    dim: usize,
    order: usize,
    /// `monomials[d]` lists exponent tuples of degree `d`, descending lexicographic.
    monomials: Vec<Vec<Vec<u32>>>,
    index: HashMap<Vec<u32>, (usize, usize)>,
    /// `products[d1][d2]` holds `(i, j, k)` with `mono[d1][i] + mono[d2][j] = mono[d1+d2][k]`.
    products: Vec<Vec<Vec<(u32, u32, u32)>>>,
}

impl Layout {
    fn build(dim: usize, order: usize) -> Self {
        let mut monomials = Vec::with_capacity(order + 1);
        for d in 0..=order {
            let list = if dim == 0 {
                Vec::new()
            } else {
                crate::combinatorics::compositions(d as u32, dim)
            };
            monomials.push(list);
        }
        let mut index = HashMap::new();
        for (d, list) in monomials.iter().enumerate() {
            for (i, m) in list.iter().enumerate() {
                index.insert(m.clone(), (d, i));
            }
        }
        let mut products = vec![Vec::new(); order + 1];
        for d1 in 0..=order {
            for d2 in 0..=order - d1 {
                let mut table = Vec::new();
                for (i, a) in monomials[d1].iter().enumerate() {
                    for (j, b) in monomials[d2].iter().enumerate() {
                        let sum: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                        let k = index[&sum].1;
                        table.push((i as u32, j as u32, k as u32));
                    }
                }
                products[d1].push(table);
            }
        }
        Layout {
            dim,
            order,
            monomials,
            index,
            products,
        }
    }

    /// Shared layout for `(dim, order)`, built once per process.
    pub fn shared(dim: usize, order: usize) -> Arc<Layout> {
        static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<Layout>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().expect("layout cache poisoned");
        guard
            .entry((dim, order))
            .or_insert_with(|| Arc::new(Layout::build(dim, order)))
            .clone()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Total number of stored coefficients.
    pub fn len(&self) -> usize {
        self.monomials.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Homogeneous component of one degree.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct HomPart {
    deg: usize,
    c: Vec<f64>,
}

impl Part for HomPart {
    type Ctx = Layout;

    fn zero(deg: usize, ctx: &Layout) -> Self {
        HomPart {
            deg,
            c: vec![0.0; ctx.monomials[deg].len()],
        }
    }

    fn scalar(v: f64, _: &Layout) -> Self {
        HomPart { deg: 0, c: vec![v] }
    }

    fn value(&self) -> f64 {
        debug_assert_eq!(self.deg, 0);
        self.c[0]
    }

    #[inline]
    fn mul_acc(&mut self, a: &Self, b: &Self, s: f64, ctx: &Layout) {
        debug_assert_eq!(a.deg + b.deg, self.deg);
        for &(i, j, k) in &ctx.products[a.deg][b.deg] {
            self.c[k as usize] += s * (a.c[i as usize] * b.c[j as usize]);
        }
    }

    #[inline]
    fn add_scaled(&mut self, a: &Self, s: f64) {
        for (x, y) in self.c.iter_mut().zip(&a.c) {
            *x += s * y;
        }
    }

    #[inline]
    fn scale(&mut self, s: f64) {
        for x in &mut self.c {
            *x *= s;
        }
    }
}

/// Truncated multivariate Taylor expansion: coefficient of `ℓ` is `D^ℓ f(y₀) / ℓ!`,
/// for every multi-index with `|ℓ| ≤ order`.
#[derive(Debug, Clone)]
pub struct JetN {
    layout: Arc<Layout>,
    parts: Vec<HomPart>,
}

impl PartialEq for JetN {
    fn eq(&self, other: &Self) -> bool {
        self.layout.dim == other.layout.dim
            && self.layout.order == other.layout.order
            && self.parts == other.parts
    }
}

impl JetN {
    pub fn constant(v: f64, layout: &Arc<Layout>) -> Self {
        let mut parts: Vec<HomPart> = (0..=layout.order).map(|d| HomPart::zero(d, layout)).collect();
        parts[0].c[0] = v;
        JetN {
            layout: layout.clone(),
            parts,
        }
    }

    /// The coordinate function `y_idx` expanded at a point whose `idx`-th entry is `v`.
    pub fn variable(v: f64, idx: usize, layout: &Arc<Layout>) -> Self {
        assert!(idx < layout.dim, "variable index out of range");
        let mut jet = JetN::constant(v, layout);
        if layout.order > 0 {
            let mut e = vec![0u32; layout.dim];
            e[idx] = 1;
            let (_, i) = layout.index[&e];
            jet.parts[1].c[i] = 1.0;
        }
        jet
    }

    pub fn order(&self) -> usize {
        self.layout.order
    }

    pub fn dim(&self) -> usize {
        self.layout.dim
    }

    pub fn layout(&self) -> &Arc<Layout> {
        &self.layout
    }

    /// Normalized coefficient `D^ℓ f / ℓ!`, or `None` if `|ℓ|` exceeds the order.
    pub fn coeff(&self, ell: &[u32]) -> Option<f64> {
        let &(d, i) = self.layout.index.get(ell)?;
        Some(self.parts[d].c[i])
    }

    /// Mixed partial `D^ℓ f(y₀) = ℓ!·coeff(ℓ)`.
    pub fn partial(&self, ell: &[u32]) -> Option<f64> {
        let c = self.coeff(ell)?;
        let fact: f64 = ell
            .iter()
            .map(|&l| (1..=l).map(|j| j as f64).product::<f64>())
            .product();
        Some(fact * c)
    }

    /// `(ℓ, D^ℓ f(y₀))` for every stored multi-index, grouped by degree.
    pub fn partials(&self) -> Vec<(Vec<u32>, f64)> {
        let mut out = Vec::with_capacity(self.layout.len());
        for list in &self.layout.monomials {
            for ell in list {
                out.push((ell.clone(), self.partial(ell).expect("stored index")));
            }
        }
        out
    }

    fn check(&self, rhs: &JetN) -> Result<()> {
        if self.layout.dim != rhs.layout.dim || self.layout.order != rhs.layout.order {
            return Err(Error::arg("multivariate jets have different shapes"));
        }
        Ok(())
    }

    fn with(&self, parts: Vec<HomPart>) -> JetN {
        JetN {
            layout: self.layout.clone(),
            parts,
        }
    }
}

impl Numeric for JetN {
    fn constant_like(&self, c: f64) -> Self {
        JetN::constant(c, &self.layout)
    }

    fn value(&self) -> f64 {
        self.parts[0].c[0]
    }

    fn add(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        Ok(self.with(series::add(&self.parts, &rhs.parts)))
    }

    fn sub(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        Ok(self.with(series::sub(&self.parts, &rhs.parts)))
    }

    fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        Ok(self.with(series::mul(&self.parts, &rhs.parts, &self.layout)))
    }

    fn div(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        Ok(self.with(series::div(&self.parts, &rhs.parts, &self.layout)?))
    }

    fn neg(&self) -> Self {
        self.with(series::neg(&self.parts))
    }

    fn powf(&self, p: f64) -> Result<Self> {
        Ok(self.with(series::powf(&self.parts, p, &self.layout)?))
    }

    fn exp(&self) -> Result<Self> {
        Ok(self.with(series::exp(&self.parts, &self.layout)))
    }

    fn ln(&self) -> Result<Self> {
        Ok(self.with(series::ln(&self.parts, &self.layout)?))
    }

    fn sin(&self) -> Result<Self> {
        Ok(self.with(series::sin_cos(&self.parts, &self.layout).0))
    }

    fn cos(&self) -> Result<Self> {
        Ok(self.with(series::sin_cos(&self.parts, &self.layout).1))
    }

    fn sqrt(&self) -> Result<Self> {
        Ok(self.with(series::sqrt(&self.parts, &self.layout)?))
    }
}
