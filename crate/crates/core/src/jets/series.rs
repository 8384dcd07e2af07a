//! Truncated power-series recurrences, generic over the coefficient type.
//!
//! A series is a slice `a[0..=r]` of homogeneous parts: for univariate jets a
//! part is one `f64`, for multivariate jets it is the degree-`d` homogeneous
//! component. Every elementary function is propagated with the classical
//! first-order recurrence obtained from `t·d/dt` applied to `a(t·y)`, which is
//! the same formula in both settings. Sharing the code keeps one-variable
//! multivariate jets bit-identical to univariate ones.

use crate::error::{Error, Result};

pub(crate) trait Part: Clone {
    type Ctx: ?Sized;

    fn zero(deg: usize, ctx: &Self::Ctx) -> Self;
    fn scalar(v: f64, ctx: &Self::Ctx) -> Self;
    /// Constant term (only meaningful for degree 0).
    fn value(&self) -> f64;
    /// `self += s * (a * b)`.
    fn mul_acc(&mut self, a: &Self, b: &Self, s: f64, ctx: &Self::Ctx);
    /// `self += s * a`.
    fn add_scaled(&mut self, a: &Self, s: f64);
    fn scale(&mut self, s: f64);
}

impl Part for f64 {
    type Ctx = ();

    fn zero(_: usize, _: &()) -> Self {
        0.0
    }

    fn scalar(v: f64, _: &()) -> Self {
        v
    }

    fn value(&self) -> f64 {
        *self
    }

    #[inline]
    fn mul_acc(&mut self, a: &Self, b: &Self, s: f64, _: &()) {
        *self += s * (a * b);
    }

    #[inline]
    fn add_scaled(&mut self, a: &Self, s: f64) {
        *self += s * a;
    }

    #[inline]
    fn scale(&mut self, s: f64) {
        *self *= s;
    }
}

pub(crate) fn add<P: Part>(a: &[P], b: &[P]) -> Vec<P> {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let mut z = x.clone();
            z.add_scaled(y, 1.0);
            z
        })
        .collect()
}

pub(crate) fn sub<P: Part>(a: &[P], b: &[P]) -> Vec<P> {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let mut z = x.clone();
            z.add_scaled(y, -1.0);
            z
        })
        .collect()
}

pub(crate) fn neg<P: Part>(a: &[P]) -> Vec<P> {
    a.iter()
        .map(|x| {
            let mut z = x.clone();
            z.scale(-1.0);
            z
        })
        .collect()
}

pub(crate) fn mul<P: Part>(a: &[P], b: &[P], ctx: &P::Ctx) -> Vec<P> {
    let r = a.len() - 1;
    (0..=r)
        .map(|d| {
            let mut acc = P::zero(d, ctx);
            for i in 0..=d {
                acc.mul_acc(&a[i], &b[d - i], 1.0, ctx);
            }
            acc
        })
        .collect()
}

pub(crate) fn div<P: Part>(a: &[P], b: &[P], ctx: &P::Ctx) -> Result<Vec<P>> {
    let b0 = b[0].value();
    if b0 == 0.0 {
        return Err(Error::Domain {
            func: "division",
            value: b0,
        });
    }
    let r = a.len() - 1;
    let mut q: Vec<P> = Vec::with_capacity(r + 1);
    q.push(P::scalar(a[0].value() / b0, ctx));
    let inv = 1.0 / b0;
    for d in 1..=r {
        let mut acc = a[d].clone();
        for k in 1..=d {
            acc.mul_acc(&b[k], &q[d - k], -1.0, ctx);
        }
        acc.scale(inv);
        q.push(acc);
    }
    Ok(q)
}

pub(crate) fn exp<P: Part>(a: &[P], ctx: &P::Ctx) -> Vec<P> {
    let r = a.len() - 1;
    let mut b: Vec<P> = Vec::with_capacity(r + 1);
    b.push(P::scalar(a[0].value().exp(), ctx));
    for d in 1..=r {
        let mut acc = P::zero(d, ctx);
        for k in 1..=d {
            acc.mul_acc(&a[k], &b[d - k], k as f64, ctx);
        }
        acc.scale(1.0 / d as f64);
        b.push(acc);
    }
    b
}

pub(crate) fn ln<P: Part>(a: &[P], ctx: &P::Ctx) -> Result<Vec<P>> {
    let a0 = a[0].value();
    if a0 <= 0.0 {
        return Err(Error::Domain {
            func: "log",
            value: a0,
        });
    }
    let r = a.len() - 1;
    let mut b: Vec<P> = Vec::with_capacity(r + 1);
    b.push(P::scalar(a0.ln(), ctx));
    for d in 1..=r {
        let mut tmp = P::zero(d, ctx);
        for k in 1..d {
            tmp.mul_acc(&b[k], &a[d - k], k as f64, ctx);
        }
        let mut acc = a[d].clone();
        acc.add_scaled(&tmp, -1.0 / d as f64);
        acc.scale(1.0 / a0);
        b.push(acc);
    }
    Ok(b)
}

pub(crate) fn sin_cos<P: Part>(a: &[P], ctx: &P::Ctx) -> (Vec<P>, Vec<P>) {
    let r = a.len() - 1;
    let a0 = a[0].value();
    let mut s: Vec<P> = Vec::with_capacity(r + 1);
    let mut c: Vec<P> = Vec::with_capacity(r + 1);
    s.push(P::scalar(a0.sin(), ctx));
    c.push(P::scalar(a0.cos(), ctx));
    for d in 1..=r {
        let mut sd = P::zero(d, ctx);
        let mut cd = P::zero(d, ctx);
        for k in 1..=d {
            sd.mul_acc(&a[k], &c[d - k], k as f64, ctx);
            cd.mul_acc(&a[k], &s[d - k], k as f64, ctx);
        }
        sd.scale(1.0 / d as f64);
        cd.scale(-1.0 / d as f64);
        s.push(sd);
        c.push(cd);
    }
    (s, c)
}

fn pow_nonzero<P: Part>(a: &[P], p: f64, b0: f64, ctx: &P::Ctx) -> Vec<P> {
    let r = a.len() - 1;
    let a0 = a[0].value();
    let mut b: Vec<P> = Vec::with_capacity(r + 1);
    b.push(P::scalar(b0, ctx));
    for d in 1..=r {
        let mut acc = P::zero(d, ctx);
        for k in 1..=d {
            let w = p * k as f64 - (d - k) as f64;
            acc.mul_acc(&a[k], &b[d - k], w, ctx);
        }
        acc.scale(1.0 / (d as f64 * a0));
        b.push(acc);
    }
    b
}

fn one<P: Part>(r: usize, ctx: &P::Ctx) -> Vec<P> {
    let mut v = Vec::with_capacity(r + 1);
    v.push(P::scalar(1.0, ctx));
    v.extend((1..=r).map(|d| P::zero(d, ctx)));
    v
}

fn powi_by_squaring<P: Part>(a: &[P], mut k: u32, ctx: &P::Ctx) -> Vec<P> {
    let mut base = a.to_vec();
    let mut acc = one(a.len() - 1, ctx);
    while k > 0 {
        if k & 1 == 1 {
            acc = mul(&acc, &base, ctx);
        }
        k >>= 1;
        if k > 0 {
            base = mul(&base, &base, ctx);
        }
    }
    acc
}

/// `a^p` for a constant real exponent.
pub(crate) fn powf<P: Part>(a: &[P], p: f64, ctx: &P::Ctx) -> Result<Vec<P>> {
    let a0 = a[0].value();
    let int = crate::numeric::integer_exponent(p);
    if a0 > 0.0 || (a0 != 0.0 && int.is_some()) {
        return Ok(pow_nonzero(a, p, a0.powf(p), ctx));
    }
    match int {
        Some(k) if k >= 0 => Ok(powi_by_squaring(a, k as u32, ctx)),
        _ => Err(Error::Domain {
            func: "pow",
            value: a0,
        }),
    }
}

pub(crate) fn sqrt<P: Part>(a: &[P], ctx: &P::Ctx) -> Result<Vec<P>> {
    let a0 = a[0].value();
    if a0 <= 0.0 {
        return Err(Error::Domain {
            func: "sqrt",
            value: a0,
        });
    }
    Ok(pow_nonzero(a, 0.5, a0.sqrt(), ctx))
}
