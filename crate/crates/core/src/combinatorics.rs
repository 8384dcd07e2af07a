//! Integer partitions of a derivative order and the combinatorial weights
//! that appear in the Faà di Bruno expansion.
//!
//! A partition of `r` is stored by multiplicities: `counts[i - 1] = k_i` is the
//! number of parts equal to `i`, so `Σ i·k_i = r`. For an outer function of
//! `n` variables each `k_i` is further split across the coordinates, giving a
//! [`CompositionMatrix`] with row sums `k_i`.
//!
//! All coefficients are exact big integers; floating point enters only when a
//! coefficient multiplies real data.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Size caps for the exponential enumerations in this module.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest derivative order accepted.
    pub max_order: usize,
    /// Largest number of composition matrices materialized for one partition.
    pub max_matrices: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: 64,
            max_matrices: 10_000_000,
        }
    }
}

impl Limits {
    fn check_order(&self, r: usize) -> Result<()> {
        if r == 0 {
            return Err(Error::arg("order must be positive"));
        }
        if r > self.max_order {
            return Err(Error::ResourceLimit {
                what: "derivative order",
                cap: self.max_order as u64,
                requested: r as u64,
            });
        }
        Ok(())
    }
}

/// Multiplicity vector `(k_1, …, k_r)` with `Σ i·k_i = r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartitionVector {
    counts: Vec<u32>,
}

impl PartitionVector {
    /// Builds a partition vector, checking `Σ i·k_i = counts.len()`.
    pub fn new(counts: Vec<u32>) -> Result<Self> {
        let r = counts.len();
        if r == 0 {
            return Err(Error::arg("partition vector must have positive order"));
        }
        let weight: u64 = counts
            .iter()
            .enumerate()
            .map(|(i, &k)| (i as u64 + 1) * k as u64)
            .sum();
        if weight != r as u64 {
            return Err(Error::arg(format!(
                "Σ i·k_i = {weight} does not equal order {r}"
            )));
        }
        Ok(PartitionVector { counts })
    }

    pub fn order(&self) -> usize {
        self.counts.len()
    }

    /// `k_1, …, k_r`.
    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    /// Multiplicity of parts of size `i` (1-based).
    pub fn count(&self, i: usize) -> u32 {
        self.counts[i - 1]
    }

    /// `k = Σ k_i`.
    pub fn block_count(&self) -> u32 {
        self.counts.iter().sum()
    }

    /// `r! / Π_i (k_i! · (i!)^{k_i})`, the number of set partitions of an
    /// `r`-set whose block sizes are described by this vector.
    pub fn coefficient(&self) -> BigUint {
        let facts = factorials(self.order());
        let mut den = BigUint::one();
        for (i, &k) in self.counts.iter().enumerate() {
            if k == 0 {
                continue;
            }
            den *= &facts[k as usize];
            den *= num_traits::pow(facts[i + 1].clone(), k as usize);
        }
        exact_div(&facts[self.order()], &den)
    }
}

/// Distribution of each `k_i` over `n` coordinates: `Σ_j q_ij = k_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CompositionMatrix {
    base: PartitionVector,
    n: usize,
    entries: Vec<u32>,
}

impl CompositionMatrix {
    /// Builds a matrix from row-major entries (`r` rows of `n`), checking row sums.
    pub fn new(base: PartitionVector, n: usize, entries: Vec<u32>) -> Result<Self> {
        if n == 0 {
            return Err(Error::arg("outer dimension must be positive"));
        }
        if entries.len() != base.order() * n {
            return Err(Error::arg("entry count must equal r·n"));
        }
        for (i, row) in entries.chunks(n).enumerate() {
            if row.iter().sum::<u32>() != base.counts[i] {
                return Err(Error::arg(format!("row {} does not sum to k_{}", i + 1, i + 1)));
            }
        }
        Ok(CompositionMatrix { base, n, entries })
    }

    pub fn base(&self) -> &PartitionVector {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `q_ij` with 1-based `i` (part size) and 0-based `j` (coordinate).
    pub fn q(&self, i: usize, j: usize) -> u32 {
        self.entries[(i - 1) * self.n + j]
    }

    /// Row for part size `i` (1-based).
    pub fn row(&self, i: usize) -> &[u32] {
        &self.entries[(i - 1) * self.n..i * self.n]
    }

    /// Column sums `p_j = Σ_i q_ij`.
    pub fn column_sums(&self) -> Vec<u32> {
        let mut p = vec![0u32; self.n];
        for row in self.entries.chunks(self.n) {
            for (pj, q) in p.iter_mut().zip(row) {
                *pj += q;
            }
        }
        p
    }

    /// `r! / (Π_ij q_ij! · Π_i (i!)^{k_i})`.
    pub fn coefficient(&self) -> BigUint {
        let r = self.base.order();
        let facts = factorials(r);
        let mut den = BigUint::one();
        for &q in &self.entries {
            if q > 1 {
                den *= &facts[q as usize];
            }
        }
        for (i, &k) in self.base.counts.iter().enumerate() {
            if k > 0 {
                den *= num_traits::pow(facts[i + 1].clone(), k as usize);
            }
        }
        exact_div(&facts[r], &den)
    }
}

fn exact_div(num: &BigUint, den: &BigUint) -> BigUint {
    let q = num / den;
    debug_assert!((&q * den) == *num, "combinatorial coefficient is not integral");
    q
}

/// `0!, 1!, …, n!`.
pub fn factorials(n: usize) -> Vec<BigUint> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(BigUint::one());
    for i in 1..=n {
        let next = &out[i - 1] * BigUint::from(i);
        out.push(next);
    }
    out
}

/// `feasible[i][s]`: can `s` be written as a sum of parts drawn from `i..=r`.
fn feasibility(r: usize) -> Vec<Vec<bool>> {
    let mut feas = vec![vec![false; r + 1]; r + 2];
    feas[r + 1][0] = true;
    for i in (1..=r).rev() {
        for s in 0..=r {
            feas[i][s] = (0..=s / i).any(|k| feas[i + 1][s - k * i]);
        }
    }
    feas
}

/// Calls `visit` with every multiplicity vector of `r`, in descending
/// lexicographic order of `(k_1, …, k_r)`.
pub(crate) fn visit_partitions(r: usize, mut visit: impl FnMut(&[u32])) {
    fn rec(
        i: usize,
        rem: usize,
        r: usize,
        feas: &[Vec<bool>],
        buf: &mut Vec<u32>,
        visit: &mut dyn FnMut(&[u32]),
    ) {
        if i > r {
            visit(buf);
            return;
        }
        for k in (0..=rem / i).rev() {
            let left = rem - k * i;
            if !feas[i + 1][left] {
                continue;
            }
            buf[i - 1] = k as u32;
            rec(i + 1, left, r, feas, buf, visit);
        }
        buf[i - 1] = 0;
    }
    let feas = feasibility(r);
    let mut buf = vec![0u32; r];
    rec(1, r, r, &feas, &mut buf, &mut visit);
}

/// All partition vectors of `r` under the default [`Limits`].
pub fn enumerate_partition_vectors(r: usize) -> Result<Vec<PartitionVector>> {
    enumerate_partition_vectors_with(r, &Limits::default())
}

pub fn enumerate_partition_vectors_with(r: usize, limits: &Limits) -> Result<Vec<PartitionVector>> {
    limits.check_order(r)?;
    let mut out = Vec::new();
    visit_partitions(r, |c| {
        out.push(PartitionVector { counts: c.to_vec() })
    });
    Ok(out)
}

/// Number of weak compositions of `k` into `n` parts, `C(k+n-1, n-1)`.
pub fn composition_count(k: u32, n: usize) -> BigUint {
    binomial(k as u64 + n as u64 - 1, n as u64 - 1)
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Weak compositions of `k` into `n` parts, descending lexicographic.
pub(crate) fn compositions(k: u32, n: usize) -> Vec<Vec<u32>> {
    fn rec(j: usize, rem: u32, n: usize, buf: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if j == n - 1 {
            buf[j] = rem;
            out.push(buf.clone());
            return;
        }
        for q in (0..=rem).rev() {
            buf[j] = q;
            rec(j + 1, rem - q, n, buf, out);
        }
    }
    let mut out = Vec::new();
    let mut buf = vec![0u32; n];
    rec(0, k, n, &mut buf, &mut out);
    out
}

/// All composition matrices over `p` with `n` columns under the default [`Limits`].
pub fn enumerate_composition_matrices(p: &PartitionVector, n: usize) -> Result<Vec<CompositionMatrix>> {
    enumerate_composition_matrices_with(p, n, &Limits::default())
}

pub fn enumerate_composition_matrices_with(
    p: &PartitionVector,
    n: usize,
    limits: &Limits,
) -> Result<Vec<CompositionMatrix>> {
    if n == 0 {
        return Err(Error::arg("outer dimension must be positive"));
    }
    let total: BigUint = p
        .counts
        .iter()
        .map(|&k| composition_count(k, n))
        .product();
    if total > BigUint::from(limits.max_matrices) {
        return Err(Error::ResourceLimit {
            what: "composition matrices",
            cap: limits.max_matrices,
            requested: total.to_u64().unwrap_or(u64::MAX),
        });
    }
    let rows: Vec<Vec<Vec<u32>>> = p.counts.iter().map(|&k| compositions(k, n)).collect();
    let r = p.order();
    let mut out = Vec::with_capacity(total.to_usize().unwrap_or(0));
    let mut idx = vec![0usize; r];
    loop {
        let mut entries = Vec::with_capacity(r * n);
        for (i, &c) in idx.iter().enumerate() {
            entries.extend_from_slice(&rows[i][c]);
        }
        out.push(CompositionMatrix {
            base: p.clone(),
            n,
            entries,
        });
        // odometer, last row fastest
        let mut i = r;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < rows[i].len() {
                break;
            }
            idx[i] = 0;
        }
    }
}

/// Partial exponential Bell polynomial `B_{r,k}(x_1, …, x_{r-k+1})`.
pub fn incomplete_bell(r: usize, k: usize, x: &[f64]) -> Result<f64> {
    Limits::default().check_order(r)?;
    if k == 0 || k > r {
        return Err(Error::arg(format!("block count {k} outside 1..={r}")));
    }
    if x.len() != r - k + 1 {
        return Err(Error::arg(format!(
            "B_{{{r},{k}}} takes {} arguments, got {}",
            r - k + 1,
            x.len()
        )));
    }
    let mut acc = 0.0;
    let mut err = Ok(());
    visit_partitions(r, |counts| {
        if err.is_err() || counts.iter().sum::<u32>() as usize != k {
            return;
        }
        let pv = PartitionVector {
            counts: counts.to_vec(),
        };
        let coef = match pv.coefficient().to_f64() {
            Some(c) if c.is_finite() => c,
            _ => {
                err = Err(Error::arg("Bell coefficient overflows f64"));
                return;
            }
        };
        let mut prod = 1.0;
        for (i, &ki) in counts.iter().enumerate() {
            if ki > 0 {
                prod *= x[i].powi(ki as i32);
            }
        }
        acc += coef * prod;
    });
    err.map(|_| acc)
}

/// Exact `B_{r,k}(1, …, 1)`, the Stirling number of the second kind `S(r, k)`.
pub fn incomplete_bell_ones(r: usize, k: usize) -> Result<BigUint> {
    Limits::default().check_order(r)?;
    if k == 0 || k > r {
        return Err(Error::arg(format!("block count {k} outside 1..={r}")));
    }
    let mut acc = BigUint::zero();
    visit_partitions(r, |counts| {
        if counts.iter().sum::<u32>() as usize == k {
            acc += PartitionVector {
                counts: counts.to_vec(),
            }
            .coefficient();
        }
    });
    Ok(acc)
}

/// Bell number `B_r = Σ_k B_{r,k}(1, …, 1)`.
pub fn bell_number(r: usize) -> Result<BigUint> {
    Limits::default().check_order(r)?;
    let mut by_k = vec![BigUint::zero(); r + 1];
    visit_partitions(r, |counts| {
        let k = counts.iter().sum::<u32>() as usize;
        by_k[k] += PartitionVector {
            counts: counts.to_vec(),
        }
        .coefficient();
    });
    Ok(by_k.into_iter().sum())
}

/// `k! / Π parts_j!`.
pub fn multinomial(k: u32, parts: &[u32]) -> Result<BigUint> {
    let total: u64 = parts.iter().map(|&p| p as u64).sum();
    if total != k as u64 {
        return Err(Error::arg(format!("parts sum to {total}, expected {k}")));
    }
    let facts = factorials(k as usize);
    let den: BigUint = parts.iter().map(|&p| facts[p as usize].clone()).product();
    Ok(exact_div(&facts[k as usize], &den))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force partition function: count multisets of parts by recursion on
    /// the largest part.
    fn partition_count_oracle(r: usize) -> u64 {
        fn p(n: usize, max: usize) -> u64 {
            if n == 0 {
                return 1;
            }
            (1..=max.min(n)).map(|m| p(n - m, m)).sum()
        }
        p(r, r)
    }

    /// Brute-force set partitions of {0..r} grouped by block count, via
    /// restricted growth strings.
    fn set_partition_counts(r: usize) -> Vec<u64> {
        let mut counts = vec![0u64; r + 1];
        fn rec(pos: usize, r: usize, max: usize, counts: &mut [u64]) {
            if pos == r {
                counts[max] += 1;
                return;
            }
            for b in 0..=max {
                rec(pos + 1, r, max.max(b + 1), counts);
            }
        }
        rec(0, r, 0, &mut counts);
        counts
    }

    #[test]
    fn small_partition_lists() {
        let one = enumerate_partition_vectors(1).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].counts(), &[1]);

        let three: Vec<Vec<u32>> = enumerate_partition_vectors(3)
            .unwrap()
            .into_iter()
            .map(|p| p.counts().to_vec())
            .collect();
        assert_eq!(three, vec![vec![3, 0, 0], vec![1, 1, 0], vec![0, 0, 1]]);

        assert_eq!(enumerate_partition_vectors(5).unwrap().len(), 7);
    }

    #[test]
    fn partition_counts_match_oracle() {
        for r in 1..=12 {
            let list = enumerate_partition_vectors(r).unwrap();
            assert_eq!(list.len() as u64, partition_count_oracle(r), "r = {r}");
            for w in list.windows(2) {
                assert!(w[0].counts() > w[1].counts(), "order not strictly descending");
            }
            for p in &list {
                let k = p.block_count() as usize;
                assert!(1 <= k && k <= r);
            }
        }
    }

    #[test]
    fn order_cap_is_reported() {
        let err = enumerate_partition_vectors(65).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { cap: 64, .. }));
        let tight = Limits {
            max_order: 4,
            ..Limits::default()
        };
        assert!(enumerate_partition_vectors_with(5, &tight).is_err());
        assert!(enumerate_partition_vectors(0).is_err());
    }

    #[test]
    fn composition_examples() {
        let p1 = PartitionVector::new(vec![1]).unwrap();
        let m = enumerate_composition_matrices(&p1, 2).unwrap();
        let rows: Vec<Vec<u32>> = m.iter().map(|c| c.row(1).to_vec()).collect();
        assert_eq!(rows, vec![vec![1, 0], vec![0, 1]]);

        let p2 = PartitionVector::new(vec![2, 0]).unwrap();
        let m = enumerate_composition_matrices(&p2, 2).unwrap();
        let rows: Vec<Vec<u32>> = m.iter().map(|c| c.row(1).to_vec()).collect();
        assert_eq!(rows, vec![vec![2, 0], vec![1, 1], vec![0, 2]]);

        for p in enumerate_partition_vectors(6).unwrap() {
            let m = enumerate_composition_matrices(&p, 1).unwrap();
            assert_eq!(m.len(), 1);
            for i in 1..=6 {
                assert_eq!(m[0].q(i, 0), p.count(i));
            }
        }
    }

    #[test]
    fn composition_counts_and_sums() {
        for r in 1..=6 {
            for p in enumerate_partition_vectors(r).unwrap() {
                for n in 1..=4 {
                    let ms = enumerate_composition_matrices(&p, n).unwrap();
                    let expect: BigUint = p.counts().iter().map(|&k| composition_count(k, n)).product();
                    assert_eq!(BigUint::from(ms.len()), expect);
                    for m in &ms {
                        assert_eq!(m.column_sums().iter().sum::<u32>(), p.block_count());
                    }
                }
            }
        }
    }

    #[test]
    fn matrix_cap_is_reported() {
        let p = PartitionVector::new(vec![6, 0, 0, 0, 0, 0]).unwrap();
        let tight = Limits {
            max_matrices: 10,
            ..Limits::default()
        };
        let err = enumerate_composition_matrices_with(&p, 3, &tight).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { requested: 28, .. }));
    }

    #[test]
    fn multinomial_identity() {
        // Σ over the matrix family of Π_i multinomial(k_i, row_i) = n^k
        for r in 1..=7 {
            for p in enumerate_partition_vectors(r).unwrap() {
                for n in 1..=4usize {
                    let total: BigUint = enumerate_composition_matrices(&p, n)
                        .unwrap()
                        .iter()
                        .map(|m| {
                            (1..=r)
                                .map(|i| multinomial(p.count(i), m.row(i)).unwrap())
                                .product::<BigUint>()
                        })
                        .sum();
                    assert_eq!(total, BigUint::from(n).pow(p.block_count()));
                }
            }
        }
    }

    #[test]
    fn bell_polynomial_examples() {
        for x in [[1.0, 2.0, 3.0], [-0.5, 7.0, 11.0]] {
            assert_eq!(incomplete_bell(3, 1, &x).unwrap(), x[2]);
        }
        assert_eq!(incomplete_bell(3, 2, &[2.0, 5.0]).unwrap(), 30.0);
        assert_eq!(incomplete_bell(4, 2, &[1.0, 1.0, 1.0]).unwrap(), 7.0);
        assert!(matches!(incomplete_bell(4, 2, &[1.0, 1.0]), Err(Error::Argument(_))));
        assert!(incomplete_bell(4, 5, &[]).is_err());
    }

    #[test]
    fn bell_ones_match_set_partitions() {
        for r in 1..=12 {
            let oracle = set_partition_counts(r);
            let mut sum = BigUint::zero();
            for k in 1..=r {
                let exact = incomplete_bell_ones(r, k).unwrap();
                assert_eq!(exact, BigUint::from(oracle[k]), "S({r},{k})");
                let ones = vec![1.0; r - k + 1];
                assert_eq!(incomplete_bell(r, k, &ones).unwrap(), oracle[k] as f64);
                sum += exact;
            }
            assert_eq!(sum, bell_number(r).unwrap());
            assert_eq!(bell_number(r).unwrap(), BigUint::from(oracle.iter().sum::<u64>()));
        }
    }

    #[test]
    fn bell_numbers() {
        assert_eq!(bell_number(1).unwrap(), BigUint::from(1u32));
        assert_eq!(bell_number(3).unwrap(), BigUint::from(5u32));
        assert_eq!(bell_number(4).unwrap(), BigUint::from(15u32));
        // B_25 exceeds u64 factorial range but not the Bell range
        assert_eq!(bell_number(25).unwrap().to_string(), "4638590332229999353");
        assert!(bell_number(65).is_err());
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(multinomial(0, &[]).unwrap(), BigUint::one());
        assert_eq!(multinomial(2, &[1, 1]).unwrap(), BigUint::from(2u32));
        assert_eq!(multinomial(4, &[2, 1, 1]).unwrap(), BigUint::from(12u32));
        assert!(multinomial(3, &[1, 1]).is_err());
    }

    #[test]
    fn coefficient_sums_to_factorial_over_matrices() {
        // n = 1 matrix coefficient equals the partition coefficient
        for p in enumerate_partition_vectors(8).unwrap() {
            let m = &enumerate_composition_matrices(&p, 1).unwrap()[0];
            assert_eq!(m.coefficient(), p.coefficient());
        }
    }

    #[test]
    fn invalid_partition_vector() {
        assert!(PartitionVector::new(vec![1, 1]).is_err());
        assert!(PartitionVector::new(vec![]).is_err());
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn bell_polynomial_is_homogeneous(
                r in 1usize..=9,
                kf in 0.0f64..1.0,
                c in -3.0f64..3.0,
                xs in proptest::collection::vec(-2.0f64..2.0, 9),
            ) {
                let k = 1 + ((r as f64 - 1.0) * kf).round() as usize;
                let x = &xs[..r - k + 1];
                let scaled: Vec<f64> = x.iter().map(|v| c * v).collect();
                let lhs = incomplete_bell(r, k, &scaled).unwrap();
                let rhs = c.powi(k as i32) * incomplete_bell(r, k, x).unwrap();
                let scale = lhs.abs().max(rhs.abs()).max(1e-300);
                // cancellation between terms of mixed sign: compare against the
                // magnitude of the absolute-value polynomial
                let abs_x: Vec<f64> = scaled.iter().map(|v| v.abs()).collect();
                let mag = incomplete_bell(r, k, &abs_x).unwrap().max(scale);
                prop_assert!((lhs - rhs).abs() <= 1e-12 * mag);
            }
        }
    }
}
