//! Partition vectors of r, their Faà di Bruno coefficients, and the Bell
//! numbers obtained by summing partial Bell polynomials at (1, ..., 1).
//!
//! ```bash
//! cargo run --example partitions_and_bell -- 6
//! ```

use compose_approx::combinatorics::{bell_number, enumerate_partition_vectors, incomplete_bell, incomplete_bell_ones};

fn main() -> compose_approx::Result<()> {
    let r: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);

    println!("partition vectors (k_1..k_{r}) of {r}, with coefficient r!/prod k_i! (i!)^k_i:");
    for p in enumerate_partition_vectors(r)? {
        println!("  {:?}  blocks={}  coeff={}", p.counts(), p.block_count(), p.coefficient());
    }

    println!("\npartial Bell numbers B_{{{r},k}}(1..1):");
    for k in 1..=r {
        println!("  k={k}: {}", incomplete_bell_ones(r, k)?);
    }
    println!("B_{r} = {}", bell_number(r)?);

    // floating point partial Bell polynomial at arbitrary arguments
    let x: Vec<f64> = (1..=r).map(|i| 1.0 / i as f64).collect();
    println!("B_{{{r},2}}(1, 1/2, 1/3, ...) = {}", incomplete_bell(r, 2, &x[..r - 1])?);
    Ok(())
}
