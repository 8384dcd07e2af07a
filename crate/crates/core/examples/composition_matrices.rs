//! The multivariate expansion splits each part multiplicity k_i of a
//! partition vector across n coordinates. This lists those splits.

use compose_approx::combinatorics::{composition_count, enumerate_composition_matrices, enumerate_partition_vectors};
use compose_approx::faadibruno::ExpansionPlan;

fn main() -> compose_approx::Result<()> {
    let (r, n) = (3, 2);
    for p in enumerate_partition_vectors(r)? {
        let mats = enumerate_composition_matrices(&p, n)?;
        let expected: usize = p
            .counts()
            .iter()
            .map(|&k| composition_count(k, n).to_string().parse::<usize>().unwrap())
            .product();
        println!("{:?}: {} matrices (product of compositions {expected})", p.counts(), mats.len());
        for q in mats {
            let rows: Vec<&[u32]> = (1..=r).map(|i| q.row(i)).collect();
            println!("    rows {rows:?}  column sums {:?}  coeff {}", q.column_sums(), q.coefficient());
        }
    }

    for (r, n) in [(4, 1), (4, 2), (4, 3), (6, 3)] {
        println!("r={r} n={n}: {} terms in the expansion", ExpansionPlan::new(r, n)?.term_count());
    }
    Ok(())
}
