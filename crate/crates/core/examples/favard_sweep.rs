//! m^r E_m(f)_u / ||f^(r) phi^r u|| over a range of degrees, which stays
//! bounded for f in W^r_u.

use compose_approx::harness::corpus::FAVARD_CORPUS;
use compose_approx::harness::{favard_csv, favard_sweeps};
use compose_approx::minimax::RemezOptions;
use compose_approx::weighted::GridConfig;

fn main() -> compose_approx::Result<()> {
    let ms: Vec<usize> = (1..=64).collect();
    let case = FAVARD_CORPUS[3];
    let f = case.f.expr()?;
    let reps = favard_sweeps(&f, &[1, 2, 3], &case.weight(), &ms, &GridConfig::default(), &RemezOptions::default())?;
    for rep in &reps {
        println!(
            "{} r={}: top norm {:.6}, slope {:?}, sup ratio {:.4}",
            case.f.name, rep.r, rep.top_norm, rep.slope, rep.ratio_sup
        );
    }
    println!("\n{}", favard_csv(&reps[2]).lines().take(8).collect::<Vec<_>>().join("\n"));
    Ok(())
}
