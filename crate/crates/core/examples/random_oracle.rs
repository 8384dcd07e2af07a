//! Random expression pairs run through both derivative pipelines.
//!
//! ```bash
//! cargo run --example random_oracle -- 42 20
//! ```

use compose_approx::harness::{random_cases, run_oracle};

fn main() -> compose_approx::Result<()> {
    let mut args = std::env::args().skip(1);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);
    let count: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(10);
    for case in random_cases(seed, count, 6) {
        let rec = run_oracle(&case)?;
        println!(
            "{} r={} n={} worst {:.1e}\n    f = {}\n    g = {:?}",
            if rec.agree { "ok  " } else { "FAIL" },
            case.r,
            case.g.len(),
            rec.worst,
            case.f,
            case.g
        );
    }
    Ok(())
}
