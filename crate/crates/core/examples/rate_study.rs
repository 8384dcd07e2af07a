//! Decay of E_m(f o g)_u for the built-in rate cases, with JSON and CSV
//! reports written to a directory.
//!
//! ```bash
//! cargo run --release --example rate_study -- target/rate-reports
//! ```

use std::path::PathBuf;

use compose_approx::harness::corpus::RATE_CORPUS;
use compose_approx::harness::{verify_rate, write_rate_report, RateConfig};
use compose_approx::minimax::RemezOptions;
use compose_approx::weighted::{GridConfig, JacobiWeight};

fn main() -> compose_approx::Result<()> {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "target/rate-reports".into()));
    for case in RATE_CORPUS {
        let (f, g) = case.exprs()?;
        let cfg = RateConfig {
            case: case.name.into(),
            r: case.r,
            weight: JacobiWeight::unweighted(),
            ms: (8..=64).step_by(4).collect(),
            bounds: None,
            grid: GridConfig::default(),
            remez: RemezOptions::default(),
            seed: 0,
        };
        let rep = verify_rate(&f, &g, &cfg)?;
        let (json, _) = write_rate_report(&out, &rep)?;
        println!(
            "{:18} slope {:>8}  ratio sup {:.3e}  usable {}/{}  -> {}",
            case.name,
            rep.slope.map_or("-".into(), |s| format!("{s:.2}")),
            rep.ratio_sup,
            rep.status.iter().filter(|s| s.usable()).count(),
            rep.ms.len(),
            json.display()
        );
        for w in &rep.warnings {
            println!("    {w}");
        }
    }
    Ok(())
}
