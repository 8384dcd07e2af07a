//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use proptest::prelude::*;
use proptest::test_runner::{Config as PtConfig, TestRunner};

use compose_approx::cli::run_with;
use compose_approx::combinatorics::{bell_number, enumerate_partition_vectors, incomplete_bell_ones};
use compose_approx::faadibruno::composite_derivative_1d;
use compose_approx::harness::corpus::{weight_grid, FAVARD_CORPUS, LEMMA_CORPUS};
use compose_approx::harness::{
    favard_sweeps, lemma_sweep, random_cases, run_oracle, select_exponents, verify_rate, RateConfig,
};
use compose_approx::minimax::{weighted_remez, RemezOptions};
use compose_approx::weighted::{GridConfig, JacobiWeight};
use compose_approx::Expr;

type Outcome = Result<String, String>;

fn within(t: Instant, limit: Duration) -> Result<(), String> {
    let e = t.elapsed();
    if e <= limit {
        Ok(())
    } else {
        Err(format!("took {e:.2?}, limit {limit:?}"))
    }
}

// Integer partitions of n with parts at most `max`, counted by listing them.
fn brute_partitions(n: usize, max: usize) -> u64 {
    if n == 0 {
        return 1;
    }
    (1..=max.min(n)).map(|p| brute_partitions(n - p, p)).sum()
}

// Number of set partitions of {0..r-1} with each block count, by walking all
// restricted growth strings.
fn brute_set_partitions(r: usize) -> Vec<u64> {
    let mut by_blocks = vec![0u64; r + 1];
    if r == 0 {
        by_blocks[0] = 1;
        return by_blocks;
    }
    fn walk(i: usize, r: usize, blocks: usize, out: &mut [u64]) {
        if i == r {
            out[blocks] += 1;
            return;
        }
        for b in 0..=blocks {
            walk(i + 1, r, blocks.max(b + 1), out);
        }
    }
    walk(1, r, 1, &mut by_blocks);
    by_blocks
}

fn combinatorics_oracles() -> Outcome {
    let t = Instant::now();
    for r in 1..=12usize {
        let pv = enumerate_partition_vectors(r).map_err(|e| e.to_string())?;
        let expect = brute_partitions(r, r);
        if pv.len() as u64 != expect {
            return Err(format!("r={r}: {} partition vectors, brute force {expect}", pv.len()));
        }
        let sets = brute_set_partitions(r);
        let mut total = BigUint::from(0u32);
        for (k, &count) in sets.iter().enumerate().skip(1) {
            let b = incomplete_bell_ones(r, k).map_err(|e| e.to_string())?;
            if b != BigUint::from(count) {
                return Err(format!("B_{{{r},{k}}}(1..1) = {b}, brute force {count}"));
            }
            total += b;
        }
        let bell = bell_number(r).map_err(|e| e.to_string())?;
        if total != bell {
            return Err(format!("r={r}: sum of partial Bell {total} != B_r {bell}"));
        }
        if bell != BigUint::from(sets.iter().sum::<u64>()) {
            return Err(format!("r={r}: B_r {bell} disagrees with set-partition count"));
        }
    }
    within(t, Duration::from_secs(5))?;
    Ok(format!("r <= 12 in {:.2?}", t.elapsed()))
}

fn faa_vs_jets() -> Outcome {
    let t = Instant::now();
    let cases = random_cases(20240601, 60, 6);
    let mut dims = [0usize; 4];
    let mut worst: f64 = 0.0;
    for c in &cases {
        dims[c.g.len()] += 1;
        let rec = run_oracle(c).map_err(|e| format!("{c:?}: {e}"))?;
        worst = worst.max(rec.worst);
        if !rec.agree {
            return Err(format!("f={} g={:?} x0={} r={}: worst {:e}", c.f, c.g, c.x0, c.r, rec.worst));
        }
    }
    if dims[1..].contains(&0) {
        return Err(format!("dimensions not all exercised: {dims:?}"));
    }
    within(t, Duration::from_secs(30))?;
    Ok(format!(
        "{} cases, n counts {:?}, worst disagreement {worst:.1e}, {:.2?}",
        cases.len(),
        &dims[1..],
        t.elapsed()
    ))
}

fn bell_via_exp() -> Outcome {
    let mut worst: f64 = 0.0;
    for r in 1..=12usize {
        let f = vec![1.0; r + 1];
        let mut g = vec![1.0; r + 1];
        g[0] = 0.0;
        let d = composite_derivative_1d(&f, &g, r).map_err(|e| e.to_string())?;
        let b: f64 = bell_number(r).map_err(|e| e.to_string())?.to_string().parse().unwrap();
        let rel = (d - b).abs() / b;
        worst = worst.max(rel);
        if rel > 1e-10 {
            return Err(format!("r={r}: {d} vs {b}"));
        }
    }
    Ok(format!("r <= 12, worst relative error {worst:.1e}"))
}

fn minimax_exactness() -> Outcome {
    let opts = RemezOptions::default();
    let flat = JacobiWeight::unweighted();
    let e = weighted_remez(&|x: f64| Ok(x * x), 1, &flat, &opts).map_err(|e| e.to_string())?;
    if (e.error - 0.5).abs() > 1e-8 {
        return Err(format!("E_1(x^2) = {}", e.error));
    }
    let t3 = |x: f64| Ok(4.0 * x * x * x - 3.0 * x);
    let e3 = weighted_remez(&t3, 2, &flat, &opts).map_err(|e| e.to_string())?;
    if (e3.error - 1.0).abs() > 1e-8 {
        return Err(format!("E_2(T_3) = {}", e3.error));
    }

    // Polynomials of degree m are reproduced.
    let mut exact = 0;
    for m in 1..=8usize {
        for (gi, w) in weight_grid().into_iter().enumerate().step_by(5) {
            let c: Vec<f64> = (0..=m).map(|j| ((j * 7 + m + gi) % 5) as f64 - 2.0).collect();
            let p = move |x: f64| Ok(c.iter().rev().fold(0.0, |acc, &cj| acc * x + cj));
            let rep = weighted_remez(&p, m, &w, &opts).map_err(|e| e.to_string())?;
            if rep.error > 1e-12 {
                return Err(format!("degree {m} polynomial, weight {w:?}: error {:e}", rep.error));
            }
            exact += 1;
        }
    }

    // Equioscillation on every converged run of a mixed battery.
    let mut runs = vec![e, e3];
    let funcs = ["exp(x)", "1/(1 + 4*x^2)", "(1+x)^1.5", "sqrt(2 - x)*sin(2*x)", "cos(3*x)"];
    for src in funcs {
        let f = Expr::univariate(src).map_err(|e| e.to_string())?;
        for w in [
            JacobiWeight::unweighted(),
            JacobiWeight::new(0.5, 0.0).unwrap(),
            JacobiWeight::new(0.25, 0.75).unwrap(),
        ] {
            for m in [2, 5, 10, 20] {
                runs.push(weighted_remez(&|x| f.eval_at(x), m, &w, &opts).map_err(|e| e.to_string())?);
            }
        }
    }
    let converged: Vec<_> = runs.iter().filter(|r| r.converged).collect();
    if converged.len() < runs.len() / 2 {
        return Err(format!("only {} of {} runs converged", converged.len(), runs.len()));
    }
    for r in &converged {
        if !r.equioscillates(1e-8) {
            return Err(format!("m={} error {:e}: no equioscillation", r.m, r.error));
        }
    }
    Ok(format!(
        "E_1(x^2)={:.12}, E_2(T_3)={:.12}, {exact} polynomials exact, {} converged runs equioscillate",
        runs[0].error,
        runs[1].error,
        converged.len()
    ))
}

fn lemma_suite() -> Outcome {
    let t = Instant::now();
    let grid = GridConfig::default();
    let mut checked = 0;
    let mut worst: f64 = 0.0;
    for c in LEMMA_CORPUS {
        let f = c.expr().map_err(|e| e.to_string())?;
        for w in weight_grid() {
            let recs = lemma_sweep(&f, 5, &w, &grid).map_err(|e| format!("{}: {e}", c.name))?;
            for rec in recs {
                checked += 1;
                worst = worst.max(rec.ratio);
                if !rec.holds {
                    return Err(format!(
                        "{} r={} k={} gamma={} delta={}: lhs {:e} > rhs {:e}",
                        c.name, rec.r, rec.k, rec.gamma, rec.delta, rec.lhs, rec.rhs
                    ));
                }
            }
        }
    }
    if checked != 10 * 16 * 10 {
        return Err(format!("expected 1600 checks, ran {checked}"));
    }
    within(t, Duration::from_secs(120))?;
    Ok(format!("{checked} checks hold, largest lhs/rhs {worst:.3e}, {:.2?}", t.elapsed()))
}

fn favard_suite() -> Outcome {
    let t = Instant::now();
    let ms: Vec<usize> = (1..=200).collect();
    let mut lines = Vec::new();
    for c in FAVARD_CORPUS {
        let f = c.f.expr().map_err(|e| e.to_string())?;
        let reps = favard_sweeps(
            &f,
            &[1, 2, 3],
            &c.weight(),
            &ms,
            &GridConfig::default(),
            &RemezOptions::default(),
        )
        .map_err(|e| format!("{}: {e}", c.f.name))?;
        for rep in reps {
            let slope = rep.slope.ok_or(format!("{} r={}: no usable runs", c.f.name, rep.r))?;
            if slope > 0.1 || !rep.ratio_sup.is_finite() || rep.ms[0] != rep.r {
                return Err(format!(
                    "{} r={}: slope {slope:.3}, sup {:e}",
                    c.f.name, rep.r, rep.ratio_sup
                ));
            }
            lines.push(format!("{}/r{}:{slope:.2}", c.f.name, rep.r));
        }
    }
    within(t, Duration::from_secs(300))?;
    Ok(format!("slopes {} in {:.2?}", lines.join(" "), t.elapsed()))
}

fn rate_case() -> Outcome {
    let f = Expr::outer("exp(y1)", 1).map_err(|e| e.to_string())?;
    let g = vec![Expr::univariate("(1+x)^3.5").map_err(|e| e.to_string())?];
    let cfg = RateConfig {
        case: "exp".into(),
        r: 3,
        weight: JacobiWeight::unweighted(),
        ms: (8..=128).collect(),
        bounds: None,
        grid: GridConfig::default(),
        remez: RemezOptions::default(),
        seed: 0,
    };
    let rep = verify_rate(&f, &g, &cfg).map_err(|e| e.to_string())?;
    let usable = rep.status.iter().filter(|s| s.usable()).count();
    let slope = rep.slope.ok_or("no usable runs")?;
    let growth = rep.top_half_growth.ok_or("too few usable runs for growth")?;
    if slope > -2.85 || !rep.ratio_sup.is_finite() || growth > 0.05 {
        return Err(format!(
            "slope {slope:.3}, ratio_sup {:e}, top-half growth {growth:.3}",
            rep.ratio_sup
        ));
    }
    Ok(format!(
        "slope {slope:.2} over {usable} usable degrees, ratio_sup {:.3e}, top-half growth {:.2}%",
        rep.ratio_sup,
        growth * 100.0
    ))
}

fn exponent_rule() -> Outcome {
    let mut runner = TestRunner::new(PtConfig {
        cases: 2000,
        failure_persistence: None,
        rng_algorithm: proptest::test_runner::RngAlgorithm::ChaCha,
        ..PtConfig::default()
    });
    let norm = prop_oneof![
        Just(1.0f64),
        Just(0.0f64),
        0.0f64..1.0,
        1.0f64..50.0,
        (1.0f64 - 1e-9)..(1.0 + 1e-9),
    ];
    let strat = (prop::collection::vec(norm, 1..6), 1u32..=8);
    runner
        .run(&strat, |(norms, r)| {
            let sel = select_exponents(&norms, r);
            prop_assert_eq!(sel.exponents.len(), norms.len());
            for (&g, &s) in norms.iter().zip(&sel.exponents) {
                prop_assert!(s == 0 || s == r);
                prop_assert_eq!(s == 0, g <= 1.0);
            }
            prop_assert!(sel.product() >= 1.0);
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    let at_one = select_exponents(&[1.0, 1.0], 4);
    if at_one.exponents != [0, 0] {
        return Err(format!("norm exactly 1 gave {:?}", at_one.exponents));
    }
    Ok("2000 random norm vectors".into())
}

fn determinism() -> Outcome {
    let mut outputs = Vec::new();
    for _ in 0..2 {
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        let out = dir.path().to_str().unwrap().to_string();
        let args = [
            "compose-approx", "verify", "rate", "--f", "exp(y1)", "--g", "(1+x)^3.5", "--r", "3", "--ms", "8:40:4",
            "--case", "exp", "--seed", "17", "--out", &out,
        ];
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let code = run_with(args, &mut o, &mut e);
        if code != 0 {
            return Err(format!("exit {code}: {}", String::from_utf8_lossy(&e)));
        }
        let json = std::fs::read(dir.path().join("exp-3-0-0.json")).map_err(|e| e.to_string())?;
        outputs.push(json);
    }
    if outputs[0] != outputs[1] {
        return Err("JSON reports differ".into());
    }
    Ok(format!("two runs, {} identical bytes", outputs[0].len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("combinatorics oracles", combinatorics_oracles),
        ("faa di bruno vs jets", faa_vs_jets),
        ("bell numbers via exp", bell_via_exp),
        ("minimax exactness and equioscillation", minimax_exactness),
        ("lemma inequality suite", lemma_suite),
        ("favard boundedness", favard_suite),
        ("composite rate", rate_case),
        ("exponent rule", exponent_rule),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
