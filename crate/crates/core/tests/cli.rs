use std::path::Path;
use std::process::{Command, Output};

use compose_approx::cli::run_with;

const BIN: &str = env!("CARGO_BIN_EXE_compose-approx");

fn bin(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env_remove("COMPOSE_APPROX_CONFIG")
        .output()
        .expect("binary runs")
}

fn lib(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("compose-approx").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn stdout(o: &Output) -> &str {
    std::str::from_utf8(&o.stdout).unwrap()
}

#[test]
fn help_and_version_exit_zero() {
    for args in [&["--help"][..], &["verify", "--help"], &["faa", "--help"], &["--version"]] {
        let o = bin(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        assert!(!o.stdout.is_empty());
    }
    let help = stdout(&bin(&["--help"])).to_string();
    for sub in ["bell", "faa", "norm", "bestapprox", "verify"] {
        assert!(help.contains(sub), "{sub} missing from help");
    }
}

#[test]
fn documented_outputs() {
    assert_eq!(stdout(&bin(&["bell", "4"])), "15\n");
    assert_eq!(stdout(&bin(&["bell", "12"])), "4213597\n");
    assert_eq!(stdout(&bin(&["bell", "6", "3"])), "90\n");
    let o = bin(&["faa", "--f", "exp(y1)", "--g", "sin(x)", "--x0", "0", "--r", "3"]);
    assert_eq!(stdout(&o), "1 1 1 0\n");
    let o = bin(&["bestapprox", "--f", "x^2", "--m", "1", "--gamma", "0", "--delta", "0"]);
    assert!(stdout(&o).starts_with("error 0.5\n"));
}

#[test]
fn binary_matches_library_entry_point() {
    let cases: [&[&str]; 5] = [
        &["bell", "9"],
        &["faa", "--f", "y1*y2", "--g", "x,cos(x)", "--x0", "-0.3", "--r", "4", "--compare-jets"],
        &["norm", "--f", "(1+x)^2.5", "--r", "2", "--gamma", "0.5", "--delta", "0.25"],
        &["verify", "lemma", "--f", "exp(x)", "--r", "3", "--k", "1", "--gamma", "0.25"],
        &["norm", "--f", "log(x)", "--r", "1"],
    ];
    for args in cases {
        let o = bin(args);
        let (code, out, err) = lib(args);
        assert_eq!(o.status.code(), Some(code), "{args:?}");
        assert_eq!(stdout(&o), out, "{args:?}");
        assert_eq!(std::str::from_utf8(&o.stderr).unwrap(), err, "{args:?}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(bin(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(bin(&["bell"]).status.code(), Some(2));
    assert_eq!(bin(&["norm", "--f", "x^y", "--r", "1"]).status.code(), Some(2));
    assert_eq!(bin(&["verify", "rate", "--f", "exp(y1)", "--g", "x", "--r", "2", "--ms", "9:3"]).status.code(), Some(2));
    // log of a negative value is a numerical failure
    let o = bin(&["norm", "--f", "log(x)", "--r", "1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(!o.stderr.is_empty());
    // an explicit box that misses the image of g
    let o = bin(&["verify", "composite", "--f", "y1^2", "--g", "x", "--r", "1", "--box", "0:1"]);
    assert_eq!(o.status.code(), Some(3));
}

fn report_grid(dir: &Path, stem: &str) -> serde_json::Value {
    let text = std::fs::read_to_string(dir.join(format!("{stem}.json"))).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["grid"].clone()
}

#[test]
fn config_file_environment_and_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    let out_cfg = dir.path().join("from-config");
    std::fs::write(&cfg, format!("# test\ngrid = 1025\nseed = 5\nout = {}\n", out_cfg.display())).unwrap();
    let rate = ["verify", "rate", "--f", "sin(y1)", "--g", "(1-x)^2.5", "--r", "2", "--ms", "4,6", "--case", "c"];

    let mut args = rate.to_vec();
    args.extend(["--config", cfg.to_str().unwrap()]);
    assert_eq!(bin(&args).status.code(), Some(0));
    assert_eq!(report_grid(&out_cfg, "c-2-0-0")["points"], 1025);

    // flags win over the file
    let out_flag = dir.path().join("from-flag");
    let mut args = rate.to_vec();
    args.extend(["--config", cfg.to_str().unwrap(), "--grid", "2049", "--out", out_flag.to_str().unwrap()]);
    assert_eq!(bin(&args).status.code(), Some(0));
    assert_eq!(report_grid(&out_flag, "c-2-0-0")["points"], 2049);

    // the environment variable stands in for --config
    std::fs::remove_dir_all(&out_cfg).unwrap();
    let o = Command::new(BIN).args(rate).env("COMPOSE_APPROX_CONFIG", &cfg).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out_cfg.join("c-2-0-0.json")).unwrap()).unwrap();
    assert_eq!(json["seed"], 5);

    std::fs::write(&cfg, "colour = blue\n").unwrap();
    let mut args = rate.to_vec();
    args.extend(["--config", cfg.to_str().unwrap()]);
    assert_eq!(bin(&args).status.code(), Some(2));
}

#[test]
fn rate_writes_json_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = bin(&[
        "verify", "rate", "--f", "y1*y2 + y2", "--g", "(1+x)^2.5,cos(x)", "--r", "2", "--ms", "4:12:4", "--case", "pair",
        "--gamma", "0.25", "--out", out,
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(dir.path().join("pair-2-0.25-0.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("m,error,levelled,status,bound,ratio"));
    assert_eq!(lines.count(), 3);
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("pair-2-0.25-0.json")).unwrap()).unwrap();
    assert_eq!(json["ms"], serde_json::json!([4, 8, 12]));
    assert_eq!(json["exponents"]["exponents"].as_array().unwrap().len(), 2);
    assert!(stdout(&o).contains("slope "));
}

#[test]
fn oracle_subcommand_agrees() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) = lib(&["verify", "oracle", "--count", "12", "--seed", "3", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.starts_with("agree 12/12\n"), "{out}");
    assert!(dir.path().join("oracle-3.json").exists());
}
