use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::rate::{FavardReport, RateReport, RunStatus};
use crate::error::{Error, Result};

/// `<case>-<r>-<gamma>-<delta>`
pub fn report_stem(case: &str, r: usize, gamma: f64, delta: f64) -> String {
    format!("{case}-{r}-{gamma}-{delta}")
}

/// Pretty JSON followed by a newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn status_name(s: RunStatus) -> &'static str {
    match s {
        RunStatus::Converged => "converged",
        RunStatus::RoundingLimited => "rounding-limited",
        RunStatus::NoiseFloor => "noise-floor",
        RunStatus::NotConverged => "not-converged",
    }
}

/// One row per degree: `m,error,levelled,status,bound,ratio`, where `bound`
/// is `bound_rhs / m^r`.
pub fn rate_csv(rep: &RateReport) -> String {
    let mut s = String::from("m,error,levelled,status,bound,ratio\n");
    for i in 0..rep.ms.len() {
        let m = rep.ms[i];
        let bound = rep.bound_rhs / (m as f64).powi(rep.r as i32);
        let _ = writeln!(
            s,
            "{m},{:e},{:e},{},{:e},{:e}",
            rep.errors[i],
            rep.levelled[i],
            status_name(rep.status[i]),
            bound,
            rep.ratios[i]
        );
    }
    s
}

pub fn favard_csv(rep: &FavardReport) -> String {
    let mut s = String::from("m,error,status,ratio\n");
    for i in 0..rep.ms.len() {
        let _ = writeln!(
            s,
            "{},{:e},{},{:e}",
            rep.ms[i],
            rep.errors[i],
            status_name(rep.status[i]),
            rep.ratios[i]
        );
    }
    s
}

fn write_pair(dir: &Path, stem: &str, json: &str, csv: &str) -> Result<(PathBuf, PathBuf)> {
    fs::create_dir_all(dir)?;
    let j = dir.join(format!("{stem}.json"));
    let c = dir.join(format!("{stem}.csv"));
    fs::write(&j, json)?;
    fs::write(&c, csv)?;
    Ok((j, c))
}

/// Writes `<stem>.json` and `<stem>.csv` into `dir`, creating it if needed.
pub fn write_rate_report(dir: &Path, rep: &RateReport) -> Result<(PathBuf, PathBuf)> {
    let stem = report_stem(&rep.case, rep.r, rep.gamma, rep.delta);
    write_pair(dir, &stem, &to_json(rep)?, &rate_csv(rep))
}

pub fn write_favard_report(dir: &Path, case: &str, rep: &FavardReport) -> Result<(PathBuf, PathBuf)> {
    let stem = report_stem(case, rep.r, rep.gamma, rep.delta);
    write_pair(dir, &stem, &to_json(rep)?, &favard_csv(rep))
}

/// Writes `value` as `<stem>.json` into `dir`.
pub fn write_json<T: Serialize>(dir: &Path, stem: &str, value: &T) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let p = dir.join(format!("{stem}.json"));
    fs::write(&p, to_json(value)?)?;
    Ok(p)
}
