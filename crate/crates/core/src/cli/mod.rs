//! The `compose-approx` command line.
//!
//! Every subcommand parses its inputs, calls one library function and prints
//! the result. Exit codes: 0 on success, 2 on usage or argument errors, 3 on
//! numerical failure (including non-convergence or a failed check under
//! `--strict`), 1 on I/O failure.

mod config;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use config::{ConfigFile, CONFIG_ENV, CONFIG_KEYS};

use crate::combinatorics::{bell_number, incomplete_bell_ones};
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::faadibruno::composite_jet;
use crate::harness::{
    random_cases, run_oracle, verify_composite_bound, verify_lemma, verify_rate, write_json, write_rate_report,
    RateConfig, RunStatus,
};
use crate::jets::composite_series;
use crate::minimax::{best_approximation, RemezOptions};
use crate::weighted::{sobolev_norm_report, GridConfig, JacobiWeight};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "compose-approx",
    version,
    about = "Composite derivatives, Jacobi-weighted norms and weighted best approximation"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Debug, Args)]
struct GlobalOpts {
    /// Flat key=value file with defaults (falls back to $COMPOSE_APPROX_CONFIG)
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Report directory [default: reports]
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Sample points for sup norms [default: 4097]
    #[arg(long, global = true, value_name = "N")]
    grid: Option<usize>,
    /// Relative tolerance of sup-norm refinement [default: 1e-10]
    #[arg(long, global = true, value_name = "T")]
    tol: Option<f64>,
    /// Grid points of the Remez exchange [default: 8193]
    #[arg(long, global = true, value_name = "N")]
    remez_grid: Option<usize>,
    /// Convergence tolerance of the Remez exchange [default: 1e-10]
    #[arg(long, global = true, value_name = "T")]
    remez_tol: Option<f64>,
    /// Seed for randomized checks, echoed in reports [default: 0]
    #[arg(long, global = true, value_name = "S")]
    seed: Option<u64>,
    /// Exit with status 3 on non-convergence or a failed check
    #[arg(long, global = true)]
    strict: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Bell number B_r, or the partial Bell coefficient B_{r,k}(1,...,1)
    Bell {
        r: usize,
        k: Option<usize>,
    },
    /// Derivatives 0..=r of f(g_1(x),...,g_n(x)) at x0 by the Faa di Bruno expansion
    Faa {
        /// Outer function in y1..yn
        #[arg(long, allow_hyphen_values = true, value_name = "EXPR")]
        f: String,
        /// Comma-separated inner functions in x
        #[arg(long, allow_hyphen_values = true, value_name = "EXPR[,EXPR...]")]
        g: String,
        #[arg(long, allow_negative_numbers = true, value_name = "X")]
        x0: f64,
        #[arg(long, value_name = "R")]
        r: usize,
        /// Also print the derivatives from direct jet propagation
        #[arg(long)]
        compare_jets: bool,
    },
    /// Sobolev-type norm ||f u|| + ||f^(r) phi^r u|| on [-1, 1]
    Norm {
        #[arg(long, allow_hyphen_values = true, value_name = "EXPR")]
        f: String,
        #[arg(long, value_name = "R")]
        r: usize,
        #[command(flatten)]
        weight: WeightArgs,
    },
    /// Weighted best approximation error E_m(f)_u by a Remez exchange
    Bestapprox {
        #[arg(long, allow_hyphen_values = true, value_name = "EXPR")]
        f: String,
        #[arg(long, value_name = "M")]
        m: usize,
        #[command(flatten)]
        weight: WeightArgs,
    },
    /// Numerical checks of the derivative and rate estimates
    #[command(subcommand)]
    Verify(Verify),
}

#[derive(Debug, Args)]
struct WeightArgs {
    /// Exponent of (1 - x) in the weight
    #[arg(long, default_value_t = 0.0, value_name = "G")]
    gamma: f64,
    /// Exponent of (1 + x) in the weight
    #[arg(long, default_value_t = 0.0, value_name = "D")]
    delta: f64,
}

#[derive(Debug, Subcommand)]
enum Verify {
    /// ||f^(k) phi^k u|| against the chained constant times ||f u|| + ||f^(r) phi^r u||
    Lemma {
        #[arg(long, allow_hyphen_values = true, value_name = "EXPR")]
        f: String,
        #[arg(long, value_name = "R")]
        r: usize,
        #[arg(long, value_name = "K")]
        k: usize,
        #[command(flatten)]
        weight: WeightArgs,
    },
    /// ||(f o g)^(r) phi^r u^r|| against n^r B_r ||f|| prod ||g_j||^{s_j}
    Composite {
        #[arg(long, allow_hyphen_values = true, value_name = "EXPR")]
        f: String,
        #[arg(long, allow_hyphen_values = true, value_name = "EXPR[,EXPR...]")]
        g: String,
        #[arg(long, value_name = "R")]
        r: usize,
        #[command(flatten)]
        weight: WeightArgs,
        /// Box for the outer norm, one LO:HI per variable [default: image of g plus 5%]
        #[arg(long = "box", allow_hyphen_values = true, value_name = "LO:HI[,LO:HI...]")]
        bounds: Option<String>,
    },
    /// Decay of E_m(f o g)_u over a degree range; writes JSON and CSV reports
    Rate {
        #[arg(long, allow_hyphen_values = true, value_name = "EXPR")]
        f: String,
        #[arg(long, allow_hyphen_values = true, value_name = "EXPR[,EXPR...]")]
        g: String,
        #[arg(long, value_name = "R")]
        r: usize,
        #[command(flatten)]
        weight: WeightArgs,
        /// Degrees as FROM:TO, FROM:TO:STEP or a comma list
        #[arg(long, value_name = "LIST", default_value = "8:128")]
        ms: String,
        #[arg(long = "box", allow_hyphen_values = true, value_name = "LO:HI[,LO:HI...]")]
        bounds: Option<String>,
        /// Report name prefix
        #[arg(long, default_value = "rate")]
        case: String,
    },
    /// Random expression pairs: Faa di Bruno expansion against jet propagation
    Oracle {
        #[arg(long, default_value_t = 60)]
        count: usize,
        #[arg(long, default_value_t = 6)]
        max_r: usize,
    },
}

/// Settings after merging flags, config file and defaults.
#[derive(Debug, Clone, PartialEq)]
pub struct Settings {
    pub grid: GridConfig,
    pub remez: RemezOptions,
    pub seed: u64,
    pub out: PathBuf,
    pub strict: bool,
}

fn resolve_settings(g: &GlobalOpts) -> Result<Settings> {
    let path = g
        .config
        .clone()
        .or_else(|| std::env::var_os(CONFIG_ENV).map(PathBuf::from));
    let file = match path {
        Some(p) => ConfigFile::load(&p)?,
        None => ConfigFile::default(),
    };
    let mut grid = GridConfig::default();
    let mut remez = RemezOptions::default();
    grid.points = g.grid.or(file.get("grid")?).unwrap_or(grid.points);
    grid.rel_tol = g.tol.or(file.get("tol")?).unwrap_or(grid.rel_tol);
    grid.endpoint_gap = file.get("endpoint_gap")?.unwrap_or(grid.endpoint_gap);
    grid.tensor_budget = file.get("tensor_budget")?.unwrap_or(grid.tensor_budget);
    remez.grid = g.remez_grid.or(file.get("remez_grid")?).unwrap_or(remez.grid);
    remez.tol = g.remez_tol.or(file.get("remez_tol")?).unwrap_or(remez.tol);
    remez.max_iter = file.get("max_iter")?.unwrap_or(remez.max_iter);
    let positive = |t: f64| t > 0.0 && t.is_finite();
    if grid.points < 3 || !positive(grid.rel_tol) || !positive(remez.tol) {
        return Err(Error::arg("grid needs at least 3 points and tolerances must be positive"));
    }
    Ok(Settings {
        grid,
        remez,
        seed: g.seed.or(file.get("seed")?).unwrap_or(0),
        out: g
            .out
            .clone()
            .or_else(|| file.raw("out").map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("reports")),
        strict: g.strict || file.get("strict")?.unwrap_or(false),
    })
}

/// Twelve significant digits, trailing zeros removed.
pub fn format_number(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let exp = v.abs().log10().floor() as i32;
    if (-5..15).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let s = format!("{v:.decimals$}");
        let s = if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        };
        if s == "-0" {
            "0".into()
        } else {
            s
        }
    } else {
        let s = format!("{v:.11e}");
        let (mant, e) = s.split_once('e').expect("exponent form");
        let mant = if mant.contains('.') {
            mant.trim_end_matches('0').trim_end_matches('.')
        } else {
            mant
        };
        format!("{mant}e{e}")
    }
}

fn join(vals: &[f64]) -> String {
    vals.iter().map(|&v| format_number(v)).collect::<Vec<_>>().join(" ")
}

fn parse_inner(list: &str) -> Result<Vec<Expr>> {
    list.split(',').map(|s| Expr::univariate(s.trim())).collect()
}

/// Parses `FROM:TO`, `FROM:TO:STEP` or `a,b,c`.
pub fn parse_degrees(s: &str) -> Result<Vec<usize>> {
    let bad = || Error::arg(format!("cannot parse degree list `{s}`"));
    if s.contains(':') {
        let parts: Vec<usize> = s
            .split(':')
            .map(|p| p.trim().parse().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        let (from, to, step) = match parts[..] {
            [a, b] => (a, b, 1),
            [a, b, c] if c > 0 => (a, b, c),
            _ => return Err(bad()),
        };
        if from > to {
            return Err(bad());
        }
        Ok((from..=to).step_by(step).collect())
    } else {
        s.split(',').map(|p| p.trim().parse().map_err(|_| bad())).collect()
    }
}

/// Parses `lo:hi,lo:hi,...`.
pub fn parse_box(s: &str) -> Result<Vec<(f64, f64)>> {
    s.split(',')
        .map(|side| {
            let (a, b) = side
                .split_once(':')
                .ok_or_else(|| Error::arg(format!("box side `{side}` is not LO:HI")))?;
            let lo: f64 = a.trim().parse().map_err(|_| Error::arg(format!("bad bound `{a}`")))?;
            let hi: f64 = b.trim().parse().map_err(|_| Error::arg(format!("bad bound `{b}`")))?;
            if lo.is_nan() || hi.is_nan() || lo > hi {
                return Err(Error::arg(format!("empty box side {lo}:{hi}")));
            }
            Ok((lo, hi))
        })
        .collect()
}

fn weight(w: &WeightArgs) -> Result<JacobiWeight> {
    JacobiWeight::new(w.gamma, w.delta)
}

/// Exit status for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Argument(_)
        | Error::Syntax { .. }
        | Error::UnknownIdentifier { .. }
        | Error::VariableExponent { .. }
        | Error::ResourceLimit { .. } => EXIT_USAGE,
        Error::Io(_) => EXIT_IO,
        Error::Domain { .. }
        | Error::DomainIn { .. }
        | Error::NonFinite { .. }
        | Error::OutsideBox { .. }
        | Error::SingularSystem { .. } => EXIT_NUMERIC,
    }
}

struct Ctx<'a> {
    s: Settings,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn line(&mut self, key: &str, value: impl std::fmt::Display) -> Result<()> {
        writeln!(self.out, "{key} {value}")?;
        Ok(())
    }

    /// Numerical failure under `--strict`, success otherwise.
    fn verdict(&self, ok: bool) -> i32 {
        if ok || !self.s.strict {
            EXIT_OK
        } else {
            EXIT_NUMERIC
        }
    }
}

fn execute(cmd: Command, ctx: &mut Ctx) -> Result<i32> {
    match cmd {
        Command::Bell { r, k } => {
            let v = match k {
                None => bell_number(r)?,
                Some(k) => incomplete_bell_ones(r, k)?,
            };
            writeln!(ctx.out, "{v}")?;
            Ok(EXIT_OK)
        }
        Command::Faa {
            f,
            g,
            x0,
            r,
            compare_jets,
        } => {
            let g = parse_inner(&g)?;
            let f = Expr::outer(&f, g.len())?;
            let d = composite_jet(&f, &g, x0, r)?;
            writeln!(ctx.out, "{}", join(&d))?;
            if compare_jets {
                let j = composite_series(&f, &g, x0, r)?.derivatives();
                let diff = d
                    .iter()
                    .zip(&j)
                    .map(|(a, b)| (a - b).abs() / a.abs().max(b.abs()).max(1e-300))
                    .fold(0.0, f64::max);
                ctx.line("jets", join(&j))?;
                ctx.line("max-rel-diff", format_number(diff))?;
            }
            Ok(EXIT_OK)
        }
        Command::Norm { f, r, weight: wa } => {
            let f = Expr::univariate(&f)?;
            let rep = sobolev_norm_report(&f, r, &weight(&wa)?, &ctx.s.grid)?;
            ctx.line("norm", format_number(rep.value))?;
            ctx.line("base", format_number(rep.base.value))?;
            ctx.line("top", format_number(rep.top.value))?;
            Ok(EXIT_OK)
        }
        Command::Bestapprox { f, m, weight: wa } => {
            let f = Expr::univariate(&f)?;
            let rep = best_approximation(&f, m, &weight(&wa)?, &ctx.s.remez)?;
            let status = RunStatus::classify(&rep);
            ctx.line("error", format_number(rep.error))?;
            ctx.line("levelled", format_number(rep.levelled))?;
            ctx.line("converged", rep.converged)?;
            ctx.line("status", crate::harness::to_json(&status)?.trim().trim_matches('"'))?;
            ctx.line("iterations", rep.iterations)?;
            ctx.line("coefficients", join(rep.poly.coeffs()))?;
            let xs: Vec<f64> = rep.extrema.iter().map(|e| e.x).collect();
            ctx.line("extrema", join(&xs))?;
            Ok(ctx.verdict(rep.converged || rep.degenerate))
        }
        Command::Verify(v) => verify(v, ctx),
    }
}

fn verify(v: Verify, ctx: &mut Ctx) -> Result<i32> {
    match v {
        Verify::Lemma { f, r, k, weight: wa } => {
            let f = Expr::univariate(&f)?;
            let rec = verify_lemma(&f, r, k, &weight(&wa)?, &ctx.s.grid)?;
            ctx.line("lhs", format_number(rec.lhs))?;
            ctx.line("base", format_number(rec.base_norm))?;
            ctx.line("top", format_number(rec.top_norm))?;
            ctx.line("constant", format_number(rec.constant))?;
            ctx.line("rhs", format_number(rec.rhs))?;
            ctx.line("ratio", format_number(rec.ratio))?;
            ctx.line("holds", rec.holds)?;
            Ok(ctx.verdict(rec.holds))
        }
        Verify::Composite {
            f,
            g,
            r,
            weight: wa,
            bounds,
        } => {
            let g = parse_inner(&g)?;
            let f = Expr::outer(&f, g.len())?;
            let bounds = bounds.as_deref().map(parse_box).transpose()?;
            let rec = verify_composite_bound(&f, &g, r, &weight(&wa)?, bounds.as_deref(), &ctx.s.grid)?;
            ctx.line("lhs", format_number(rec.lhs))?;
            ctx.line("f-norm", format_number(rec.f_norm))?;
            ctx.line("g-norms", join(&rec.exponents.norms))?;
            let s: Vec<String> = rec.exponents.exponents.iter().map(|e| e.to_string()).collect();
            ctx.line("exponents", s.join(" "))?;
            ctx.line("bell", format_number(rec.bell))?;
            ctx.line("rhs-sans-c", format_number(rec.rhs_sans_c))?;
            ctx.line("ratio", format_number(rec.ratio))?;
            Ok(EXIT_OK)
        }
        Verify::Rate {
            f,
            g,
            r,
            weight: wa,
            ms,
            bounds,
            case,
        } => {
            let g = parse_inner(&g)?;
            let f = Expr::outer(&f, g.len())?;
            let cfg = RateConfig {
                case,
                r,
                weight: weight(&wa)?,
                ms: parse_degrees(&ms)?,
                bounds: bounds.as_deref().map(parse_box).transpose()?,
                grid: ctx.s.grid,
                remez: ctx.s.remez,
                seed: ctx.s.seed,
            };
            let rep = verify_rate(&f, &g, &cfg)?;
            let (json, csv) = write_rate_report(&ctx.s.out, &rep)?;
            ctx.line("slope", rep.slope.map_or("none".into(), format_number))?;
            ctx.line("ratio-sup", format_number(rep.ratio_sup))?;
            ctx.line("top-half-growth", rep.top_half_growth.map_or("none".into(), format_number))?;
            ctx.line("bound-rhs", format_number(rep.bound_rhs))?;
            let usable = rep.status.iter().filter(|s| s.usable()).count();
            ctx.line("usable", format!("{usable}/{}", rep.ms.len()))?;
            for w in &rep.warnings {
                ctx.line("warning", w)?;
            }
            ctx.line("json", json.display())?;
            ctx.line("csv", csv.display())?;
            let all_ok = rep.status.iter().all(|s| *s != RunStatus::NotConverged);
            Ok(ctx.verdict(all_ok))
        }
        Verify::Oracle { count, max_r } => {
            let cases = random_cases(ctx.s.seed, count, max_r);
            let recs = cases.iter().map(run_oracle).collect::<Result<Vec<_>>>()?;
            let agree = recs.iter().filter(|r| r.agree).count();
            let worst = recs.iter().map(|r| r.worst).fold(0.0, f64::max);
            let path = write_json(&ctx.s.out, &format!("oracle-{}", ctx.s.seed), &recs)?;
            ctx.line("agree", format!("{agree}/{}", recs.len()))?;
            ctx.line("worst", format_number(worst))?;
            ctx.line("seed", ctx.s.seed)?;
            ctx.line("json", path.display())?;
            Ok(ctx.verdict(agree == recs.len()))
        }
    }
}

/// Runs the command line `args` (program name first), writing to `out` and
/// `err`, and returns the exit status.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let settings = match resolve_settings(&cli.global) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit_code(&e);
        }
    };
    let mut ctx = Ctx { s: settings, out };
    match execute(cli.cmd, &mut ctx) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// [`run_with`] on the process arguments and standard streams.
pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
