use std::io::Write;
use std::process::ExitCode;

use anyhow::{anyhow, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use stieltjes_core::catalog::{list_identities_with_seed, Overrides};
use stieltjes_core::duality::{hat_transform_numeric, j_n, pair_by_name};
use stieltjes_core::series::{e_even, e_odd, mzv_tail_triple, t_value_triple, MzvWeight};
use stieltjes_core::specfun::polylog;
use stieltjes_core::Complex64;
use stieltjes_verify::{
    identity_text, record_json, record_text, run, seed_from_env, select, Format, IdentityJson, RunConfig, Summary,
};

// stdout writes that surface a closed pipe as an error instead of a panic
macro_rules! emit {
    ($($t:tt)*) => {
        writeln!(std::io::stdout(), $($t)*)?
    };
}

#[derive(Parser)]
#[command(name = "stieltjes-verify", version, about = "Verify the identity catalog numerically")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run fixtures and report LHS/RHS agreement
    Verify(VerifyArgs),
    /// List registered fixtures
    List(ListArgs),
    /// Evaluate a single operation
    Eval(EvalArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Fixture id or glob; repeatable
    #[arg(long = "id")]
    ids: Vec<String>,
    /// Override every fixture's tolerance
    #[arg(long)]
    tol: Option<f64>,
    /// Override the evaluation budget of iterated integrals
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Report elapsed_ms as 0 so repeated runs are byte-identical
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args)]
struct ListArgs {
    #[arg(long = "id")]
    ids: Vec<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum EvalOp {
    Polylog,
    Jn,
    Hat,
    Tvalue,
    MzvTail,
    EEven,
    EOdd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Weight {
    Half,
    Full,
}

#[derive(Args)]
struct EvalArgs {
    op: EvalOp,
    #[arg(long)]
    n: Option<i64>,
    #[arg(long)]
    k: Option<i64>,
    #[arg(long)]
    re: Option<f64>,
    #[arg(long, default_value_t = 0.0)]
    im: f64,
    #[arg(long)]
    z: Option<f64>,
    /// Weight name for `hat`: arcsine01, arcsine_full, sec_branch, cauchy, uniform01
    #[arg(long)]
    pair: Option<String>,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Outer truncation for `mzv-tail`
    #[arg(long, default_value_t = 1 << 20)]
    k_outer: usize,
    #[arg(long, value_enum, default_value = "half")]
    weight: Weight,
}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow!(UsageError(msg.into()))
}

#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn cmd_verify(a: VerifyArgs) -> Result<i32> {
    let seed = seed_from_env().map_err(usage)?;
    let cfg = RunConfig {
        ids: a.ids,
        overrides: Overrides { tol: a.tol, budget: a.budget },
        format: a.format,
        jobs: a.jobs,
        timing: !a.no_timing,
    };
    if cfg.jobs == 0 {
        return Err(usage("--jobs must be at least 1"));
    }
    if let Some(t) = cfg.overrides.tol {
        if !(t > 0.0) {
            return Err(usage("--tol must be positive"));
        }
    }
    let all = list_identities_with_seed(seed);
    let selected = select(&all, &cfg.ids).map_err(usage)?;
    let records = run(&all, &selected, &cfg.overrides, cfg.jobs, cfg.timing);
    for r in &records {
        match cfg.format {
            Format::Text => emit!("{}", record_text(r)),
            Format::Json => emit!("{}", record_json(r)),
        }
    }
    let summary = Summary::of(&records);
    match cfg.format {
        Format::Text => emit!("{summary}"),
        Format::Json => eprintln!("{summary}"),
    }
    Ok(summary.exit_code())
}

fn cmd_list(a: ListArgs) -> Result<i32> {
    let seed = seed_from_env().map_err(usage)?;
    let all = list_identities_with_seed(seed);
    let selected = select(&all, &a.ids).map_err(usage)?;
    match a.format {
        Format::Text => {
            for &k in &selected {
                emit!("{}", identity_text(&all[k]));
            }
        }
        Format::Json => {
            let v: Vec<IdentityJson> = selected.iter().map(|&k| IdentityJson::from(&all[k])).collect();
            emit!("{}", serde_json::to_string_pretty(&v)?);
        }
    }
    Ok(0)
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| usage(format!("missing --{flag}")))
}

fn nonneg(v: i64, flag: &str) -> Result<usize> {
    usize::try_from(v).map_err(|_| usage(format!("--{flag} must be non-negative")))
}

fn print_value(value: f64, err: f64) -> Result<()> {
    emit!("value = {value:.16e}");
    emit!("err_est = {err:.3e}");
    Ok(())
}

fn cmd_eval(a: EvalArgs) -> Result<i32> {
    match a.op {
        EvalOp::Polylog => {
            let n = need(a.n, "n")?;
            let re = need(a.re, "re")?;
            let n = i32::try_from(n).map_err(|_| usage("--n out of range"))?;
            let v = polylog(n, Complex64::new(re, a.im)).map_err(|e| usage(e.to_string()))?;
            emit!("re = {:.16e}", v.re);
            emit!("im = {:.16e}", v.im);
        }
        EvalOp::Jn => {
            let n = nonneg(need(a.n, "n")?, "n")?;
            let r = j_n(n as u32).map_err(|e| usage(e.to_string()))?;
            print_value(r.value, r.err_est)?;
        }
        EvalOp::Hat => {
            let name = need(a.pair, "pair")?;
            let z = need(a.z, "z")?;
            let p = pair_by_name(&name).ok_or_else(|| usage(format!("unknown pair `{name}`")))?;
            let r = hat_transform_numeric(&p, z).map_err(|e| usage(e.to_string()))?;
            print_value(r.value, r.err_est)?;
            if let Some(c) = p.fhat_closed(z) {
                emit!("closed = {c:.16e}");
            }
        }
        EvalOp::Tvalue => {
            let r = t_value_triple(a.tol).map_err(|e| usage(e.to_string()))?;
            print_value(r.value, r.err_est)?;
        }
        EvalOp::MzvTail => {
            let w = match a.weight {
                Weight::Half => MzvWeight::Half,
                Weight::Full => MzvWeight::Full,
            };
            let r = mzv_tail_triple(a.k_outer, w, a.tol.max(1e-9)).map_err(|e| usage(e.to_string()))?;
            print_value(r.value, r.err_est)?;
        }
        EvalOp::EEven => {
            let k = nonneg(need(a.k, "k")?, "k")?;
            print_value(e_even(k), 0.0)?;
        }
        EvalOp::EOdd => {
            let n = nonneg(need(a.n, "n")?, "n")?;
            print_value(e_odd(n), 0.0)?;
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match cli.cmd {
        Cmd::Verify(a) => cmd_verify(a),
        Cmd::List(a) => cmd_list(a),
        Cmd::Eval(a) => cmd_eval(a),
    };
    match out {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) if e.downcast_ref::<std::io::Error>().is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe) => {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
