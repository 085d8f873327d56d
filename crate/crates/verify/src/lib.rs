//! Runner and report formatting for the identity catalog.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use serde::Serialize;
use stieltjes_core::catalog::{verify, Identity, Overrides, VerificationRecord};

pub const SEED_ENV: &str = "STIELTJES_VERIFY_SEED";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub ids: Vec<String>,
    pub overrides: Overrides,
    pub format: Format,
    pub jobs: usize,
    pub timing: bool,
}

/// Seed for the random-polynomial fixtures: the env var if set and valid.
pub fn seed_from_env() -> Result<u64, String> {
    match std::env::var(SEED_ENV) {
        Ok(s) => s.trim().parse().map_err(|_| format!("{SEED_ENV} must be an unsigned integer, got `{s}`")),
        Err(_) => Ok(stieltjes_core::catalog::DEFAULT_SEED),
    }
}

/// Indices of identities matching any pattern, in registry order. Every
/// pattern must match at least one id.
pub fn select(all: &[Identity], patterns: &[String]) -> Result<Vec<usize>, String> {
    if patterns.is_empty() {
        return Ok((0..all.len()).collect());
    }
    let mut compiled = Vec::new();
    for p in patterns {
        let pat = glob::Pattern::new(p).map_err(|e| format!("bad id pattern `{p}`: {e}"))?;
        if !all.iter().any(|i| pat.matches(&i.id)) {
            return Err(format!("no identity matches `{p}`"));
        }
        compiled.push(pat);
    }
    Ok((0..all.len()).filter(|&k| compiled.iter().any(|p| p.matches(&all[k].id))).collect())
}

/// Runs the selected identities on `jobs` threads; output order is registry order.
pub fn run(all: &[Identity], selected: &[usize], overrides: &Overrides, jobs: usize, timing: bool) -> Vec<VerificationRecord> {
    let slots: Vec<Mutex<Option<VerificationRecord>>> = selected.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let worker = || loop {
        let k = next.fetch_add(1, Ordering::Relaxed);
        if k >= selected.len() {
            break;
        }
        let start = Instant::now();
        let mut rec = verify(&all[selected[k]], overrides);
        rec.elapsed_ms = if timing { start.elapsed().as_millis() as u64 } else { 0 };
        *slots[k].lock().unwrap() = Some(rec);
    };
    let jobs = jobs.max(1).min(selected.len().max(1));
    if jobs == 1 {
        worker();
    } else {
        std::thread::scope(|s| {
            for _ in 0..jobs {
                s.spawn(worker);
            }
        });
    }
    slots.into_iter().map(|m| m.into_inner().unwrap().unwrap()).collect()
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub suspect: usize,
}

impl Summary {
    pub fn of(records: &[VerificationRecord]) -> Self {
        let mut s = Summary::default();
        for r in records {
            if r.suspect {
                s.suspect += 1;
            } else if r.pass {
                s.passed += 1;
            } else {
                s.failed += 1;
            }
        }
        s
    }

    pub fn exit_code(&self) -> i32 {
        if self.failed == 0 {
            0
        } else {
            1
        }
    }
}

impl std::fmt::Display for Summary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "passed {} / failed {} / suspect {}", self.passed, self.failed, self.suspect)
    }
}

#[derive(Debug, Serialize)]
pub struct AlternateJson<'a> {
    pub label: &'a str,
    pub value: f64,
}

#[derive(Debug, Serialize)]
pub struct RecordJson<'a> {
    pub id: &'a str,
    pub lhs: f64,
    pub rhs: f64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub pass: bool,
    pub suspect: bool,
    pub n_evals: usize,
    pub elapsed_ms: u64,
    pub tol: f64,
    pub converged: bool,
    pub alternates: Vec<AlternateJson<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<&'a str>,
}

impl<'a> From<&'a VerificationRecord> for RecordJson<'a> {
    fn from(r: &'a VerificationRecord) -> Self {
        RecordJson {
            id: &r.id,
            lhs: r.lhs_value,
            rhs: r.rhs_value,
            abs_err: r.abs_err,
            rel_err: r.rel_err,
            pass: r.pass,
            suspect: r.suspect,
            n_evals: r.n_evals,
            elapsed_ms: r.elapsed_ms,
            tol: r.tol,
            converged: r.converged,
            alternates: r.alternates.iter().map(|(l, v)| AlternateJson { label: l, value: *v }).collect(),
            error: r.error.as_deref(),
        }
    }
}

pub fn record_json(r: &VerificationRecord) -> String {
    serde_json::to_string(&RecordJson::from(r)).expect("record serializes")
}

pub fn record_text(r: &VerificationRecord) -> String {
    let status = match (r.suspect, r.pass) {
        (true, _) => "SUSPECT",
        (false, true) => "PASS",
        (false, false) => "FAIL",
    };
    let mut s = format!(
        "{status:<8} {:<22} lhs={:<22.15e} rhs={:<22.15e} abs_err={:.3e} rel_err={:.3e} tol={:.0e} n_evals={} elapsed_ms={}",
        r.id, r.lhs_value, r.rhs_value, r.abs_err, r.rel_err, r.tol, r.n_evals, r.elapsed_ms
    );
    for (l, v) in &r.alternates {
        s.push_str(&format!("\n         alternate {l}: {v:.15e}"));
    }
    if let Some(e) = &r.error {
        s.push_str(&format!("\n         error: {e}"));
    }
    s
}

#[derive(Debug, Serialize)]
pub struct IdentityJson<'a> {
    pub id: &'a str,
    pub description: &'a str,
    pub reference: &'a str,
    pub lhs_plan: &'a str,
    pub rhs: &'a str,
    pub tol: f64,
    pub typo_suspect: bool,
    pub notes: &'a str,
}

impl<'a> From<&'a Identity> for IdentityJson<'a> {
    fn from(i: &'a Identity) -> Self {
        IdentityJson {
            id: &i.id,
            description: &i.description,
            reference: &i.reference,
            lhs_plan: &i.lhs_plan,
            rhs: &i.rhs_label,
            tol: i.tol,
            typo_suspect: i.typo_suspect,
            notes: &i.notes,
        }
    }
}

pub fn identity_text(i: &Identity) -> String {
    let flag = if i.typo_suspect { "  [typo-suspect]" } else { "" };
    format!("{:<22} {}{}\n{:<22} {}", i.id, i.description, flag, "", i.reference)
}
