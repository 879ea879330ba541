//! `verify`: seeded randomized trials against the theorem registry.
//!
//! Trial `k` of a run seeded with `s` uses the generator seed
//! `trial_seed(s, k)`, recorded in the report. `--trial-seed` reruns a
//! single trial from that recorded seed.

use std::io::Write;
use std::path::PathBuf;

use clap::Args;
use harmonica::generate::{trial_seed, GenSpec};
use harmonica::polygon::Strategy;
use harmonica::suite::{run_trial, theorem, Backend, Params, Polarity, Theorem, Trial, THEOREMS};
use rayon::prelude::*;
use serde::Serialize;

use crate::{emit, parse_polarity, pretty, CmdResult, OrderArg, UsageError, EXIT_FAIL, EXIT_OK, REPORT_SCHEMA};

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Theorem id, or `all`.
    pub theorem: String,
    #[arg(long, default_value_t = 100)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Ignored by theorems that only have a float form.
    #[arg(long)]
    pub backend: Option<Backend>,
    /// Polygon size for the n-gon theorems.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub order: Option<OrderArg>,
    /// Rerun the single trial generated from this seed.
    #[arg(long)]
    pub trial_seed: Option<u64>,
    #[arg(long, default_value = "positive", value_parser = parse_polarity)]
    pub polarity: Polarity,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn lookup(id: &str) -> Result<&'static Theorem, UsageError> {
    theorem(id).ok_or_else(|| {
        let known: Vec<&str> = THEOREMS.iter().map(|t| t.id).collect();
        UsageError(format!("unknown theorem `{id}` (known: {})", known.join(", ")))
    })
}

/// Backend a theorem actually runs on.
pub fn effective_backend(t: &Theorem, requested: Backend) -> Backend {
    if t.float_only {
        Backend::Float
    } else if t.exact_only {
        Backend::Exact
    } else {
        requested
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub index: u64,
    pub seed: u64,
    pub polarity: Polarity,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub id: &'static str,
    pub backend: Backend,
    pub passed: bool,
    pub positive_trials: u64,
    pub negative_trials: u64,
    pub failures: Vec<Failure>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub schema: u64,
    pub seed: u64,
    pub trials: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub order: String,
    pub passed: bool,
    pub theorems: Vec<TheoremReport>,
}

fn order_text(s: &Strategy) -> String {
    match s {
        Strategy::First => "first".into(),
        Strategy::Exhaustive => "exhaustive".into(),
        Strategy::Seeded(k) => format!("seed:{k}"),
        Strategy::Sampled { seed, orders } => format!("sampled:{seed}:{orders}"),
        Strategy::Fixed(v) => format!("fixed:{}", v.iter().map(usize::to_string).collect::<Vec<_>>().join(",")),
    }
}

/// Run `trials` positive trials, and as many negative ones when the theorem
/// has a negative generator. Results are sorted by index, positive first.
pub fn run_theorem(t: &Theorem, trials: u64, seed: u64, params: &Params) -> (TheoremReport, Vec<Trial>) {
    let params = Params { backend: effective_backend(t, params.backend), ..params.clone() };
    let polarities: &[Polarity] = if t.negative.is_some() {
        &[Polarity::Positive, Polarity::Negative]
    } else {
        &[Polarity::Positive]
    };
    let jobs: Vec<(u64, Polarity)> = (0..trials).flat_map(|k| polarities.iter().map(move |&p| (k, p))).collect();
    let mut results: Vec<Trial> = jobs
        .into_par_iter()
        .map(|(k, p)| run_trial(t, trial_seed(seed, k), k, p, GenSpec::default(), &params))
        .collect();
    results.sort_by_key(|r| (r.index, r.polarity == Polarity::Negative));
    let failures: Vec<Failure> = results
        .iter()
        .filter(|r| !r.passed)
        .map(|r| Failure { index: r.index, seed: r.seed, polarity: r.polarity, error: r.error.clone() })
        .collect();
    let report = TheoremReport {
        id: t.id,
        backend: params.backend,
        passed: failures.is_empty(),
        positive_trials: trials,
        negative_trials: if t.negative.is_some() { trials } else { 0 },
        failures,
    };
    (report, results)
}

pub fn cmd(a: VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let targets: Vec<&'static Theorem> = if a.theorem == "all" {
        THEOREMS.iter().collect()
    } else {
        vec![lookup(&a.theorem)?]
    };
    let params = Params {
        n: a.n,
        strategy: a.order.clone().map_or(Strategy::First, |o| o.0),
        backend: a.backend.unwrap_or(Backend::Exact),
    };

    if let Some(seed) = a.trial_seed {
        let [t] = targets[..] else {
            return Err(UsageError("--trial-seed needs a single theorem id".into()));
        };
        let params = Params { backend: effective_backend(t, params.backend), ..params };
        let trial = run_trial(t, seed, 0, a.polarity, GenSpec::default(), &params);
        emit(&pretty(&serde_json::json!({ "schema": REPORT_SCHEMA, "theorem": t.id, "trial": trial })), a.out.as_deref(), out)?;
        return Ok(if trial.passed { EXIT_OK } else { EXIT_FAIL });
    }

    let theorems: Vec<TheoremReport> = targets.iter().map(|t| run_theorem(t, a.trials, a.seed, &params).0).collect();
    let report = VerifyReport {
        schema: REPORT_SCHEMA,
        seed: a.seed,
        trials: a.trials,
        n: a.n,
        order: order_text(&params.strategy),
        passed: theorems.iter().all(|t| t.passed),
        theorems,
    };
    emit(&pretty(&report), a.out.as_deref(), out)?;
    for t in report.theorems.iter().filter(|t| !t.passed) {
        for f in &t.failures {
            let polarity = match f.polarity {
                Polarity::Positive => "positive",
                Polarity::Negative => "negative",
            };
            writeln!(err, "FAIL {} trial {} ({polarity}): rerun with --trial-seed {} --polarity {polarity}", t.id, f.index, f.seed)?;
        }
    }
    Ok(if report.passed { EXIT_OK } else { EXIT_FAIL })
}
