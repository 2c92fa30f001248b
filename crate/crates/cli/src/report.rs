//! CSV rows, audit summaries and the Wilson interval.

use std::io::{Read, Write};

use mdl_core::eval::{brute_force_opt, max_loss, smooth_max_loss, EpsCheck};
use mdl_core::model::{brute_force_vc, exact_loss};
use mdl_core::{MdlError, MdlInstance, RunOutput, RunReport};
use serde::{Deserialize, Serialize};

/// Column order of every CSV this tool writes.
pub const CSV_COLUMNS: [&str; 19] = [
    "algorithm",
    "seed",
    "n",
    "k",
    "class_size",
    "vc_dim",
    "epsilon",
    "delta",
    "alpha",
    "samples_total",
    "samples_max_per_oracle",
    "opt",
    "max_loss",
    "excess",
    "smooth_max_loss",
    "iterations",
    "wall_ms",
    "eps_ok",
    "error",
];

/// One run. Empty cells mean "not computed": `opt` past the brute-force
/// guard, `smooth_max_loss` for per-distribution outputs, or everything
/// after `alpha` when `error` is set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CsvRow {
    pub algorithm: String,
    pub seed: u64,
    pub n: usize,
    pub k: usize,
    pub class_size: usize,
    pub vc_dim: Option<usize>,
    pub epsilon: f64,
    pub delta: f64,
    pub alpha: Option<f64>,
    pub samples_total: u64,
    pub samples_max_per_oracle: u64,
    pub opt: Option<f64>,
    /// Worst exact loss; for per-distribution outputs, `max_D L_D(h_D)`.
    pub max_loss: Option<f64>,
    pub excess: Option<f64>,
    pub smooth_max_loss: Option<f64>,
    pub iterations: usize,
    pub wall_ms: u64,
    /// `max_loss <= epsilon + (1 + alpha) opt`, with alpha = 0 when unset.
    pub eps_ok: Option<bool>,
    pub error: Option<String>,
}

/// Fields shared by successful and failed rows.
#[derive(Debug, Clone)]
pub struct RowContext {
    pub algorithm: String,
    pub seed: u64,
    pub epsilon: f64,
    pub delta: f64,
    pub alpha: Option<f64>,
    /// Alpha used by the check.
    pub check_alpha: f64,
}

impl CsvRow {
    pub fn failed(ctx: &RowContext, instance: Option<&MdlInstance>, error: String) -> Self {
        Self {
            algorithm: ctx.algorithm.clone(),
            seed: ctx.seed,
            n: instance.map_or(0, |i| i.domain_size()),
            k: instance.map_or(0, |i| i.k()),
            class_size: instance.map_or(0, |i| i.class().len()),
            vc_dim: None,
            epsilon: ctx.epsilon,
            delta: ctx.delta,
            alpha: ctx.alpha,
            samples_total: 0,
            samples_max_per_oracle: 0,
            opt: None,
            max_loss: None,
            excess: None,
            smooth_max_loss: None,
            iterations: 0,
            wall_ms: 0,
            eps_ok: None,
            error: Some(error),
        }
    }

    /// Scores `report` against brute-force ground truth.
    pub fn evaluate(
        ctx: &RowContext,
        instance: &MdlInstance,
        report: &RunReport,
    ) -> mdl_core::Result<Self> {
        let opt = match brute_force_opt(instance) {
            Ok(o) => Some(o.opt_value),
            Err(MdlError::SizeLimit(_)) => None,
            Err(e) => return Err(e),
        };
        let (worst, smooth) = match &report.output {
            RunOutput::Mixture(m) => (
                max_loss(instance, m)?.0,
                Some(smooth_max_loss(instance, m)?),
            ),
            RunOutput::PerDistribution { hypotheses, .. } => {
                let mut worst = 0.0f64;
                for (d, h) in instance.distributions().iter().zip(hypotheses) {
                    worst = worst.max(exact_loss(d, h)?);
                }
                (worst, None)
            }
        };
        let vc_dim = match report.params.vc_dim {
            Some(d) => Some(d),
            None => brute_force_vc(instance.class()).ok(),
        };
        Ok(Self {
            algorithm: ctx.algorithm.clone(),
            seed: ctx.seed,
            n: instance.domain_size(),
            k: instance.k(),
            class_size: instance.class().len(),
            vc_dim,
            epsilon: ctx.epsilon,
            delta: ctx.delta,
            alpha: ctx.alpha,
            samples_total: report.ledger.total(),
            samples_max_per_oracle: report.ledger.max_per_oracle(),
            opt,
            max_loss: Some(worst),
            excess: opt.map(|o| worst - o),
            smooth_max_loss: smooth,
            iterations: report.iterations,
            wall_ms: report.wall_ms,
            eps_ok: opt.map(|o| EpsCheck::evaluate(worst, o, ctx.epsilon, ctx.check_alpha).ok),
            error: None,
        })
    }
}

/// Writes a header row followed by `rows`.
pub fn write_csv<W: Write>(w: W, rows: &[CsvRow]) -> csv::Result<()> {
    let mut out = csv::WriterBuilder::new().has_headers(false).from_writer(w);
    out.write_record(CSV_COLUMNS)?;
    for r in rows {
        out.serialize(r)?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(r: R) -> csv::Result<Vec<CsvRow>> {
    csv::Reader::from_reader(r).deserialize().collect()
}

/// Wilson score interval for `successes` out of `trials` at normal quantile `z`.
pub fn wilson_interval(successes: usize, trials: usize, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// 97.5% standard normal quantile.
pub const Z_95: f64 = 1.959_963_984_540_054;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditSummary {
    pub algorithm: String,
    pub trials: usize,
    pub failures: usize,
    pub failure_frequency: f64,
    pub wilson_low: f64,
    pub wilson_high: f64,
    pub mean_samples_total: f64,
    pub max_samples_total: u64,
    pub epsilon: f64,
    pub delta: f64,
    pub alpha: Option<f64>,
    pub seed: u64,
}

impl AuditSummary {
    /// Summarizes fully evaluated rows (every `eps_ok` set).
    pub fn from_rows(rows: &[CsvRow], seed: u64) -> Option<Self> {
        let first = rows.first()?;
        let failures = rows.iter().filter(|r| r.eps_ok == Some(false)).count();
        let trials = rows.len();
        let (wilson_low, wilson_high) = wilson_interval(failures, trials, Z_95);
        let total: u64 = rows.iter().map(|r| r.samples_total).sum();
        Some(Self {
            algorithm: first.algorithm.clone(),
            trials,
            failures,
            failure_frequency: failures as f64 / trials as f64,
            wilson_low,
            wilson_high,
            mean_samples_total: total as f64 / trials as f64,
            max_samples_total: rows.iter().map(|r| r.samples_total).max().unwrap_or(0),
            epsilon: first.epsilon,
            delta: first.delta,
            alpha: first.alpha,
            seed,
        })
    }
}
