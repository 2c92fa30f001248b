//! Subcommand implementations. Each writes its primary output to `out`
//! unless an output path is given.

use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context};
use mdl_core::eval::{brute_force_opt, generate};
use mdl_core::model::brute_force_vc;
use mdl_core::{MdlError, MdlInstance, RunReport};
use rayon::prelude::*;

use crate::args::{AuditArgs, GenArgs, SolveArgs, SweepArgs};
use crate::config::{spec_from_args, ExperimentConfig, InstanceSource};
use crate::report::{write_csv, AuditSummary, CsvRow, RowContext};

fn write_file(path: &Path, bytes: &[u8]) -> anyhow::Result<()> {
    fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))
}

fn emit(path: Option<&Path>, bytes: &[u8], out: &mut dyn Write) -> anyhow::Result<()> {
    match path {
        Some(p) => write_file(p, bytes),
        None => out.write_all(bytes).context("writing to stdout"),
    }
}

fn csv_bytes(rows: &[CsvRow]) -> Vec<u8> {
    let mut buf = Vec::new();
    write_csv(&mut buf, rows).expect("CSV into memory cannot fail");
    buf
}

fn pool(jobs: usize) -> anyhow::Result<rayon::ThreadPool> {
    if jobs == 0 {
        bail!(MdlError::Config("--jobs must be ≥ 1".into()));
    }
    Ok(rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?)
}

pub fn cmd_gen(args: &GenArgs, out: &mut dyn Write, err: &mut dyn Write) -> anyhow::Result<()> {
    let spec = spec_from_args(&args.spec, args.seed);
    let instance = generate(&spec)?;
    let mut json = instance.to_json();
    json.push('\n');
    emit(args.out.as_deref(), json.as_bytes(), out)?;

    let opt = match brute_force_opt(&instance) {
        Ok(o) => o.opt_value.to_string(),
        Err(MdlError::SizeLimit(_)) => "skipped (size guard)".into(),
        Err(e) => return Err(e.into()),
    };
    let vc = match brute_force_vc(instance.class()) {
        Ok(d) => d.to_string(),
        Err(MdlError::SizeLimit(_)) => "skipped (size guard)".into(),
        Err(e) => return Err(e.into()),
    };
    let summary = format!("opt = {opt}\nvc = {vc}\n");
    let sink: &mut dyn Write = if args.out.is_some() { out } else { err };
    sink.write_all(summary.as_bytes())?;
    Ok(())
}

fn row_context(cfg: &ExperimentConfig, seed: u64) -> RowContext {
    RowContext {
        algorithm: cfg.algorithm.to_string(),
        seed,
        epsilon: cfg.epsilon,
        delta: cfg.delta,
        alpha: cfg.run_alpha(),
        check_alpha: cfg.check_alpha(),
    }
}

/// Runs one trial, folding any failure into the row's error column.
pub fn trial_row(cfg: &ExperimentConfig, seed: u64) -> CsvRow {
    let ctx = row_context(cfg, seed);
    let instance = match cfg.load_instance(seed) {
        Ok(i) => i,
        Err(e) => return CsvRow::failed(&ctx, None, format!("{e:#}")),
    };
    cfg.run(&instance, seed)
        .and_then(|r| CsvRow::evaluate(&ctx, &instance, &r))
        .unwrap_or_else(|e| CsvRow::failed(&ctx, Some(&instance), e.to_string()))
}

pub fn cmd_solve(args: &SolveArgs, out: &mut dyn Write) -> anyhow::Result<()> {
    let cfg = ExperimentConfig::from_args(&args.run, &args.instance)?;
    let seed = cfg.seeds[0];
    let instance = cfg.load_instance(seed)?;
    let report = cfg.run(&instance, seed)?;
    let row = CsvRow::evaluate(&row_context(&cfg, seed), &instance, &report)?;
    if let Some(path) = &args.out {
        let mut json = serde_json::to_string_pretty(&report)?;
        json.push('\n');
        write_file(path, json.as_bytes())?;
    }
    emit(args.csv.as_deref(), &csv_bytes(&[row]), out)
}

/// Cells of a sweep in output order: epsilon-major, then k.
pub fn sweep_cells(
    base: &ExperimentConfig,
    epsilons: &[f64],
    ks: &[usize],
) -> anyhow::Result<Vec<ExperimentConfig>> {
    let epsilons = if epsilons.is_empty() {
        vec![base.epsilon]
    } else {
        epsilons.to_vec()
    };
    if !ks.is_empty() && !matches!(base.instance, InstanceSource::Spec(_)) {
        bail!(MdlError::Config(
            "--ks needs a generated instance, not --instance or --suite".into()
        ));
    }
    let mut cells = Vec::new();
    for &eps in &epsilons {
        let kvals: Vec<Option<usize>> = if ks.is_empty() {
            vec![None]
        } else {
            ks.iter().copied().map(Some).collect()
        };
        for k in kvals {
            let mut cell = base.clone();
            cell.epsilon = eps;
            if let (Some(k), InstanceSource::Spec(spec)) = (k, &mut cell.instance) {
                spec.k = k;
            }
            cell.validate()?;
            cells.push(cell);
        }
    }
    Ok(cells)
}

/// Every (cell, seed) row in deterministic order, computed on `jobs` threads.
pub fn sweep_rows(cells: &[ExperimentConfig], jobs: usize) -> anyhow::Result<Vec<CsvRow>> {
    let tasks: Vec<(&ExperimentConfig, u64)> = cells
        .iter()
        .flat_map(|c| c.seeds.iter().map(move |&s| (c, s)))
        .collect();
    Ok(pool(jobs)?.install(|| tasks.par_iter().map(|&(c, s)| trial_row(c, s)).collect()))
}

pub fn cmd_sweep(args: &SweepArgs, out: &mut dyn Write) -> anyhow::Result<()> {
    if args.seeds == 0 {
        bail!(MdlError::Config("--seeds must be ≥ 1".into()));
    }
    let base = ExperimentConfig::from_args(&args.run, &args.instance)?
        .with_trials(args.run.seed, args.seeds);
    let cells = sweep_cells(&base, &args.epsilons, &args.ks)?;
    let rows = sweep_rows(&cells, args.jobs)?;
    emit(args.out.as_deref(), &csv_bytes(&rows), out)
}

/// Audits `cfg.seeds` with a caller-supplied solver. Any failed trial, or a
/// trial whose OPT is past the brute-force guard, aborts the audit.
pub fn audit_with<F>(
    cfg: &ExperimentConfig,
    jobs: usize,
    solver: F,
) -> anyhow::Result<(AuditSummary, Vec<CsvRow>)>
where
    F: Fn(&ExperimentConfig, &MdlInstance, u64) -> mdl_core::Result<RunReport> + Sync,
{
    if cfg.seeds.is_empty() {
        bail!(MdlError::Config("--trials must be ≥ 1".into()));
    }
    let one = |seed: u64| -> anyhow::Result<CsvRow> {
        let instance = cfg.load_instance(seed)?;
        let report = solver(cfg, &instance, seed)?;
        let row = CsvRow::evaluate(&row_context(cfg, seed), &instance, &report)?;
        if row.eps_ok.is_none() {
            bail!(MdlError::SizeLimit(format!(
                "OPT for trial seed {seed} is past the brute-force guard"
            )));
        }
        Ok(row)
    };
    let results: Vec<anyhow::Result<CsvRow>> =
        pool(jobs)?.install(|| cfg.seeds.par_iter().map(|&s| one(s)).collect());
    let rows = results.into_iter().collect::<anyhow::Result<Vec<_>>>()?;
    let summary = AuditSummary::from_rows(&rows, cfg.seeds[0]).expect("at least one trial");
    Ok((summary, rows))
}

pub fn cmd_audit(args: &AuditArgs, out: &mut dyn Write) -> anyhow::Result<()> {
    let cfg = ExperimentConfig::from_args(&args.run, &args.instance)?
        .with_trials(args.run.seed, args.trials);
    let (mut summary, rows) = audit_with(&cfg, args.jobs, |c, i, s| c.run(i, s))?;
    summary.seed = args.run.seed;
    if let Some(path) = &args.csv {
        write_file(path, &csv_bytes(&rows))?;
    }
    let mut json = serde_json::to_string_pretty(&summary)?;
    json.push('\n');
    emit(args.out.as_deref(), json.as_bytes(), out)
}
