//! Repeated mid runs on a halving set of distributions.

use super::mid::mid_core;
use super::{
    check_epsilon_delta, Algorithm, Constants, RunOutput, RunParams, RunReport, StageReport,
};
use crate::cover::{check_constant, draw_batch, empirical_loss, DataSource};
use crate::error::Result;
use crate::model::{MdlInstance, RandomizedHypothesis, SampleLedger, SeededRng};

/// Indices whose loss is strictly above the median (midpoint of the two
/// central values for even lengths).
pub fn median_filter(losses: &[f64]) -> Vec<usize> {
    if losses.is_empty() {
        return Vec::new();
    }
    let mut sorted = losses.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    let median = if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    };
    (0..n).filter(|&i| losses[i] > median).collect()
}

/// `max(1, ceil(log2 k))`.
pub fn personalized_rounds(k: usize) -> usize {
    (k.max(1).next_power_of_two().trailing_zeros() as usize).max(1)
}

/// `ceil(C eps^-2 ln(max(k ln k, 1) / delta))` evaluation draws per active distribution.
pub fn eval_batch_size(k: usize, epsilon: f64, delta: f64, c_eval: f64) -> Result<usize> {
    check_epsilon_delta(epsilon, delta)?;
    check_constant("C_eval", c_eval)?;
    let kf = k as f64;
    let inner = (kf * kf.ln()).max(1.0);
    Ok((c_eval / (epsilon * epsilon) * (inner / delta).ln()).ceil() as usize)
}

/// Returns one hypothesis per distribution. Each round runs the mid algorithm
/// on the active set with `delta / rounds`, evaluates its output on every
/// active distribution and keeps only those above the median loss.
pub fn run_personalized(
    instance: &MdlInstance,
    epsilon: f64,
    delta: f64,
    constants: &Constants,
    rng: &mut SeededRng,
) -> Result<RunReport> {
    check_epsilon_delta(epsilon, delta)?;
    let seed = rng.seed();
    let k = instance.k();
    let d = constants.resolve_vc(instance.class())?;
    let rounds_max = personalized_rounds(k);
    let delta_mid = delta / rounds_max as f64;
    let m_eval = eval_batch_size(k, epsilon, delta, constants.c_eval)?;

    let mut ledger = SampleLedger::new(k);
    let mut assigned: Vec<Option<(RandomizedHypothesis, usize)>> = vec![None; k];
    let mut active: Vec<usize> = (0..k).collect();
    let mut stages = Vec::new();

    for round in 1..=rounds_max {
        if active.is_empty() {
            break;
        }
        let before = ledger.clone();
        let out = mid_core(
            instance,
            &active,
            epsilon,
            delta_mid,
            d,
            constants,
            rng,
            &mut ledger,
        )?;
        let mid_ledger = diff(&ledger, &before, k);

        let eval_start = ledger.total();
        let mut losses = Vec::with_capacity(active.len());
        for &i in &active {
            let batch = draw_batch(instance, DataSource::Oracle(i), m_eval, rng, &mut ledger)?;
            losses.push(empirical_loss(&out.mixture, &batch)?);
        }
        let eval_samples = ledger.total() - eval_start;

        let survivors: Vec<usize> = median_filter(&losses)
            .into_iter()
            .map(|j| active[j])
            .collect();
        let last = round == rounds_max;
        let leaving: Vec<usize> = active
            .iter()
            .copied()
            .filter(|i| last || !survivors.contains(i))
            .collect();
        for &i in &leaving {
            assigned[i] = Some((out.mixture.clone(), round));
        }
        stages.push(StageReport {
            round,
            active: active.clone(),
            empirical_losses: losses,
            survivors: survivors.clone(),
            assigned: leaving,
            eval_samples,
            mid: Box::new(RunReport {
                algorithm: Algorithm::Mid,
                seed,
                output: RunOutput::Mixture(out.mixture),
                ledger: mid_ledger,
                iterations: out.params.rounds,
                params: out.params,
                trace: out.trace,
                stages: Vec::new(),
                wall_ms: 0,
            }),
        });
        active = survivors;
    }

    let (hypotheses, rounds): (Vec<_>, Vec<_>) = assigned
        .into_iter()
        .map(|a| a.expect("every distribution leaves the active set by the last round"))
        .unzip();
    Ok(RunReport {
        algorithm: Algorithm::Personalized,
        seed,
        output: RunOutput::PerDistribution { hypotheses, rounds },
        ledger,
        iterations: stages.len(),
        params: RunParams {
            epsilon: Some(epsilon),
            delta: Some(delta),
            rounds: rounds_max,
            vc_dim: Some(d),
            eval_batch: Some(m_eval),
            constants: Some(constants.clone()),
            ..RunParams::default()
        },
        trace: Vec::new(),
        stages,
        wall_ms: 0,
    })
}

fn diff(after: &SampleLedger, before: &SampleLedger, k: usize) -> SampleLedger {
    let mut out = SampleLedger::new(k);
    for i in 0..k {
        let n = after.per_oracle()[i] - before.per_oracle()[i];
        out.add(i, n);
    }
    out
}
