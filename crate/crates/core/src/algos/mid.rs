//! Hedge over a projection cover against a capped-Hedge adversary on the
//! 2-smooth simplex, two queries per round.

use rand::Rng;

use super::{
    argmax, check_epsilon_delta, default_rate, Algorithm, ClassMixture, Constants, Estimator,
    PlayAverage, RoundTrace, RunOutput, RunParams, RunReport,
};
use crate::cover::{check_constant, cover_sample_size, projection_cover};
use crate::error::{MdlError, Result};
use crate::model::{
    oracle_sample, sample_index, LabeledExample, MdlInstance, Predictor, RandomizedHypothesis,
    SampleLedger, SeededRng,
};
use crate::online::{hedge_step_cost, two_smooth_cap, CostVector, SimplexWeights};

/// One-sample adversary cost: `k (1 - loss(h, z))` on `chosen`, zero elsewhere,
/// declared bound `k`. The literal variant also multiplies by `current[chosen]`.
pub fn mid_adversary_estimate<P: Predictor + ?Sized>(
    current: &SimplexWeights,
    chosen: usize,
    z: &LabeledExample,
    h: &P,
    estimator: Estimator,
) -> Result<CostVector> {
    let k = current.dim();
    if chosen >= k {
        return Err(MdlError::OracleIndex { index: chosen, k });
    }
    if z.point.0 >= h.domain_size() {
        return Err(MdlError::DomainMismatch {
            point: z.point.0,
            domain_size: h.domain_size(),
        });
    }
    let kf = k as f64;
    let mut value = kf * (1.0 - h.error_prob(z));
    if estimator == Estimator::Literal {
        value *= current.as_slice()[chosen];
    }
    let mut c = vec![0.0; k];
    c[chosen] = value.clamp(0.0, kf);
    CostVector::new(c, kf)
}

/// `max(ceil(C' ln(k/delta) / eps^2), ceil(C eps^-2 d ln(d k ln(d/(eps delta)) / eps)))`,
/// at least 1, with `d` replaced by `max(d, 1)`.
pub fn mid_rounds(
    k: usize,
    d: usize,
    epsilon: f64,
    delta: f64,
    c_prime: f64,
    c_learner: f64,
) -> Result<usize> {
    check_epsilon_delta(epsilon, delta)?;
    check_constant("C'", c_prime)?;
    check_constant("C", c_learner)?;
    let kf = k as f64;
    let d = d.max(1) as f64;
    let e2 = epsilon * epsilon;
    let first = (c_prime * (kf / delta).ln() / e2).ceil();
    let inner = d * kf * (d / (epsilon * delta)).ln() / epsilon;
    let second = (c_learner / e2 * d * inner.ln()).ceil();
    Ok(first.max(second).max(1.0) as usize)
}

pub(crate) struct MidOutcome {
    pub mixture: RandomizedHypothesis,
    pub trace: Vec<RoundTrace>,
    pub params: RunParams,
}

/// Mid algorithm restricted to the oracles in `active`. Trace weights and
/// choices are indexed within `active`.
#[allow(clippy::too_many_arguments)]
pub(crate) fn mid_core(
    instance: &MdlInstance,
    active: &[usize],
    epsilon: f64,
    delta: f64,
    d: usize,
    constants: &Constants,
    rng: &mut SeededRng,
    ledger: &mut SampleLedger,
) -> Result<MidOutcome> {
    check_epsilon_delta(epsilon, delta)?;
    let m = active.len();
    if m == 0 {
        return Err(MdlError::Empty("active distributions"));
    }
    if instance.class().is_empty() {
        return Err(MdlError::Empty("hypothesis class"));
    }

    let n_cover = cover_sample_size(d.max(1), epsilon, delta, constants.c_cover)?;
    let mut points = Vec::with_capacity(n_cover);
    for _ in 0..n_cover {
        let j = rng.gen_range(0..m);
        points.push(oracle_sample(instance, active[j], rng, ledger)?.point);
    }
    let cover = projection_cover(instance.class(), &points)?;
    let class = &cover.subclass;

    let rounds = mid_rounds(m, d, epsilon, delta, constants.c_prime, constants.c_learner)?;
    let eta_learner = default_rate(class.len(), rounds);
    let eta_adversary = default_rate(m, rounds);
    let mut q = SimplexWeights::uniform_capped(m, two_smooth_cap(m))?;
    let mut p = SimplexWeights::uniform(class.len());
    let mut avg = PlayAverage::new(class.len());
    let mut trace = Vec::with_capacity(rounds);

    for _ in 0..rounds {
        let j = sample_index(q.as_slice(), rng);
        let z = oracle_sample(instance, active[j], rng, ledger)?;
        let play = p.as_slice().to_vec();
        avg.add_mixed(&play);
        let costs: Vec<f64> = class
            .hypotheses()
            .iter()
            .map(|h| h.error_prob(&z))
            .collect();
        p = hedge_step_cost(&p, &CostVector::unit(costs)?, eta_learner)?;

        let chosen = rng.gen_range(0..m);
        let z2 = oracle_sample(instance, active[chosen], rng, ledger)?;
        let mixture = ClassMixture {
            class,
            weights: &play,
        };
        let est = mid_adversary_estimate(&q, chosen, &z2, &mixture, constants.estimator)?;
        let weights_before = q.as_slice().to_vec();
        q = hedge_step_cost(&q, &est, eta_adversary)?;
        trace.push(RoundTrace {
            adversary_weights: weights_before,
            adversary_choice: Some(chosen),
            learner_choice: class.hypotheses()[argmax(&play)].id(),
            payoffs: est.as_slice().to_vec(),
        });
    }

    let params = RunParams {
        epsilon: Some(epsilon),
        delta: Some(delta),
        rounds,
        n_learn: 1,
        n_adv: 1,
        eta_learner,
        eta_adversary,
        vc_dim: Some(d),
        cover_samples: Some(n_cover),
        cover_size: Some(cover.behavior_count),
        constants: Some(constants.clone()),
        ..RunParams::default()
    };
    Ok(MidOutcome {
        mixture: avg.finish(class)?,
        trace,
        params,
    })
}

pub fn run_mid(
    instance: &MdlInstance,
    epsilon: f64,
    delta: f64,
    constants: &Constants,
    rng: &mut SeededRng,
) -> Result<RunReport> {
    check_epsilon_delta(epsilon, delta)?;
    let seed = rng.seed();
    let d = constants.resolve_vc(instance.class())?;
    let active: Vec<usize> = (0..instance.k()).collect();
    let mut ledger = SampleLedger::new(instance.k());
    let out = mid_core(
        instance,
        &active,
        epsilon,
        delta,
        d,
        constants,
        rng,
        &mut ledger,
    )?;
    Ok(RunReport {
        algorithm: Algorithm::Mid,
        seed,
        output: RunOutput::Mixture(out.mixture),
        ledger,
        iterations: out.params.rounds,
        params: out.params,
        trace: out.trace,
        stages: Vec::new(),
        wall_ms: 0,
    })
}
