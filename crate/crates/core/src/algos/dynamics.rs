//! The learner/adversary template and its fast, finite-class and
//! cover-then-finite instantiations.

use serde::{Deserialize, Serialize};

use super::{
    argmax, check_epsilon_delta, default_rate, position_of, Algorithm, ClassMixture, Constants,
    PlayAverage, RoundTrace, RunOutput, RunParams, RunReport, MIN_RATE,
};
use crate::cover::{check_constant, draw_batch, erm, projection_cover, DataSource, SampleBatch};
use crate::error::{check_open, MdlError, Result};
use crate::model::{
    oracle_sample, sample_index, DomainPoint, HypothesisClass, MdlInstance, Predictor,
    RandomizedHypothesis, SampleLedger, SeededRng,
};
use crate::online::{
    default_exploration, exp3_step, hedge_step_cost, hedge_step_payoff, two_smooth_cap, CostVector,
    SimplexWeights,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LearnerKind {
    /// Hedge over the instance's class, costs are empirical losses on the batch.
    HedgeOverCover,
    /// ERM on the batch.
    Erm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AdversaryKind {
    /// Samples one oracle per round and sees the learner's loss on it.
    Exp3,
    /// Sees `n_adv` fresh draws from every oracle.
    HedgeFullFeedback,
    /// As above, restricted to the 2-smooth simplex.
    HedgeCapped,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DynamicsConfig {
    pub rounds: usize,
    pub n_learn: usize,
    pub n_adv: usize,
    pub eta_learner: f64,
    pub eta_adversary: f64,
    pub learner_kind: LearnerKind,
    pub adversary_kind: AdversaryKind,
    /// Exp3 uniform mixing rate; defaults to `min(1, sqrt(k ln k / T))`.
    pub exploration: Option<f64>,
}

impl DynamicsConfig {
    pub fn validate(&self) -> Result<()> {
        if self.rounds == 0 {
            return Err(MdlError::Config("T must be >= 1".into()));
        }
        if self.n_learn == 0 {
            return Err(MdlError::Config("n_learn must be >= 1".into()));
        }
        if self.n_adv == 0 {
            return Err(MdlError::Config("n_adv must be >= 1".into()));
        }
        if self.adversary_kind == AdversaryKind::Exp3 && self.n_adv > self.n_learn {
            return Err(MdlError::Config(
                "Exp3 feedback reuses the learner batch, so n_adv must be <= n_learn".into(),
            ));
        }
        check_rate("eta_learner", self.eta_learner)?;
        check_rate("eta_adversary", self.eta_adversary)?;
        if let Some(g) = self.exploration {
            if !(0.0..=1.0).contains(&g) {
                return Err(MdlError::ParameterRange {
                    name: "exploration",
                    value: g,
                    range: "[0, 1]",
                });
            }
        }
        Ok(())
    }
}

fn check_rate(name: &'static str, eta: f64) -> Result<()> {
    if eta > 0.0 && eta <= 0.5 {
        Ok(())
    } else {
        Err(MdlError::ParameterRange {
            name,
            value: eta,
            range: "(0, 0.5]",
        })
    }
}

/// Runs the template for `cfg.rounds` rounds and returns the uniform mixture
/// over learner plays.
pub fn run_dynamics(
    instance: &MdlInstance,
    cfg: &DynamicsConfig,
    rng: &mut SeededRng,
) -> Result<RunReport> {
    let seed = rng.seed();
    let mut ledger = SampleLedger::new(instance.k());
    let (mixture, trace) = dynamics_core(instance, cfg, rng, &mut ledger)?;
    Ok(RunReport {
        algorithm: Algorithm::Dynamics,
        seed,
        output: RunOutput::Mixture(mixture),
        ledger,
        iterations: cfg.rounds,
        params: echo(cfg, instance.k()),
        trace,
        stages: Vec::new(),
        wall_ms: 0,
    })
}

fn echo(cfg: &DynamicsConfig, k: usize) -> RunParams {
    RunParams {
        rounds: cfg.rounds,
        n_learn: cfg.n_learn,
        n_adv: cfg.n_adv,
        eta_learner: cfg.eta_learner,
        eta_adversary: cfg.eta_adversary,
        exploration: match cfg.adversary_kind {
            AdversaryKind::Exp3 => Some(exploration(cfg, k)),
            _ => None,
        },
        ..RunParams::default()
    }
}

fn exploration(cfg: &DynamicsConfig, k: usize) -> f64 {
    cfg.exploration
        .unwrap_or_else(|| default_exploration(k, cfg.rounds))
}

/// Learner's play in one round.
enum Play {
    Pure(usize),
    Mixed(Vec<f64>),
}

/// Empirical loss of every class member on `batch`, in class order.
pub(crate) fn class_losses(class: &HypothesisClass, batch: &SampleBatch) -> Vec<f64> {
    let mut counts = vec![(0u64, 0u64); class.domain_size()];
    for z in &batch.examples {
        let c = &mut counts[z.point.0];
        if z.label {
            c.1 += 1;
        } else {
            c.0 += 1;
        }
    }
    let m = batch.len() as f64;
    class
        .hypotheses()
        .iter()
        .map(|h| {
            let mistakes: u64 = counts
                .iter()
                .enumerate()
                .map(|(x, &(zeros, ones))| {
                    if h.predict(DomainPoint(x)) {
                        zeros
                    } else {
                        ones
                    }
                })
                .sum();
            mistakes as f64 / m
        })
        .collect()
}

fn dynamics_core(
    instance: &MdlInstance,
    cfg: &DynamicsConfig,
    rng: &mut SeededRng,
    ledger: &mut SampleLedger,
) -> Result<(RandomizedHypothesis, Vec<RoundTrace>)> {
    cfg.validate()?;
    let k = instance.k();
    let class = instance.class();
    if class.is_empty() {
        return Err(MdlError::Empty("hypothesis class"));
    }
    let gamma = exploration(cfg, k);
    let mut q = match cfg.adversary_kind {
        AdversaryKind::HedgeCapped => SimplexWeights::uniform_capped(k, two_smooth_cap(k))?,
        _ => SimplexWeights::uniform(k),
    };
    let mut p = SimplexWeights::uniform(class.len());
    let mut avg = PlayAverage::new(class.len());
    let mut trace = Vec::with_capacity(cfg.rounds);

    for _ in 0..cfg.rounds {
        let chosen = match cfg.adversary_kind {
            AdversaryKind::Exp3 => Some(sample_index(q.as_slice(), rng)),
            _ => None,
        };
        let source = match chosen {
            Some(i) => DataSource::Oracle(i),
            None => DataSource::Mixture(&q),
        };
        let batch = draw_batch(instance, source, cfg.n_learn, rng, ledger)?;

        let play = match cfg.learner_kind {
            LearnerKind::Erm => Play::Pure(position_of(class, erm(class, &batch)?.id())),
            LearnerKind::HedgeOverCover => {
                let current = p.as_slice().to_vec();
                let costs = CostVector::unit(class_losses(class, &batch))?;
                p = hedge_step_cost(&p, &costs, cfg.eta_learner)?;
                Play::Mixed(current)
            }
        };
        let learner_choice = match &play {
            Play::Pure(pos) => {
                avg.add_pure(*pos);
                class.hypotheses()[*pos].id()
            }
            Play::Mixed(w) => {
                avg.add_mixed(w);
                class.hypotheses()[argmax(w)].id()
            }
        };
        let weights_before = q.as_slice().to_vec();
        let predictor: Box<dyn Predictor + '_> = match &play {
            Play::Pure(pos) => Box::new(class.hypotheses()[*pos]),
            Play::Mixed(w) => Box::new(ClassMixture { class, weights: w }),
        };

        let payoffs = match (cfg.adversary_kind, chosen) {
            (AdversaryKind::Exp3, Some(i)) => {
                let obs = &batch.examples[..cfg.n_adv];
                let loss =
                    obs.iter().map(|z| predictor.error_prob(z)).sum::<f64>() / obs.len() as f64;
                let loss = loss.clamp(0.0, 1.0);
                q = exp3_step(&q, i, 1.0 - loss, cfg.eta_adversary, gamma)?;
                let mut v = vec![0.0; k];
                v[i] = loss;
                v
            }
            _ => {
                let mut rho = Vec::with_capacity(k);
                for i in 0..k {
                    let mut total = 0.0;
                    for _ in 0..cfg.n_adv {
                        let z = oracle_sample(instance, i, rng, ledger)?;
                        total += predictor.error_prob(&z);
                    }
                    rho.push((total / cfg.n_adv as f64).clamp(0.0, 1.0));
                }
                q = hedge_step_payoff(&q, &CostVector::unit(rho.clone())?, cfg.eta_adversary)?;
                rho
            }
        };
        trace.push(RoundTrace {
            adversary_weights: weights_before,
            adversary_choice: chosen,
            learner_choice,
            payoffs,
        });
    }
    Ok((avg.finish(class)?, trace))
}

/// Schedule of the fast algorithm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FastParams {
    pub epsilon: f64,
    /// `min(epsilon, alpha)`, the value the formulas use.
    pub epsilon_used: f64,
    pub epsilon_clamped: bool,
    pub alpha: f64,
    pub delta: f64,
    pub k: usize,
    pub d: usize,
    pub rounds: usize,
    pub r1: usize,
    pub r2: usize,
    pub c1: f64,
    pub c2: f64,
}

impl FastParams {
    /// `T * (r1 + k * r2)`.
    pub fn predicted_samples(&self) -> u64 {
        self.rounds as u64 * (self.r1 as u64 + self.k as u64 * self.r2 as u64)
    }
}

/// `T = ceil(ln k / (eps alpha))` (at least 1),
/// `r1 = ceil(C1 (d + ln(T/delta)) / (eps alpha))`,
/// `r2 = ceil(C2 ln(k/delta) / (T eps^2))`, with `eps` clamped to `alpha`.
pub fn fast_params(
    epsilon: f64,
    alpha: f64,
    delta: f64,
    k: usize,
    d: usize,
    c1: f64,
    c2: f64,
) -> Result<FastParams> {
    check_open("epsilon", epsilon, 0.5, "(0, 0.5)")?;
    check_open("alpha", alpha, 0.5, "(0, 0.5)")?;
    check_open("delta", delta, 1.0, "(0, 1)")?;
    check_constant("C1", c1)?;
    check_constant("C2", c2)?;
    if k == 0 {
        return Err(MdlError::InvalidInstance("k must be ≥ 1".into()));
    }
    let eps = epsilon.min(alpha);
    let kf = k as f64;
    let rounds = ((kf.ln() / (eps * alpha)).ceil() as usize).max(1);
    let r1 = (c1 * (d as f64 + (rounds as f64 / delta).ln()) / (eps * alpha)).ceil() as usize;
    let r2 = (c2 * (kf / delta).ln() / (rounds as f64 * eps * eps)).ceil() as usize;
    Ok(FastParams {
        epsilon,
        epsilon_used: eps,
        epsilon_clamped: epsilon > alpha,
        alpha,
        delta,
        k,
        d,
        rounds,
        r1,
        r2,
        c1,
        c2,
    })
}

/// ERM learner against a full-feedback Hedge adversary with rate `alpha`.
pub fn run_fast(
    instance: &MdlInstance,
    epsilon: f64,
    alpha: f64,
    delta: f64,
    constants: &Constants,
    rng: &mut SeededRng,
) -> Result<RunReport> {
    if instance.class().is_empty() {
        return Err(MdlError::Empty("hypothesis class"));
    }
    let d = constants.resolve_vc(instance.class())?;
    let fp = fast_params(
        epsilon,
        alpha,
        delta,
        instance.k(),
        d,
        constants.c1,
        constants.c2,
    )?;
    let cfg = DynamicsConfig {
        rounds: fp.rounds,
        n_learn: fp.r1,
        n_adv: fp.r2,
        eta_learner: alpha,
        eta_adversary: alpha,
        learner_kind: LearnerKind::Erm,
        adversary_kind: AdversaryKind::HedgeFullFeedback,
        exploration: None,
    };
    let seed = rng.seed();
    let mut ledger = SampleLedger::new(instance.k());
    let (mixture, trace) = dynamics_core(instance, &cfg, rng, &mut ledger)?;
    Ok(RunReport {
        algorithm: Algorithm::Fast,
        seed,
        output: RunOutput::Mixture(mixture),
        ledger,
        iterations: fp.rounds,
        params: RunParams {
            epsilon: Some(epsilon),
            delta: Some(delta),
            alpha: Some(alpha),
            epsilon_used: Some(fp.epsilon_used),
            epsilon_clamped: fp.epsilon_clamped,
            vc_dim: Some(d),
            predicted_samples: Some(fp.predicted_samples()),
            constants: Some(constants.clone()),
            ..echo(&cfg, instance.k())
        },
        trace,
        stages: Vec::new(),
        wall_ms: 0,
    })
}

/// `max(1, ceil(C eps^-2 (ln|H| + k ln(k/delta))))`.
pub fn finite_rounds(
    k: usize,
    class_size: usize,
    epsilon: f64,
    delta: f64,
    c: f64,
) -> Result<usize> {
    check_epsilon_delta(epsilon, delta)?;
    check_constant("C_T", c)?;
    let kf = k as f64;
    let t = c / (epsilon * epsilon) * ((class_size as f64).ln() + kf * (kf / delta).ln());
    Ok((t.ceil() as usize).max(1))
}

fn finite_config(k: usize, class_size: usize, rounds: usize) -> DynamicsConfig {
    let gamma = default_exploration(k, rounds);
    DynamicsConfig {
        rounds,
        n_learn: 1,
        n_adv: 1,
        eta_learner: default_rate(class_size, rounds),
        eta_adversary: (gamma / k as f64).clamp(MIN_RATE, 0.5),
        learner_kind: LearnerKind::HedgeOverCover,
        adversary_kind: AdversaryKind::Exp3,
        exploration: Some(gamma),
    }
}

/// Hedge learner over the whole class against an Exp3 adversary, one query
/// per round.
pub fn run_finite(
    instance: &MdlInstance,
    epsilon: f64,
    delta: f64,
    constants: &Constants,
    rng: &mut SeededRng,
) -> Result<RunReport> {
    let seed = rng.seed();
    let mut ledger = SampleLedger::new(instance.k());
    let (mixture, trace, params) =
        finite_core(instance, epsilon, delta, constants, rng, &mut ledger)?;
    Ok(RunReport {
        algorithm: Algorithm::Finite,
        seed,
        output: RunOutput::Mixture(mixture),
        ledger,
        iterations: params.rounds,
        params,
        trace,
        stages: Vec::new(),
        wall_ms: 0,
    })
}

fn finite_core(
    instance: &MdlInstance,
    epsilon: f64,
    delta: f64,
    constants: &Constants,
    rng: &mut SeededRng,
    ledger: &mut SampleLedger,
) -> Result<(RandomizedHypothesis, Vec<RoundTrace>, RunParams)> {
    let class_size = instance.class().len();
    if class_size == 0 {
        return Err(MdlError::Empty("hypothesis class"));
    }
    let rounds = finite_rounds(instance.k(), class_size, epsilon, delta, constants.c_finite)?;
    let cfg = finite_config(instance.k(), class_size, rounds);
    let (mixture, trace) = dynamics_core(instance, &cfg, rng, ledger)?;
    let params = RunParams {
        epsilon: Some(epsilon),
        delta: Some(delta),
        constants: Some(constants.clone()),
        ..echo(&cfg, instance.k())
    };
    Ok((mixture, trace, params))
}

/// Covers the class on `ceil(c_row1 d / eps)` draws per oracle, then runs the
/// finite-class dynamics over the cover.
pub fn run_cover_then_finite(
    instance: &MdlInstance,
    epsilon: f64,
    delta: f64,
    constants: &Constants,
    rng: &mut SeededRng,
) -> Result<RunReport> {
    check_epsilon_delta(epsilon, delta)?;
    check_constant("C_row1", constants.c_row1)?;
    let seed = rng.seed();
    let d = constants.resolve_vc(instance.class())?;
    let per_oracle = (constants.c_row1 * d.max(1) as f64 / epsilon).ceil() as usize;
    let mut ledger = SampleLedger::new(instance.k());
    let mut points = Vec::with_capacity(per_oracle * instance.k());
    for i in 0..instance.k() {
        for _ in 0..per_oracle {
            points.push(oracle_sample(instance, i, rng, &mut ledger)?.point);
        }
    }
    let cover = projection_cover(instance.class(), &points)?;
    let sub = instance.with_class(cover.subclass)?;
    let (mixture, trace, params) = finite_core(&sub, epsilon, delta, constants, rng, &mut ledger)?;
    Ok(RunReport {
        algorithm: Algorithm::CoverFinite,
        seed,
        output: RunOutput::Mixture(mixture),
        ledger,
        iterations: params.rounds,
        params: RunParams {
            vc_dim: Some(d),
            cover_samples: Some(per_oracle * instance.k()),
            cover_size: Some(cover.behavior_count),
            ..params
        },
        trace,
        stages: Vec::new(),
        wall_ms: 0,
    })
}
