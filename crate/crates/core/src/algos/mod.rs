//! Game-dynamics MDL algorithms. Every entry point returns a [`RunReport`].

mod dynamics;
mod mid;
mod personalized;

pub use dynamics::{
    fast_params, finite_rounds, run_cover_then_finite, run_dynamics, run_fast, run_finite,
    AdversaryKind, DynamicsConfig, FastParams, LearnerKind,
};
pub use mid::{mid_adversary_estimate, mid_rounds, run_mid};
pub use personalized::{eval_batch_size, median_filter, personalized_rounds, run_personalized};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{MdlError, Result};
use crate::model::{
    brute_force_vc, HypothesisClass, LabeledExample, Predictor, RandomizedHypothesis, SampleLedger,
};

/// Smallest rate handed to Hedge when `sqrt(ln d / T)` degenerates (d = 1).
pub const MIN_RATE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Dynamics,
    Fast,
    Finite,
    CoverFinite,
    Mid,
    Personalized,
}

impl Algorithm {
    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Dynamics => "dynamics",
            Algorithm::Fast => "fast",
            Algorithm::Finite => "finite",
            Algorithm::CoverFinite => "cover_finite",
            Algorithm::Mid => "mid",
            Algorithm::Personalized => "personalized",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = MdlError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "dynamics" => Algorithm::Dynamics,
            "fast" => Algorithm::Fast,
            "finite" => Algorithm::Finite,
            "cover_finite" => Algorithm::CoverFinite,
            "mid" => Algorithm::Mid,
            "personalized" => Algorithm::Personalized,
            _ => return Err(MdlError::Config(format!("unknown algorithm `{s}`"))),
        })
    }
}

/// Cost factor used by the mid adversary's one-sample estimate.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Estimator {
    /// `k * (1 - loss)` on the sampled coordinate.
    #[default]
    Unbiased,
    /// Additionally multiplied by the adversary's current weight on it.
    Literal,
}

impl FromStr for Estimator {
    type Err = MdlError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unbiased" => Ok(Estimator::Unbiased),
            "literal" => Ok(Estimator::Literal),
            _ => Err(MdlError::Config(format!("unknown estimator `{s}`"))),
        }
    }
}

/// Schedule constants and switches. Every constant defaults to 4.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Constants {
    /// Cover sample size constant in the mid algorithm.
    pub c_cover: f64,
    /// `C'` in the mid round count.
    pub c_prime: f64,
    /// Second term of the mid round count.
    pub c_learner: f64,
    pub c1: f64,
    pub c2: f64,
    /// Evaluation batch constant of the personalized algorithm.
    pub c_eval: f64,
    /// Round count constant of the finite-class algorithm.
    pub c_finite: f64,
    /// Per-oracle covering samples `ceil(c_row1 * d / eps)` before the finite run.
    pub c_row1: f64,
    /// Skips the brute-force VC computation when set.
    pub vc_dim: Option<usize>,
    pub estimator: Estimator,
}

impl Default for Constants {
    fn default() -> Self {
        Self {
            c_cover: 4.0,
            c_prime: 4.0,
            c_learner: 4.0,
            c1: 4.0,
            c2: 4.0,
            c_eval: 4.0,
            c_finite: 4.0,
            c_row1: 4.0,
            vc_dim: None,
            estimator: Estimator::Unbiased,
        }
    }
}

impl Constants {
    pub const KEYS: [&'static str; 10] = [
        "c_cover",
        "c_prime",
        "c_learner",
        "c1",
        "c2",
        "c_eval",
        "c_finite",
        "c_row1",
        "vc_dim",
        "estimator",
    ];

    /// Sets one constant from its textual form, as in `c1=8`.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = || MdlError::Config(format!("bad value `{value}` for `{key}`"));
        let slot = match key {
            "c_cover" => &mut self.c_cover,
            "c_prime" => &mut self.c_prime,
            "c_learner" => &mut self.c_learner,
            "c1" => &mut self.c1,
            "c2" => &mut self.c2,
            "c_eval" => &mut self.c_eval,
            "c_finite" => &mut self.c_finite,
            "c_row1" => &mut self.c_row1,
            "vc_dim" => {
                self.vc_dim = Some(value.parse().map_err(|_| bad())?);
                return Ok(());
            }
            "estimator" => {
                self.estimator = value.parse()?;
                return Ok(());
            }
            _ => return Err(MdlError::Config(format!("unknown constant `{key}`"))),
        };
        let v: f64 = value.parse().map_err(|_| bad())?;
        if !(v > 0.0 && v.is_finite()) {
            return Err(bad());
        }
        *slot = v;
        Ok(())
    }

    /// VC dimension of `class`: the configured override or a brute-force search.
    pub fn resolve_vc(&self, class: &HypothesisClass) -> Result<usize> {
        match self.vc_dim {
            Some(d) => Ok(d),
            None => brute_force_vc(class),
        }
    }
}

/// `sqrt(ln(actions) / T)`, clamped into `[MIN_RATE, 0.5]`.
pub fn default_rate(actions: usize, rounds: usize) -> f64 {
    ((actions as f64).ln() / rounds.max(1) as f64)
        .sqrt()
        .clamp(MIN_RATE, 0.5)
}

/// Parameters actually used by a run.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RunParams {
    pub epsilon: Option<f64>,
    pub delta: Option<f64>,
    pub alpha: Option<f64>,
    /// Epsilon after clamping to `alpha` (fast only).
    pub epsilon_used: Option<f64>,
    pub epsilon_clamped: bool,
    pub rounds: usize,
    pub n_learn: usize,
    pub n_adv: usize,
    pub eta_learner: f64,
    pub eta_adversary: f64,
    pub exploration: Option<f64>,
    pub vc_dim: Option<usize>,
    pub cover_samples: Option<usize>,
    pub cover_size: Option<usize>,
    pub eval_batch: Option<usize>,
    pub predicted_samples: Option<u64>,
    pub constants: Option<Constants>,
}

/// One round of the dynamics, recorded before the adversary moves.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoundTrace {
    pub adversary_weights: Vec<f64>,
    /// Oracle sampled by a bandit or one-sample adversary.
    pub adversary_choice: Option<usize>,
    /// Id of the learner's hypothesis (argmax of its mixture for Hedge learners).
    pub learner_choice: usize,
    /// Payoff estimates fed to the adversary this round.
    pub payoffs: Vec<f64>,
}

/// One round of the personalized algorithm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageReport {
    pub round: usize,
    pub active: Vec<usize>,
    pub empirical_losses: Vec<f64>,
    pub survivors: Vec<usize>,
    /// Distributions that received this round's hypothesis.
    pub assigned: Vec<usize>,
    pub eval_samples: u64,
    pub mid: Box<RunReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunOutput {
    Mixture(RandomizedHypothesis),
    PerDistribution {
        hypotheses: Vec<RandomizedHypothesis>,
        /// Round in which each distribution was assigned (1-based).
        rounds: Vec<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub algorithm: Algorithm,
    pub seed: u64,
    pub output: RunOutput,
    pub ledger: SampleLedger,
    pub iterations: usize,
    pub params: RunParams,
    pub trace: Vec<RoundTrace>,
    pub stages: Vec<StageReport>,
    pub wall_ms: u64,
}

impl RunReport {
    /// The single returned mixture, if the run produced one.
    pub fn mixture(&self) -> Option<&RandomizedHypothesis> {
        match &self.output {
            RunOutput::Mixture(m) => Some(m),
            RunOutput::PerDistribution { .. } => None,
        }
    }

    /// The hypothesis used for distribution `i`.
    pub fn hypothesis_for(&self, i: usize) -> Option<&RandomizedHypothesis> {
        match &self.output {
            RunOutput::Mixture(m) => Some(m),
            RunOutput::PerDistribution { hypotheses, .. } => hypotheses.get(i),
        }
    }
}

/// A learner's mixed play over the positions of a class.
pub(crate) struct ClassMixture<'a> {
    pub class: &'a HypothesisClass,
    pub weights: &'a [f64],
}

impl Predictor for ClassMixture<'_> {
    fn domain_size(&self) -> usize {
        self.class.domain_size()
    }

    fn error_prob(&self, z: &LabeledExample) -> f64 {
        self.class
            .hypotheses()
            .iter()
            .zip(self.weights)
            .filter(|(_, &w)| w > 0.0)
            .map(|(h, w)| w * h.error_prob(z))
            .sum()
    }
}

/// Running sum of learner plays, flattened into a uniform time average.
pub(crate) struct PlayAverage {
    sums: Vec<f64>,
    rounds: usize,
}

impl PlayAverage {
    pub fn new(size: usize) -> Self {
        Self {
            sums: vec![0.0; size],
            rounds: 0,
        }
    }

    pub fn add_pure(&mut self, position: usize) {
        self.sums[position] += 1.0;
        self.rounds += 1;
    }

    pub fn add_mixed(&mut self, w: &[f64]) {
        for (s, x) in self.sums.iter_mut().zip(w) {
            *s += x;
        }
        self.rounds += 1;
    }

    pub fn finish(self, class: &HypothesisClass) -> Result<RandomizedHypothesis> {
        if self.rounds == 0 {
            return Err(MdlError::Empty("learner plays"));
        }
        let t = self.rounds as f64;
        let atoms = class
            .hypotheses()
            .iter()
            .zip(&self.sums)
            .filter(|(_, &s)| s > 0.0)
            .map(|(h, &s)| (*h, s / t))
            .collect();
        RandomizedHypothesis::new(atoms)
    }
}

pub(crate) fn check_epsilon_delta(epsilon: f64, delta: f64) -> Result<()> {
    crate::error::check_open("epsilon", epsilon, 1.0, "(0, 1)")?;
    crate::error::check_open("delta", delta, 1.0, "(0, 1)")
}

/// Index of the largest entry, lowest index on ties.
pub(crate) fn argmax(w: &[f64]) -> usize {
    let mut best = 0;
    for (i, &x) in w.iter().enumerate() {
        if x > w[best] {
            best = i;
        }
    }
    best
}

pub(crate) fn position_of(class: &HypothesisClass, id: usize) -> usize {
    class
        .hypotheses()
        .iter()
        .position(|h| h.id() == id)
        .expect("hypothesis comes from the class")
}
