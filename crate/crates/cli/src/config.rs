//! Resolved experiment configuration and algorithm dispatch.

use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Context};
use mdl_core::algos::{
    run_cover_then_finite, run_fast, run_finite, run_mid, run_personalized, Algorithm, Constants,
};
use mdl_core::eval::{generate, standard_suite_spec, InstanceSpec};
use mdl_core::{derive_seed, MdlError, MdlInstance, RunReport, SeededRng};

use crate::args::{InstanceArgs, RunArgs, SpecArgs};

/// Alpha used by the fast algorithm when `--alpha` is not given.
pub const DEFAULT_ALPHA: f64 = 0.25;

/// Stream tag separating suite instance draws from algorithm draws.
const SUITE_STREAM: u64 = 0x5017e;

#[derive(Debug, Clone, PartialEq)]
pub enum InstanceSource {
    File(PathBuf),
    Spec(InstanceSpec),
    /// A fresh standard-suite instance per trial seed.
    Suite,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub algorithm: Algorithm,
    pub instance: InstanceSource,
    pub epsilon: f64,
    pub delta: f64,
    pub alpha: Option<f64>,
    pub constants: Constants,
    /// One entry per trial; a run with seed `s` replays with `solve --seed s`.
    pub seeds: Vec<u64>,
    pub timing: bool,
}

pub fn spec_from_args(args: &SpecArgs, seed: u64) -> InstanceSpec {
    let mut spec = InstanceSpec::new(args.family.into(), args.n, args.k, args.class_size, seed);
    spec.support_size = args.support;
    spec.class_family = args.class_family.into();
    spec
}

impl ExperimentConfig {
    /// Builds a single-seed configuration and validates it.
    pub fn from_args(run: &RunArgs, inst: &InstanceArgs) -> anyhow::Result<Self> {
        let instance = match (&inst.instance, inst.suite) {
            (Some(path), _) => InstanceSource::File(path.clone()),
            (None, true) => InstanceSource::Suite,
            (None, false) => InstanceSource::Spec(spec_from_args(
                &inst.spec,
                inst.instance_seed.unwrap_or(run.seed),
            )),
        };
        let mut constants = Constants::default();
        for kv in &run.constants {
            let Some((key, value)) = kv.split_once('=') else {
                bail!(MdlError::Config(format!("expected KEY=VAL, got `{kv}`")));
            };
            constants.set(key.trim(), value.trim())?;
        }
        if let Some(e) = run.estimator {
            constants.estimator = e.into();
        }
        let cfg = Self {
            algorithm: run.algo.into(),
            instance,
            epsilon: run.epsilon,
            delta: run.delta,
            alpha: run.alpha,
            constants,
            seeds: vec![run.seed],
            timing: run.timing,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Replaces the seed list with `count` seeds derived from `base`.
    pub fn with_trials(mut self, base: u64, count: usize) -> Self {
        self.seeds = (0..count as u64).map(|j| derive_seed(base, j)).collect();
        self
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        let open_unit = |name: &'static str, v: f64| -> Result<(), MdlError> {
            if v > 0.0 && v < 1.0 {
                Ok(())
            } else {
                Err(MdlError::ParameterRange {
                    name,
                    value: v,
                    range: "(0, 1)",
                })
            }
        };
        open_unit("epsilon", self.epsilon)?;
        open_unit("delta", self.delta)?;
        if let Some(a) = self.alpha {
            if !(a >= 0.0 && a.is_finite()) {
                return Err(MdlError::ParameterRange {
                    name: "alpha",
                    value: a,
                    range: "[0, inf)",
                }
                .into());
            }
        }
        if let InstanceSource::File(p) = &self.instance {
            if !p.is_file() {
                bail!(MdlError::Config(format!(
                    "instance file {} does not exist",
                    p.display()
                )));
            }
        }
        Ok(())
    }

    /// Alpha passed to the algorithm (fast only).
    pub fn run_alpha(&self) -> Option<f64> {
        match self.algorithm {
            Algorithm::Fast => Some(self.alpha.unwrap_or(DEFAULT_ALPHA)),
            _ => self.alpha,
        }
    }

    /// Alpha used by the epsilon-optimality check.
    pub fn check_alpha(&self) -> f64 {
        self.run_alpha().unwrap_or(0.0)
    }

    /// Loads or generates the instance for a trial seed.
    pub fn load_instance(&self, trial_seed: u64) -> anyhow::Result<MdlInstance> {
        match &self.instance {
            InstanceSource::File(p) => {
                let text = fs::read_to_string(p)
                    .with_context(|| format!("reading instance {}", p.display()))?;
                Ok(MdlInstance::from_json(&text)?)
            }
            InstanceSource::Spec(spec) => Ok(generate(spec)?),
            InstanceSource::Suite => Ok(generate(&suite_spec(trial_seed))?),
        }
    }

    /// Runs the configured algorithm with a fresh stream seeded by `seed`.
    pub fn run(&self, instance: &MdlInstance, seed: u64) -> mdl_core::Result<RunReport> {
        let mut rng = SeededRng::new(seed);
        let (e, d, c) = (self.epsilon, self.delta, &self.constants);
        let start = Instant::now();
        let mut report = match self.algorithm {
            Algorithm::Fast => run_fast(instance, e, self.check_alpha(), d, c, &mut rng),
            Algorithm::Finite => run_finite(instance, e, d, c, &mut rng),
            Algorithm::CoverFinite => run_cover_then_finite(instance, e, d, c, &mut rng),
            Algorithm::Mid => run_mid(instance, e, d, c, &mut rng),
            Algorithm::Personalized => run_personalized(instance, e, d, c, &mut rng),
            Algorithm::Dynamics => Err(MdlError::Config(
                "the dynamics template has no command-line entry".into(),
            )),
        }?;
        report.wall_ms = if self.timing {
            start.elapsed().as_millis() as u64
        } else {
            0
        };
        Ok(report)
    }
}

/// Standard-suite spec used for trial seed `seed`.
pub fn suite_spec(seed: u64) -> InstanceSpec {
    standard_suite_spec(derive_seed(seed, SUITE_STREAM))
}
