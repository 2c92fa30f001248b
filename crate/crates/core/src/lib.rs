//! Multi-distribution learning over finite binary domains.
//!
//! A learner picks hypotheses from a finite class, an adversary reweights `k`
//! example oracles, and both play no-regret dynamics. The time-averaged learner
//! play is a randomized hypothesis whose worst-case loss over the oracles is
//! close to the best single hypothesis. Every oracle query is counted in a
//! [`SampleLedger`].
//!
//! ```
//! use mdl_core::{algos, eval, SeededRng};
//!
//! let spec = eval::InstanceSpec::new(eval::GeneratorTag::Realizable, 6, 3, 8, 1);
//! let instance = eval::generate(&spec).unwrap();
//! let report = algos::run_fast(
//!     &instance, 0.3, 0.3, 0.2, &algos::Constants::default(), &mut SeededRng::new(7),
//! ).unwrap();
//! let (worst, _) = eval::max_loss(&instance, report.mixture().unwrap()).unwrap();
//! assert!(worst <= 1.0);
//! ```

pub mod algos;
pub mod cover;
pub mod error;
pub mod eval;
pub mod model;
pub mod online;

pub use algos::{Algorithm, Constants, Estimator, RunOutput, RunReport};
pub use error::{MdlError, Result};
pub use model::{
    derive_seed, DomainPoint, FiniteDistribution, Hypothesis, HypothesisClass, LabeledExample,
    MdlInstance, Predictor, RandomizedHypothesis, SampleLedger, SeededRng,
};
pub use online::{CostVector, SimplexWeights};
