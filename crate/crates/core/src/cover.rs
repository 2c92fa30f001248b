//! Empirical risk minimization and projection covers of a hypothesis class.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{check_open, MdlError, Result};
use crate::model::{
    mixture_sample, oracle_sample, DomainPoint, Hypothesis, HypothesisClass, LabeledExample,
    MdlInstance, Predictor, SampleLedger, SeededRng,
};
use crate::online::SimplexWeights;

/// Where a batch was drawn from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BatchSource {
    Oracle(usize),
    Mixture(Vec<f64>),
    Pooled,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleBatch {
    pub examples: Vec<LabeledExample>,
    pub source: BatchSource,
}

impl SampleBatch {
    pub fn new(examples: Vec<LabeledExample>, source: BatchSource) -> Self {
        Self { examples, source }
    }

    pub fn len(&self) -> usize {
        self.examples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.examples.is_empty()
    }
}

/// Mean 0-1 loss of `h` over `batch`.
pub fn empirical_loss<P: Predictor + ?Sized>(h: &P, batch: &SampleBatch) -> Result<f64> {
    if batch.is_empty() {
        return Err(MdlError::Empty("sample batch"));
    }
    let n = h.domain_size();
    let mut total = 0.0;
    for z in &batch.examples {
        if z.point.0 >= n {
            return Err(MdlError::DomainMismatch {
                point: z.point.0,
                domain_size: n,
            });
        }
        total += h.error_prob(z);
    }
    Ok(total / batch.len() as f64)
}

/// Class member with the fewest mistakes on `batch`, lowest id on ties.
///
/// The batch is folded into per-cell counts first, so each hypothesis costs
/// `O(n)` rather than `O(|batch|)`.
pub fn erm(class: &HypothesisClass, batch: &SampleBatch) -> Result<Hypothesis> {
    if batch.is_empty() {
        return Err(MdlError::Empty("sample batch"));
    }
    let n = class.domain_size();
    // counts[x] = (#label 0, #label 1)
    let mut counts = vec![(0u64, 0u64); n];
    for z in &batch.examples {
        let slot = counts.get_mut(z.point.0).ok_or(MdlError::DomainMismatch {
            point: z.point.0,
            domain_size: n,
        })?;
        if z.label {
            slot.1 += 1;
        } else {
            slot.0 += 1;
        }
    }
    let mut best: Option<(u64, &Hypothesis)> = None;
    for h in class.hypotheses() {
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
        let better = match best {
            None => true,
            Some((m, b)) => mistakes < m || (mistakes == m && h.id() < b.id()),
        };
        if better {
            best = Some((mistakes, h));
        }
    }
    Ok(*best.expect("class is nonempty").1)
}

/// Sample count `ceil(C1 (d + ln(1/delta)) / (epsilon alpha))` for agnostic ERM.
pub fn agnostic_sample_size(
    d: usize,
    epsilon: f64,
    alpha: f64,
    delta: f64,
    c1: f64,
) -> Result<usize> {
    check_open("epsilon", epsilon, 0.5, "(0, 0.5)")?;
    check_open("alpha", alpha, 0.5, "(0, 0.5)")?;
    check_open("delta", delta, 1.0, "(0, 1)")?;
    check_constant("C1", c1)?;
    Ok(((c1 * (d as f64 + (1.0 / delta).ln())) / (epsilon * alpha)).ceil() as usize)
}

pub(crate) fn check_constant(name: &'static str, c: f64) -> Result<()> {
    if c > 0.0 && c.is_finite() {
        Ok(())
    } else {
        Err(MdlError::ParameterRange {
            name,
            value: c,
            range: "(0, inf)",
        })
    }
}

/// Which example oracle(s) feed a learner.
#[derive(Debug, Clone, Copy)]
pub enum DataSource<'a> {
    Oracle(usize),
    Mixture(&'a SimplexWeights),
}

/// Draws `m` ledgered examples from `source`.
pub fn draw_batch(
    instance: &MdlInstance,
    source: DataSource<'_>,
    m: usize,
    rng: &mut SeededRng,
    ledger: &mut SampleLedger,
) -> Result<SampleBatch> {
    let mut examples = Vec::with_capacity(m);
    for _ in 0..m {
        examples.push(match source {
            DataSource::Oracle(i) => oracle_sample(instance, i, rng, ledger)?,
            DataSource::Mixture(w) => mixture_sample(instance, w, rng, ledger)?,
        });
    }
    let source = match source {
        DataSource::Oracle(i) => BatchSource::Oracle(i),
        DataSource::Mixture(w) => BatchSource::Mixture(w.as_slice().to_vec()),
    };
    Ok(SampleBatch { examples, source })
}

/// Agnostic ERM on `agnostic_sample_size(..)` fresh examples from `source`.
#[allow(clippy::too_many_arguments)]
pub fn agnostic_learn(
    instance: &MdlInstance,
    source: DataSource<'_>,
    vc_dim: usize,
    epsilon: f64,
    alpha: f64,
    delta: f64,
    c1: f64,
    rng: &mut SeededRng,
    ledger: &mut SampleLedger,
) -> Result<Hypothesis> {
    let m = agnostic_sample_size(vc_dim, epsilon, alpha, delta, c1)?;
    let batch = draw_batch(instance, source, m, rng, ledger)?;
    erm(instance.class(), &batch)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoverResult {
    pub subclass: HypothesisClass,
    pub witness_points: Vec<DomainPoint>,
    pub behavior_count: usize,
}

/// One representative (lowest id) per distinct labeling of `points`.
pub fn projection_cover(class: &HypothesisClass, points: &[DomainPoint]) -> Result<CoverResult> {
    let n = class.domain_size();
    let mut witness: Vec<DomainPoint> = points.to_vec();
    witness.sort_unstable();
    witness.dedup();
    if let Some(p) = witness.iter().find(|p| p.0 >= n) {
        return Err(MdlError::DomainMismatch {
            point: p.0,
            domain_size: n,
        });
    }
    let mask = witness.iter().fold(0u64, |acc, p| acc | 1 << p.0);
    let mut reps: HashMap<u64, Hypothesis> = HashMap::new();
    for h in class.hypotheses() {
        reps.entry(h.mask() & mask)
            .and_modify(|r| {
                if h.id() < r.id() {
                    *r = *h;
                }
            })
            .or_insert(*h);
    }
    let mut members: Vec<Hypothesis> = reps.into_values().collect();
    members.sort_by_key(|h| h.id());
    let behavior_count = members.len();
    Ok(CoverResult {
        subclass: class.subclass(members)?,
        witness_points: witness,
        behavior_count,
    })
}

/// Cover size `ceil(C / epsilon * (d ln(d / epsilon) + ln(1 / delta)))`.
pub fn cover_sample_size(d: usize, epsilon: f64, delta: f64, c: f64) -> Result<usize> {
    check_open("epsilon", epsilon, 1.0, "(0, 1)")?;
    check_open("delta", delta, 1.0, "(0, 1)")?;
    check_constant("C", c)?;
    if d == 0 {
        return Err(MdlError::ParameterRange {
            name: "d",
            value: 0.0,
            range: "[1, inf)",
        });
    }
    let d = d as f64;
    Ok((c / epsilon * (d * (d / epsilon).ln() + (1.0 / delta).ln())).ceil() as usize)
}
