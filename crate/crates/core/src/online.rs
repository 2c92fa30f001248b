//! No-regret primitives over the probability simplex.
//!
//! Hedge updates come in a cost form (`w_i * exp(-eta c_i)`) and a payoff form
//! (`w_i * exp(+eta rho_i)`). A capped simplex `{p : p_i <= cap}` is handled by
//! taking the unconstrained multiplicative step and then the KL projection
//! back onto the cap ([`project_capped`]).

use serde::{Deserialize, Serialize};

use crate::error::{MdlError, Result};
use crate::eval::smooth_argmax;
use crate::model::{PROB_TOL, RENORMALIZE_TOL};

/// A point of the (optionally capped) probability simplex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimplexWeights {
    w: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cap: Option<f64>,
}

impl SimplexWeights {
    pub fn new(w: Vec<f64>, cap: Option<f64>) -> Result<Self> {
        if w.is_empty() {
            return Err(MdlError::Empty("simplex weights"));
        }
        if let Some(c) = cap {
            check_cap(c, w.len())?;
        }
        if w.iter().any(|x| !(*x >= 0.0 && x.is_finite())) {
            return Err(MdlError::InvalidDistribution(
                "weights must be nonnegative reals".into(),
            ));
        }
        let total: f64 = w.iter().sum();
        if (total - 1.0).abs() > RENORMALIZE_TOL {
            return Err(MdlError::InvalidDistribution(format!(
                "weights sum to {total}, not 1"
            )));
        }
        let w = if (total - 1.0).abs() > PROB_TOL {
            w.into_iter().map(|x| x / total).collect()
        } else {
            w
        };
        if let Some(c) = cap {
            if let Some(x) = w.iter().find(|&&x| x > c + PROB_TOL) {
                return Err(MdlError::InvalidDistribution(format!(
                    "weight {x} exceeds cap {c}"
                )));
            }
        }
        Ok(Self { w, cap })
    }

    pub fn uniform(d: usize) -> Self {
        Self {
            w: vec![1.0 / d as f64; d],
            cap: None,
        }
    }

    /// Uniform point of the capped simplex (always feasible when `cap * d >= 1`).
    pub fn uniform_capped(d: usize, cap: f64) -> Result<Self> {
        check_cap(cap, d)?;
        Ok(Self {
            w: vec![1.0 / d as f64; d],
            cap: Some(cap),
        })
    }

    pub fn dim(&self) -> usize {
        self.w.len()
    }

    pub fn cap(&self) -> Option<f64> {
        self.cap
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.w
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.w
    }

    /// `<w, v>`.
    pub fn dot(&self, v: &[f64]) -> f64 {
        self.w.iter().zip(v).map(|(a, b)| a * b).sum()
    }

    /// Index of the largest weight, lowest index on ties.
    pub fn argmax(&self) -> usize {
        let mut best = 0;
        for (i, &x) in self.w.iter().enumerate() {
            if x > self.w[best] {
                best = i;
            }
        }
        best
    }
}

/// Cap on the 2-smooth simplex over `k` actions, `min(1, 2/k)`.
pub fn two_smooth_cap(k: usize) -> f64 {
    (2.0 / k as f64).min(1.0)
}

fn check_cap(cap: f64, d: usize) -> Result<()> {
    if !(cap > 0.0 && cap <= 1.0) {
        return Err(MdlError::ParameterRange {
            name: "cap",
            value: cap,
            range: "(0, 1]",
        });
    }
    if cap * (d as f64) < 1.0 - PROB_TOL {
        return Err(MdlError::InfeasibleCap { cap, dim: d });
    }
    Ok(())
}

/// Per-round costs (or payoffs), each entry in `[0, bound]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostVector {
    c: Vec<f64>,
    bound: f64,
}

impl CostVector {
    pub fn new(c: Vec<f64>, bound: f64) -> Result<Self> {
        if !(bound > 0.0 && bound.is_finite()) {
            return Err(MdlError::ParameterRange {
                name: "bound",
                value: bound,
                range: "(0, inf)",
            });
        }
        if let Some(x) = c.iter().find(|&&x| !(0.0..=bound).contains(&x)) {
            return Err(MdlError::ParameterRange {
                name: "cost entry",
                value: *x,
                range: "[0, bound]",
            });
        }
        Ok(Self { c, bound })
    }

    /// Costs in `[0, 1]`.
    pub fn unit(c: Vec<f64>) -> Result<Self> {
        Self::new(c, 1.0)
    }

    pub fn zeros(d: usize) -> Self {
        Self {
            c: vec![0.0; d],
            bound: 1.0,
        }
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.c
    }

    pub fn bound(&self) -> f64 {
        self.bound
    }

    pub fn dim(&self) -> usize {
        self.c.len()
    }
}

fn check_rate(eta: f64) -> Result<()> {
    if eta > 0.0 && eta <= 0.5 {
        Ok(())
    } else {
        Err(MdlError::ParameterRange {
            name: "eta",
            value: eta,
            range: "(0, 0.5]",
        })
    }
}

fn check_dims(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(MdlError::DimensionMismatch { expected, got })
    }
}

/// Multiplies each weight by `exp(sign * eta * v_i)`, shifted for stability,
/// then renormalizes (and projects when capped).
fn exponential_step(w: &SimplexWeights, v: &[f64], signed_eta: f64) -> Result<SimplexWeights> {
    let shift = if signed_eta < 0.0 {
        v.iter().copied().fold(f64::INFINITY, f64::min)
    } else {
        v.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    };
    let raw: Vec<f64> =
        w.w.iter()
            .zip(v)
            .map(|(&wi, &vi)| wi * (signed_eta * (vi - shift)).exp())
            .collect();
    match w.cap {
        Some(cap) => project_capped(&raw, cap),
        None => {
            let total: f64 = raw.iter().sum();
            Ok(SimplexWeights {
                w: raw.into_iter().map(|x| x / total).collect(),
                cap: None,
            })
        }
    }
}

/// One Hedge step on costs: `w_i' ~ w_i exp(-eta c_i)`.
pub fn hedge_step_cost(w: &SimplexWeights, c: &CostVector, eta: f64) -> Result<SimplexWeights> {
    check_rate(eta)?;
    check_dims(w.dim(), c.dim())?;
    exponential_step(w, &c.c, -eta)
}

/// One Hedge step on payoffs: `w_i' ~ w_i exp(+eta rho_i)`.
pub fn hedge_step_payoff(w: &SimplexWeights, rho: &CostVector, eta: f64) -> Result<SimplexWeights> {
    check_rate(eta)?;
    check_dims(w.dim(), rho.dim())?;
    exponential_step(w, &rho.c, eta)
}

/// KL projection of `raw` (normalized) onto `{p in simplex : p_i <= cap}`.
///
/// The projection has the form `p_i = min(cap, s * w_i)`: coordinates over
/// the cap are clamped and the rest rescaled, repeated until nothing new
/// crosses the cap (at most `d` rounds). If the unclamped coordinates carry
/// no mass at all, the leftover is split evenly among them.
pub fn project_capped(raw: &[f64], cap: f64) -> Result<SimplexWeights> {
    let d = raw.len();
    if d == 0 {
        return Err(MdlError::Empty("projection input"));
    }
    check_cap(cap, d)?;
    if raw.iter().any(|x| !(*x >= 0.0 && x.is_finite())) {
        return Err(MdlError::InvalidDistribution(
            "projection input must be nonnegative".into(),
        ));
    }
    let total: f64 = raw.iter().sum();
    if total <= 0.0 {
        return Err(MdlError::InvalidDistribution(
            "projection input is all zero".into(),
        ));
    }
    let p: Vec<f64> = raw.iter().map(|x| x / total).collect();
    let mut clamped = vec![false; d];
    let mut out = p.clone();
    for _ in 0..=d {
        let n_clamped = clamped.iter().filter(|&&c| c).count();
        let free_mass = (1.0 - cap * n_clamped as f64).max(0.0);
        let free_raw: f64 = (0..d).filter(|&i| !clamped[i]).map(|i| p[i]).sum();
        for i in 0..d {
            out[i] = if clamped[i] {
                cap
            } else if free_raw > 0.0 {
                p[i] * free_mass / free_raw
            } else {
                free_mass / (d - n_clamped) as f64
            };
        }
        let mut changed = false;
        for i in 0..d {
            if !clamped[i] && out[i] > cap {
                clamped[i] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    SimplexWeights::new(out, Some(cap))
}

/// Importance-weighted bandit estimate: `observed / w[chosen]` on the chosen
/// coordinate, zero elsewhere.
pub fn exp3_estimate(w: &SimplexWeights, chosen: usize, observed_cost: f64) -> Result<CostVector> {
    if chosen >= w.dim() {
        return Err(MdlError::OracleIndex {
            index: chosen,
            k: w.dim(),
        });
    }
    if !(0.0..=1.0).contains(&observed_cost) {
        return Err(MdlError::ParameterRange {
            name: "observed_cost",
            value: observed_cost,
            range: "[0, 1]",
        });
    }
    let p = w.w[chosen];
    if p <= 0.0 {
        return Err(MdlError::ZeroProbability(chosen));
    }
    let mut c = vec![0.0; w.dim()];
    c[chosen] = observed_cost / p;
    Ok(CostVector {
        c,
        bound: (1.0 / p).max(1.0),
    })
}

/// One Exp3 step: exponential update on the importance-weighted estimate,
/// then mixing with uniform at rate `exploration`.
pub fn exp3_step(
    w: &SimplexWeights,
    chosen: usize,
    observed_cost: f64,
    eta: f64,
    exploration: f64,
) -> Result<SimplexWeights> {
    if !(eta > 0.0 && eta.is_finite()) {
        return Err(MdlError::ParameterRange {
            name: "eta",
            value: eta,
            range: "(0, inf)",
        });
    }
    if !(0.0..=1.0).contains(&exploration) {
        return Err(MdlError::ParameterRange {
            name: "exploration",
            value: exploration,
            range: "[0, 1]",
        });
    }
    let est = exp3_estimate(w, chosen, observed_cost)?;
    let updated = exponential_step(
        &SimplexWeights {
            w: w.w.clone(),
            cap: None,
        },
        &est.c,
        -eta,
    )?;
    let d = w.dim() as f64;
    let mixed: Vec<f64> = updated
        .w
        .iter()
        .map(|x| (1.0 - exploration) * x + exploration / d)
        .collect();
    match w.cap {
        Some(cap) => project_capped(&mixed, cap),
        None => SimplexWeights::new(mixed, None),
    }
}

/// Default Exp3 exploration rate `min(1, sqrt(k ln k / T))`.
pub fn default_exploration(k: usize, rounds: usize) -> f64 {
    let k = k as f64;
    (k * k.ln() / rounds.max(1) as f64).sqrt().min(1.0)
}

/// Running totals for regret against the best fixed comparator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegretLedger {
    cumulative: Vec<f64>,
    realized: f64,
    rounds: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cap: Option<f64>,
}

impl RegretLedger {
    /// `cap` restricts the comparator to the capped simplex.
    pub fn new(d: usize, cap: Option<f64>) -> Result<Self> {
        if let Some(c) = cap {
            check_cap(c, d)?;
        }
        Ok(Self {
            cumulative: vec![0.0; d],
            realized: 0.0,
            rounds: 0,
            cap,
        })
    }

    pub fn record(&mut self, w: &SimplexWeights, c: &CostVector) -> Result<()> {
        check_dims(self.cumulative.len(), w.dim())?;
        check_dims(self.cumulative.len(), c.dim())?;
        self.realized += w.dot(&c.c);
        for (acc, x) in self.cumulative.iter_mut().zip(&c.c) {
            *acc += x;
        }
        self.rounds += 1;
        Ok(())
    }

    pub fn realized(&self) -> f64 {
        self.realized
    }

    pub fn cumulative(&self) -> &[f64] {
        &self.cumulative
    }

    pub fn rounds(&self) -> usize {
        self.rounds
    }

    /// Smallest cumulative value attainable by a fixed comparator.
    pub fn comparator_min(&self) -> f64 {
        match self.cap {
            Some(cap) => {
                let neg: Vec<f64> = self.cumulative.iter().map(|x| -x).collect();
                -smooth_argmax(&neg, cap).expect("cap validated").value
            }
            None => self
                .cumulative
                .iter()
                .copied()
                .fold(f64::INFINITY, f64::min),
        }
    }

    /// Largest cumulative value attainable by a fixed comparator.
    pub fn comparator_max(&self) -> f64 {
        match self.cap {
            Some(cap) => {
                smooth_argmax(&self.cumulative, cap)
                    .expect("cap validated")
                    .value
            }
            None => self
                .cumulative
                .iter()
                .copied()
                .fold(f64::NEG_INFINITY, f64::max),
        }
    }

    /// `Reg = realized - min comparator` (costs).
    pub fn cost_regret(&self) -> f64 {
        self.realized - self.comparator_min()
    }

    /// `Reg+ = max comparator - realized` (payoffs).
    pub fn payoff_regret(&self) -> f64 {
        self.comparator_max() - self.realized
    }
}

fn replay(
    actions: &[SimplexWeights],
    costs: &[CostVector],
    cap: Option<f64>,
) -> Result<RegretLedger> {
    check_dims(actions.len(), costs.len())?;
    let d = actions
        .first()
        .map(|w| w.dim())
        .ok_or(MdlError::Empty("action sequence"))?;
    let mut ledger = RegretLedger::new(d, cap)?;
    for (w, c) in actions.iter().zip(costs) {
        ledger.record(w, c)?;
    }
    Ok(ledger)
}

/// Cost regret of a played weight sequence.
pub fn regret_of(
    actions: &[SimplexWeights],
    costs: &[CostVector],
    cap: Option<f64>,
) -> Result<f64> {
    Ok(replay(actions, costs, cap)?.cost_regret())
}

/// Payoff regret of a played weight sequence.
pub fn payoff_regret_of(
    actions: &[SimplexWeights],
    payoffs: &[CostVector],
    cap: Option<f64>,
) -> Result<f64> {
    Ok(replay(actions, payoffs, cap)?.payoff_regret())
}
