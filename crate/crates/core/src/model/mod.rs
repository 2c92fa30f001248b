//! Finite-support problem representation.
//!
//! An [`MdlInstance`] holds `k` labeled distributions over a finite domain
//! `{0, .., n-1} x {0, 1}` and an explicit binary hypothesis class. Algorithms
//! only touch the distributions through [`oracle_sample`] and
//! [`mixture_sample`], both of which charge a [`SampleLedger`]; exact
//! expectations ([`exact_loss`]) are reserved for evaluation.

mod file;
mod rng;

use std::collections::HashSet;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{MdlError, Result};
use crate::online::SimplexWeights;

pub use file::{ClassFile, InstanceFile};
pub use rng::{derive_seed, SeededRng};

/// Largest supported domain (labels are packed into a `u64`).
pub const MAX_DOMAIN_SIZE: usize = 64;

/// Tolerance on probability sums after construction.
pub const PROB_TOL: f64 = 1e-12;

/// Probability vectors closer than this to 1 are renormalized on construction.
pub const RENORMALIZE_TOL: f64 = 1e-9;

const VC_MAX_DOMAIN: usize = 20;
const VC_MAX_CLASS: usize = 4096;

/// Index of a point in the finite domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DomainPoint(pub usize);

impl DomainPoint {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LabeledExample {
    pub point: DomainPoint,
    pub label: bool,
}

impl LabeledExample {
    pub fn new(point: usize, label: bool) -> Self {
        Self {
            point: DomainPoint(point),
            label,
        }
    }
}

/// One `(point, label, probability)` cell of a finite distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub example: LabeledExample,
    pub prob: f64,
}

/// A distribution over `[0, n) x {0, 1}` with finite support.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteDistribution {
    atoms: Vec<Atom>,
    cdf: Vec<f64>,
}

impl FiniteDistribution {
    /// Builds a distribution from `(point, label, probability)` triples.
    ///
    /// Masses summing to within [`RENORMALIZE_TOL`] of 1 are renormalized;
    /// anything further off, negative masses, out-of-range points and
    /// duplicate cells are rejected.
    pub fn new(domain_size: usize, cells: &[(usize, bool, f64)]) -> Result<Self> {
        if cells.is_empty() {
            return Err(MdlError::InvalidDistribution("empty support".into()));
        }
        let mut seen = HashSet::new();
        let mut total = 0.0;
        for &(x, y, p) in cells {
            if x >= domain_size {
                return Err(MdlError::DomainMismatch {
                    point: x,
                    domain_size,
                });
            }
            if !(p >= 0.0 && p.is_finite()) {
                return Err(MdlError::InvalidDistribution(format!(
                    "mass {p} at ({x}, {}) is not a nonnegative real",
                    y as u8
                )));
            }
            if !seen.insert((x, y)) {
                return Err(MdlError::InvalidDistribution(format!(
                    "duplicate cell ({x}, {})",
                    y as u8
                )));
            }
            total += p;
        }
        if (total - 1.0).abs() > RENORMALIZE_TOL {
            return Err(MdlError::InvalidDistribution(format!(
                "masses sum to {total}, not 1"
            )));
        }
        // Exact-enough inputs are kept bit-for-bit so files round-trip.
        let scale = if (total - 1.0).abs() <= PROB_TOL {
            1.0
        } else {
            total
        };
        let atoms: Vec<Atom> = cells
            .iter()
            .map(|&(x, y, p)| Atom {
                example: LabeledExample::new(x, y),
                prob: p / scale,
            })
            .collect();
        let mut acc = 0.0;
        let mut cdf: Vec<f64> = atoms
            .iter()
            .map(|a| {
                acc += a.prob;
                acc
            })
            .collect();
        // Pin the last positive-mass cell to 1 so inverse-CDF never runs off the end.
        if let Some(last) = atoms.iter().rposition(|a| a.prob > 0.0) {
            for c in &mut cdf[last..] {
                *c = 1.0;
            }
        }
        Ok(Self { atoms, cdf })
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn support_size(&self) -> usize {
        self.atoms.len()
    }

    /// Marginal mass on each domain point.
    pub fn marginal(&self, domain_size: usize) -> Vec<f64> {
        let mut m = vec![0.0; domain_size];
        for a in &self.atoms {
            m[a.example.point.0] += a.prob;
        }
        m
    }

    fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> LabeledExample {
        let u: f64 = rng.gen();
        let i = self.cdf.partition_point(|&c| c <= u);
        self.atoms[i.min(self.atoms.len() - 1)].example
    }
}

/// A deterministic binary hypothesis over the domain.
///
/// Serialized as `{"id": 3, "labels": "0110"}` with point 0 first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "HypothesisRecord", try_from = "HypothesisRecord")]
pub struct Hypothesis {
    id: usize,
    domain_size: usize,
    labels: u64,
}

impl Hypothesis {
    pub fn from_bits(id: usize, bits: &[bool]) -> Result<Self> {
        if bits.len() > MAX_DOMAIN_SIZE {
            return Err(MdlError::SizeLimit(format!(
                "domain size {} exceeds {MAX_DOMAIN_SIZE}",
                bits.len()
            )));
        }
        let labels = bits
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &b)| acc | ((b as u64) << i));
        Ok(Self {
            id,
            domain_size: bits.len(),
            labels,
        })
    }

    /// Bits of `mask` above `domain_size` are discarded.
    pub fn from_mask(id: usize, domain_size: usize, mask: u64) -> Self {
        debug_assert!(domain_size <= MAX_DOMAIN_SIZE);
        Self {
            id,
            domain_size,
            labels: mask & domain_mask(domain_size),
        }
    }

    pub fn id(&self) -> usize {
        self.id
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    pub fn mask(&self) -> u64 {
        self.labels
    }

    /// Prediction at `x`; `x` must be inside the domain.
    #[inline]
    pub fn predict(&self, x: DomainPoint) -> bool {
        debug_assert!(x.0 < self.domain_size);
        (self.labels >> x.0) & 1 == 1
    }

    #[inline]
    pub(crate) fn loss(&self, z: &LabeledExample) -> f64 {
        (self.predict(z.point) != z.label) as u8 as f64
    }

    pub fn bits(&self) -> Vec<bool> {
        (0..self.domain_size)
            .map(|x| self.predict(DomainPoint(x)))
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
struct HypothesisRecord {
    id: usize,
    labels: String,
}

impl From<Hypothesis> for HypothesisRecord {
    fn from(h: Hypothesis) -> Self {
        Self {
            id: h.id,
            labels: h
                .bits()
                .into_iter()
                .map(|b| if b { '1' } else { '0' })
                .collect(),
        }
    }
}

impl TryFrom<HypothesisRecord> for Hypothesis {
    type Error = MdlError;

    fn try_from(r: HypothesisRecord) -> Result<Self> {
        let bits = r
            .labels
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(MdlError::InvalidClass(format!("bad label character {c:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Hypothesis::from_bits(r.id, &bits)
    }
}

pub(crate) fn domain_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassFamily {
    Explicit,
    /// `h_t(x) = 1[x >= t]` for `t = 0..=n`.
    Thresholds,
    /// `h_{a,b}(x) = 1[a <= x < b]`, with the empty interval once.
    Intervals,
    /// `h_i(x) = 1[x = i]`.
    Singletons,
}

/// A finite, deduplicated class of binary hypotheses.
#[derive(Debug, Clone, PartialEq)]
pub struct HypothesisClass {
    family: ClassFamily,
    domain_size: usize,
    hypotheses: Vec<Hypothesis>,
}

impl HypothesisClass {
    /// Explicit class from label masks. Duplicates are dropped (first kept)
    /// and ids are the surviving positions.
    pub fn explicit(domain_size: usize, masks: impl IntoIterator<Item = u64>) -> Result<Self> {
        check_domain(domain_size)?;
        let mut seen = HashSet::new();
        let hypotheses: Vec<Hypothesis> = masks
            .into_iter()
            .map(|m| m & domain_mask(domain_size))
            .filter(|m| seen.insert(*m))
            .enumerate()
            .map(|(id, m)| Hypothesis::from_mask(id, domain_size, m))
            .collect();
        Self::build(ClassFamily::Explicit, domain_size, hypotheses)
    }

    pub fn structured(family: ClassFamily, domain_size: usize) -> Result<Self> {
        check_domain(domain_size)?;
        let n = domain_size;
        let masks: Vec<u64> = match family {
            ClassFamily::Explicit => {
                return Err(MdlError::InvalidClass(
                    "explicit family needs hypotheses".into(),
                ))
            }
            ClassFamily::Thresholds => (0..=n).map(|t| domain_mask(n) & !domain_mask(t)).collect(),
            ClassFamily::Intervals => {
                let mut v = vec![0u64];
                for a in 0..n {
                    for b in a + 1..=n {
                        v.push(domain_mask(b) & !domain_mask(a));
                    }
                }
                v
            }
            ClassFamily::Singletons => (0..n).map(|i| 1u64 << i).collect(),
        };
        let mut class = Self::explicit(n, masks)?;
        class.family = family;
        Ok(class)
    }

    /// Sub-class keeping the original ids of `members`.
    pub fn subclass(&self, members: Vec<Hypothesis>) -> Result<Self> {
        Self::build(ClassFamily::Explicit, self.domain_size, members)
    }

    fn build(family: ClassFamily, domain_size: usize, hypotheses: Vec<Hypothesis>) -> Result<Self> {
        if hypotheses.is_empty() {
            return Err(MdlError::InvalidClass("class is empty".into()));
        }
        let mut ids = HashSet::new();
        for h in &hypotheses {
            if h.domain_size != domain_size {
                return Err(MdlError::InvalidClass(format!(
                    "hypothesis {} has domain size {}, class has {domain_size}",
                    h.id, h.domain_size
                )));
            }
            if !ids.insert(h.id) {
                return Err(MdlError::InvalidClass(format!("duplicate id {}", h.id)));
            }
        }
        Ok(Self {
            family,
            domain_size,
            hypotheses,
        })
    }

    pub fn family(&self) -> ClassFamily {
        self.family
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    pub fn hypotheses(&self) -> &[Hypothesis] {
        &self.hypotheses
    }

    pub fn len(&self) -> usize {
        self.hypotheses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hypotheses.is_empty()
    }

    pub fn get(&self, position: usize) -> Option<&Hypothesis> {
        self.hypotheses.get(position)
    }
}

fn check_domain(n: usize) -> Result<()> {
    if n == 0 {
        return Err(MdlError::InvalidInstance("domain size must be >= 1".into()));
    }
    if n > MAX_DOMAIN_SIZE {
        return Err(MdlError::SizeLimit(format!(
            "domain size {n} exceeds {MAX_DOMAIN_SIZE}"
        )));
    }
    Ok(())
}

/// `k` finite distributions and a hypothesis class over a shared domain.
#[derive(Debug, Clone, PartialEq)]
pub struct MdlInstance {
    domain_size: usize,
    distributions: Vec<FiniteDistribution>,
    class: HypothesisClass,
}

impl MdlInstance {
    pub fn new(
        domain_size: usize,
        distributions: Vec<FiniteDistribution>,
        class: HypothesisClass,
    ) -> Result<Self> {
        check_domain(domain_size)?;
        if distributions.is_empty() {
            return Err(MdlError::InvalidInstance("k must be >= 1".into()));
        }
        for d in &distributions {
            if let Some(a) = d.atoms.iter().find(|a| a.example.point.0 >= domain_size) {
                return Err(MdlError::DomainMismatch {
                    point: a.example.point.0,
                    domain_size,
                });
            }
        }
        if class.domain_size != domain_size {
            return Err(MdlError::InvalidInstance(format!(
                "class domain size {} differs from instance domain size {domain_size}",
                class.domain_size
            )));
        }
        Ok(Self {
            domain_size,
            distributions,
            class,
        })
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    pub fn k(&self) -> usize {
        self.distributions.len()
    }

    pub fn distributions(&self) -> &[FiniteDistribution] {
        &self.distributions
    }

    pub fn class(&self) -> &HypothesisClass {
        &self.class
    }

    /// Same distributions, different class.
    pub fn with_class(&self, class: HypothesisClass) -> Result<Self> {
        Self::new(self.domain_size, self.distributions.clone(), class)
    }

    /// Same class, distributions reordered (or subset) by `order`.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        let distributions = order
            .iter()
            .map(|&i| {
                self.distributions
                    .get(i)
                    .cloned()
                    .ok_or(MdlError::OracleIndex {
                        index: i,
                        k: self.k(),
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.domain_size, distributions, self.class.clone())
    }

    /// Marginal of the uniform mixture of all distributions.
    pub fn uniform_marginal(&self) -> Vec<f64> {
        let k = self.k() as f64;
        let mut m = vec![0.0; self.domain_size];
        for d in &self.distributions {
            for (acc, p) in m.iter_mut().zip(d.marginal(self.domain_size)) {
                *acc += p / k;
            }
        }
        m
    }
}

/// A probability mixture over hypotheses.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "Vec<MixtureAtom>", try_from = "Vec<MixtureAtom>")]
pub struct RandomizedHypothesis {
    atoms: Vec<(Hypothesis, f64)>,
}

impl RandomizedHypothesis {
    /// Weights must be nonnegative and sum to 1 within [`RENORMALIZE_TOL`].
    pub fn new(atoms: Vec<(Hypothesis, f64)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(MdlError::Empty("randomized hypothesis"));
        }
        let n = atoms[0].0.domain_size;
        let mut total = 0.0;
        for (h, w) in &atoms {
            if !(*w >= 0.0 && w.is_finite()) {
                return Err(MdlError::InvalidClass(format!(
                    "mixture weight {w} is invalid"
                )));
            }
            if h.domain_size != n {
                return Err(MdlError::InvalidClass(
                    "mixed domain sizes in mixture".into(),
                ));
            }
            total += w;
        }
        if (total - 1.0).abs() > RENORMALIZE_TOL {
            return Err(MdlError::InvalidClass(format!(
                "mixture weights sum to {total}, not 1"
            )));
        }
        let scale = if (total - 1.0).abs() <= PROB_TOL {
            1.0
        } else {
            total
        };
        Ok(Self {
            atoms: atoms.into_iter().map(|(h, w)| (h, w / scale)).collect(),
        })
    }

    pub fn point(h: Hypothesis) -> Self {
        Self {
            atoms: vec![(h, 1.0)],
        }
    }

    /// Uniform mixture over `hypotheses` (repeats accumulate weight).
    pub fn uniform(hypotheses: &[Hypothesis]) -> Result<Self> {
        let w = 1.0 / hypotheses.len() as f64;
        Self::new(hypotheses.iter().map(|&h| (h, w)).collect())
    }

    pub fn atoms(&self) -> &[(Hypothesis, f64)] {
        &self.atoms
    }

    pub fn domain_size(&self) -> usize {
        self.atoms[0].0.domain_size
    }

    pub fn total_weight(&self) -> f64 {
        self.atoms.iter().map(|(_, w)| w).sum()
    }
}

#[derive(Serialize, Deserialize)]
struct MixtureAtom {
    hypothesis: Hypothesis,
    weight: f64,
}

impl From<RandomizedHypothesis> for Vec<MixtureAtom> {
    fn from(m: RandomizedHypothesis) -> Self {
        m.atoms
            .into_iter()
            .map(|(hypothesis, weight)| MixtureAtom { hypothesis, weight })
            .collect()
    }
}

impl TryFrom<Vec<MixtureAtom>> for RandomizedHypothesis {
    type Error = MdlError;

    fn try_from(v: Vec<MixtureAtom>) -> Result<Self> {
        Self::new(v.into_iter().map(|a| (a.hypothesis, a.weight)).collect())
    }
}

/// Anything with a (possibly randomized) prediction at every domain point.
pub trait Predictor {
    fn domain_size(&self) -> usize;

    /// Probability of mislabeling `z`.
    fn error_prob(&self, z: &LabeledExample) -> f64;
}

impl Predictor for Hypothesis {
    fn domain_size(&self) -> usize {
        self.domain_size
    }

    fn error_prob(&self, z: &LabeledExample) -> f64 {
        self.loss(z)
    }
}

impl Predictor for RandomizedHypothesis {
    fn domain_size(&self) -> usize {
        RandomizedHypothesis::domain_size(self)
    }

    fn error_prob(&self, z: &LabeledExample) -> f64 {
        self.atoms.iter().map(|(h, w)| w * h.loss(z)).sum()
    }
}

/// 0-1 loss of `h` on `z`.
pub fn zero_one_loss(h: &Hypothesis, z: &LabeledExample) -> Result<u8> {
    if z.point.0 >= h.domain_size {
        return Err(MdlError::DomainMismatch {
            point: z.point.0,
            domain_size: h.domain_size,
        });
    }
    Ok(h.loss(z) as u8)
}

/// Expected 0-1 loss of `h` under `d`, computed exactly over the support.
pub fn exact_loss<P: Predictor + ?Sized>(d: &FiniteDistribution, h: &P) -> Result<f64> {
    let n = h.domain_size();
    let mut loss = 0.0;
    for a in &d.atoms {
        if a.example.point.0 >= n {
            return Err(MdlError::DomainMismatch {
                point: a.example.point.0,
                domain_size: n,
            });
        }
        loss += a.prob * h.error_prob(&a.example);
    }
    Ok(loss.clamp(0.0, 1.0))
}

/// Per-oracle query counters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleLedger {
    per_oracle: Vec<u64>,
    total: u64,
}

impl SampleLedger {
    pub fn new(k: usize) -> Self {
        Self {
            per_oracle: vec![0; k],
            total: 0,
        }
    }

    fn record(&mut self, i: usize) {
        self.add(i, 1);
    }

    pub(crate) fn add(&mut self, i: usize, n: u64) {
        self.per_oracle[i] += n;
        self.total += n;
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn per_oracle(&self) -> &[u64] {
        &self.per_oracle
    }

    pub fn max_per_oracle(&self) -> u64 {
        self.per_oracle.iter().copied().max().unwrap_or(0)
    }
}

/// One draw from `EX_i`, charged to `ledger`.
pub fn oracle_sample(
    instance: &MdlInstance,
    i: usize,
    rng: &mut SeededRng,
    ledger: &mut SampleLedger,
) -> Result<LabeledExample> {
    let k = instance.k();
    if i >= k {
        return Err(MdlError::OracleIndex { index: i, k });
    }
    if ledger.per_oracle.len() != k {
        return Err(MdlError::DimensionMismatch {
            expected: k,
            got: ledger.per_oracle.len(),
        });
    }
    let z = instance.distributions[i].draw(rng);
    ledger.record(i);
    Ok(z)
}

/// Picks an oracle from `weights`, then draws once from it.
pub fn mixture_sample(
    instance: &MdlInstance,
    weights: &SimplexWeights,
    rng: &mut SeededRng,
    ledger: &mut SampleLedger,
) -> Result<LabeledExample> {
    if weights.dim() != instance.k() {
        return Err(MdlError::DimensionMismatch {
            expected: instance.k(),
            got: weights.dim(),
        });
    }
    let i = sample_index(weights.as_slice(), rng);
    oracle_sample(instance, i, rng, ledger)
}

/// Inverse-CDF draw of an index from a probability vector.
pub(crate) fn sample_index(probs: &[f64], rng: &mut SeededRng) -> usize {
    let u: f64 = rng.gen();
    let mut acc = 0.0;
    let mut last_positive = 0;
    for (i, &p) in probs.iter().enumerate() {
        if p > 0.0 {
            acc += p;
            last_positive = i;
            if u < acc {
                return i;
            }
        }
    }
    last_positive
}

/// VC dimension by exhaustive shattering search.
///
/// Shattered sets are closed under taking subsets, so level `m + 1` is built
/// only from shattered sets of size `m` extended by a larger index.
pub fn brute_force_vc(class: &HypothesisClass) -> Result<usize> {
    let n = class.domain_size();
    if n > VC_MAX_DOMAIN || class.len() > VC_MAX_CLASS {
        return Err(MdlError::SizeLimit(format!(
            "brute-force VC needs n <= {VC_MAX_DOMAIN} and |H| <= {VC_MAX_CLASS} (got n = {n}, |H| = {})",
            class.len()
        )));
    }
    let masks: Vec<u64> = class.hypotheses().iter().map(|h| h.mask()).collect();
    let shatters = |set: u64| {
        let need = 1usize << set.count_ones();
        if need > masks.len() {
            return false;
        }
        let mut seen = HashSet::with_capacity(need);
        for m in &masks {
            seen.insert(m & set);
            if seen.len() == need {
                return true;
            }
        }
        false
    };
    let mut level: Vec<u64> = vec![0];
    let mut dim = 0;
    loop {
        let mut next = Vec::new();
        for &set in &level {
            let start = if set == 0 {
                0
            } else {
                64 - set.leading_zeros() as usize
            };
            for x in start..n {
                let candidate = set | (1u64 << x);
                if shatters(candidate) {
                    next.push(candidate);
                }
            }
        }
        if next.is_empty() {
            return Ok(dim);
        }
        dim += 1;
        level = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn point_dist(n: usize, x: usize, y: bool) -> FiniteDistribution {
        FiniteDistribution::new(n, &[(x, y, 1.0)]).unwrap()
    }

    #[test]
    fn zero_one_loss_agreement_and_disagreement() {
        let h = Hypothesis::from_bits(0, &[false, true, false]).unwrap();
        assert_eq!(zero_one_loss(&h, &LabeledExample::new(1, true)).unwrap(), 0);
        assert_eq!(
            zero_one_loss(&h, &LabeledExample::new(1, false)).unwrap(),
            1
        );
        assert!(matches!(
            zero_one_loss(&h, &LabeledExample::new(3, false)),
            Err(MdlError::DomainMismatch { .. })
        ));
    }

    #[test]
    fn exact_loss_of_mixture_is_linear() {
        let wrong = Hypothesis::from_bits(0, &[false, false]).unwrap();
        let right = Hypothesis::from_bits(1, &[false, true]).unwrap();
        let d = point_dist(2, 1, true);
        let mix = RandomizedHypothesis::new(vec![(wrong, 0.25), (right, 0.75)]).unwrap();
        assert_eq!(exact_loss(&d, &mix).unwrap(), 0.25);
    }

    #[test]
    fn exact_loss_symmetric_labels_and_degenerate() {
        let d = FiniteDistribution::new(3, &[(2, false, 0.5), (2, true, 0.5)]).unwrap();
        for mask in 0..8 {
            let h = Hypothesis::from_mask(0, 3, mask);
            assert_eq!(exact_loss(&d, &h).unwrap(), 0.5);
        }
        let h = Hypothesis::from_mask(0, 3, 0b100);
        assert_eq!(exact_loss(&point_dist(3, 2, true), &h).unwrap(), 0.0);
    }

    #[test]
    fn distribution_validation() {
        assert!(FiniteDistribution::new(2, &[]).is_err());
        assert!(FiniteDistribution::new(2, &[(2, true, 1.0)]).is_err());
        assert!(FiniteDistribution::new(2, &[(0, true, 0.5), (0, true, 0.5)]).is_err());
        assert!(FiniteDistribution::new(2, &[(0, true, 0.6), (1, true, 0.5)]).is_err());
        assert!(FiniteDistribution::new(2, &[(0, true, -0.1), (1, true, 1.1)]).is_err());
        let d = FiniteDistribution::new(2, &[(0, true, 0.5 + 5e-10), (1, true, 0.5)]).unwrap();
        let sum: f64 = d.atoms().iter().map(|a| a.prob).sum();
        assert!((sum - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn ledger_counts_oracle_calls() {
        let inst = MdlInstance::new(
            2,
            vec![
                point_dist(2, 0, true),
                point_dist(2, 1, false),
                point_dist(2, 1, true),
            ],
            HypothesisClass::structured(ClassFamily::Thresholds, 2).unwrap(),
        )
        .unwrap();
        let mut rng = SeededRng::new(3);
        let mut ledger = SampleLedger::new(3);
        for _ in 0..7 {
            let z = oracle_sample(&inst, 2, &mut rng, &mut ledger).unwrap();
            assert_eq!(z, LabeledExample::new(1, true));
        }
        assert_eq!(ledger.per_oracle(), &[0, 0, 7]);
        assert_eq!(ledger.total(), 7);
        assert!(matches!(
            oracle_sample(&inst, 3, &mut rng, &mut ledger),
            Err(MdlError::OracleIndex { .. })
        ));
        assert_eq!(ledger.total(), 7);
    }

    #[test]
    fn point_mass_mixture_matches_oracle() {
        let d0 =
            FiniteDistribution::new(4, &[(0, true, 0.3), (1, false, 0.3), (3, true, 0.4)]).unwrap();
        let d1 = point_dist(4, 2, false);
        let inst = MdlInstance::new(
            4,
            vec![d0, d1],
            HypothesisClass::structured(ClassFamily::Singletons, 4).unwrap(),
        )
        .unwrap();
        let w = SimplexWeights::new(vec![1.0, 0.0], None).unwrap();
        let (mut a, mut b) = (SeededRng::new(5), SeededRng::new(5));
        let (mut la, mut lb) = (SampleLedger::new(2), SampleLedger::new(2));
        for _ in 0..50 {
            let x = mixture_sample(&inst, &w, &mut a, &mut la).unwrap();
            // The mixture consumes one uniform for the index before the draw.
            let _: f64 = b.gen();
            let y = oracle_sample(&inst, 0, &mut b, &mut lb).unwrap();
            assert_eq!(x, y);
        }
        assert_eq!(la, lb);
        let bad = SimplexWeights::uniform(3);
        assert!(mixture_sample(&inst, &bad, &mut a, &mut la).is_err());
    }

    #[test]
    fn structured_families_expand() {
        let t = HypothesisClass::structured(ClassFamily::Thresholds, 4).unwrap();
        assert_eq!(t.len(), 5);
        assert_eq!(t.hypotheses()[0].bits(), vec![true; 4]);
        assert_eq!(t.hypotheses()[4].bits(), vec![false; 4]);
        let i = HypothesisClass::structured(ClassFamily::Intervals, 3).unwrap();
        assert_eq!(i.len(), 1 + 3 * 4 / 2);
        let s = HypothesisClass::structured(ClassFamily::Singletons, 3).unwrap();
        assert_eq!(s.len(), 3);
        let e = HypothesisClass::explicit(2, [0b01, 0b01, 0b10]).unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(e.hypotheses()[1].id(), 1);
        assert!(HypothesisClass::explicit(2, []).is_err());
        assert!(HypothesisClass::structured(ClassFamily::Thresholds, 65).is_err());
    }

    #[test]
    fn vc_of_simple_classes() {
        let single = HypothesisClass::structured(ClassFamily::Singletons, 5).unwrap();
        assert_eq!(brute_force_vc(&single).unwrap(), 1);
        let cube = HypothesisClass::explicit(4, 0..16).unwrap();
        assert_eq!(brute_force_vc(&cube).unwrap(), 4);
        let intervals = HypothesisClass::structured(ClassFamily::Intervals, 6).unwrap();
        assert_eq!(brute_force_vc(&intervals).unwrap(), 2);
        let one = HypothesisClass::explicit(3, [0b101]).unwrap();
        assert_eq!(brute_force_vc(&one).unwrap(), 0);
        let big = HypothesisClass::structured(ClassFamily::Thresholds, 21).unwrap();
        assert!(matches!(brute_force_vc(&big), Err(MdlError::SizeLimit(_))));
    }

    #[test]
    fn instance_rejects_bad_shapes() {
        let class = HypothesisClass::structured(ClassFamily::Thresholds, 3).unwrap();
        assert!(MdlInstance::new(3, vec![], class.clone()).is_err());
        let d = point_dist(4, 3, true);
        assert!(MdlInstance::new(3, vec![d], class).is_err());
    }
}
