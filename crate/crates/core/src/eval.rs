//! Exact ground truth: brute-force OPT, worst-case and 2-smooth worst-case
//! losses, epsilon-optimality checks, and seeded instance generators.
//!
//! Everything here reads distribution masses directly. Algorithms must not.

use rand::seq::index::sample as sample_indices;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{MdlError, Result};
use crate::model::{
    exact_loss, ClassFamily, FiniteDistribution, Hypothesis, HypothesisClass, MdlInstance,
    Predictor, SeededRng, MAX_DOMAIN_SIZE,
};
use crate::online::two_smooth_cap;

/// Largest loss matrix `brute_force_opt` will fill, in (hypothesis, atom) cells.
pub const OPT_CELL_GUARD: usize = 10_000_000;

const MINORITY_MAX_K: usize = 12;
const GENERATOR_ATTEMPTS: usize = 100;
const TIE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptResult {
    pub opt_value: f64,
    /// Id of the minimizing hypothesis (lowest id on ties).
    pub argmin_id: usize,
    /// Position of the minimizer in the class.
    pub argmin_position: usize,
    /// `loss_matrix[i][j]` is the loss of class member `j` on distribution `i`.
    pub loss_matrix: Vec<Vec<f64>>,
}

/// Per-distribution exact losses of `h`.
pub fn per_distribution_losses<P: Predictor + ?Sized>(
    instance: &MdlInstance,
    h: &P,
) -> Result<Vec<f64>> {
    instance
        .distributions()
        .iter()
        .map(|d| exact_loss(d, h))
        .collect()
}

/// `OPT = min_h max_i L_{D_i}(h)` over deterministic class members.
pub fn brute_force_opt(instance: &MdlInstance) -> Result<OptResult> {
    let atoms: usize = instance
        .distributions()
        .iter()
        .map(|d| d.support_size())
        .sum();
    let cells = atoms.saturating_mul(instance.class().len());
    if cells > OPT_CELL_GUARD {
        return Err(MdlError::SizeLimit(format!(
            "brute-force OPT needs {cells} cell evaluations (limit {OPT_CELL_GUARD})"
        )));
    }
    let hyps = instance.class().hypotheses();
    let loss_matrix = instance
        .distributions()
        .iter()
        .map(|d| {
            hyps.iter()
                .map(|h| exact_loss(d, h))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut best: Option<(f64, usize)> = None;
    for (j, h) in hyps.iter().enumerate() {
        let worst = loss_matrix.iter().map(|row| row[j]).fold(0.0, f64::max);
        let better = match best {
            None => true,
            Some((v, pos)) => worst < v || (worst == v && h.id() < hyps[pos].id()),
        };
        if better {
            best = Some((worst, j));
        }
    }
    let (opt_value, argmin_position) = best.expect("class is nonempty");
    Ok(OptResult {
        opt_value,
        argmin_id: hyps[argmin_position].id(),
        argmin_position,
        loss_matrix,
    })
}

/// Exact worst-case loss over the `k` distributions and the worst index
/// (lowest on ties).
pub fn max_loss<P: Predictor + ?Sized>(instance: &MdlInstance, h: &P) -> Result<(f64, usize)> {
    let losses = per_distribution_losses(instance, h)?;
    let mut worst = 0;
    for (i, &l) in losses.iter().enumerate() {
        if l > losses[worst] {
            worst = i;
        }
    }
    Ok((losses[worst], worst))
}

/// Outcome of an epsilon-optimality check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EpsCheck {
    pub ok: bool,
    /// `epsilon + (1 + alpha) OPT - max_loss`; negative means violated.
    pub slack: f64,
    pub max_loss: f64,
    pub opt: f64,
}

impl EpsCheck {
    pub fn evaluate(max_loss: f64, opt: f64, epsilon: f64, alpha: f64) -> Self {
        let slack = epsilon + (1.0 + alpha) * opt - max_loss;
        Self {
            ok: slack >= -TIE_TOL,
            slack,
            max_loss,
            opt,
        }
    }
}

/// Whether `max_loss(h) <= epsilon + (1 + alpha) OPT`.
pub fn check_eps_optimal<P: Predictor + ?Sized>(
    instance: &MdlInstance,
    h: &P,
    epsilon: f64,
    alpha: f64,
) -> Result<EpsCheck> {
    if !(0.0..1.0).contains(&epsilon) {
        return Err(MdlError::ParameterRange {
            name: "epsilon",
            value: epsilon,
            range: "[0, 1)",
        });
    }
    if !(alpha >= 0.0 && alpha.is_finite()) {
        return Err(MdlError::ParameterRange {
            name: "alpha",
            value: alpha,
            range: "[0, inf)",
        });
    }
    let opt = brute_force_opt(instance)?.opt_value;
    let (worst, _) = max_loss(instance, h)?;
    Ok(EpsCheck::evaluate(worst, opt, epsilon, alpha))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmoothMax {
    pub value: f64,
    pub weights: Vec<f64>,
}

/// Maximum of `<w, losses>` over `{w in simplex : w_i <= cap}`.
///
/// Greedy is exact for a linear objective: fill the largest losses up to the
/// cap until the remaining mass fits in one coordinate.
pub fn smooth_argmax(losses: &[f64], cap: f64) -> Result<SmoothMax> {
    let k = losses.len();
    if k == 0 {
        return Err(MdlError::Empty("loss vector"));
    }
    if !(cap > 0.0 && cap <= 1.0) || cap * (k as f64) < 1.0 - TIE_TOL {
        return Err(MdlError::InfeasibleCap { cap, dim: k });
    }
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| losses[b].total_cmp(&losses[a]).then(a.cmp(&b)));
    let mut weights = vec![0.0; k];
    let mut residual = 1.0;
    for &i in &order {
        if residual <= cap + TIE_TOL {
            weights[i] = residual;
            break;
        }
        weights[i] = cap;
        residual -= cap;
    }
    let value = weights.iter().zip(losses).map(|(w, l)| w * l).sum();
    Ok(SmoothMax { value, weights })
}

/// Worst loss of `h` over 2-smooth mixtures of the instance's distributions.
pub fn smooth_max_loss<P: Predictor + ?Sized>(instance: &MdlInstance, h: &P) -> Result<f64> {
    let losses = per_distribution_losses(instance, h)?;
    Ok(smooth_argmax(&losses, two_smooth_cap(instance.k()))?.value)
}

/// `min_h max_{2-smooth P} L_P(h)` over deterministic class members.
pub fn smooth_opt(instance: &MdlInstance) -> Result<f64> {
    let opt = brute_force_opt(instance)?;
    let cap = two_smooth_cap(instance.k());
    let mut best = f64::INFINITY;
    for j in 0..instance.class().len() {
        let column: Vec<f64> = opt.loss_matrix.iter().map(|row| row[j]).collect();
        best = best.min(smooth_argmax(&column, cap)?.value);
    }
    Ok(best)
}

/// Checks that some `D' ⊆ D` with `|D'| >= k/2` has every loss at most the
/// 2-smooth worst-case loss, by exhaustive subset search.
pub fn minority_bound_check<P: Predictor + ?Sized>(instance: &MdlInstance, h: &P) -> Result<bool> {
    let k = instance.k();
    if k > MINORITY_MAX_K {
        return Err(MdlError::SizeLimit(format!(
            "minority check enumerates subsets for k <= {MINORITY_MAX_K} (got {k})"
        )));
    }
    let losses = per_distribution_losses(instance, h)?;
    let smooth = smooth_argmax(&losses, two_smooth_cap(k))?.value;
    let found = (1u32..1 << k).any(|set| {
        2 * set.count_ones() as usize >= k
            && (0..k)
                .filter(|i| set >> i & 1 == 1)
                .all(|i| losses[i] <= smooth + TIE_TOL)
    });
    Ok(found)
}

/// Mass of `{x : a(x) != b(x)}` under `marginal`.
pub fn disagreement_mass(a: &Hypothesis, b: &Hypothesis, marginal: &[f64]) -> f64 {
    let mut diff = a.mask() ^ b.mask();
    let mut mass = 0.0;
    while diff != 0 {
        let x = diff.trailing_zeros() as usize;
        mass += marginal[x];
        diff &= diff - 1;
    }
    mass
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorTag {
    /// Independent random masses, labels and class.
    Random,
    /// Every distribution is labeled by a planted class member (OPT = 0).
    Realizable,
    /// Pairs of distributions share a marginal with opposite labels (OPT >= 1/2).
    OpposedLabels,
    /// One noisy labeling rule shared by all distributions, different marginals;
    /// a planted member is Bayes-optimal on each.
    SharedBayes,
}

impl GeneratorTag {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Random => "random",
            Self::Realizable => "realizable",
            Self::OpposedLabels => "opposed_labels",
            Self::SharedBayes => "shared_bayes",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub tag: GeneratorTag,
    pub n: usize,
    pub k: usize,
    /// Number of hypotheses for explicit classes; ignored by structured families.
    pub class_size: usize,
    /// Cells per distribution; defaults to `n`.
    #[serde(default)]
    pub support_size: Option<usize>,
    #[serde(default = "default_family")]
    pub class_family: ClassFamily,
    pub seed: u64,
}

fn default_family() -> ClassFamily {
    ClassFamily::Explicit
}

impl InstanceSpec {
    pub fn new(tag: GeneratorTag, n: usize, k: usize, class_size: usize, seed: u64) -> Self {
        Self {
            tag,
            n,
            k,
            class_size,
            support_size: None,
            class_family: ClassFamily::Explicit,
            seed,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(MdlError::InvalidInstance("k must be ≥ 1".into()));
        }
        if self.n == 0 {
            return Err(MdlError::InvalidInstance("n must be ≥ 1".into()));
        }
        if self.n > MAX_DOMAIN_SIZE {
            return Err(MdlError::SizeLimit(format!(
                "n = {} exceeds {MAX_DOMAIN_SIZE}",
                self.n
            )));
        }
        if self.class_family == ClassFamily::Explicit {
            if self.class_size == 0 {
                return Err(MdlError::InvalidInstance("class size must be ≥ 1".into()));
            }
            if self.n < 32 && self.class_size as u64 > 1u64 << self.n {
                return Err(MdlError::InvalidInstance(format!(
                    "class size {} exceeds 2^{} distinct labelings",
                    self.class_size, self.n
                )));
            }
        }
        if self.support_size == Some(0) {
            return Err(MdlError::InvalidInstance("support size must be ≥ 1".into()));
        }
        Ok(())
    }
}

/// Sizes of the standard random suite: `4 <= n <= 10`, `2 <= k <= 6`,
/// `4 <= |H| <= min(40, 2^n)`, all drawn from `seed`.
pub fn standard_suite_spec(seed: u64) -> InstanceSpec {
    let mut rng = SeededRng::with_stream(seed, 0x5u64);
    let n = rng.gen_range(4..=10);
    let k = rng.gen_range(2..=6);
    let class_size = rng.gen_range(4..=40usize).min(1 << n);
    InstanceSpec::new(GeneratorTag::Random, n, k, class_size, seed)
}

/// Builds an instance from `spec`, regenerating until the tag's defining
/// property holds (at most 100 attempts).
pub fn generate(spec: &InstanceSpec) -> Result<MdlInstance> {
    spec.validate()?;
    let mut rng = SeededRng::new(spec.seed);
    for _ in 0..GENERATOR_ATTEMPTS {
        let candidate = match spec.tag {
            GeneratorTag::Random => gen_random(spec, &mut rng)?,
            GeneratorTag::Realizable => gen_realizable(spec, &mut rng)?.0,
            GeneratorTag::OpposedLabels => gen_opposed(spec, &mut rng)?,
            GeneratorTag::SharedBayes => {
                let (inst, planted) = gen_shared_bayes(spec, &mut rng)?;
                if shared_bayes_holds(&inst, &planted)? {
                    return Ok(inst);
                }
                continue;
            }
        };
        if post_check(spec, &candidate)? {
            return Ok(candidate);
        }
    }
    Err(MdlError::GenerationFailed {
        tag: spec.tag.as_str().into(),
        attempts: GENERATOR_ATTEMPTS,
    })
}

fn post_check(spec: &InstanceSpec, inst: &MdlInstance) -> Result<bool> {
    Ok(match spec.tag {
        GeneratorTag::Random => true,
        GeneratorTag::Realizable => brute_force_opt(inst)?.opt_value == 0.0,
        GeneratorTag::OpposedLabels => {
            inst.k() < 2 || brute_force_opt(inst)?.opt_value >= 0.5 - TIE_TOL
        }
        GeneratorTag::SharedBayes => unreachable!("checked against the planted hypothesis"),
    })
}

fn shared_bayes_holds(inst: &MdlInstance, planted: &Hypothesis) -> Result<bool> {
    for d in inst.distributions() {
        let own = exact_loss(d, planted)?;
        for h in inst.class().hypotheses() {
            if exact_loss(d, h)? < own - TIE_TOL {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn random_class(spec: &InstanceSpec, rng: &mut SeededRng) -> Result<HypothesisClass> {
    if spec.class_family != ClassFamily::Explicit {
        return HypothesisClass::structured(spec.class_family, spec.n);
    }
    let mut masks = Vec::with_capacity(spec.class_size);
    let mut seen = std::collections::HashSet::new();
    let full = crate::model::domain_mask(spec.n);
    while masks.len() < spec.class_size {
        let m = rng.gen::<u64>() & full;
        if seen.insert(m) {
            masks.push(m);
        }
    }
    HypothesisClass::explicit(spec.n, masks)
}

/// Normalized exponential draws, so every mass is strictly positive.
fn random_masses(s: usize, rng: &mut SeededRng) -> Vec<f64> {
    let raw: Vec<f64> = (0..s)
        .map(|_| -(1.0 - rng.gen::<f64>()).ln() + 1e-3)
        .collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|x| x / total).collect()
}

fn support_points(spec: &InstanceSpec, rng: &mut SeededRng) -> Vec<usize> {
    let s = spec.support_size.unwrap_or(spec.n).min(spec.n);
    let mut pts = sample_indices(rng, spec.n, s).into_vec();
    pts.sort_unstable();
    pts
}

fn labeled_by(mask: u64, pts: &[usize], masses: &[f64]) -> Vec<(usize, bool, f64)> {
    pts.iter()
        .zip(masses)
        .map(|(&x, &p)| (x, mask >> x & 1 == 1, p))
        .collect()
}

fn gen_random(spec: &InstanceSpec, rng: &mut SeededRng) -> Result<MdlInstance> {
    let class = random_class(spec, rng)?;
    let cells_total = 2 * spec.n;
    let s = spec.support_size.unwrap_or(spec.n).min(cells_total);
    let distributions = (0..spec.k)
        .map(|_| {
            let mut cells = sample_indices(rng, cells_total, s).into_vec();
            cells.sort_unstable();
            let masses = random_masses(s, rng);
            let cells: Vec<_> = cells
                .iter()
                .zip(&masses)
                .map(|(&c, &p)| (c / 2, c % 2 == 1, p))
                .collect();
            FiniteDistribution::new(spec.n, &cells)
        })
        .collect::<Result<Vec<_>>>()?;
    MdlInstance::new(spec.n, distributions, class)
}

fn gen_realizable(spec: &InstanceSpec, rng: &mut SeededRng) -> Result<(MdlInstance, Hypothesis)> {
    let class = random_class(spec, rng)?;
    let planted = class.hypotheses()[rng.gen_range(0..class.len())];
    let distributions = (0..spec.k)
        .map(|_| {
            let pts = support_points(spec, rng);
            let masses = random_masses(pts.len(), rng);
            FiniteDistribution::new(spec.n, &labeled_by(planted.mask(), &pts, &masses))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((MdlInstance::new(spec.n, distributions, class)?, planted))
}

fn gen_opposed(spec: &InstanceSpec, rng: &mut SeededRng) -> Result<MdlInstance> {
    let class = random_class(spec, rng)?;
    let rule = rng.gen::<u64>();
    let mut distributions = Vec::with_capacity(spec.k);
    while distributions.len() < spec.k {
        let pts = support_points(spec, rng);
        let masses = random_masses(pts.len(), rng);
        distributions.push(FiniteDistribution::new(
            spec.n,
            &labeled_by(rule, &pts, &masses),
        )?);
        if distributions.len() < spec.k {
            distributions.push(FiniteDistribution::new(
                spec.n,
                &labeled_by(!rule, &pts, &masses),
            )?);
        }
    }
    MdlInstance::new(spec.n, distributions, class)
}

fn gen_shared_bayes(spec: &InstanceSpec, rng: &mut SeededRng) -> Result<(MdlInstance, Hypothesis)> {
    let class = random_class(spec, rng)?;
    let planted = class.hypotheses()[rng.gen_range(0..class.len())];
    // Label noise per point, shared by every distribution and below 1/2.
    let noise: Vec<f64> = (0..spec.n).map(|_| rng.gen_range(0.0..0.4)).collect();
    let distributions = (0..spec.k)
        .map(|_| {
            let pts = support_points(spec, rng);
            let masses = random_masses(pts.len(), rng);
            let mut cells = Vec::with_capacity(2 * pts.len());
            for (&x, &m) in pts.iter().zip(&masses) {
                let y = planted.mask() >> x & 1 == 1;
                cells.push((x, y, m * (1.0 - noise[x])));
                if noise[x] > 0.0 {
                    cells.push((x, !y, m * noise[x]));
                }
            }
            FiniteDistribution::new(spec.n, &cells)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((MdlInstance::new(spec.n, distributions, class)?, planted))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::RandomizedHypothesis;

    fn opposed_one_point() -> MdlInstance {
        let d1 = FiniteDistribution::new(1, &[(0, false, 1.0)]).unwrap();
        let d2 = FiniteDistribution::new(1, &[(0, true, 1.0)]).unwrap();
        MdlInstance::new(
            1,
            vec![d1, d2],
            HypothesisClass::explicit(1, [0, 1]).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn opposed_labels_opt_is_one() {
        let inst = opposed_one_point();
        let opt = brute_force_opt(&inst).unwrap();
        assert_eq!(opt.opt_value, 1.0);
        assert_eq!(opt.argmin_id, 0);
        assert_eq!(opt.loss_matrix, vec![vec![0.0, 1.0], vec![1.0, 0.0]]);
        // The uniform mixture of both constants loses 1/2 on each distribution.
        let mix = RandomizedHypothesis::uniform(inst.class().hypotheses()).unwrap();
        assert_eq!(max_loss(&inst, &mix).unwrap(), (0.5, 0));
        let check = check_eps_optimal(&inst, &mix, 0.0, 0.0).unwrap();
        assert!(check.ok);
        assert_eq!(check.slack, 0.5);
    }

    #[test]
    fn argmin_is_eps_optimal_at_zero() {
        let inst = generate(&InstanceSpec::new(GeneratorTag::Random, 6, 3, 10, 1)).unwrap();
        let opt = brute_force_opt(&inst).unwrap();
        let h = inst.class().hypotheses()[opt.argmin_position];
        assert_eq!(max_loss(&inst, &h).unwrap().0, opt.opt_value);
        assert!(check_eps_optimal(&inst, &h, 0.0, 0.0).unwrap().ok);
    }

    #[test]
    fn eps_check_arithmetic() {
        let c = EpsCheck::evaluate(0.6, 0.3, 0.2, 0.0);
        assert!(!c.ok);
        assert!((c.slack + 0.1).abs() < 1e-12);
        let c = EpsCheck::evaluate(0.55, 0.4, 0.1, 0.25);
        assert!(c.ok);
        assert!((c.slack - 0.05).abs() < 1e-12);
    }

    #[test]
    fn opt_is_permutation_invariant() {
        let inst = generate(&InstanceSpec::new(GeneratorTag::Random, 5, 4, 12, 8)).unwrap();
        let perm = inst.permuted(&[2, 0, 3, 1]).unwrap();
        assert_eq!(
            brute_force_opt(&inst).unwrap().opt_value,
            brute_force_opt(&perm).unwrap().opt_value
        );
        let h = inst.class().hypotheses()[3];
        assert_eq!(
            max_loss(&inst, &h).unwrap().0,
            max_loss(&perm, &h).unwrap().0
        );
    }

    #[test]
    fn smooth_argmax_examples() {
        let s = smooth_argmax(&[0.9, 0.5, 0.1, 0.3], 0.5).unwrap();
        assert!((s.value - 0.7).abs() < 1e-15);
        assert_eq!(s.weights, vec![0.5, 0.5, 0.0, 0.0]);
        let s = smooth_argmax(&[0.2, 0.8, 0.4], 1.0).unwrap();
        assert_eq!(s.value, 0.8);
        let s = smooth_argmax(&[0.3; 5], 0.4).unwrap();
        assert!((s.value - 0.3).abs() < 1e-15);
        assert!(smooth_argmax(&[0.1, 0.2], 0.4).is_err());
    }

    #[test]
    fn minority_check_holds_for_k1_and_guard() {
        let inst = generate(&InstanceSpec::new(GeneratorTag::Random, 4, 1, 5, 2)).unwrap();
        let h = inst.class().hypotheses()[0];
        assert!(minority_bound_check(&inst, &h).unwrap());
        let big = generate(&InstanceSpec::new(GeneratorTag::Random, 3, 13, 4, 2)).unwrap();
        assert!(matches!(
            minority_bound_check(&big, &h),
            Err(MdlError::SizeLimit(_))
        ));
    }

    #[test]
    fn generators_satisfy_their_tags() {
        for seed in 0..10 {
            let r = generate(&InstanceSpec::new(GeneratorTag::Realizable, 8, 4, 12, seed)).unwrap();
            assert_eq!(brute_force_opt(&r).unwrap().opt_value, 0.0);
            let o = generate(&InstanceSpec::new(
                GeneratorTag::OpposedLabels,
                6,
                3,
                10,
                seed,
            ))
            .unwrap();
            assert!(brute_force_opt(&o).unwrap().opt_value >= 0.5 - 1e-12);
            let s = generate(&InstanceSpec::new(GeneratorTag::SharedBayes, 7, 5, 9, seed)).unwrap();
            assert_eq!(s.k(), 5);
        }
    }

    #[test]
    fn shared_bayes_planted_member_is_simultaneously_optimal() {
        let spec = InstanceSpec::new(GeneratorTag::SharedBayes, 8, 4, 16, 11);
        let mut rng = SeededRng::new(spec.seed);
        let (inst, planted) = gen_shared_bayes(&spec, &mut rng).unwrap();
        for d in inst.distributions() {
            let own = exact_loss(d, &planted).unwrap();
            for h in inst.class().hypotheses() {
                assert!(own <= exact_loss(d, h).unwrap() + 1e-12);
            }
        }
    }

    #[test]
    fn generation_is_deterministic_and_validated() {
        let spec = InstanceSpec::new(GeneratorTag::Random, 9, 3, 20, 42);
        assert_eq!(generate(&spec).unwrap(), generate(&spec).unwrap());
        let mut bad = spec.clone();
        bad.k = 0;
        assert_eq!(
            generate(&bad).unwrap_err().to_string(),
            "invalid instance: k must be ≥ 1"
        );
        let mut bad = spec;
        bad.n = 3;
        bad.class_size = 9;
        assert!(generate(&bad).is_err());
    }

    #[test]
    fn opt_guard() {
        // 80 distributions x 40 atoms x 4000 hypotheses = 12.8M cells.
        let cells: Vec<(usize, bool, f64)> = (0..20)
            .flat_map(|x| [(x, false, 1.0 / 40.0), (x, true, 1.0 / 40.0)])
            .collect();
        let d = FiniteDistribution::new(20, &cells).unwrap();
        let class = HypothesisClass::explicit(20, 0..4000).unwrap();
        let inst = MdlInstance::new(20, vec![d; 80], class).unwrap();
        assert!(matches!(
            brute_force_opt(&inst),
            Err(MdlError::SizeLimit(_))
        ));
        let small = generate(&InstanceSpec::new(GeneratorTag::Random, 3, 1, 2, 0)).unwrap();
        assert!(brute_force_opt(&small).is_ok());
    }
}
