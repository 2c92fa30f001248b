//! Fixed inputs shared by the benchmarks.

use mdl_core::cover::{BatchSource, SampleBatch};
use mdl_core::eval::{generate, GeneratorTag, InstanceSpec};
use mdl_core::model::{HypothesisClass, LabeledExample, MdlInstance};
use mdl_core::CostVector;

/// Deterministic costs in `[0, 1)` that vary with `salt`.
pub fn costs(d: usize, salt: usize) -> CostVector {
    CostVector::unit(
        (0..d)
            .map(|i| ((i * 7 + salt * 3) % 13) as f64 / 13.0)
            .collect(),
    )
    .expect("costs lie in [0, 1]")
}

/// Unnormalized weights with a few dominant coordinates, so capping bites.
pub fn skewed_weights(d: usize) -> Vec<f64> {
    (0..d).map(|i| 1.0 / (1 + i * i) as f64).collect()
}

pub fn instance(n: usize, k: usize, class_size: usize) -> MdlInstance {
    generate(&InstanceSpec::new(
        GeneratorTag::Random,
        n,
        k,
        class_size,
        17,
    ))
    .expect("bench instance")
}

/// A class of `size` distinct masks over `n` points and an `m`-example batch.
pub fn erm_input(n: usize, size: usize, m: usize) -> (HypothesisClass, SampleBatch) {
    let full = (1u64 << n) - 1;
    let masks = (0..size as u64).map(|j| j.wrapping_mul(0x9E37_79B9_7F4A_7C15) >> 7 & full);
    let class = HypothesisClass::explicit(n, masks).expect("bench class");
    let examples = (0..m)
        .map(|t| LabeledExample::new(t * 5 % n, t % 3 == 0))
        .collect();
    (class, SampleBatch::new(examples, BatchSource::Pooled))
}
