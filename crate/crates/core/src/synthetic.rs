//! Seeded synthetic learning sets shaped like small diagnostic tables, for
//! demos, benchmarks and tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dataset::{FeatureKind, FeatureSpec, LearningSet};
use crate::error::Result;

#[derive(Clone, Copy, Debug)]
pub struct DiagnosticShape {
    pub n: usize,
    pub quantitative: usize,
    pub boolean: usize,
    /// Boolean features whose rate depends on the class; the rest are noise.
    pub informative: usize,
    pub seed: u64,
}

impl Default for DiagnosticShape {
    /// 36 instances over 31 features, 7 of them quantitative.
    fn default() -> Self {
        DiagnosticShape { n: 36, quantitative: 7, boolean: 24, informative: 6, seed: 1 }
    }
}

/// Assigns a class to each instance, then draws features conditioned on it.
///
/// `q0` and `q1` run lower for class 1 (means 5.0 vs 7.5 and 110 vs 150,
/// overlapping); other quantitative features are class-independent.
/// Informative Boolean features fire with probability 0.7 in one class and
/// 0.2 in the other, alternating which; noise features fire with 0.3.
/// The first half of the instances (rounded up) is class 1, the rest class 0.
pub fn diagnostic(shape: DiagnosticShape) -> Result<LearningSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(shape.seed);
    let mut features = Vec::new();
    for i in 0..shape.quantitative {
        features.push(FeatureSpec::new(format!("q{i}"), FeatureKind::Quantitative));
    }
    for i in 0..shape.boolean {
        features.push(FeatureSpec::new(format!("b{i}"), FeatureKind::Boolean));
    }
    let positives = shape.n.div_ceil(2);
    let mut rows = Vec::with_capacity(shape.n);
    let mut labels = Vec::with_capacity(shape.n);
    for i in 0..shape.n {
        let y = i < positives;
        let mut row = Vec::with_capacity(features.len());
        for q in 0..shape.quantitative {
            let (lo, hi) = match (q, y) {
                (0, true) => (3.0, 7.0),
                (0, false) => (5.5, 9.5),
                (1, true) => (70.0, 150.0),
                (1, false) => (110.0, 190.0),
                _ => (0.0, 10.0),
            };
            let v: f64 = rng.gen_range(lo..hi);
            row.push((v * 10.0).round() / 10.0);
        }
        for b in 0..shape.boolean {
            let p = if b < shape.informative {
                if (b % 2 == 0) == y { 0.7 } else { 0.2 }
            } else {
                0.3
            };
            row.push(if rng.gen_bool(p) { 1.0 } else { 0.0 });
        }
        rows.push(row);
        labels.push(y);
    }
    LearningSet::new(features, rows, labels)
}
