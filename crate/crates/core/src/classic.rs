//! Classic GMDH baseline: gates fitted separately on two halves A and B of
//! the learning set, scored on the whole set by a weighted sum of the unbias
//! and regularity criteria, with a fixed freedom of choice F per layer and
//! a delta stopping rule.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::dataset::{split_ab, BooleanLearningSet, SplitStrategy};
use crate::error::{Error, Result};
use crate::gates::GateId;
use crate::network::{apply_gate, loss_mu, Candidate, Expr};

/// Number of candidates carried from one layer to the next.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "value")]
pub enum Freedom {
    Count(usize),
    /// Fraction of L1 = C(m,2), rounded up.
    Fraction(f64),
}

impl Freedom {
    pub fn resolve(self, l1: usize) -> usize {
        match self {
            Freedom::Count(f) => f.max(1),
            Freedom::Fraction(x) => ((x * l1 as f64).ceil() as usize).max(1),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassicConfig {
    pub alpha: f64,
    pub beta: f64,
    pub delta: f64,
    pub freedom: Freedom,
    pub split: SplitStrategy,
    pub max_layers: usize,
}

impl Default for ClassicConfig {
    fn default() -> Self {
        ClassicConfig {
            alpha: 1.0,
            beta: 1.0,
            delta: 0.0,
            freedom: Freedom::Fraction(0.4),
            split: SplitStrategy::Interleave,
            max_layers: 32,
        }
    }
}

impl ClassicConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha >= 0.0 && self.beta >= 0.0 && self.alpha.is_finite() && self.beta.is_finite()) {
            return Err(Error::Config("alpha and beta must be finite and nonnegative".into()));
        }
        if self.alpha + self.beta <= 0.0 {
            return Err(Error::Config("alpha and beta cannot both be zero".into()));
        }
        if !(self.delta >= 0.0 && self.delta.is_finite()) {
            return Err(Error::Config("delta must be finite and nonnegative".into()));
        }
        if let Freedom::Fraction(x) = self.freedom {
            if !(x > 0.0 && x <= 1.0) {
                return Err(Error::Config(format!("freedom fraction {x} outside (0, 1]")));
            }
        }
        if self.max_layers == 0 {
            return Err(Error::Config("max_layers must be >= 1".into()));
        }
        Ok(())
    }
}

/// A structure fitted on A and on B, both evaluated on the whole set W.
#[derive(Clone, Debug)]
pub struct FittedCandidate {
    /// Gate-free structure text such as `(? (? x0 x1) x3)`.
    pub structure: String,
    /// Sensor sequence along the spine: the layer-1 pair, then one per layer.
    pub features: Vec<usize>,
    pub gate_on_a: GateId,
    pub gate_on_b: GateId,
    pub expr_a: Arc<Expr>,
    pub expr_b: Arc<Expr>,
    pub outputs_a: Bits,
    pub outputs_b: Bits,
    pub bu: usize,
    pub reg: usize,
    pub cr: f64,
}

/// Gate with the fewest errors on the subset; ties go to the lowest id.
pub fn fit_gate(u1: &Bits, u2: &Bits, labels: &Bits, subset: &Bits) -> Result<GateId> {
    for other in [u2, labels, subset] {
        if other.len() != u1.len() {
            return Err(Error::LengthMismatch { left: u1.len(), right: other.len() });
        }
    }
    if subset.count_ones() == 0 {
        return Err(Error::Config("cannot fit a gate on an empty subset".into()));
    }
    let (a, b, y, s) = (u1.words(), u2.words(), labels.words(), subset.words());
    let best = GateId::all()
        .map(|g| {
            let errors: u32 = (0..a.len()).map(|w| ((g.eval_word(a[w], b[w]) ^ y[w]) & s[w]).count_ones()).sum();
            (errors, g)
        })
        .min()
        .expect("alphabet is nonempty");
    Ok(best.1)
}

/// Hamming distance between the A-fitted and B-fitted whole-set outputs.
pub fn unbias(out_a: &Bits, out_b: &Bits) -> Result<usize> {
    loss_mu(out_a, out_b)
}

pub fn regularity(out_a: &Bits, out_b: &Bits, labels: &Bits) -> Result<usize> {
    Ok(loss_mu(out_a, labels)? + loss_mu(out_b, labels)?)
}

pub fn convolution(bu: usize, reg: usize, alpha: f64, beta: f64) -> Result<f64> {
    if alpha < 0.0 || beta < 0.0 || alpha + beta <= 0.0 {
        return Err(Error::Config("weights must be nonnegative and not both zero".into()));
    }
    Ok(alpha * bu as f64 + beta * reg as f64)
}

#[derive(Clone, Debug)]
pub struct ClassicResult {
    /// The selected structure refit on the whole set.
    pub model: Candidate,
    pub structure: String,
    /// Layer of the selected structure.
    pub r_star: usize,
    /// Minimum criterion value of every generated layer.
    pub cr_trace: Vec<f64>,
    pub freedom: usize,
    pub subset_a: Vec<usize>,
    pub subset_b: Vec<usize>,
    /// Candidates kept at each layer, best first.
    pub kept: Vec<Vec<FittedCandidate>>,
}

struct Context<'a> {
    bset: &'a BooleanLearningSet,
    mask_a: Bits,
    mask_b: Bits,
    config: &'a ClassicConfig,
}

impl Context<'_> {
    fn fit(&self, parent: Option<&FittedCandidate>, j: usize, k: usize) -> FittedCandidate {
        let labels = self.bset.labels();
        let col_k = self.bset.column(k);
        let (u1_a, u1_b, structure, mut features, left_a, left_b) = match parent {
            None => (
                self.bset.column(j),
                self.bset.column(j),
                format!("(? x{j} x{k})"),
                vec![j],
                Expr::leaf(j),
                Expr::leaf(j),
            ),
            Some(p) => (
                &p.outputs_a,
                &p.outputs_b,
                format!("(? {} x{k})", p.structure),
                p.features.clone(),
                Arc::clone(&p.expr_a),
                Arc::clone(&p.expr_b),
            ),
        };
        features.push(k);
        let gate_on_a = fit_gate(u1_a, col_k, labels, &self.mask_a).expect("validated inputs");
        let gate_on_b = fit_gate(u1_b, col_k, labels, &self.mask_b).expect("validated inputs");
        let outputs_a = apply_gate(gate_on_a, u1_a, col_k);
        let outputs_b = apply_gate(gate_on_b, u1_b, col_k);
        let bu = outputs_a.hamming(&outputs_b);
        let reg = outputs_a.hamming(labels) + outputs_b.hamming(labels);
        let cr = self.config.alpha * bu as f64 + self.config.beta * reg as f64;
        FittedCandidate {
            structure,
            features,
            gate_on_a,
            gate_on_b,
            expr_a: Expr::extend(&left_a, gate_on_a, k),
            expr_b: Expr::extend(&left_b, gate_on_b, k),
            outputs_a,
            outputs_b,
            bu,
            reg,
            cr,
        }
    }
}

fn keep_best(mut cands: Vec<FittedCandidate>, f: usize) -> Vec<FittedCandidate> {
    cands.sort_by(|a, b| a.cr.total_cmp(&b.cr).then_with(|| a.structure.cmp(&b.structure)));
    cands.truncate(f);
    cands
}

/// Refits a structure's gates on the whole set, layer by layer.
pub fn refit_on_whole_set(features: &[usize], bset: &BooleanLearningSet) -> Result<Candidate> {
    if features.len() < 2 {
        return Err(Error::Config("structure needs at least two sensors".into()));
    }
    let all = Bits::from_word_fn(bset.n(), |_| u64::MAX);
    let mut expr = Expr::leaf(features[0]);
    let mut out = bset.column(features[0]).clone();
    for &k in &features[1..] {
        let g = fit_gate(&out, bset.column(k), bset.labels(), &all)?;
        out = apply_gate(g, &out, bset.column(k));
        expr = Expr::extend(&expr, g, k);
    }
    let mu = loss_mu(&out, bset.labels())?;
    Ok(Candidate { expr, outputs: out, mu })
}

pub fn synthesize_classic(bset: &BooleanLearningSet, config: &ClassicConfig) -> Result<ClassicResult> {
    config.validate()?;
    let m = bset.m();
    if m < 2 {
        return Err(Error::TooFewFeatures(m));
    }
    let n = bset.n();
    let (subset_a, subset_b) = split_ab(n, config.split)?;
    let mask = |idx: &[usize]| {
        let mut b = Bits::zeros(n);
        idx.iter().for_each(|&i| b.set(i, true));
        b
    };
    let ctx = Context { bset, mask_a: mask(&subset_a), mask_b: mask(&subset_b), config };

    let l1 = m * (m - 1) / 2;
    let freedom = config.freedom.resolve(l1);
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|j| (j + 1..m).map(move |k| (j, k))).collect();
    let layer1: Vec<FittedCandidate> = pairs.par_iter().map(|&(j, k)| ctx.fit(None, j, k)).collect();

    let mut kept = vec![keep_best(layer1, freedom)];
    let mut cr_trace = vec![kept[0][0].cr];
    let mut r_star = 1;

    while kept.len() < config.max_layers && cr_trace[r_star - 1] > config.delta {
        let prev = kept.last().unwrap();
        let next: Vec<FittedCandidate> = prev
            .par_iter()
            .flat_map_iter(|p| (0..m).map(move |k| (p, k)))
            .map(|(p, k)| ctx.fit(Some(p), 0, k))
            .collect();
        let next = keep_best(next, freedom);
        let cr_min = next[0].cr;
        cr_trace.push(cr_min);
        if cr_min + config.delta >= cr_trace[r_star - 1] {
            break;
        }
        kept.push(next);
        r_star += 1;
    }

    // Among the structures tied at the selected minimum, prefer the lowest
    // whole-set loss after refitting, then the structure text.
    let chosen_layer = &kept[r_star - 1];
    let cr_min = chosen_layer[0].cr;
    let (structure, model) = chosen_layer
        .iter()
        .take_while(|c| c.cr == cr_min)
        .map(|c| Ok((c.structure.clone(), refit_on_whole_set(&c.features, bset)?)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .min_by(|a, b| a.1.mu.cmp(&b.1.mu).then_with(|| a.0.cmp(&b.0)))
        .expect("layer is nonempty");

    Ok(ClassicResult { model, structure, r_star, cr_trace, freedom, subset_a, subset_b, kept })
}
