//! Layer-wise synthesis with exterior-addition selection.
//!
//! Layer 1 combines every unordered sensor pair through every gate. Layer r
//! extends each survivor of layer r-1 with every sensor through every gate.
//! A candidate survives only if its loss is strictly below both the loss of
//! the network it extends and the loss of the sensor it attaches. Synthesis
//! stops at the first layer holding a zero-loss network, or when a layer
//! has no survivors.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::dataset::BooleanLearningSet;
use crate::error::{Error, Result};
use crate::gates::GateId;
use crate::network::{apply_gate, loss_mu, Candidate, Expr};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SynthesisConfig {
    /// Hard bound on the number of layers. Strict loss descent already
    /// guarantees termination; this only bounds cost.
    pub max_layers: usize,
    /// Survivors kept per layer. `None` keeps all of them.
    pub width_cap: Option<usize>,
    pub dedup: bool,
    /// Largest layer, in raw candidates, that may be generated. Uncapped
    /// survivor sets can grow by a factor of 10m per layer on noisy data.
    pub candidate_budget: Option<u64>,
}

/// Default bound on raw candidates per layer.
pub const DEFAULT_CANDIDATE_BUDGET: u64 = 50_000_000;

impl Default for SynthesisConfig {
    fn default() -> Self {
        SynthesisConfig {
            max_layers: 32,
            width_cap: None,
            dedup: true,
            candidate_budget: Some(DEFAULT_CANDIDATE_BUDGET),
        }
    }
}

impl SynthesisConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_layers == 0 {
            return Err(Error::Config("max_layers must be >= 1".into()));
        }
        if self.width_cap == Some(0) {
            return Err(Error::Config("width_cap must be >= 1".into()));
        }
        Ok(())
    }
}

/// Survivors of one layer.
#[derive(Clone, Debug)]
pub struct LayerState {
    pub r: usize,
    pub survivors: Vec<Candidate>,
}

impl LayerState {
    /// L_r, the number of networks that passed selection.
    pub fn width(&self) -> usize {
        self.survivors.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerTrace {
    pub r: usize,
    pub generated: usize,
    pub passed: usize,
    /// Passing candidates dropped as structural duplicates.
    pub deduped: usize,
    /// Passing candidates dropped by the width cap.
    pub capped: usize,
    pub kept: usize,
    pub min_mu: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExhaustReason {
    /// A layer produced no network satisfying the selection rule.
    NoSurvivors,
    /// `max_layers` was reached without a zero-loss network.
    LayerBudget,
    /// The next layer would exceed `candidate_budget`.
    CandidateBudget,
}

impl fmt::Display for ExhaustReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExhaustReason::NoSurvivors => "no-survivors",
            ExhaustReason::LayerBudget => "layer-budget",
            ExhaustReason::CandidateBudget => "candidate-budget",
        })
    }
}

/// Guidance reported when synthesis cannot reach zero loss.
pub const EXPAND_FEATURES_HINT: &str =
    "expand input variable structure: no network reaches zero loss; add features or revise the learning set";

#[derive(Clone, Debug)]
pub enum Outcome {
    /// Every member classifies the whole learning set without error.
    Success { collective: Vec<Candidate>, r_star: usize },
    /// `layer` is the last layer generated; `best` is the lowest-loss network seen.
    Exhausted { best: Candidate, layer: usize, reason: ExhaustReason },
}

#[derive(Clone, Debug)]
pub struct SynthesisResult {
    pub outcome: Outcome,
    pub feature_mus: Vec<usize>,
    /// Survivors of every layer that produced any.
    pub layers: Vec<LayerState>,
    pub trace: Vec<LayerTrace>,
    /// True when a raw sensor already had zero loss and no layer was built.
    pub layer0_shortcut: bool,
}

impl SynthesisResult {
    pub fn is_success(&self) -> bool {
        matches!(self.outcome, Outcome::Success { .. })
    }

    /// Zero-loss members on success, otherwise the single best network.
    pub fn members(&self) -> Vec<&Candidate> {
        match &self.outcome {
            Outcome::Success { collective, .. } => collective.iter().collect(),
            Outcome::Exhausted { best, .. } => vec![best],
        }
    }

    pub fn depth(&self) -> usize {
        match &self.outcome {
            Outcome::Success { r_star, .. } => *r_star,
            Outcome::Exhausted { best, .. } => best.expr.depth(),
        }
    }

    pub fn best_mu(&self) -> usize {
        self.members().iter().map(|c| c.mu).min().unwrap_or(0)
    }
}

/// Loss of every sensor used directly as a classifier.
pub fn feature_losses(bset: &BooleanLearningSet) -> Vec<usize> {
    bset.columns().iter().map(|c| c.hamming(bset.labels())).collect()
}

/// All `C(m,2) * 10` layer-1 networks, pairs in lexicographic order, gates innermost.
pub fn generate_layer1(bset: &BooleanLearningSet) -> Result<Vec<Candidate>> {
    let m = bset.m();
    if m < 2 {
        return Err(Error::TooFewFeatures(m));
    }
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|j| (j + 1..m).map(move |k| (j, k))).collect();
    Ok(pairs
        .par_iter()
        .flat_map_iter(|&(j, k)| {
            let left = Expr::leaf(j);
            GateId::all().map(move |g| {
                let outputs = apply_gate(g, bset.column(j), bset.column(k));
                let mu = outputs.hamming(bset.labels());
                Candidate { expr: Expr::extend(&left, g, k), outputs, mu }
            })
        })
        .collect())
}

/// Extends every survivor with every sensor through every gate:
/// `|survivors| * m * 10` networks, survivors outermost, gates innermost.
pub fn generate_layer_r(survivors: &[Candidate], bset: &BooleanLearningSet) -> Result<Vec<Candidate>> {
    if survivors.is_empty() {
        return Err(Error::NoSurvivors);
    }
    Ok(survivors
        .par_iter()
        .flat_map_iter(|parent| {
            (0..bset.m()).flat_map(move |k| {
                GateId::all().map(move |g| {
                    let outputs = apply_gate(g, &parent.outputs, bset.column(k));
                    let mu = outputs.hamming(bset.labels());
                    Candidate { expr: Expr::extend(&parent.expr, g, k), outputs, mu }
                })
            })
        })
        .collect())
}

#[derive(Clone, Debug, Default)]
pub struct Selection {
    pub survivors: Vec<Candidate>,
    pub passed: usize,
    pub deduped: usize,
    pub capped: usize,
}

/// Keeps candidates with `mu < min(parent_mu, feature_mu)`, removes structural
/// duplicates, orders by (mu, signature) and applies the width cap.
///
/// `parent_mu[i]` and `feature_mu[i]` belong to `cands[i]`.
pub fn select_exterior_addition(
    cands: Vec<Candidate>,
    parent_mu: &[usize],
    feature_mu: &[usize],
    dedup: bool,
    width_cap: Option<usize>,
) -> Result<Selection> {
    if cands.len() != parent_mu.len() || cands.len() != feature_mu.len() {
        return Err(Error::LengthMismatch { left: cands.len(), right: parent_mu.len().min(feature_mu.len()) });
    }
    let passing: Vec<Candidate> = cands
        .into_iter()
        .zip(parent_mu.iter().zip(feature_mu))
        .filter(|(c, (&pj, &fk))| c.mu < pj.min(fk))
        .map(|(c, _)| c)
        .collect();
    Ok(order_and_trim(passing, dedup, width_cap))
}

fn order_and_trim(passing: Vec<Candidate>, dedup: bool, width_cap: Option<usize>) -> Selection {
    let passed = passing.len();
    let mut keyed: Vec<(usize, String, Candidate)> =
        passing.into_par_iter().map(|c| (c.mu, c.signature(), c)).collect();
    keyed.par_sort_unstable_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));

    let mut deduped = 0;
    if dedup {
        let mut seen = HashSet::with_capacity(keyed.len());
        keyed.retain(|(_, sig, _)| {
            let fresh = seen.insert(sig.clone());
            deduped += usize::from(!fresh);
            fresh
        });
    }
    let mut capped = 0;
    if let Some(cap) = width_cap {
        capped = keyed.len().saturating_sub(cap);
        keyed.truncate(cap);
    }
    Selection { survivors: keyed.into_iter().map(|(_, _, c)| c).collect(), passed, deduped, capped }
}

/// Orders like `(mu, signature)` for networks made by the generator. A
/// signature `(gG P xK)` compares by gate digit, then parent signature, then
/// sensor name as text (`x10` sorts before `x2`), so ranks stand in for strings.
type Key = (usize, u8, u32, u32);

fn name_ranks(m: usize) -> Vec<u32> {
    let mut names: Vec<(String, usize)> = (0..m).map(|k| (format!("x{k}"), k)).collect();
    names.sort();
    let mut rank = vec![0; m];
    for (r, (_, k)) in names.iter().enumerate() {
        rank[*k] = r as u32;
    }
    rank
}

/// Rank of each survivor's signature among the survivors of its layer.
fn signature_ranks(keys: &[Key]) -> Vec<u32> {
    let mut idx: Vec<u32> = (0..keys.len() as u32).collect();
    idx.par_sort_unstable_by_key(|&i| {
        let (_, g, p, k) = keys[i as usize];
        (g, p, k)
    });
    let mut rank = vec![0; keys.len()];
    for (r, &i) in idx.iter().enumerate() {
        rank[i as usize] = r as u32;
    }
    rank
}

fn order_keyed(keyed: Vec<(Key, Candidate)>, dedup: bool, width_cap: Option<usize>) -> (Selection, Vec<Key>) {
    let passed = keyed.len();
    let (mut keys, cands): (Vec<Key>, Vec<Candidate>) = keyed.into_iter().unzip();
    let mut order: Vec<u32> = (0..passed as u32).collect();
    order.par_sort_unstable_by_key(|&i| keys[i as usize]);
    if dedup {
        order.dedup_by_key(|i| keys[*i as usize]);
    }
    let deduped = passed - order.len();
    let mut capped = 0;
    if let Some(cap) = width_cap {
        capped = order.len().saturating_sub(cap);
        order.truncate(cap);
    }
    let mut slots: Vec<Option<Candidate>> = cands.into_iter().map(Some).collect();
    let survivors = order.iter().map(|&i| slots[i as usize].take().expect("each index once")).collect();
    keys = order.iter().map(|&i| keys[i as usize]).collect();
    (Selection { survivors, passed, deduped, capped }, keys)
}

/// A passing extension of a survivor: sort key, parent index, sensor.
type Passing = (Key, u32, u32);

/// Generation fused with the selection filter. Only compact records of the
/// passing extensions are kept; networks are built after ordering.
fn extend_passing(
    survivors: &[Candidate],
    ranks: &[u32],
    bset: &BooleanLearningSet,
    feature_mus: &[usize],
    names: &[u32],
) -> Vec<Passing> {
    let labels = bset.labels().words();
    let n = bset.n();
    let tail = if n.is_multiple_of(64) { u64::MAX } else { (1u64 << (n % 64)) - 1 };
    let last = labels.len() - 1;
    let tables: Vec<[bool; 4]> = GateId::all().map(|g| g.truth_table().0).collect();
    survivors
        .par_iter()
        .zip(ranks)
        .enumerate()
        .flat_map_iter(|(p, (parent, &prank))| {
            let pw = parent.outputs.words();
            let mut kept = Vec::new();
            for k in 0..bset.m() {
                let bound = parent.mu.min(feature_mus[k]);
                let cw = bset.column(k).words();
                // rows per input cell (u1 u2 = 00, 01, 10, 11): [label 0, label 1]
                let mut cells = [[0u32; 2]; 4];
                for w in 0..=last {
                    let (a, b, y) = (pw[w], cw[w], labels[w]);
                    let live = if w == last { tail } else { u64::MAX };
                    for (cell, bits) in [!a & !b & live, !a & b & live, a & !b & live, a & b & live].into_iter().enumerate() {
                        let ones = (bits & y).count_ones();
                        cells[cell][1] += ones;
                        cells[cell][0] += bits.count_ones() - ones;
                    }
                }
                // no function of (u1, u2) does better than the cellwise majority
                let floor: u32 = cells.iter().map(|c| c[0].min(c[1])).sum();
                if floor as usize >= bound {
                    continue;
                }
                for (g, table) in GateId::all().zip(&tables) {
                    let mu: usize = (0..4).map(|c| cells[c][usize::from(!table[c])] as usize).sum();
                    if mu < bound {
                        kept.push(((mu, g.index(), prank, names[k]), p as u32, k as u32));
                    }
                }
            }
            kept
        })
        .collect()
}

fn order_passing(
    mut passing: Vec<Passing>,
    parents: &[Candidate],
    bset: &BooleanLearningSet,
    dedup: bool,
    width_cap: Option<usize>,
) -> (Selection, Vec<Key>) {
    let passed = passing.len();
    passing.par_sort_unstable_by_key(|r| r.0);
    if dedup {
        passing.dedup_by_key(|r| r.0);
    }
    let deduped = passed - passing.len();
    let mut capped = 0;
    if let Some(cap) = width_cap {
        capped = passing.len().saturating_sub(cap);
        passing.truncate(cap);
    }
    let survivors = passing
        .par_iter()
        .map(|&((mu, g, _, _), p, k)| {
            let parent = &parents[p as usize];
            let g = GateId::new(g).expect("generated gate");
            let (pw, cw) = (parent.outputs.words(), bset.column(k as usize).words());
            let outputs = Bits::from_word_fn(bset.n(), |w| g.eval_word(pw[w], cw[w]));
            Candidate { expr: Expr::extend(&parent.expr, g, k as usize), outputs, mu }
        })
        .collect();
    let keys = passing.into_iter().map(|r| r.0).collect();
    (Selection { survivors, passed, deduped, capped }, keys)
}

pub fn synthesize(bset: &BooleanLearningSet, config: &SynthesisConfig) -> Result<SynthesisResult> {
    config.validate()?;
    let feature_mus = feature_losses(bset);

    let perfect: Vec<Candidate> = feature_mus
        .iter()
        .enumerate()
        .filter(|(_, &mu)| mu == 0)
        .map(|(k, _)| leaf_candidate(bset, k))
        .collect();
    if !perfect.is_empty() {
        return Ok(SynthesisResult {
            outcome: Outcome::Success { collective: perfect, r_star: 0 },
            feature_mus,
            layers: Vec::new(),
            trace: Vec::new(),
            layer0_shortcut: true,
        });
    }
    if bset.m() < 2 {
        return Err(Error::TooFewFeatures(bset.m()));
    }

    let best_feature = (0..bset.m()).min_by_key(|&k| feature_mus[k]).expect("m >= 2");
    let mut best = leaf_candidate(bset, best_feature);
    let mut layers: Vec<LayerState> = Vec::new();
    let mut trace = Vec::new();
    let names = name_ranks(bset.m());
    let mut keys: Vec<Key> = Vec::new();

    for r in 1..=config.max_layers {
        let (generated, selection) = match layers.last() {
            None => {
                let cands = generate_layer1(bset)?;
                let generated = cands.len();
                let passing = cands
                    .into_iter()
                    .filter_map(|c| {
                        let (j, k) = (c.expr.parent().expect("layer-1 node").top_feature(), c.expr.top_feature());
                        let g = c.expr.gate().expect("layer-1 node");
                        (c.mu < feature_mus[j].min(feature_mus[k])).then(|| ((c.mu, g.index(), names[j], names[k]), c))
                    })
                    .collect();
                let (selection, next) = order_keyed(passing, config.dedup, config.width_cap);
                keys = next;
                (generated, selection)
            }
            Some(prev) => {
                let generated = prev.survivors.len() * bset.m() * crate::gates::GATE_COUNT;
                if config.candidate_budget.is_some_and(|b| generated as u64 > b) {
                    return Ok(SynthesisResult {
                        outcome: Outcome::Exhausted { best, layer: r - 1, reason: ExhaustReason::CandidateBudget },
                        feature_mus,
                        layers,
                        trace,
                        layer0_shortcut: false,
                    });
                }
                let ranks = signature_ranks(&keys);
                let passing = extend_passing(&prev.survivors, &ranks, bset, &feature_mus, &names);
                let (selection, next) = order_passing(passing, &prev.survivors, bset, config.dedup, config.width_cap);
                keys = next;
                (generated, selection)
            }
        };

        trace.push(LayerTrace {
            r,
            generated,
            passed: selection.passed,
            deduped: selection.deduped,
            capped: selection.capped,
            kept: selection.survivors.len(),
            min_mu: selection.survivors.first().map(|c| c.mu),
        });

        let Some(first) = selection.survivors.first() else {
            return Ok(SynthesisResult {
                outcome: Outcome::Exhausted { best, layer: r, reason: ExhaustReason::NoSurvivors },
                feature_mus,
                layers,
                trace,
                layer0_shortcut: false,
            });
        };
        if first.mu < best.mu {
            best = first.clone();
        }
        if first.mu == 0 {
            let collective: Vec<Candidate> =
                selection.survivors.iter().take_while(|c| c.mu == 0).cloned().collect();
            layers.push(LayerState { r, survivors: selection.survivors });
            return Ok(SynthesisResult {
                outcome: Outcome::Success { collective, r_star: r },
                feature_mus,
                layers,
                trace,
                layer0_shortcut: false,
            });
        }
        layers.push(LayerState { r, survivors: selection.survivors });
    }

    Ok(SynthesisResult {
        outcome: Outcome::Exhausted { best, layer: config.max_layers, reason: ExhaustReason::LayerBudget },
        feature_mus,
        layers,
        trace,
        layer0_shortcut: false,
    })
}

/// Loss of a candidate's parent network, recomputed from scratch.
pub fn parent_loss(c: &Candidate, bset: &BooleanLearningSet) -> Option<usize> {
    let parent = c.expr.parent()?;
    let out: Bits = parent.outputs(bset).ok()?;
    loss_mu(&out, bset.labels()).ok()
}

fn leaf_candidate(bset: &BooleanLearningSet, k: usize) -> Candidate {
    let outputs = bset.column(k).clone();
    let mu = outputs.hamming(bset.labels());
    Candidate { expr: Expr::leaf(k), outputs, mu }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Full truth table over m sensors, row i has bit j = (i >> (m-1-j)) & 1.
    fn cube(m: usize, target: impl Fn(&[bool]) -> bool) -> BooleanLearningSet {
        let rows: Vec<Vec<bool>> =
            (0..1usize << m).map(|i| (0..m).map(|j| i >> (m - 1 - j) & 1 == 1).collect()).collect();
        let labels: Vec<bool> = rows.iter().map(|r| target(r)).collect();
        BooleanLearningSet::from_rows(&rows, &labels).unwrap()
    }

    fn cand(mu: usize) -> Candidate {
        Candidate { expr: Expr::pair(GateId::AND, 0, 1).unwrap(), outputs: Bits::zeros(8), mu }
    }

    #[test]
    fn feature_loss_examples() {
        let labels = [true, false, true, false, true, false, true, false];
        let rows: Vec<Vec<bool>> = labels.iter().map(|&l| vec![false, l]).collect();
        let bset = BooleanLearningSet::from_rows(&rows, &labels).unwrap();
        assert_eq!(feature_losses(&bset), vec![4, 0]);
    }

    #[test]
    fn layer_sizes() {
        let b5 = cube(5, |r| r[0]);
        assert_eq!(generate_layer1(&b5).unwrap().len(), 100);
        assert_eq!(generate_layer1(&cube(2, |r| r[0] & r[1])).unwrap().len(), 10);
        assert_eq!(generate_layer1(&cube(3, |r| r[0])).unwrap().len(), 30);
        let one = vec![leaf_candidate(&b5, 0)];
        assert_eq!(generate_layer_r(&one, &b5).unwrap().len(), 50);
        assert!(matches!(generate_layer_r(&[], &b5), Err(Error::NoSurvivors)));
        let rows = vec![vec![true], vec![false]];
        let single = BooleanLearningSet::from_rows(&rows, &[false, true]).unwrap();
        assert!(matches!(generate_layer1(&single), Err(Error::TooFewFeatures(1))));
    }

    #[test]
    fn selection_is_strict() {
        let sel = select_exterior_addition(vec![cand(2)], &[3], &[4], true, None).unwrap();
        assert_eq!(sel.survivors.len(), 1);
        let sel = select_exterior_addition(vec![cand(3)], &[3], &[4], true, None).unwrap();
        assert!(sel.survivors.is_empty());
        let sel = select_exterior_addition(vec![cand(3)], &[5], &[3], true, None).unwrap();
        assert!(sel.survivors.is_empty());
    }

    #[test]
    fn selection_dedups_and_caps() {
        let sel = select_exterior_addition(vec![cand(1), cand(1), cand(2)], &[5; 3], &[5; 3], true, Some(1)).unwrap();
        assert_eq!(sel.passed, 3);
        assert_eq!(sel.deduped, 2);
        assert_eq!(sel.survivors.len(), 1);
        let sel = select_exterior_addition(vec![cand(1), cand(1)], &[5; 2], &[5; 2], false, Some(1)).unwrap();
        assert_eq!((sel.deduped, sel.capped), (0, 1));
    }

    #[test]
    fn parity_has_no_layer1_survivors() {
        let b = cube(3, |r| r[0] ^ r[1] ^ r[2]);
        assert_eq!(feature_losses(&b), vec![4, 4, 4]);
        assert!(generate_layer1(&b).unwrap().iter().all(|c| c.mu == 4));
        let res = synthesize(&b, &SynthesisConfig::default()).unwrap();
        match res.outcome {
            Outcome::Exhausted { best, layer, reason } => {
                assert_eq!((layer, reason, best.mu), (1, ExhaustReason::NoSurvivors, 4));
            }
            other => panic!("expected exhaustion, got {other:?}"),
        }
        assert_eq!(res.trace[0].kept, 0);
    }

    #[test]
    fn and_target_recovered_at_layer1() {
        let res = synthesize(&cube(3, |r| r[0] & r[1]), &SynthesisConfig::default()).unwrap();
        let Outcome::Success { collective, r_star } = res.outcome else { panic!() };
        assert_eq!(r_star, 1);
        assert!(collective.iter().any(|c| c.signature() == "(g0 x0 x1)"));
    }

    #[test]
    fn perfect_sensor_short_circuits() {
        let res = synthesize(&cube(3, |r| r[2]), &SynthesisConfig::default()).unwrap();
        assert!(res.layer0_shortcut);
        let Outcome::Success { collective, r_star } = res.outcome else { panic!() };
        assert_eq!(r_star, 0);
        assert_eq!(collective.len(), 1);
        assert_eq!(collective[0].signature(), "x2");
    }

    #[test]
    fn fused_extension_matches_generate_then_select() {
        let b = cube(4, |r| (r[0] | r[1]) & (r[2] ^ r[3]));
        let fm = feature_losses(&b);
        let l1 = synthesize(&b, &SynthesisConfig { max_layers: 1, ..Default::default() }).unwrap();
        let parents = &l1.layers[0].survivors;
        let raw = generate_layer_r(parents, &b).unwrap();
        let pmu: Vec<usize> = raw.iter().map(|c| parent_loss(c, &b).unwrap()).collect();
        let fmu: Vec<usize> = raw.iter().map(|c| fm[c.expr.top_feature()]).collect();
        let slow = select_exterior_addition(raw, &pmu, &fmu, true, None).unwrap();
        let mut by_sig: Vec<usize> = (0..parents.len()).collect();
        by_sig.sort_by_key(|&i| parents[i].signature());
        let mut ranks = vec![0; parents.len()];
        for (r, &i) in by_sig.iter().enumerate() {
            ranks[i] = r as u32;
        }
        let fast = order_passing(extend_passing(parents, &ranks, &b, &fm, &name_ranks(b.m())), parents, &b, true, None).0;
        let sigs = |s: &Selection| s.survivors.iter().map(Candidate::signature).collect::<Vec<_>>();
        assert_eq!(sigs(&slow), sigs(&fast));
    }

    #[test]
    fn layer_budget_is_reported() {
        let b = cube(4, |r| (r[0] | r[1]) & (r[2] ^ r[3]));
        let res = synthesize(&b, &SynthesisConfig { max_layers: 1, ..Default::default() }).unwrap();
        if let Outcome::Exhausted { reason, .. } = res.outcome {
            assert_eq!(reason, ExhaustReason::LayerBudget);
        } else {
            panic!("target is not a single gate");
        }
    }

    #[test]
    fn candidate_budget_stops_before_generation() {
        let b = cube(4, |r| (r[0] | r[1]) & (r[2] ^ r[3]));
        let res = synthesize(&b, &SynthesisConfig { candidate_budget: Some(1), ..Default::default() }).unwrap();
        match res.outcome {
            Outcome::Exhausted { reason, layer, .. } => {
                assert_eq!(reason, ExhaustReason::CandidateBudget);
                assert_eq!(layer, 1);
                assert_eq!(res.trace.len(), 1);
            }
            Outcome::Success { r_star, .. } => assert_eq!(r_star, 1),
        }
    }

    #[test]
    fn rejects_bad_config() {
        let b = cube(2, |r| r[0] & r[1]);
        assert!(synthesize(&b, &SynthesisConfig { max_layers: 0, ..Default::default() }).is_err());
        assert!(synthesize(&b, &SynthesisConfig { width_cap: Some(0), ..Default::default() }).is_err());
    }
}
