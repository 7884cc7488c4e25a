//! Human-readable renderings of a trained collective: if-then rules and the
//! learning-matrix grid.

use std::collections::HashMap;
use std::fmt::{self, Write as _};
use std::sync::Arc;

use crate::collective::{Chi0, Collective, Decision};
use crate::dataset::{FeatureKind, FeatureSpec, QuantizationSpec};
use crate::error::{Error, Result};
use crate::network::Expr;

#[derive(Clone, Debug, PartialEq)]
pub struct Literal {
    pub feature: usize,
    pub value: bool,
    /// e.g. `leukocytes < 6.2` or `joint_syndrome = 0`.
    pub phrase: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Rule {
    pub literals: Vec<Literal>,
    pub decision: Decision,
}

/// Which sensor combinations to render.
#[derive(Clone, Debug, PartialEq)]
pub enum RuleSelector {
    /// Every combination of relevant sensors, at most `cap` of them.
    All { cap: usize },
    /// The combination a given full sensor row falls into.
    Instance(Vec<bool>),
    /// Combinations whose coherence is at least the bound.
    MinChi(Chi0),
}

fn threshold_phrase(value: bool, f: &FeatureSpec, q: &QuantizationSpec, j: usize) -> String {
    match (f.kind, q.threshold(j)) {
        (FeatureKind::Quantitative, Some(t)) => {
            // z = value holds exactly when x >= u maps to `value`
            let at_or_above = t.apply(t.u);
            if at_or_above == value {
                format!("{} \u{2265} {}", f.name, t.u)
            } else {
                format!("{} < {}", f.name, t.u)
            }
        }
        _ => format!("{} = {}", f.name, u8::from(value)),
    }
}

fn make_rule(
    relevant: &[usize],
    bits: &[bool],
    decision: Decision,
    features: &[FeatureSpec],
    q: &QuantizationSpec,
) -> Rule {
    let literals = relevant
        .iter()
        .zip(bits)
        .map(|(&j, &value)| Literal { feature: j, value, phrase: threshold_phrase(value, &features[j], q, j) })
        .collect();
    Rule { literals, decision }
}

pub fn select_rules(
    collective: &Collective,
    selector: &RuleSelector,
    features: &[FeatureSpec],
    q: &QuantizationSpec,
) -> Result<Vec<Rule>> {
    let relevant: Vec<usize> = collective.features_used().into_iter().collect();
    match selector {
        RuleSelector::Instance(row) => {
            let decision = collective.vote(row)?;
            let bits: Vec<bool> = relevant.iter().map(|&j| row[j]).collect();
            Ok(vec![make_rule(&relevant, &bits, decision, features, q)])
        }
        RuleSelector::All { cap } => {
            let map = collective.coherence_map(true)?;
            Ok(map
                .rows
                .iter()
                .take(*cap)
                .map(|r| make_rule(&relevant, &r.bits, r.decision, features, q))
                .collect())
        }
        RuleSelector::MinChi(bound) => {
            let map = collective.coherence_map(true)?;
            Ok(map
                .rows
                .iter()
                .filter(|r| !r.decision.is_abstain() && r.decision.chi() >= bound.ratio())
                .map(|r| make_rule(&relevant, &r.bits, r.decision, features, q))
                .collect())
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "If")?;
        let last = self.literals.len().saturating_sub(1);
        for (i, lit) in self.literals.iter().enumerate() {
            let tail = if i < last { " and" } else { "" };
            writeln!(f, "  - z{} = {} ({}){}", lit.feature + 1, u8::from(lit.value), lit.phrase, tail)?;
        }
        writeln!(f, "Then")?;
        let d = &self.decision;
        match d.label {
            Some(label) => writeln!(
                f,
                "  class = {} under the {} from the {} voted experts (chi = {}/{}, {})",
                u8::from(label),
                d.l1,
                d.total,
                d.l1,
                d.total,
                if d.plausible { "plausible" } else { "not plausible" }
            ),
            None => writeln!(f, "  no decision (tie) under {} against {} of {} voted experts", d.l1, d.total - d.l1, d.total),
        }
    }
}

/// Text grid of the trained networks. Columns are the used sensors; rows are
/// hidden nodes grouped by layer, with the gate id printed at each sensor
/// connection. Deeper nodes name the row they extend. Output lines y1..yL
/// mark the rows that are collective members.
pub fn render_matrix(collective: &Collective, features: &[FeatureSpec]) -> String {
    let sensors: Vec<usize> = collective.features_used().into_iter().collect();
    let col_of: HashMap<usize, usize> = sensors.iter().enumerate().map(|(i, &j)| (j, i)).collect();

    // Distinct nodes per layer in order of first appearance.
    let mut by_layer: Vec<Vec<Arc<Expr>>> = Vec::new();
    let mut names: HashMap<String, String> = HashMap::new();
    let mut outputs: HashMap<String, Vec<usize>> = HashMap::new();
    let mut leaf_outputs: Vec<(usize, usize)> = Vec::new();
    for (y, member) in collective.members().iter().enumerate() {
        if let Expr::Leaf(j) = member.as_ref() {
            leaf_outputs.push((y + 1, *j));
            continue;
        }
        outputs.entry(member.signature()).or_default().push(y + 1);
        let mut spine: Vec<Arc<Expr>> = Vec::new();
        let mut e = Arc::clone(member);
        while let Some(parent) = e.parent().cloned() {
            spine.push(Arc::clone(&e));
            e = parent;
        }
        for node in spine.into_iter().rev() {
            let layer = node.depth();
            let sig = node.signature();
            if names.contains_key(&sig) {
                continue;
            }
            if by_layer.len() < layer {
                by_layer.resize(layer, Vec::new());
            }
            by_layer[layer - 1].push(Arc::clone(&node));
            names.insert(sig, format!("h{}.{}", layer, by_layer[layer - 1].len()));
        }
    }

    let cell = 4usize;
    let mut out = String::new();
    let _ = write!(out, "{:<8}", "node");
    for &j in &sensors {
        let _ = write!(out, "{:>cell$}", format!("z{}", j + 1));
    }
    let _ = writeln!(out, "  {:<8}out", "from");

    for layer in &by_layer {
        for node in layer {
            let sig = node.signature();
            let mut cells = vec![".".to_string(); sensors.len()];
            let gate = node.gate().expect("hidden node").index().to_string();
            let parent = node.parent().expect("hidden node");
            let from = match parent.as_ref() {
                Expr::Leaf(j) => {
                    cells[col_of[j]] = gate.clone();
                    "-".to_string()
                }
                p => names[&p.signature()].clone(),
            };
            cells[col_of[&node.top_feature()]] = gate;
            let _ = write!(out, "{:<8}", names[&sig]);
            for c in &cells {
                let _ = write!(out, "{c:>cell$}");
            }
            let ys = outputs
                .get(&sig)
                .map(|v| v.iter().map(|y| format!("y{y}")).collect::<Vec<_>>().join(","))
                .unwrap_or_default();
            let _ = writeln!(out, "  {from:<8}{ys}");
        }
    }
    for (y, j) in leaf_outputs {
        let mut cells = vec![".".to_string(); sensors.len()];
        cells[col_of[&j]] = "=".to_string();
        let _ = write!(out, "{:<8}", "in");
        for c in &cells {
            let _ = write!(out, "{c:>cell$}");
        }
        let _ = writeln!(out, "  {:<8}y{y}", "-");
    }
    let _ = writeln!(out);
    for &j in &sensors {
        let _ = writeln!(out, "z{} = {}", j + 1, features.get(j).map_or("?", |f| f.name.as_str()));
    }
    out
}

/// Ensures a rule request can be served without enumerating too many rows.
pub fn check_rule_cube(collective: &Collective) -> Result<()> {
    let relevant = collective.features_used().len();
    if relevant > crate::collective::MAX_CUBE_BITS {
        return Err(Error::CubeTooLarge { relevant, limit: crate::collective::MAX_CUBE_BITS });
    }
    Ok(())
}
