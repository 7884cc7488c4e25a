//! Layered gate networks: every internal node combines a previous-layer
//! network (left) with one raw sensor (right).

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::bits::Bits;
use crate::dataset::BooleanLearningSet;
use crate::error::{Error, Result};
use crate::gates::GateId;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Leaf(usize),
    /// `gate(left, x[feature])`. The right operand is always a sensor.
    Node { gate: GateId, left: Arc<Expr>, feature: usize },
}

impl Expr {
    pub fn leaf(feature: usize) -> Arc<Expr> {
        Arc::new(Expr::Leaf(feature))
    }

    /// A layer-1 node. Pairs are unordered, so `j < k` is required.
    pub fn pair(gate: GateId, j: usize, k: usize) -> Result<Arc<Expr>> {
        if j >= k {
            return Err(Error::ExprParse {
                text: format!("({gate} x{j} x{k})"),
                message: "layer-1 operands must satisfy j < k".into(),
            });
        }
        Ok(Arc::new(Expr::Node { gate, left: Expr::leaf(j), feature: k }))
    }

    pub fn extend(parent: &Arc<Expr>, gate: GateId, feature: usize) -> Arc<Expr> {
        Arc::new(Expr::Node { gate, left: Arc::clone(parent), feature })
    }

    /// Number of nodes on the left spine, i.e. the layer index.
    pub fn depth(&self) -> usize {
        let mut d = 0;
        let mut e = self;
        while let Expr::Node { left, .. } = e {
            d += 1;
            e = left;
        }
        d
    }

    /// Top-most gate, if any.
    pub fn gate(&self) -> Option<GateId> {
        match self {
            Expr::Leaf(_) => None,
            Expr::Node { gate, .. } => Some(*gate),
        }
    }

    pub fn parent(&self) -> Option<&Arc<Expr>> {
        match self {
            Expr::Leaf(_) => None,
            Expr::Node { left, .. } => Some(left),
        }
    }

    /// The sensor attached at the top node (the leaf itself for a leaf).
    pub fn top_feature(&self) -> usize {
        match self {
            Expr::Leaf(k) | Expr::Node { feature: k, .. } => *k,
        }
    }

    pub fn max_feature(&self) -> usize {
        match self {
            Expr::Leaf(k) => *k,
            Expr::Node { left, feature, .. } => left.max_feature().max(*feature),
        }
    }

    pub fn eval(&self, sensors: &[bool]) -> Result<bool> {
        match self {
            Expr::Leaf(k) => sensors
                .get(*k)
                .copied()
                .ok_or(Error::FeatureOutOfRange { index: *k, width: sensors.len() }),
            Expr::Node { gate, left, feature } => {
                let u1 = left.eval(sensors)?;
                let u2 = sensors
                    .get(*feature)
                    .copied()
                    .ok_or(Error::FeatureOutOfRange { index: *feature, width: sensors.len() })?;
                Ok(gate.eval(u1, u2))
            }
        }
    }

    /// Evaluates on every instance of the set, 64 instances per gate pass.
    pub fn outputs(&self, bset: &BooleanLearningSet) -> Result<Bits> {
        if self.max_feature() >= bset.m() {
            return Err(Error::FeatureOutOfRange { index: self.max_feature(), width: bset.m() });
        }
        Ok(self.outputs_unchecked(bset))
    }

    fn outputs_unchecked(&self, bset: &BooleanLearningSet) -> Bits {
        match self {
            Expr::Leaf(k) => bset.column(*k).clone(),
            Expr::Node { gate, left, feature } => {
                apply_gate(*gate, &left.outputs_unchecked(bset), bset.column(*feature))
            }
        }
    }

    pub fn features_used(&self) -> BTreeSet<usize> {
        let mut set = BTreeSet::new();
        let mut e = self;
        loop {
            match e {
                Expr::Leaf(k) => {
                    set.insert(*k);
                    return set;
                }
                Expr::Node { left, feature, .. } => {
                    set.insert(*feature);
                    e = left;
                }
            }
        }
    }

    /// Canonical text form, e.g. `(g5 (g0 x0 x1) x2)`.
    pub fn signature(&self) -> String {
        self.to_string()
    }

    /// The chain of nodes from the root down to the layer-1 node.
    pub fn spine(&self) -> Vec<&Expr> {
        let mut out = Vec::new();
        let mut e = self;
        while let Expr::Node { left, .. } = e {
            out.push(e);
            e = left;
        }
        out
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Leaf(k) => write!(f, "x{k}"),
            Expr::Node { gate, left, feature } => write!(f, "({gate} {left} x{feature})"),
        }
    }
}

/// Parses a signature back into an expression. The right operand of every
/// node must be a sensor and layer-1 operands must be ordered `j < k`.
impl FromStr for Expr {
    type Err = Error;
    fn from_str(text: &str) -> Result<Self> {
        let err = |message: &str| Error::ExprParse { text: text.to_string(), message: message.to_string() };
        let tokens: Vec<&str> = text
            .split_whitespace()
            .flat_map(|w| split_parens(w))
            .collect();
        let mut pos = 0;
        let expr = parse_expr(&tokens, &mut pos).map_err(|m| err(&m))?;
        if pos != tokens.len() {
            return Err(err("trailing input"));
        }
        Ok(expr)
    }
}

fn split_parens(word: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, c) in word.char_indices() {
        if c == '(' || c == ')' {
            if start < i {
                out.push(&word[start..i]);
            }
            out.push(&word[i..i + 1]);
            start = i + 1;
        }
    }
    if start < word.len() {
        out.push(&word[start..]);
    }
    out
}

fn parse_leaf(tok: &str) -> std::result::Result<usize, String> {
    tok.strip_prefix('x')
        .and_then(|d| d.parse().ok())
        .ok_or_else(|| format!("expected sensor like `x3`, found `{tok}`"))
}

fn parse_expr(tokens: &[&str], pos: &mut usize) -> std::result::Result<Expr, String> {
    let tok = *tokens.get(*pos).ok_or("unexpected end of input")?;
    *pos += 1;
    if tok != "(" {
        return parse_leaf(tok).map(Expr::Leaf);
    }
    let gate_tok = *tokens.get(*pos).ok_or("missing gate")?;
    *pos += 1;
    let gate: GateId = gate_tok.parse().map_err(|e: Error| e.to_string())?;
    let left = parse_expr(tokens, pos)?;
    let right_tok = *tokens.get(*pos).ok_or("missing right operand")?;
    *pos += 1;
    if right_tok == "(" {
        return Err("right operand must be a sensor".into());
    }
    let feature = parse_leaf(right_tok)?;
    if tokens.get(*pos) != Some(&")") {
        return Err("expected `)`".into());
    }
    *pos += 1;
    if let Expr::Leaf(j) = left {
        if j >= feature {
            return Err("layer-1 operands must satisfy j < k".into());
        }
    }
    Ok(Expr::Node { gate, left: Arc::new(left), feature })
}

/// One gate pass over whole-set vectors.
pub fn apply_gate(gate: GateId, u1: &Bits, u2: &Bits) -> Bits {
    debug_assert_eq!(u1.len(), u2.len());
    let (a, b) = (u1.words(), u2.words());
    Bits::from_word_fn(u1.len(), |w| gate.eval_word(a[w], b[w]))
}

/// Number of instances where the network output differs from the label.
pub fn loss_mu(outputs: &Bits, labels: &Bits) -> Result<usize> {
    if outputs.len() != labels.len() {
        return Err(Error::LengthMismatch { left: outputs.len(), right: labels.len() });
    }
    Ok(outputs.hamming(labels))
}

/// A network together with its outputs on the learning set and its loss.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub expr: Arc<Expr>,
    pub outputs: Bits,
    pub mu: usize,
}

impl Candidate {
    pub fn evaluate(expr: Arc<Expr>, bset: &BooleanLearningSet) -> Result<Self> {
        let outputs = expr.outputs(bset)?;
        let mu = loss_mu(&outputs, bset.labels())?;
        Ok(Candidate { expr, outputs, mu })
    }

    pub fn signature(&self) -> String {
        self.expr.signature()
    }
}
