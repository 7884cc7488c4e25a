//! Growth counts of the generation rule and a brute-force enumeration oracle
//! used to check selection and counting on tiny instances.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::json;

use crate::dataset::BooleanLearningSet;
use crate::error::{Error, Result};
use crate::gates::{GateId, GATE_COUNT};
use crate::network::Expr;
use crate::synthesis::{synthesize, Outcome, SynthesisConfig};

/// Largest m for which the full function count 2^(2^m) is materialized.
const MAX_MATERIALIZED_M: usize = 20;

/// Networks generated at layer r: C(m,2) * 10^r * m^(r-1).
pub fn q_layer(m: usize, r: usize) -> Result<BigUint> {
    if m < 2 || r < 1 {
        return Err(Error::Config(format!("q_layer needs m >= 2 and r >= 1, got m = {m}, r = {r}")));
    }
    let pairs = BigUint::from(m * (m - 1) / 2);
    Ok(pairs * BigUint::from(GATE_COUNT).pow(r as u32) * BigUint::from(m).pow(r as u32 - 1))
}

/// Number of Boolean functions of m variables, 2^(2^m).
pub fn q_star(m: usize) -> BigUint {
    BigUint::one() << (1usize << m)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexityReport {
    pub m: usize,
    pub r_star: usize,
    pub q_per_layer: Vec<BigUint>,
    pub q_sum: BigUint,
    /// log2 of the full function count, i.e. 2^m.
    pub q_star_log2: u64,
    /// The full function count when m is small enough to hold it.
    pub q_star: Option<BigUint>,
    /// Strict `q_sum < q_star`.
    pub holds: bool,
    /// `q_star / q_sum`, rounded down, when `q_star` is held.
    pub ratio: Option<BigUint>,
    pub note: Option<String>,
}

pub fn check_inequality(m: usize, r_star: usize) -> Result<ComplexityReport> {
    if m < 2 {
        return Err(Error::Config(format!("m must be >= 2, got {m}")));
    }
    if m >= 64 {
        return Err(Error::Config(format!("m = {m} is too large to count")));
    }
    let q_per_layer = (1..=r_star).map(|r| q_layer(m, r)).collect::<Result<Vec<_>>>()?;
    let q_sum: BigUint = q_per_layer.iter().sum();
    let q_star_log2 = 1u64 << m;
    // q_sum < 2^k  <=>  bits(q_sum) <= k
    let holds = q_sum.bits() <= q_star_log2;
    let q_star = (m <= MAX_MATERIALIZED_M).then(|| q_star(m));
    let ratio = match &q_star {
        Some(q) if !q_sum.is_zero() => Some(q / &q_sum),
        _ => None,
    };
    let note = (m == 5 && r_star == 2).then(|| {
        format!(
            "9,940 is sometimes quoted for m = 5, r* = 2; the per-layer counts above sum to {}",
            group_digits(&q_sum)
        )
    });
    Ok(ComplexityReport { m, r_star, q_per_layer, q_sum, q_star_log2, q_star, holds, ratio, note })
}

pub fn group_digits(v: &BigUint) -> String {
    let s = v.to_string();
    let mut out = String::with_capacity(s.len() + s.len() / 3);
    for (i, c) in s.chars().enumerate() {
        if i > 0 && (s.len() - i).is_multiple_of(3) {
            out.push(',');
        }
        out.push(c);
    }
    out
}

impl ComplexityReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "m": self.m,
            "r_star": self.r_star,
            "q_per_layer": self.q_per_layer.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "q_sum": self.q_sum.to_string(),
            "q_star_log2": self.q_star_log2,
            "q_star": self.q_star.as_ref().map(ToString::to_string),
            "holds": self.holds,
            "ratio": self.ratio.as_ref().map(ToString::to_string),
            "note": self.note,
        })
    }
}

impl fmt::Display for ComplexityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "m = {}, r* = {}", self.m, self.r_star)?;
        for (r, q) in self.q_per_layer.iter().enumerate() {
            writeln!(f, "  Q(m, {:>2})   = {:>24}", r + 1, group_digits(q))?;
        }
        writeln!(f, "  sum        = {:>24}", group_digits(&self.q_sum))?;
        match &self.q_star {
            Some(q) => writeln!(f, "  Q*         = {:>24}", group_digits(q))?,
            None => writeln!(f, "  Q*         = {:>24}", format!("2^{}", self.q_star_log2))?,
        }
        if let Some(ratio) = &self.ratio {
            writeln!(f, "  Q* / sum   = {:>24}", group_digits(ratio))?;
        }
        writeln!(f, "  sum < Q*   : {}", self.holds)?;
        if let Some(note) = &self.note {
            writeln!(f, "  note: {note}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    /// Lowest sensor loss (depth 0).
    pub feature_best_mu: usize,
    /// Expressions generated at depth 1..=r_max.
    pub counts: Vec<usize>,
    /// Lowest loss at exactly depth 1..=r_max.
    pub best_mu: Vec<usize>,
    /// Signature of a lowest-loss expression per depth (first in generation order).
    pub witness: Vec<String>,
}

impl OracleReport {
    /// Lowest loss reachable at depth <= d (d = 0 is sensors only).
    pub fn best_up_to(&self, d: usize) -> usize {
        self.best_mu[..d.min(self.best_mu.len())].iter().copied().fold(self.feature_best_mu, usize::min)
    }
}

/// Every expression of the grammar up to depth `r_max`, with no selection
/// and no deduplication. Evaluation is row by row, independent of the
/// word-parallel path used by synthesis.
pub fn enumerate_unpruned(bset: &BooleanLearningSet, r_max: usize) -> Result<OracleReport> {
    let m = bset.m();
    if m > 6 || r_max > 3 || m < 2 || r_max < 1 {
        return Err(Error::OracleGuard { m, depth: r_max });
    }
    let rows: Vec<Vec<bool>> = bset.rows().collect();
    let labels: Vec<bool> = bset.labels().iter().collect();
    let loss = |out: &[bool]| out.iter().zip(&labels).filter(|(a, b)| a != b).count();

    let feature_best_mu = (0..m).map(|k| loss(&rows.iter().map(|r| r[k]).collect::<Vec<_>>())).min().unwrap();

    let mut layer: Vec<(Arc<Expr>, Vec<bool>)> = Vec::new();
    for j in 0..m {
        for k in j + 1..m {
            for g in GateId::all() {
                let out: Vec<bool> = rows.iter().map(|r| g.eval(r[j], r[k])).collect();
                layer.push((Arc::new(Expr::Node { gate: g, left: Expr::leaf(j), feature: k }), out));
            }
        }
    }

    let mut counts = Vec::new();
    let mut best_mu = Vec::new();
    let mut witness = Vec::new();
    for depth in 1..=r_max {
        if depth > 1 {
            layer = layer
                .par_iter()
                .flat_map_iter(|(parent, pout)| {
                    let rows = &rows;
                    (0..m).flat_map(move |k| {
                        GateId::all().map(move |g| {
                            let out: Vec<bool> = pout.iter().zip(rows).map(|(&u1, r)| g.eval(u1, r[k])).collect();
                            (Arc::new(Expr::Node { gate: g, left: Arc::clone(parent), feature: k }), out)
                        })
                    })
                })
                .collect();
        }
        counts.push(layer.len());
        let (mu, expr) = layer
            .iter()
            .map(|(e, out)| (loss(out), e))
            .min_by_key(|(mu, _)| *mu)
            .expect("layer is nonempty");
        best_mu.push(mu);
        witness.push(expr.signature());
    }
    Ok(OracleReport { feature_best_mu, counts, best_mu, witness })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GapRow {
    pub depth: usize,
    /// Lowest loss synthesis had reached by this depth (sensors included).
    pub synthesis_mu: usize,
    /// Lowest loss of any expression of depth <= this depth.
    pub oracle_mu: usize,
    pub gap: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapReport {
    pub per_depth: Vec<GapRow>,
    /// Synthesis terminal layer against the best the oracle found at any depth.
    pub terminal: GapRow,
    pub synthesis_success: bool,
    pub oracle: OracleReport,
}

/// How much loss the greedy selection leaves on the table relative to the
/// exhaustive optimum, depth by depth.
pub fn pruning_gap(bset: &BooleanLearningSet, r_max: usize) -> Result<GapReport> {
    let oracle = enumerate_unpruned(bset, r_max)?;
    let res = synthesize(bset, &SynthesisConfig { max_layers: r_max, ..Default::default() })?;

    let mut synth_by_depth = Vec::with_capacity(r_max);
    let mut running = res.feature_mus.iter().copied().min().unwrap_or(0);
    for d in 1..=r_max {
        if let Some(layer) = res.layers.iter().find(|l| l.r == d) {
            if let Some(best) = layer.survivors.iter().map(|c| c.mu).min() {
                running = running.min(best);
            }
        }
        synth_by_depth.push(running);
    }

    let per_depth = (1..=r_max)
        .map(|d| {
            let synthesis_mu = synth_by_depth[d - 1];
            let oracle_mu = oracle.best_up_to(d);
            GapRow { depth: d, synthesis_mu, oracle_mu, gap: synthesis_mu.saturating_sub(oracle_mu) }
        })
        .collect();

    let terminal_depth = match &res.outcome {
        Outcome::Success { r_star, .. } => *r_star,
        Outcome::Exhausted { layer, .. } => *layer,
    };
    let oracle_global = oracle.best_up_to(r_max);
    let synthesis_mu = res.best_mu();
    let terminal = GapRow {
        depth: terminal_depth,
        synthesis_mu,
        oracle_mu: oracle_global,
        gap: synthesis_mu.saturating_sub(oracle_global),
    };
    Ok(GapReport { per_depth, terminal, synthesis_success: res.is_success(), oracle })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube(m: usize, target: impl Fn(&[bool]) -> bool) -> BooleanLearningSet {
        let rows: Vec<Vec<bool>> =
            (0..1usize << m).map(|i| (0..m).map(|j| i >> (m - 1 - j) & 1 == 1).collect()).collect();
        let labels: Vec<bool> = rows.iter().map(|r| target(r)).collect();
        BooleanLearningSet::from_rows(&rows, &labels).unwrap()
    }

    #[test]
    fn q_layer_examples() {
        assert_eq!(q_layer(5, 1).unwrap(), BigUint::from(100u32));
        assert_eq!(q_layer(5, 2).unwrap(), BigUint::from(5000u32));
        assert_eq!(q_layer(5, 3).unwrap(), BigUint::from(250_000u32));
        assert_eq!(q_layer(2, 1).unwrap(), BigUint::from(10u32));
        assert!(q_layer(1, 1).is_err());
        assert!(q_layer(3, 0).is_err());
    }

    #[test]
    fn inequality_examples() {
        let r = check_inequality(5, 2).unwrap();
        assert_eq!(r.q_star, Some(BigUint::from(4_294_967_296u64)));
        assert_eq!(r.q_sum, BigUint::from(5100u32));
        assert!(r.holds);
        assert!(r.note.as_deref().unwrap().contains("9,940"));
        assert!(r.to_string().contains("4,294,967,296"));
        let r = check_inequality(2, 1).unwrap();
        assert_eq!(r.q_sum, BigUint::from(10u32));
        assert_eq!(r.q_star, Some(BigUint::from(16u32)));
        assert!(r.holds && r.note.is_none());
        let wide = check_inequality(31, 3).unwrap();
        assert!(wide.holds && wide.q_star.is_none());
    }

    #[test]
    fn grouping() {
        assert_eq!(group_digits(&BigUint::from(4_294_967_296u64)), "4,294,967,296");
        assert_eq!(group_digits(&BigUint::from(100u32)), "100");
        assert_eq!(group_digits(&BigUint::from(5100u32)), "5,100");
    }

    #[test]
    fn oracle_examples() {
        let b = cube(5, |r| r[0] & r[3]);
        assert_eq!(enumerate_unpruned(&b, 1).unwrap().counts, vec![100]);
        let parity = cube(3, |r| r[0] ^ r[1] ^ r[2]);
        let o = enumerate_unpruned(&parity, 2).unwrap();
        assert_eq!(o.best_mu, vec![4, 0]);
        assert_eq!(o.counts, vec![30, 900]);
        let and2 = cube(2, |r| r[0] & r[1]);
        assert_eq!(enumerate_unpruned(&and2, 1).unwrap().best_mu, vec![0]);
        assert!(matches!(enumerate_unpruned(&cube(7, |r| r[0]), 1), Err(Error::OracleGuard { .. })));
        assert!(enumerate_unpruned(&parity, 4).is_err());
    }

    #[test]
    fn gap_examples() {
        let and = pruning_gap(&cube(3, |r| r[0] & r[1]), 1).unwrap();
        assert!(and.synthesis_success);
        assert_eq!(and.per_depth[0].gap, 0);
        assert_eq!(and.terminal.gap, 0);

        let parity = pruning_gap(&cube(3, |r| r[0] ^ r[1] ^ r[2]), 2).unwrap();
        assert!(!parity.synthesis_success);
        assert_eq!(parity.per_depth[0].gap, 0);
        assert_eq!(parity.per_depth[1], GapRow { depth: 2, synthesis_mu: 4, oracle_mu: 0, gap: 4 });
        assert_eq!(parity.terminal, GapRow { depth: 1, synthesis_mu: 4, oracle_mu: 0, gap: 4 });
    }
}
