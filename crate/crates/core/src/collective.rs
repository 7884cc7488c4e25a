//! Majority voting over a collective of equally efficient networks and the
//! coherence coefficient chi = l1 / L.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::sync::Arc;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dataset::{FeatureSpec, QuantizationSpec};
use crate::error::{Error, Result};
use crate::network::Expr;

/// Largest number of relevant sensors a coherence map will enumerate.
pub const MAX_CUBE_BITS: usize = 24;

/// Plausibility threshold, held as an exact fraction in (0, 1].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Chi0(Ratio<u64>);

impl Chi0 {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num == 0 || num > den {
            return Err(Error::Config(format!("chi0 = {num}/{den} outside (0, 1]")));
        }
        Ok(Chi0(Ratio::new(num, den)))
    }

    pub fn ratio(&self) -> Ratio<u64> {
        self.0
    }
}

impl Default for Chi0 {
    fn default() -> Self {
        Chi0(Ratio::new(4, 5))
    }
}

/// Accepts `p/q` or a plain decimal such as `0.8`, parsed exactly.
impl FromStr for Chi0 {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Config(format!("cannot parse chi0 `{s}`"));
        if let Some((p, q)) = s.split_once('/') {
            let p = p.trim().parse().map_err(|_| bad())?;
            let q = q.trim().parse().map_err(|_| bad())?;
            return Chi0::new(p, q);
        }
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if frac.len() > 18 || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
        let den = 10u64.pow(frac.len() as u32);
        let frac: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        let num = int.checked_mul(den).and_then(|v| v.checked_add(frac)).ok_or_else(bad)?;
        Chi0::new(num, den)
    }
}

impl fmt::Display for Chi0 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl TryFrom<String> for Chi0 {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Chi0> for String {
    fn from(c: Chi0) -> String {
        c.to_string()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Decision {
    /// `None` on an exact tie.
    pub label: Option<bool>,
    /// Votes for the taken decision (half of L on a tie).
    pub l1: usize,
    pub total: usize,
    pub plausible: bool,
}

impl Decision {
    pub fn chi(&self) -> Ratio<u64> {
        Ratio::new(self.l1 as u64, self.total as u64)
    }

    pub fn chi_f64(&self) -> f64 {
        self.l1 as f64 / self.total as f64
    }

    pub fn is_abstain(&self) -> bool {
        self.label.is_none()
    }

    pub fn label_text(&self) -> &'static str {
        match self.label {
            Some(true) => "1",
            Some(false) => "0",
            None => "abstain",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Collective {
    members: Vec<Arc<Expr>>,
    width: usize,
    chi0: Chi0,
}

impl Collective {
    /// `width` is the number of sensors a row must carry.
    pub fn new(members: Vec<Arc<Expr>>, width: usize, chi0: Chi0) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::Config("a collective needs at least one member".into()));
        }
        let mut seen = HashSet::new();
        for e in &members {
            if e.max_feature() >= width {
                return Err(Error::FeatureOutOfRange { index: e.max_feature(), width });
            }
            if !seen.insert(e.signature()) {
                return Err(Error::Config(format!("duplicate member {}", e.signature())));
            }
        }
        Ok(Collective { members, width, chi0 })
    }

    pub fn members(&self) -> &[Arc<Expr>] {
        &self.members
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn chi0(&self) -> Chi0 {
        self.chi0
    }

    pub fn with_chi0(mut self, chi0: Chi0) -> Self {
        self.chi0 = chi0;
        self
    }

    /// Union of the sensors used by any member.
    pub fn features_used(&self) -> BTreeSet<usize> {
        self.members.iter().flat_map(|e| e.features_used()).collect()
    }

    pub fn vote(&self, sensors: &[bool]) -> Result<Decision> {
        if sensors.len() != self.width {
            return Err(Error::LengthMismatch { left: sensors.len(), right: self.width });
        }
        let mut ones = 0;
        for e in &self.members {
            ones += usize::from(e.eval(sensors)?);
        }
        Ok(self.decide(ones))
    }

    fn decide(&self, ones: usize) -> Decision {
        let total = self.members.len();
        let zeros = total - ones;
        let (label, l1) = match ones.cmp(&zeros) {
            std::cmp::Ordering::Greater => (Some(true), ones),
            std::cmp::Ordering::Less => (Some(false), zeros),
            std::cmp::Ordering::Equal => (None, ones),
        };
        let chi = Ratio::new(l1 as u64, total as u64);
        Decision { label, l1, total, plausible: label.is_some() && chi >= self.chi0.ratio() }
    }

    /// Votes on every combination of the relevant sensors. With `restrict`,
    /// only sensors used by some member are enumerated; the rest are held at 0.
    pub fn coherence_map(&self, restrict: bool) -> Result<CoherenceMap> {
        let features: Vec<usize> =
            if restrict { self.features_used().into_iter().collect() } else { (0..self.width).collect() };
        if features.len() > MAX_CUBE_BITS {
            return Err(Error::CubeTooLarge { relevant: features.len(), limit: MAX_CUBE_BITS });
        }
        let k = features.len();
        let rows = (0..1u64 << k)
            .into_par_iter()
            .map(|combo| {
                let bits: Vec<bool> = (0..k).map(|i| combo >> (k - 1 - i) & 1 == 1).collect();
                let decision = self.vote(&self.expand(&features, &bits))?;
                Ok(CoherenceRow { bits, decision })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CoherenceMap { features, rows })
    }

    /// Full-width sensor row with the given features set and all others 0.
    pub fn expand(&self, features: &[usize], bits: &[bool]) -> Vec<bool> {
        let mut row = vec![false; self.width];
        for (&j, &b) in features.iter().zip(bits) {
            row[j] = b;
        }
        row
    }

    /// Quantizes raw rows with the stored thresholds, then votes.
    pub fn classify_batch(
        &self,
        features: &[FeatureSpec],
        qspec: &QuantizationSpec,
        raw_rows: &[Vec<f64>],
    ) -> Vec<Result<Decision>> {
        raw_rows
            .par_iter()
            .enumerate()
            .map(|(i, row)| {
                let bits = qspec.binarize_row(features, row).map_err(|e| Error::RowSchema {
                    row: i + 1,
                    message: e.to_string(),
                })?;
                self.vote(&bits)
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoherenceRow {
    pub bits: Vec<bool>,
    pub decision: Decision,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoherenceMap {
    /// Enumerated sensors, most significant first.
    pub features: Vec<usize>,
    pub rows: Vec<CoherenceRow>,
}

impl CoherenceMap {
    /// CSV with one column per enumerated sensor, then label, l1, L, chi, plausible.
    pub fn write_csv(&self, out: impl Write, names: &[FeatureSpec]) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let csv_err = |e: csv::Error| Error::Csv(e.to_string());
        let mut header: Vec<String> = self.features.iter().map(|&j| names[j].name.clone()).collect();
        header.extend(["label", "l1", "L", "chi", "plausible"].map(String::from));
        w.write_record(&header).map_err(csv_err)?;
        for row in &self.rows {
            let d = &row.decision;
            let mut rec: Vec<String> = row.bits.iter().map(|&b| u8::from(b).to_string()).collect();
            rec.push(d.label_text().to_string());
            rec.push(d.l1.to_string());
            rec.push(d.total.to_string());
            rec.push(format!("{:.6}", d.chi_f64()));
            rec.push(d.plausible.to_string());
            w.write_record(&rec).map_err(csv_err)?;
        }
        w.flush().map_err(|e| Error::Csv(e.to_string()))
    }
}
