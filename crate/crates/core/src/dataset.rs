//! Labeled instance tables, threshold quantization and the Boolean learning set.

use std::collections::HashMap;
use std::fmt;
use std::io::Read;
use std::path::Path;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::error::{Error, Result};

/// Name of the label column in CSV input.
pub const LABEL_COLUMN: &str = "class";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FeatureKind {
    Quantitative,
    Boolean,
}

impl FromStr for FeatureKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "quantitative" | "q" | "real" | "numeric" => Ok(FeatureKind::Quantitative),
            "boolean" | "b" | "bool" | "bit" => Ok(FeatureKind::Boolean),
            other => Err(format!("unknown feature kind `{other}`")),
        }
    }
}

impl fmt::Display for FeatureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FeatureKind::Quantitative => "quantitative",
            FeatureKind::Boolean => "boolean",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeatureSpec {
    pub name: String,
    pub kind: FeatureKind,
}

impl FeatureSpec {
    pub fn new(name: impl Into<String>, kind: FeatureKind) -> Self {
        FeatureSpec { name: name.into(), kind }
    }
}

/// Per-feature kind declarations, read from a sidecar file.
///
/// One `name: kind` pair per line; blank lines and `#` comments are ignored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Schema {
    kinds: HashMap<String, FeatureKind>,
}

impl Schema {
    pub fn parse(text: &str) -> Result<Self> {
        let mut kinds = HashMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (name, kind) = line
                .split_once(':')
                .or_else(|| line.split_once('='))
                .ok_or_else(|| Error::Schema { line: i + 1, message: "expected `name: kind`".into() })?;
            let name = name.trim();
            if name.is_empty() {
                return Err(Error::Schema { line: i + 1, message: "empty feature name".into() });
            }
            let kind = kind.parse().map_err(|message| Error::Schema { line: i + 1, message })?;
            if kinds.insert(name.to_string(), kind).is_some() {
                return Err(Error::Schema { line: i + 1, message: format!("`{name}` declared twice") });
            }
        }
        Ok(Schema { kinds })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    pub fn insert(&mut self, name: impl Into<String>, kind: FeatureKind) {
        self.kinds.insert(name.into(), kind);
    }

    pub fn kind(&self, name: &str) -> Option<FeatureKind> {
        self.kinds.get(name).copied()
    }
}

/// n labeled instances over m quantitative or Boolean features.
#[derive(Clone, Debug, PartialEq)]
pub struct LearningSet {
    features: Vec<FeatureSpec>,
    rows: Vec<Vec<f64>>,
    labels: Vec<bool>,
}

impl LearningSet {
    pub fn new(features: Vec<FeatureSpec>, rows: Vec<Vec<f64>>, labels: Vec<bool>) -> Result<Self> {
        check_feature_names(&features)?;
        if rows.len() != labels.len() {
            return Err(Error::LengthMismatch { left: rows.len(), right: labels.len() });
        }
        if rows.len() < 2 {
            return Err(Error::InvalidLearningSet(format!("need n >= 2 instances, got {}", rows.len())));
        }
        if labels.iter().all(|&l| l) || labels.iter().all(|&l| !l) {
            return Err(Error::InvalidLearningSet("both classes must be present".into()));
        }
        for (r, row) in rows.iter().enumerate() {
            if row.len() != features.len() {
                return Err(Error::RowWidth { row: r + 1, expected: features.len(), found: row.len() });
            }
            for (c, (&v, f)) in row.iter().zip(&features).enumerate() {
                check_cell(v, f.kind, r + 1, c + 1)?;
            }
        }
        Ok(LearningSet { features, rows, labels })
    }

    pub fn features(&self) -> &[FeatureSpec] {
        &self.features
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn labels(&self) -> &[bool] {
        &self.labels
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn m(&self) -> usize {
        self.features.len()
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        self.rows.iter().map(|r| r[j]).collect()
    }
}

fn check_feature_names(features: &[FeatureSpec]) -> Result<()> {
    let mut seen: HashMap<&str, usize> = HashMap::new();
    for (i, f) in features.iter().enumerate() {
        if f.name.trim().is_empty() {
            return Err(Error::InvalidLearningSet(format!("feature {} has an empty name", i + 1)));
        }
        if let Some(&first) = seen.get(f.name.as_str()) {
            return Err(Error::DuplicateFeature { name: f.name.clone(), first: first + 1, second: i + 1 });
        }
        seen.insert(&f.name, i);
    }
    Ok(())
}

fn check_cell(v: f64, kind: FeatureKind, row: usize, column: usize) -> Result<()> {
    match kind {
        FeatureKind::Quantitative if !v.is_finite() => {
            Err(Error::NonNumeric { row, column, value: v.to_string() })
        }
        FeatureKind::Boolean if v != 0.0 && v != 1.0 => {
            Err(Error::NonBooleanFeature { row, column, value: v.to_string() })
        }
        _ => Ok(()),
    }
}

fn parse_number(cell: &str, row: usize, column: usize) -> Result<f64> {
    let trimmed = cell.trim();
    match trimmed.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(Error::NonNumeric { row, column, value: trimmed.to_string() }),
    }
}

fn parse_label(cell: &str, row: usize, column: usize) -> Result<bool> {
    let trimmed = cell.trim();
    match trimmed.parse::<f64>() {
        Ok(0.0) => Ok(false),
        Ok(1.0) => Ok(true),
        _ => Err(Error::NonBinaryLabel { row, column, value: trimmed.to_string() }),
    }
}

/// Reads a labeled CSV. Feature kinds come from `schema` when given; otherwise a
/// column whose cells are all 0 or 1 is taken as Boolean.
///
/// Error positions are 1-based data rows (header excluded) and 1-based columns.
pub fn load_csv(path: impl AsRef<Path>, schema: Option<&Schema>) -> Result<LearningSet> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_csv(file, schema)
}

pub fn read_csv(reader: impl Read, schema: Option<&Schema>) -> Result<LearningSet> {
    let mut rdr = csv::ReaderBuilder::new().flexible(true).trim(csv::Trim::All).from_reader(reader);
    let header: Vec<String> =
        rdr.headers().map_err(|e| Error::Csv(e.to_string()))?.iter().map(str::to_string).collect();
    let label_col = header.iter().position(|h| h == LABEL_COLUMN).ok_or(Error::MissingLabelColumn)?;
    let feature_cols: Vec<usize> = (0..header.len()).filter(|&c| c != label_col).collect();

    let mut seen: HashMap<&str, usize> = HashMap::new();
    for &c in &feature_cols {
        if let Some(first) = seen.insert(&header[c], c) {
            return Err(Error::DuplicateFeature { name: header[c].clone(), first: first + 1, second: c + 1 });
        }
    }

    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for (r, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| Error::Csv(e.to_string()))?;
        if record.len() != header.len() {
            return Err(Error::RowWidth { row: r + 1, expected: header.len(), found: record.len() });
        }
        labels.push(parse_label(&record[label_col], r + 1, label_col + 1)?);
        let row = feature_cols
            .iter()
            .map(|&c| parse_number(&record[c], r + 1, c + 1))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }

    let features = feature_cols
        .iter()
        .enumerate()
        .map(|(j, &c)| {
            let name = &header[c];
            let kind = match schema {
                Some(s) => s.kind(name).ok_or_else(|| Error::Schema {
                    line: 0,
                    message: format!("no kind declared for column `{name}`"),
                })?,
                None if rows.iter().all(|row| row[j] == 0.0 || row[j] == 1.0) => FeatureKind::Boolean,
                None => FeatureKind::Quantitative,
            };
            Ok(FeatureSpec::new(name.clone(), kind))
        })
        .collect::<Result<Vec<_>>>()?;

    LearningSet::new(features, rows, labels)
}

/// Reads rows to classify against a known feature schema. A `class` column is
/// ignored when present. Row-level problems are returned per row.
pub fn read_unlabeled(reader: impl Read, features: &[FeatureSpec]) -> Result<Vec<Result<Vec<f64>>>> {
    let mut rdr = csv::ReaderBuilder::new().flexible(true).trim(csv::Trim::All).from_reader(reader);
    let header: Vec<String> =
        rdr.headers().map_err(|e| Error::Csv(e.to_string()))?.iter().map(str::to_string).collect();
    let cols = features
        .iter()
        .map(|f| {
            header.iter().position(|h| *h == f.name).ok_or_else(|| Error::Schema {
                line: 0,
                message: format!("input has no column `{}`", f.name),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut out = Vec::new();
    for (r, record) in rdr.records().enumerate() {
        let row = record.map_err(|e| Error::Csv(e.to_string())).and_then(|record| {
            if record.len() != header.len() {
                return Err(Error::RowWidth { row: r + 1, expected: header.len(), found: record.len() });
            }
            cols.iter()
                .zip(features)
                .map(|(&c, f)| {
                    let v = parse_number(&record[c], r + 1, c + 1)?;
                    check_cell(v, f.kind, r + 1, c + 1)?;
                    Ok(v)
                })
                .collect()
        });
        out.push(row);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    /// z = 1 iff x >= u
    Direct,
    /// z = 0 iff x >= u
    Inverted,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Threshold {
    pub u: f64,
    pub polarity: Polarity,
    pub train_errors: usize,
    #[serde(default)]
    pub degenerate: bool,
}

impl Threshold {
    #[inline]
    pub fn apply(&self, x: f64) -> bool {
        (x >= self.u) ^ (self.polarity == Polarity::Inverted)
    }
}

/// Picks the threshold and polarity with the fewest training errors for the
/// one-bit classifier `z`. Candidates are a sentinel below the minimum plus the
/// midpoints between consecutive distinct values; ties go to the smaller
/// threshold, then to direct polarity.
pub fn quantize_feature(values: &[f64], labels: &[bool]) -> Result<Threshold> {
    if values.len() != labels.len() {
        return Err(Error::LengthMismatch { left: values.len(), right: labels.len() });
    }
    if values.len() < 2 {
        return Err(Error::InvalidLearningSet("quantization needs n >= 2".into()));
    }
    if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
        return Err(Error::NonNumeric { row: 0, column: 0, value: bad.to_string() });
    }

    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));

    let total1 = labels.iter().filter(|&&l| l).count();
    let total0 = labels.len() - total1;
    let min = values[order[0]];

    // Sentinel: every x is >= u, so direct predicts all ones, inverted all zeros.
    let sentinel = min - 1.0f64.max(min.abs() * 1e-9);
    let mut best = if total0 <= total1 {
        Threshold { u: sentinel, polarity: Polarity::Direct, train_errors: total0, degenerate: false }
    } else {
        Threshold { u: sentinel, polarity: Polarity::Inverted, train_errors: total1, degenerate: false }
    };

    let (mut below0, mut below1) = (0usize, 0usize);
    let mut i = 0;
    while i < order.len() {
        let v = values[order[i]];
        while i < order.len() && values[order[i]] == v {
            if labels[order[i]] {
                below1 += 1;
            } else {
                below0 += 1;
            }
            i += 1;
        }
        let Some(&next) = order.get(i) else { break };
        let w = values[next];
        let mid = v + (w - v) / 2.0;
        let u = if mid > v { mid } else { w };

        let direct = (total0 - below0) + below1;
        let inverted = below0 + (total1 - below1);
        if direct < best.train_errors {
            best = Threshold { u, polarity: Polarity::Direct, train_errors: direct, degenerate: false };
        }
        if inverted < best.train_errors {
            best = Threshold { u, polarity: Polarity::Inverted, train_errors: inverted, degenerate: false };
        }
    }

    if values[order[0]] == values[order[order.len() - 1]] {
        best.degenerate = true;
    }
    Ok(best)
}

/// Thresholds for the quantitative features, aligned with the feature list.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct QuantizationSpec {
    pub thresholds: Vec<Option<Threshold>>,
}

impl QuantizationSpec {
    pub fn identity(m: usize) -> Self {
        QuantizationSpec { thresholds: vec![None; m] }
    }

    pub fn threshold(&self, j: usize) -> Option<&Threshold> {
        self.thresholds.get(j).and_then(Option::as_ref)
    }

    /// Checks that exactly the quantitative features carry a threshold.
    pub fn validate(&self, features: &[FeatureSpec]) -> Result<()> {
        if self.thresholds.len() != features.len() {
            return Err(Error::LengthMismatch { left: self.thresholds.len(), right: features.len() });
        }
        for (t, f) in self.thresholds.iter().zip(features) {
            match (f.kind, t) {
                (FeatureKind::Quantitative, None) => return Err(Error::MissingThreshold(f.name.clone())),
                (FeatureKind::Boolean, Some(_)) => {
                    return Err(Error::Config(format!("boolean feature `{}` has a threshold", f.name)))
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// Converts one raw row to sensor bits.
    pub fn binarize_row(&self, features: &[FeatureSpec], row: &[f64]) -> Result<Vec<bool>> {
        if row.len() != features.len() {
            return Err(Error::LengthMismatch { left: row.len(), right: features.len() });
        }
        row.iter()
            .zip(features)
            .enumerate()
            .map(|(j, (&x, f))| match f.kind {
                FeatureKind::Boolean if x == 0.0 || x == 1.0 => Ok(x == 1.0),
                FeatureKind::Boolean => {
                    Err(Error::NonBooleanFeature { row: 0, column: j + 1, value: x.to_string() })
                }
                FeatureKind::Quantitative => {
                    let t = self.threshold(j).ok_or_else(|| Error::MissingThreshold(f.name.clone()))?;
                    if !x.is_finite() {
                        return Err(Error::NonNumeric { row: 0, column: j + 1, value: x.to_string() });
                    }
                    Ok(t.apply(x))
                }
            })
            .collect()
    }
}

/// The sensor matrix z (stored column-wise) with its labels.
#[derive(Clone, Debug, PartialEq)]
pub struct BooleanLearningSet {
    features: Vec<FeatureSpec>,
    columns: Vec<Bits>,
    labels: Bits,
    quantization: QuantizationSpec,
}

impl BooleanLearningSet {
    /// Builds a set directly from sensor rows; every feature is Boolean.
    pub fn from_rows(rows: &[Vec<bool>], labels: &[bool]) -> Result<Self> {
        let m = rows.first().map_or(0, Vec::len);
        let features = (0..m).map(|j| FeatureSpec::new(format!("x{j}"), FeatureKind::Boolean)).collect();
        Self::with_features(features, rows, labels)
    }

    pub fn with_features(features: Vec<FeatureSpec>, rows: &[Vec<bool>], labels: &[bool]) -> Result<Self> {
        check_feature_names(&features)?;
        let m = features.len();
        if rows.len() != labels.len() {
            return Err(Error::LengthMismatch { left: rows.len(), right: labels.len() });
        }
        if let Some((r, row)) = rows.iter().enumerate().find(|(_, row)| row.len() != m) {
            return Err(Error::RowWidth { row: r + 1, expected: m, found: row.len() });
        }
        let columns = (0..m).map(|j| Bits::from_bools(rows.iter().map(|r| r[j]))).collect();
        let quantization = QuantizationSpec::identity(m);
        Ok(BooleanLearningSet { features, columns, labels: Bits::from_bools(labels.iter().copied()), quantization })
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn m(&self) -> usize {
        self.columns.len()
    }

    pub fn features(&self) -> &[FeatureSpec] {
        &self.features
    }

    pub fn column(&self, j: usize) -> &Bits {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[Bits] {
        &self.columns
    }

    pub fn labels(&self) -> &Bits {
        &self.labels
    }

    pub fn quantization(&self) -> &QuantizationSpec {
        &self.quantization
    }

    pub fn row(&self, i: usize) -> Vec<bool> {
        self.columns.iter().map(|c| c.get(i)).collect()
    }

    pub fn rows(&self) -> impl Iterator<Item = Vec<bool>> + '_ {
        (0..self.n()).map(|i| self.row(i))
    }

    /// Restricts to a subset of instances, keeping the given order.
    pub fn subset(&self, indices: &[usize]) -> BooleanLearningSet {
        BooleanLearningSet {
            features: self.features.clone(),
            columns: self.columns.iter().map(|c| c.select(indices)).collect(),
            labels: self.labels.select(indices),
            quantization: self.quantization.clone(),
        }
    }
}

/// Quantizes the learning set. With no spec, a threshold is fitted for every
/// quantitative column.
pub fn binarize(set: &LearningSet, spec: Option<&QuantizationSpec>) -> Result<BooleanLearningSet> {
    let quantization = match spec {
        Some(spec) => {
            spec.validate(set.features())?;
            spec.clone()
        }
        None => {
            let thresholds = set
                .features()
                .par_iter()
                .enumerate()
                .map(|(j, f)| match f.kind {
                    FeatureKind::Boolean => Ok(None),
                    FeatureKind::Quantitative => quantize_feature(&set.column(j), set.labels()).map(Some),
                })
                .collect::<Result<Vec<_>>>()?;
            QuantizationSpec { thresholds }
        }
    };

    let columns = (0..set.m())
        .map(|j| {
            Bits::from_bools(set.rows().iter().map(|row| match quantization.threshold(j) {
                Some(t) => t.apply(row[j]),
                None => row[j] == 1.0,
            }))
        })
        .collect();
    Ok(BooleanLearningSet {
        features: set.features().to_vec(),
        columns,
        labels: Bits::from_bools(set.labels().iter().copied()),
        quantization,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum SplitStrategy {
    /// Even positions to A, odd to B.
    Interleave,
    /// Seeded shuffle, then the first half (rounded up) to A.
    Random { seed: u64 },
}

/// Partitions `0..n` into two subsets whose sizes differ by at most one.
/// Both index lists are returned sorted.
pub fn split_ab(n: usize, strategy: SplitStrategy) -> Result<(Vec<usize>, Vec<usize>)> {
    if n < 4 {
        return Err(Error::SplitTooSmall(n));
    }
    match strategy {
        SplitStrategy::Interleave => {
            Ok(((0..n).step_by(2).collect(), (1..n).step_by(2).collect()))
        }
        SplitStrategy::Random { seed } => {
            let mut idx: Vec<usize> = (0..n).collect();
            idx.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            let (a, b) = idx.split_at(n.div_ceil(2));
            let (mut a, mut b) = (a.to_vec(), b.to_vec());
            a.sort_unstable();
            b.sort_unstable();
            Ok((a, b))
        }
    }
}
