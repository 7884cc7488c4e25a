//! Model files: human-readable JSON with a format version and a SHA-256
//! digest over every semantic field.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::classic::{ClassicConfig, ClassicResult};
use crate::collective::{Chi0, Collective};
use crate::dataset::{BooleanLearningSet, FeatureSpec, QuantizationSpec};
use crate::error::{Error, Result};
use crate::network::Expr;
use crate::synthesis::{LayerTrace, Outcome, SynthesisConfig, SynthesisResult};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Criterion {
    Exterior,
    Classic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MemberRecord {
    pub signature: String,
    pub mu: usize,
    pub layer: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Success,
    Exhausted,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutcomeRecord {
    pub status: Status,
    /// r* on success; the last generated layer otherwise.
    pub depth: usize,
    pub reason: Option<String>,
    pub best_mu: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "criterion")]
pub enum TrainConfig {
    Exterior(SynthesisConfig),
    Classic(ClassicConfig),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum TrainTrace {
    Exterior { layers: Vec<LayerTrace>, feature_mus: Vec<usize>, layer0_shortcut: bool },
    Classic { cr_trace: Vec<f64>, freedom: usize, structure: String },
}

/// Everything the digest covers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelBody {
    pub format_version: u32,
    pub criterion: Criterion,
    pub features: Vec<FeatureSpec>,
    pub quantization: QuantizationSpec,
    pub chi0: Chi0,
    pub outcome: OutcomeRecord,
    pub members: Vec<MemberRecord>,
    pub config: TrainConfig,
    pub trace: TrainTrace,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelFile {
    #[serde(flatten)]
    pub body: ModelBody,
    pub digest: String,
}

impl ModelBody {
    pub fn digest(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("model body serializes");
        hex::encode(Sha256::digest(&bytes))
    }

    pub fn seal(self) -> ModelFile {
        let digest = self.digest();
        ModelFile { body: self, digest }
    }
}

impl ModelFile {
    pub fn from_exterior(bset: &BooleanLearningSet, res: &SynthesisResult, config: SynthesisConfig, chi0: Chi0) -> Self {
        let (status, depth, reason) = match &res.outcome {
            Outcome::Success { r_star, .. } => (Status::Success, *r_star, None),
            Outcome::Exhausted { layer, reason, .. } => (Status::Exhausted, *layer, Some(reason.to_string())),
        };
        let members = res
            .members()
            .into_iter()
            .map(|c| MemberRecord { signature: c.signature(), mu: c.mu, layer: c.expr.depth() })
            .collect();
        ModelBody {
            format_version: FORMAT_VERSION,
            criterion: Criterion::Exterior,
            features: bset.features().to_vec(),
            quantization: bset.quantization().clone(),
            chi0,
            outcome: OutcomeRecord { status, depth, reason, best_mu: res.best_mu() },
            members,
            config: TrainConfig::Exterior(config),
            trace: TrainTrace::Exterior {
                layers: res.trace.clone(),
                feature_mus: res.feature_mus.clone(),
                layer0_shortcut: res.layer0_shortcut,
            },
        }
        .seal()
    }

    pub fn from_classic(bset: &BooleanLearningSet, res: &ClassicResult, config: ClassicConfig, chi0: Chi0) -> Self {
        let mu = res.model.mu;
        ModelBody {
            format_version: FORMAT_VERSION,
            criterion: Criterion::Classic,
            features: bset.features().to_vec(),
            quantization: bset.quantization().clone(),
            chi0,
            outcome: OutcomeRecord {
                status: if mu == 0 { Status::Success } else { Status::Exhausted },
                depth: res.r_star,
                reason: (mu > 0).then(|| "nonzero-loss".to_string()),
                best_mu: mu,
            },
            members: vec![MemberRecord { signature: res.model.signature(), mu, layer: res.r_star }],
            config: TrainConfig::Classic(config),
            trace: TrainTrace::Classic {
                cr_trace: res.cr_trace.clone(),
                freedom: res.freedom,
                structure: res.structure.clone(),
            },
        }
        .seal()
    }

    pub fn is_success(&self) -> bool {
        self.body.outcome.status == Status::Success
    }

    pub fn member_exprs(&self) -> Result<Vec<Arc<Expr>>> {
        self.body.members.iter().map(|m| m.signature.parse().map(Arc::new)).collect()
    }

    pub fn collective(&self) -> Result<Collective> {
        Collective::new(self.member_exprs()?, self.body.features.len(), self.body.chi0)
    }

    pub fn to_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("model serializes");
        s.push('\n');
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::MalformedModel(e.to_string()))?;
        let found = value
            .get("format_version")
            .and_then(serde_json::Value::as_u64)
            .ok_or_else(|| Error::MalformedModel("missing format_version".into()))?;
        if found != u64::from(FORMAT_VERSION) {
            return Err(Error::ModelVersion { found: found as u32, expected: FORMAT_VERSION });
        }
        let model: ModelFile = serde_json::from_value(value).map_err(|e| Error::MalformedModel(e.to_string()))?;
        let computed = model.body.digest();
        if computed != model.digest {
            return Err(Error::DigestMismatch { stored: model.digest, computed });
        }
        model.body.quantization.validate(&model.body.features)?;
        // grammar check on every member
        model.collective()?;
        Ok(model)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_text()).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_text(&text)
    }
}
