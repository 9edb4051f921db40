//! JSON model files: a source pmf, an optional channel and free-form labels.
//!
//! ```json
//! {
//!   "format_version": 1,
//!   "source": { "variables": ["S1", "S2"], "cardinalities": [2, 2],
//!               "probabilities": [0.3333333333333333, 0.3333333333333333, 0.0, 0.3333333333333334] },
//!   "channel": { "kind": "mac", "input_cardinalities": [2, 2],
//!                "outputs": [{ "name": "Y", "cardinality": 3 }],
//!                "table": [1, 0, 0,  0, 1, 0,  0, 1, 0,  0, 0, 1] },
//!   "labels": { "reference_b_min_infosep": 1.05 }
//! }
//! ```
//!
//! Tables are flat and row-major; the channel table is indexed by
//! `(x1, x2, outputs...)`.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::prob::OutputVar;
use crate::{ChannelKind, ChannelModel, Error, JointPmf, Result};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SourceBlock {
    pub variables: Vec<String>,
    pub cardinalities: Vec<usize>,
    pub probabilities: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelBlock {
    pub kind: ChannelKind,
    pub input_cardinalities: [usize; 2],
    pub outputs: Vec<OutputVar>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub receivers: Option<Vec<Vec<usize>>>,
    pub table: Vec<f64>,
}

/// On-disk representation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub format_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub source: SourceBlock,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub channel: Option<ChannelBlock>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub labels: BTreeMap<String, serde_json::Value>,
}

/// A validated model.
#[derive(Clone, Debug)]
pub struct Model {
    pub name: Option<String>,
    pub description: Option<String>,
    pub joint: JointPmf,
    pub channel: Option<ChannelModel>,
    pub labels: BTreeMap<String, serde_json::Value>,
}

impl Model {
    pub fn new(joint: JointPmf, channel: Option<ChannelModel>) -> Self {
        Self { name: None, description: None, joint, channel, labels: BTreeMap::new() }
    }

    pub fn from_file(file: ModelFile) -> Result<Self> {
        if file.format_version != FORMAT_VERSION {
            return Err(Error::Model(format!(
                "unsupported format_version {} (expected {FORMAT_VERSION})",
                file.format_version
            )));
        }
        let s = file.source;
        let joint = JointPmf::new(s.variables, s.cardinalities, s.probabilities)?;
        let channel = file
            .channel
            .map(|c| ChannelModel::new(c.kind, c.input_cardinalities, c.outputs, c.receivers, c.table))
            .transpose()?;
        Ok(Self { name: file.name, description: file.description, joint, channel, labels: file.labels })
    }

    pub fn to_file(&self) -> ModelFile {
        ModelFile {
            format_version: FORMAT_VERSION,
            name: self.name.clone(),
            description: self.description.clone(),
            source: SourceBlock {
                variables: self.joint.names().to_vec(),
                cardinalities: self.joint.cards().to_vec(),
                probabilities: self.joint.table().to_vec(),
            },
            channel: self.channel.as_ref().map(|c| ChannelBlock {
                kind: c.kind(),
                input_cardinalities: c.input_cards(),
                outputs: c.outputs().to_vec(),
                receivers: Some(c.receivers().to_vec()),
                table: c.table().to_vec(),
            }),
            labels: self.labels.clone(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ModelFile = serde_json::from_str(text).map_err(|e| Error::Model(e.to_string()))?;
        Self::from_file(file)
    }

    /// Pretty JSON with arrays of scalars kept on one line.
    pub fn to_json(&self) -> Result<String> {
        let value = serde_json::to_value(self.to_file())?;
        let mut out = String::new();
        write_value(&value, 0, &mut out);
        Ok(out)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::Model(format!("{}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| match e {
            Error::Model(msg) => Error::Model(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_json()? + "\n")?;
        Ok(())
    }

    /// The channel, or an error naming the operation that needs one.
    pub fn require_channel(&self, operation: &str) -> Result<&ChannelModel> {
        self.channel
            .as_ref()
            .ok_or_else(|| Error::Model(format!("{operation} needs a channel block in the model")))
    }

    /// Numeric label value, if present.
    pub fn label_f64(&self, key: &str) -> Option<f64> {
        self.labels.get(key).and_then(|v| v.as_f64())
    }
}

fn write_value(v: &serde_json::Value, indent: usize, out: &mut String) {
    use serde_json::Value;
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Array(items) if items.iter().all(|i| !i.is_array() && !i.is_object()) => {
            let parts: Vec<String> = items.iter().map(Value::to_string).collect();
            out.push('[');
            out.push_str(&parts.join(", "));
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(item, indent + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, item)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(item, indent + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn round_trip() {
        let mut m = Model::new(catalog::cover_salehi_w1(), Some(catalog::adder_mac()));
        m.labels.insert("reference_b_min_thm2".into(), serde_json::json!(0.92));
        let back = Model::from_json(&m.to_json().unwrap()).unwrap();
        assert_eq!(back.joint, m.joint);
        assert_eq!(back.channel, m.channel);
        assert_eq!(back.label_f64("reference_b_min_thm2"), Some(0.92));
    }

    #[test]
    fn rejects_bad_files() {
        let bad_version = r#"{"format_version": 9, "source": {"variables": ["S1"], "cardinalities": [1], "probabilities": [1.0]}}"#;
        assert!(matches!(Model::from_json(bad_version), Err(Error::Model(_))));
        let unnormalized = r#"{"format_version": 1, "source": {"variables": ["S1"], "cardinalities": [2], "probabilities": [0.5, 0.6]}}"#;
        assert!(matches!(Model::from_json(unnormalized), Err(Error::InvalidDistribution(_))));
        assert!(matches!(Model::from_json("{"), Err(Error::Model(_))));
        let ragged = r#"{"format_version": 1, "source": {"variables": ["S1","S2"], "cardinalities": [1,1], "probabilities": [1.0]},
            "channel": {"kind": "mac", "input_cardinalities": [2, 2], "outputs": [{"name": "Y", "cardinality": 2}], "table": [1, 0]}}"#;
        assert!(matches!(Model::from_json(ragged), Err(Error::DimensionMismatch(_))));
    }
}
