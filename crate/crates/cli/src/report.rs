//! Machine-readable run reports.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Provenance {
    pub seed: u64,
    pub max_set_size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub schema_version: u32,
    pub command: Vec<String>,
    pub inputs_digest: String,
    pub verdicts: BTreeMap<String, bool>,
    pub counts: BTreeMap<String, i128>,
    pub values: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    pub provenance: Provenance,
}

impl Report {
    pub fn new(command: Vec<String>, provenance: Provenance) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command,
            inputs_digest: String::new(),
            verdicts: BTreeMap::new(),
            counts: BTreeMap::new(),
            values: BTreeMap::new(),
            output: None,
            provenance,
        }
    }

    pub fn verdict(&mut self, name: &str, ok: bool) {
        self.verdicts.insert(name.to_owned(), ok);
    }

    pub fn count(&mut self, name: &str, value: impl Into<i128>) {
        self.counts.insert(name.to_owned(), value.into());
    }

    pub fn value(&mut self, name: &str, value: impl ToString) {
        self.values.insert(name.to_owned(), value.to_string());
    }

    pub fn passed(&self) -> bool {
        self.verdicts.values().all(|&ok| ok)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Artifact first, then one `name: value` line per entry.
    pub fn to_text(&self) -> String {
        let mut s = self.output.clone().unwrap_or_default();
        for (k, v) in &self.values {
            writeln!(s, "{k}: {v}").unwrap();
        }
        for (k, v) in &self.counts {
            writeln!(s, "{k}: {v}").unwrap();
        }
        for (k, v) in &self.verdicts {
            writeln!(s, "{k}: {}", if *v { "pass" } else { "FAIL" }).unwrap();
        }
        s
    }
}

/// SHA-256 over every input, each framed by its label and length.
#[derive(Default)]
pub struct InputsDigest(Sha256);

impl InputsDigest {
    pub fn add(&mut self, label: &str, bytes: &[u8]) {
        for part in [label.as_bytes(), bytes] {
            self.0.update((part.len() as u64).to_le_bytes());
            self.0.update(part);
        }
    }

    pub fn finish(self) -> String {
        hex::encode(self.0.finalize())
    }
}
