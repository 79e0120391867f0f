//! Machine-parseable command reports.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::verdict::Verdict;

pub const ENGINE: &str = concat!("trisect ", env!("CARGO_PKG_VERSION"));

/// `sha256:<hex>` of the input bytes.
pub fn digest(bytes: &[u8]) -> String {
    let hash = Sha256::digest(bytes);
    let mut out = String::from("sha256:");
    for b in hash.iter() {
        write!(out, "{b:02x}").expect("writing to a string");
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub operation: String,
    /// Digests of the inputs, in argument order.
    pub inputs: Vec<String>,
    /// Operation-specific results, in display order.
    pub fields: Vec<(String, String)>,
    /// Absent for plain transformations (stabilize, slide, …).
    pub verdict: Option<Verdict>,
    pub engine: String,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn new(operation: &str) -> Self {
        Report {
            operation: operation.to_string(),
            inputs: Vec::new(),
            fields: Vec::new(),
            verdict: None,
            engine: ENGINE.to_string(),
            elapsed_ms: 0,
        }
    }

    pub fn field(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.fields.push((key.to_string(), value.to_string()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// 0 for success or `Verified`, 1 for `Refuted`, 2 for `Unknown`.
    pub fn exit_code(&self) -> i32 {
        self.verdict.as_ref().map_or(0, |v| v.status.exit_code())
    }

    /// `key: value` lines; multi-line values continue on lines indented by two spaces.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: &str| {
            let mut parts = v.lines();
            match (parts.next(), v.contains('\n')) {
                (Some(first), false) => writeln!(out, "{k}: {first}"),
                _ => writeln!(out, "{k}:").and_then(|_| v.lines().try_for_each(|l| writeln!(out, "  {l}"))),
            }
            .expect("writing to a string");
        };
        line("operation", &self.operation);
        for d in &self.inputs {
            line("input", d);
        }
        if let Some(v) = &self.verdict {
            line("status", &v.status.to_string());
            line("reason", &v.reason);
        }
        for (k, v) in &self.fields {
            line(k, v);
        }
        if let Some(w) = self.verdict.as_ref().and_then(|v| v.witness.as_ref()) {
            line("witness", &serde_json::to_string(w).expect("witnesses serialize"));
        }
        line("engine", &self.engine);
        line("elapsed_ms", &self.elapsed_ms.to_string());
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}
