//! Serialization helpers and run manifests.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Version of every JSON and CSV layout emitted by the CLI.
pub const SCHEMA_VERSION: u32 = 1;

/// Largest magnitude emitted as a JSON number; larger integers become strings.
pub const MAX_SAFE_JSON_INT: i128 = 1 << 53;

pub fn json_int(x: impl Into<i128>) -> Value {
    let x = x.into();
    if x.abs() <= MAX_SAFE_JSON_INT {
        Value::from(x as i64)
    } else {
        Value::from(x.to_string())
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Provenance record for one CLI invocation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub seed: Option<u64>,
    pub tool_version: String,
    pub schema_version: u32,
    pub timestamp: String,
    /// SHA-256 of the payload bytes exactly as written to stdout.
    pub output_digest: String,
}

impl RunManifest {
    pub fn new(
        command: &str,
        parameters: BTreeMap<String, String>,
        seed: Option<u64>,
        payload: &[u8],
    ) -> Self {
        RunManifest {
            command: command.to_string(),
            parameters,
            seed,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            schema_version: SCHEMA_VERSION,
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            output_digest: sha256_hex(payload),
        }
    }

    pub fn verify(&self, payload: &[u8]) -> bool {
        self.output_digest == sha256_hex(payload)
    }
}

/// Comma-separated rows with a header, `\n` line endings.
pub fn csv<R: AsRef<[String]>>(header: &[&str], rows: impl IntoIterator<Item = R>) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.as_ref().join(","));
        out.push('\n');
    }
    out
}
