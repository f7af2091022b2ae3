//! Deterministic JSON reports.
//!
//! Every command emits a single JSON document on standard output with the
//! same envelope: the command name, a digest of the raw input bytes, the
//! command-specific payload, wall-clock timing (null unless requested, so
//! that identical inputs yield identical bytes), and accumulated warnings.
//! serde_json keeps object keys sorted, and all rationals are rendered as
//! strings, so exactness and byte-determinism survive serialization.

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use formalflow::Error;

/// `sha256:<hex>` digest of the raw input bytes.
pub fn digest(input: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(input);
    format!("sha256:{:x}", hasher.finalize())
}

/// Assemble the envelope and pretty-print it (trailing newline included).
pub fn envelope(
    command: &str,
    input_digest: &str,
    payload: Value,
    timing_ms: Option<u128>,
    warnings: &[String],
) -> String {
    let doc = json!({
        "command": command,
        "digest": input_digest,
        "payload": payload,
        "timing_ms": timing_ms.map(|ms| ms as u64),
        "warnings": warnings,
    });
    let mut out = serde_json::to_string_pretty(&doc).expect("report serialization");
    out.push('\n');
    out
}

/// Single-line machine-parsable error document.
pub fn error_line(message: &str) -> String {
    serde_json::to_string(&json!({ "error": message })).expect("error serialization")
}

/// Exit code for an engine error: 1 for malformed input, 2 for an exhausted
/// work cap.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Input(_) => 1,
        Error::Resource(_) => 2,
    }
}

/// Render a list of displayable values as JSON strings.
pub fn strings<T: std::fmt::Display>(items: impl IntoIterator<Item = T>) -> Value {
    Value::Array(
        items
            .into_iter()
            .map(|x| Value::String(x.to_string()))
            .collect(),
    )
}
