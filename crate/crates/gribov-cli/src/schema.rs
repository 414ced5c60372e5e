//! JSON spec documents and their schema.
//!
//! The wire format is a flat object:
//!
//! ```json
//! {
//!   "n": 2,
//!   "diag_couplings": [1.0, 1.0],
//!   "off_entries": [
//!     {"i": 1, "j": 2, "lambda1": 0.0, "lambda": 0.5, "mu": 0.0, "beta": 1.0}
//!   ]
//! }
//! ```
//!
//! Unknown fields are rejected, omitted entry couplings default to the
//! zero entry (`beta = 1`), duplicate `(i, j)` pairs are rejected, and all
//! block-spec invariants are enforced before any computation runs.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::json;

use gribov_core::block::{validate_spec, BlockSpec, EntryParams};

use crate::CliError;

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OffEntry {
    pub i: usize,
    pub j: usize,
    #[serde(default)]
    pub lambda1: f64,
    #[serde(default)]
    pub lambda: f64,
    #[serde(default)]
    pub mu: f64,
    #[serde(default = "one")]
    pub beta: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDocument {
    pub n: usize,
    pub diag_couplings: Vec<f64>,
    #[serde(default)]
    pub off_entries: Vec<OffEntry>,
}

impl SpecDocument {
    /// Converts to the core spec, rejecting duplicate index pairs and any
    /// invariant violation.
    pub fn to_block_spec(&self) -> Result<BlockSpec, CliError> {
        let mut off = BTreeMap::new();
        for e in &self.off_entries {
            let params =
                EntryParams { lambda1: e.lambda1, lambda: e.lambda, mu: e.mu, beta: e.beta };
            if off.insert((e.i, e.j), params).is_some() {
                return Err(CliError::Validation(format!(
                    "duplicate off_entries pair ({}, {})",
                    e.i, e.j
                )));
            }
        }
        let spec = BlockSpec { n: self.n, diag_couplings: self.diag_couplings.clone(), off_entries: off };
        let violations = validate_spec(&spec);
        if !violations.is_empty() {
            let detail: Vec<String> =
                violations.iter().map(|v| format!("{}: {}", v.field, v.reason)).collect();
            return Err(CliError::Validation(format!("invalid spec: {}", detail.join("; "))));
        }
        Ok(spec)
    }
}

/// Reads and validates a spec file; errors name the path and, for JSON
/// problems, the line and column.
pub fn load_spec(path: &Path) -> Result<(SpecDocument, BlockSpec), CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        CliError::Validation(format!("cannot read spec file '{}': {e}", path.display()))
    })?;
    let doc: SpecDocument = serde_json::from_str(&text).map_err(|e| {
        CliError::Validation(format!(
            "malformed JSON in '{}' at line {} column {}: {e}",
            path.display(),
            e.line(),
            e.column()
        ))
    })?;
    let spec = doc.to_block_spec()?;
    Ok((doc, spec))
}

/// JSON Schema for the spec document.
pub fn spec_schema() -> serde_json::Value {
    json!({
        "$schema": "http://json-schema.org/draft-07/schema#",
        "title": "gribov block spec",
        "type": "object",
        "required": ["n", "diag_couplings"],
        "additionalProperties": false,
        "properties": {
            "n": {
                "type": "integer",
                "minimum": 2,
                "description": "number of diagonal blocks"
            },
            "diag_couplings": {
                "type": "array",
                "items": {"type": "number", "not": {"const": 0.0}},
                "description": "magic couplings lambda''_j, one per block, each nonzero"
            },
            "off_entries": {
                "type": "array",
                "description": "off-diagonal entries over distinct (i, j); omitted pairs are the zero entry; duplicate pairs are rejected",
                "items": {
                    "type": "object",
                    "required": ["i", "j"],
                    "additionalProperties": false,
                    "properties": {
                        "i": {"type": "integer", "minimum": 1},
                        "j": {"type": "integer", "minimum": 1},
                        "lambda1": {"type": "number", "default": 0.0, "description": "four coupling lambda'_{ij}"},
                        "lambda": {"type": "number", "default": 0.0, "description": "triple coupling lambda_{ij}"},
                        "mu": {"type": "number", "default": 0.0, "description": "intercept mu_{ij}"},
                        "beta": {
                            "type": "number",
                            "exclusiveMinimum": 0.0,
                            "exclusiveMaximum": 3.0,
                            "default": 1.0,
                            "description": "diagonal exponent beta_{ij}"
                        }
                    }
                }
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conforming_document_is_accepted() {
        let text = r#"{
            "n": 2,
            "diag_couplings": [1.0, -2.0],
            "off_entries": [{"i": 1, "j": 2, "mu": 0.5}]
        }"#;
        let doc: SpecDocument = serde_json::from_str(text).unwrap();
        let spec = doc.to_block_spec().unwrap();
        assert_eq!(spec.entry(1, 2).mu, 0.5);
        assert_eq!(spec.entry(1, 2).beta, 1.0); // defaulted
        assert_eq!(spec.entry(2, 1), EntryParams::default());
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = r#"{"n": 2, "diag_couplings": [1, 1], "extra": true}"#;
        assert!(serde_json::from_str::<SpecDocument>(text).is_err());
        let text = r#"{"n": 2, "diag_couplings": [1, 1],
                       "off_entries": [{"i": 1, "j": 2, "gamma": 3}]}"#;
        assert!(serde_json::from_str::<SpecDocument>(text).is_err());
    }

    #[test]
    fn closed_beta_endpoint_is_rejected() {
        let text = r#"{"n": 2, "diag_couplings": [1, 1],
                       "off_entries": [{"i": 1, "j": 2, "beta": 3.0}]}"#;
        let doc: SpecDocument = serde_json::from_str(text).unwrap();
        let err = doc.to_block_spec().unwrap_err();
        assert!(err.to_string().contains("beta out of (0,3)"));
    }

    #[test]
    fn duplicate_pairs_are_rejected() {
        let text = r#"{"n": 2, "diag_couplings": [1, 1],
                       "off_entries": [{"i": 1, "j": 2}, {"i": 1, "j": 2, "mu": 1.0}]}"#;
        let doc: SpecDocument = serde_json::from_str(text).unwrap();
        let err = doc.to_block_spec().unwrap_err();
        assert!(err.to_string().contains("duplicate"));
    }

    #[test]
    fn schema_is_valid_json_with_required_fields() {
        let schema = spec_schema();
        assert_eq!(schema["type"], "object");
        assert_eq!(schema["required"][0], "n");
        let props = schema["properties"].as_object().unwrap();
        assert!(props.contains_key("off_entries"));
    }
}
