//! Report records shared by the verification suites.
//!
//! Every record serializes to one JSON object; the CLI streams them as JSON
//! lines. Exact quantities are rendered as `"num/den"` strings.

use serde::Serialize;
use serde_json::{Map, Value};

/// Outcome of checking one exact identity or inequality.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityRecord {
    pub identity: String,
    pub params: Map<String, Value>,
    pub pass: bool,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of a brute-force oracle check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub params: Map<String, Value>,
    pub pass: bool,
    pub detail: String,
}

/// Builds a JSON parameter map from `(name, value)` pairs.
pub fn params<I, K, V>(pairs: I) -> Map<String, Value>
where
    I: IntoIterator<Item = (K, V)>,
    K: Into<String>,
    V: Into<Value>,
{
    pairs
        .into_iter()
        .map(|(k, v)| (k.into(), v.into()))
        .collect()
}
