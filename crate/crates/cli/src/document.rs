//! The on-disk `AlgebraDocument` format: UTF-8 JSON with a sparse product
//! table.
//!
//! ```json
//! {
//!   "format_version": 1,
//!   "field": "GF(3)",
//!   "dim": 3,
//!   "entries": [ { "i": 0, "j": 1, "coeffs": [0, 0, 1] } ],
//!   "metadata": { "name": "heisenberg" }
//! }
//! ```
//!
//! Indices are 0-based; `[e_i, e_j] = Σ coeffs[k]·e_k`. Residues are JSON
//! integers in `0..p`, rationals are strings `"a"` or `"a/b"`. Products not
//! listed are zero.

use std::collections::BTreeSet;

use leibniz_core::{AlgebraTable, FieldSpec, Scalar};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error, PartialEq)]
pub enum DocError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("unsupported format_version {0} (expected {FORMAT_VERSION})")]
    Version(u32),
    #[error("unknown field `{0}` (use --lenient to ignore)")]
    UnknownField(String),
    #[error("invalid field descriptor: {0}")]
    Field(leibniz_core::Error),
    #[error("entry ({i}, {j}): index out of range for dim {dim}")]
    IndexOutOfRange { i: usize, j: usize, dim: usize },
    #[error("entry ({i}, {j}) listed twice")]
    Duplicate { i: usize, j: usize },
    #[error("entry ({i}, {j}): expected {dim} coefficients, found {found}")]
    Length { i: usize, j: usize, dim: usize, found: usize },
    #[error("entry ({i}, {j}) coefficient {k}: {msg}")]
    Coefficient { i: usize, j: usize, k: usize, msg: String },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Entry {
    pub i: usize,
    pub j: usize,
    pub coeffs: Vec<Value>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
    /// Free-form family parameter block, e.g. `{"family": "a", "lambda": "id"}`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Value>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct AlgebraDocument {
    pub format_version: u32,
    pub field: String,
    pub dim: usize,
    pub entries: Vec<Entry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

/// A parsed document: the table plus anything worth telling the user.
#[derive(Clone, Debug)]
pub struct Parsed {
    pub table: AlgebraTable,
    pub metadata: Metadata,
    pub warnings: Vec<String>,
}

const TOP: &[&str] = &["format_version", "field", "dim", "entries", "metadata"];
const ENTRY: &[&str] = &["i", "j", "coeffs"];
const META: &[&str] = &["name", "provenance", "family"];

fn unknown_keys(v: &Value, allowed: &[&str], path: &str, out: &mut Vec<String>) {
    if let Value::Object(map) = v {
        for k in map.keys() {
            if !allowed.contains(&k.as_str()) {
                out.push(format!("{path}{k}"));
            }
        }
    }
}

fn scalar(field: FieldSpec, v: &Value) -> Result<Scalar, String> {
    match (field, v) {
        (FieldSpec::Rationals, Value::String(s)) => field.parse_scalar(s).map_err(|e| e.to_string()),
        (FieldSpec::Rationals, other) => Err(format!("rationals are written as strings, found {other}")),
        (FieldSpec::Prime(_), Value::Number(n)) => {
            let p = field.modulus().expect("prime");
            match n.as_u64() {
                Some(r) if r < p => Ok(field.residue(r)),
                _ => Err(format!("residue {n} is not in 0..{p}")),
            }
        }
        (FieldSpec::Prime(_), other) => Err(format!("residues are written as integers, found {other}")),
    }
}

fn scalar_json(s: &Scalar) -> Value {
    match s.residue_value() {
        Some(r) => Value::from(r),
        None => Value::from(s.to_string()),
    }
}

/// Parses a document. With `lenient`, unknown keys become warnings.
pub fn parse_algebra(text: &str, lenient: bool) -> Result<Parsed, DocError> {
    let raw: Value = serde_json::from_str(text).map_err(|e| DocError::Json(e.to_string()))?;
    let mut unknown = Vec::new();
    unknown_keys(&raw, TOP, "", &mut unknown);
    if let Some(Value::Array(es)) = raw.get("entries") {
        for (n, e) in es.iter().enumerate() {
            unknown_keys(e, ENTRY, &format!("entries[{n}]."), &mut unknown);
        }
    }
    if let Some(m) = raw.get("metadata") {
        unknown_keys(m, META, "metadata.", &mut unknown);
    }
    let mut warnings = Vec::new();
    if let Some(first) = unknown.first() {
        if !lenient {
            return Err(DocError::UnknownField(first.clone()));
        }
        warnings.extend(unknown.iter().map(|k| format!("ignoring unknown field `{k}`")));
    }
    let doc: AlgebraDocument = serde_json::from_value(raw).map_err(|e| DocError::Json(e.to_string()))?;
    if doc.format_version != FORMAT_VERSION {
        return Err(DocError::Version(doc.format_version));
    }
    let field: FieldSpec = doc.field.parse().map_err(DocError::Field)?;
    let n = doc.dim;
    let mut table = AlgebraTable::zero(field, n);
    let mut seen = BTreeSet::new();
    for Entry { i, j, coeffs } in &doc.entries {
        let (i, j) = (*i, *j);
        if i >= n || j >= n {
            return Err(DocError::IndexOutOfRange { i, j, dim: n });
        }
        if !seen.insert((i, j)) {
            return Err(DocError::Duplicate { i, j });
        }
        if coeffs.len() != n {
            return Err(DocError::Length { i, j, dim: n, found: coeffs.len() });
        }
        let v = coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| scalar(field, c).map_err(|msg| DocError::Coefficient { i, j, k, msg }))
            .collect::<Result<Vec<_>, _>>()?;
        table.set_product(i, j, &v);
    }
    let metadata = doc.metadata.unwrap_or_default();
    if let Some(name) = &metadata.name {
        table = table.with_name(name.clone());
    }
    Ok(Parsed { table, metadata, warnings })
}

/// Builds the document for `l`; `metadata.name` defaults to the table name.
pub fn to_document(l: &AlgebraTable, metadata: Option<Metadata>) -> AlgebraDocument {
    let n = l.dim();
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let v = l.product(i, j);
            if v.iter().any(|c| !c.is_zero()) {
                entries.push(Entry { i, j, coeffs: v.iter().map(scalar_json).collect() });
            }
        }
    }
    let mut meta = metadata.unwrap_or_default();
    if meta.name.is_none() {
        meta.name = l.name().map(str::to_string);
    }
    let empty = meta == Metadata::default();
    AlgebraDocument {
        format_version: FORMAT_VERSION,
        field: l.field().to_string(),
        dim: n,
        entries,
        metadata: (!empty).then_some(meta),
    }
}

pub fn serialize_algebra(l: &AlgebraTable, metadata: Option<Metadata>) -> String {
    let mut s = serde_json::to_string_pretty(&to_document(l, metadata)).expect("plain data");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use leibniz_core::families::{heisenberg, make_a};
    use leibniz_core::Matrix;

    #[test]
    fn heisenberg_round_trip() {
        let h = heisenberg(FieldSpec::gf(3));
        let text = serialize_algebra(&h, None);
        let back = parse_algebra(&text, false).unwrap();
        assert_eq!(back.table, h);
        assert_eq!(back.metadata.name.as_deref(), Some("heisenberg"));
        assert_eq!(serialize_algebra(&back.table, None), text);
    }

    #[test]
    fn rationals_round_trip_as_strings() {
        let q = FieldSpec::Rationals;
        let mu = Matrix::from_rows(
            q,
            2,
            vec![
                vec![q.from_fraction(1, 2).unwrap(), q.from_i64(1)],
                vec![q.from_i64(-1), q.from_fraction(1, 2).unwrap()],
            ],
        )
        .unwrap();
        let l = make_a(&Matrix::identity(q, 2), &mu, q).unwrap();
        let text = serialize_algebra(&l, None);
        assert!(text.contains("\"1/2\""));
        assert_eq!(parse_algebra(&text, false).unwrap().table, l);
    }

    #[test]
    fn rejects_bad_documents() {
        let doc = |field: &str, coeff: &str| {
            format!(r#"{{"format_version":1,"field":"{field}","dim":2,"entries":[{{"i":0,"j":1,"coeffs":[{coeff},0]}}]}}"#)
        };
        let err = parse_algebra(&doc("GF(4)", "1"), false).unwrap_err();
        assert!(err.to_string().contains("composite modulus"), "{err}");
        assert!(matches!(parse_algebra(&doc("GF(3)", "\"1/2\""), false), Err(DocError::Coefficient { .. })));
        assert!(matches!(parse_algebra(&doc("GF(3)", "3"), false), Err(DocError::Coefficient { .. })));
        assert!(matches!(parse_algebra(&doc("Q", "\"x/2\""), false), Err(DocError::Coefficient { .. })));
        assert!(matches!(parse_algebra(&doc("Q", "1"), false), Err(DocError::Coefficient { .. })));
        let oob = r#"{"format_version":1,"field":"Q","dim":2,"entries":[{"i":2,"j":0,"coeffs":["0","0"]}]}"#;
        assert!(matches!(parse_algebra(oob, false), Err(DocError::IndexOutOfRange { .. })));
        let v2 = r#"{"format_version":2,"field":"Q","dim":1,"entries":[]}"#;
        assert_eq!(parse_algebra(v2, false).unwrap_err(), DocError::Version(2));
    }

    #[test]
    fn unknown_fields_strict_and_lenient() {
        let text = r#"{"format_version":1,"field":"Q","dim":1,"entries":[],"colour":"red"}"#;
        assert_eq!(parse_algebra(text, false).unwrap_err(), DocError::UnknownField("colour".into()));
        let p = parse_algebra(text, true).unwrap();
        assert_eq!(p.warnings.len(), 1);
    }
}
