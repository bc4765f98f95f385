//! JSON encodings for ring specs, elements and certificates.
//!
//! Every top-level document carries `"schema": "adicclean/1"`. Elements are
//! written as integers (`Z/m`), `[a, b]` pairs (dual numbers `a + b u`),
//! row-major nested arrays (matrices) or coefficient arrays indexed by the
//! power of `t` (skew series).

use serde_json::{json, Map, Value as Json};
use thiserror::Error;

use crate::adic::{AdicElem, AdicRing, CompleteRingSpec};
use crate::engine::CleanCertificate;
use crate::error::Error;
use crate::finite::{FiniteElem, FiniteRing, FiniteRingSpec, Value};

pub const SCHEMA: &str = "adicclean/1";

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema: {0}")]
    Schema(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Ring(#[from] Error),
}

type Result<T> = std::result::Result<T, FormatError>;

fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(FormatError::Invalid(msg.into()))
}

fn isqrt(n: usize) -> usize {
    (0..=n).find(|k| k * k >= n).unwrap_or(0)
}

pub fn value_to_json(v: &Value) -> Json {
    match v {
        Value::Int(x) => json!(x),
        Value::Dual(a, b) => json!([a, b]),
        Value::Mat(entries) => {
            let k = isqrt(entries.len()).max(1);
            Json::Array(
                entries
                    .chunks(k)
                    .map(|row| Json::Array(row.iter().map(value_to_json).collect()))
                    .collect(),
            )
        }
    }
}

pub fn finite_to_json(x: &FiniteElem) -> Json {
    value_to_json(x.value())
}

fn as_u64(j: &Json) -> Result<u64> {
    j.as_u64()
        .ok_or_else(|| FormatError::Invalid(format!("expected a nonnegative integer, got {j}")))
}

fn as_array<'a>(j: &'a Json, len: usize, what: &str) -> Result<&'a Vec<Json>> {
    match j.as_array() {
        Some(a) if a.len() == len => Ok(a),
        _ => invalid(format!("expected {what} of length {len}, got {j}")),
    }
}

fn matrix_value(base: &FiniteRingSpec, k: usize, j: &Json) -> Result<Value> {
    let rows = as_array(j, k, "matrix")?;
    let mut entries = Vec::with_capacity(k * k);
    for row in rows {
        for entry in as_array(row, k, "matrix row")? {
            entries.push(value_from_json(base, entry)?);
        }
    }
    Ok(Value::Mat(entries))
}

/// Decodes a canonical payload for `spec`, rejecting unreduced entries.
pub fn value_from_json(spec: &FiniteRingSpec, j: &Json) -> Result<Value> {
    let v = match spec {
        FiniteRingSpec::Zmod { .. } => Value::Int(as_u64(j)?),
        FiniteRingSpec::Dual { .. } => {
            let pair = as_array(j, 2, "dual number")?;
            Value::Dual(as_u64(&pair[0])?, as_u64(&pair[1])?)
        }
        FiniteRingSpec::Matrix { base, size } => matrix_value(base, *size, j)?,
        FiniteRingSpec::Triangular2 { base } => matrix_value(base, 2, j)?,
    };
    spec.check_value(&v)?;
    Ok(v)
}

pub fn finite_from_json(ring: &FiniteRing, j: &Json) -> Result<FiniteElem> {
    Ok(ring.elem(value_from_json(ring.spec(), j)?)?)
}

pub fn adic_to_json(x: &AdicElem) -> Json {
    if let Some(entries) = x.entries() {
        let k = isqrt(entries.len()).max(1);
        Json::Array(entries.chunks(k).map(|row| json!(row)).collect())
    } else {
        let coeffs = x.coefficients().unwrap_or_default();
        Json::Array(coeffs.iter().map(finite_to_json).collect())
    }
}

pub fn adic_from_json(ring: &AdicRing, j: &Json) -> Result<AdicElem> {
    match ring.spec() {
        CompleteRingSpec::PadicMatrix { size, .. } => {
            let rows = as_array(j, *size, "matrix")?;
            let mut entries = Vec::with_capacity(size * size);
            for row in rows {
                for entry in as_array(row, *size, "matrix row")? {
                    entries.push(as_u64(entry)?);
                }
            }
            Ok(ring.matrix_from_entries(entries)?)
        }
        CompleteRingSpec::SkewSeries { .. } => {
            let Some(items) = j.as_array() else {
                return invalid(format!("expected a coefficient array, got {j}"));
            };
            let base = ring.residue_ring();
            let coeffs = items
                .iter()
                .map(|c| finite_from_json(base, c))
                .collect::<Result<Vec<_>>>()?;
            Ok(ring.series(coeffs)?)
        }
    }
}

fn parse_document(text: &str) -> Result<Map<String, Json>> {
    let doc: Json = serde_json::from_str(text)?;
    let Json::Object(mut map) = doc else {
        return invalid("top-level JSON value must be an object");
    };
    match map.remove("schema") {
        Some(Json::String(s)) if s == SCHEMA => Ok(map),
        Some(other) => Err(FormatError::Schema(other.to_string())),
        None => Err(FormatError::Schema("missing schema field".into())),
    }
}

fn with_schema(body: Json) -> Json {
    let mut map = Map::new();
    map.insert("schema".into(), json!(SCHEMA));
    if let Json::Object(fields) = body {
        map.extend(fields);
    }
    Json::Object(map)
}

pub fn complete_spec_from_json(j: Json) -> Result<CompleteRingSpec> {
    let spec: CompleteRingSpec = serde_json::from_value(j)?;
    spec.validate()?;
    Ok(spec)
}

pub fn finite_spec_from_json(j: Json) -> Result<FiniteRingSpec> {
    let spec: FiniteRingSpec = serde_json::from_value(j)?;
    spec.validate()?;
    Ok(spec)
}

/// A ring file: either a complete ring (with precision) or a finite ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingFile {
    Complete(CompleteRingSpec),
    Finite(FiniteRingSpec),
}

pub fn parse_ring_file(text: &str) -> Result<RingFile> {
    let map = parse_document(text)?;
    let kind = map.get("kind").and_then(Json::as_str).unwrap_or_default().to_owned();
    match kind.as_str() {
        "padic_matrix" | "skew_series" => Ok(RingFile::Complete(complete_spec_from_json(Json::Object(map))?)),
        "zmod" | "matrix" | "triangular2" | "dual" => Ok(RingFile::Finite(finite_spec_from_json(Json::Object(map))?)),
        other => invalid(format!("unknown ring kind {other:?}")),
    }
}

pub fn ring_file_to_json(ring: &RingFile) -> Json {
    let body = match ring {
        RingFile::Complete(spec) => serde_json::to_value(spec),
        RingFile::Finite(spec) => serde_json::to_value(spec),
    }
    .expect("ring specs serialize");
    with_schema(body)
}

/// Reads the raw element payload of an element file.
pub fn parse_element_file(text: &str) -> Result<Json> {
    let mut map = parse_document(text)?;
    map.remove("element")
        .ok_or_else(|| FormatError::Invalid("missing element field".into()))
}

pub fn element_file_json(element: Json) -> Json {
    with_schema(json!({ "element": element }))
}

pub fn certificate_to_json(cert: &CleanCertificate) -> Json {
    with_schema(json!({
        "ring": serde_json::to_value(&cert.ring).expect("ring specs serialize"),
        "x": adic_to_json(&cert.x),
        "e": adic_to_json(&cert.e),
        "u_inv": adic_to_json(&cert.u_inv),
        "n": cert.n,
        "precision": cert.precision,
    }))
}

pub fn parse_certificate(text: &str) -> Result<CleanCertificate> {
    let mut map = parse_document(text)?;
    let mut take = |key: &str| {
        map.remove(key)
            .ok_or_else(|| FormatError::Invalid(format!("missing {key} field")))
    };
    let spec = complete_spec_from_json(take("ring")?)?;
    let ring = AdicRing::new(spec.clone())?;
    let x = adic_from_json(&ring, &take("x")?)?;
    let e = adic_from_json(&ring, &take("e")?)?;
    let u_inv = adic_from_json(&ring, &take("u_inv")?)?;
    let n = as_u64(&take("n")?)? as usize;
    let precision = as_u64(&take("precision")?)? as usize;
    Ok(CleanCertificate {
        ring: spec,
        x,
        e,
        u_inv,
        n,
        precision,
    })
}

/// Pretty JSON with a trailing newline; key order is sorted and stable.
pub fn to_pretty(j: &Json) -> String {
    let mut s = serde_json::to_string_pretty(j).expect("JSON values serialize");
    s.push('\n');
    s
}
