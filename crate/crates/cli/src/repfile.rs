//! JSON representation files.
//!
//! ```json
//! {
//!   "cyclotomic_order": 4,
//!   "dimension": 1,
//!   "kind": "single",
//!   "generators": [ [ [ ["0/1", "1/1"] ] ] ]
//! }
//! ```
//!
//! `generators` is a list of matrices, a matrix is a list of rows, a row is a
//! list of entries, and an entry lists the `phi(N)` rational coordinates of
//! an element of `Q(zeta_N)` in the basis `1, zeta, zeta^2, ...`.

use std::path::Path;

use galrep_core::exact_algebra::{CycField, CycQ, Matrix};
use galrep_core::poteq::{MatRep, RepKind};
use galrep_core::Error as CoreError;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::Value;
use thiserror::Error;

const KEYS: [&str; 4] = ["cyclotomic_order", "dimension", "kind", "generators"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepFileError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("{0}")]
    Schema(String),
    #[error("{path}: decimal literal {literal:?}; write rationals as \"p/q\"")]
    Decimal { path: String, literal: String },
    #[error("{path}: {literal:?} is not a rational of the form \"p/q\"")]
    Rational { path: String, literal: String },
    #[error("{path}: entry has {found} coordinates, expected phi(N) = {expected}")]
    EntryLength {
        path: String,
        expected: usize,
        found: usize,
    },
    #[error("{0}")]
    Shape(String),
    #[error("generator {0} is not invertible")]
    SingularGenerator(usize),
    #[error("{0}")]
    Invalid(String),
}

impl RepFileError {
    /// Stable diagnostic code.
    pub fn code(&self) -> &'static str {
        match self {
            RepFileError::Io { .. } => "E_IO",
            RepFileError::Json(_) => "E_JSON",
            RepFileError::Schema(_) => "E_SCHEMA",
            RepFileError::Decimal { .. } => "E_DECIMAL",
            RepFileError::Rational { .. } => "E_RATIONAL",
            RepFileError::EntryLength { .. } => "E_ENTRY_LENGTH",
            RepFileError::Shape(_) => "E_SHAPE",
            RepFileError::SingularGenerator(_) => "E_SINGULAR_GENERATOR",
            RepFileError::Invalid(_) => "E_INVALID",
        }
    }
}

type Result<T> = std::result::Result<T, RepFileError>;

fn schema(msg: impl Into<String>) -> RepFileError {
    RepFileError::Schema(msg.into())
}

fn positive(obj: &serde_json::Map<String, Value>, key: &str) -> Result<usize> {
    obj.get(key)
        .ok_or_else(|| schema(format!("missing key {key:?}")))?
        .as_u64()
        .filter(|&v| v >= 1)
        .and_then(|v| usize::try_from(v).ok())
        .ok_or_else(|| schema(format!("{key:?} must be a positive integer")))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| schema(format!("{path}: expected an array")))
}

/// Parses `"p/q"` or `"p"` with `q > 0`.
pub fn parse_rational(literal: &str, path: &str) -> Result<BigRational> {
    let bad = || RepFileError::Rational {
        path: path.to_string(),
        literal: literal.to_string(),
    };
    let decimal = literal.contains('.') || literal.contains(['e', 'E']) && literal.parse::<f64>().is_ok();
    if decimal {
        return Err(RepFileError::Decimal {
            path: path.to_string(),
            literal: literal.to_string(),
        });
    }
    let integer = |s: &str| -> Option<BigInt> {
        let digits = s.strip_prefix('-').unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        s.parse().ok()
    };
    let (num, den) = match literal.split_once('/') {
        Some((n, d)) => (integer(n).ok_or_else(bad)?, integer(d).ok_or_else(bad)?),
        None => (integer(literal).ok_or_else(bad)?, BigInt::from(1)),
    };
    if den <= BigInt::zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

fn parse_entry(field: &CycField, v: &Value, path: &str) -> Result<CycQ> {
    let coords = array(v, path)?;
    if coords.len() != field.degree() {
        return Err(RepFileError::EntryLength {
            path: path.to_string(),
            expected: field.degree(),
            found: coords.len(),
        });
    }
    let mut raw = Vec::with_capacity(coords.len());
    for (i, c) in coords.iter().enumerate() {
        let cpath = format!("{path}[{i}]");
        let value = match c {
            Value::String(s) => parse_rational(s, &cpath)?,
            Value::Number(n) if n.is_f64() => {
                return Err(RepFileError::Decimal {
                    path: cpath,
                    literal: n.to_string(),
                })
            }
            _ => return Err(schema(format!("{cpath}: expected a rational string"))),
        };
        raw.push(value);
    }
    Ok(field.reduce(raw))
}

/// Parses the text of a representation file.
pub fn parse_rep_text(text: &str) -> Result<MatRep> {
    let root: Value = serde_json::from_str(text).map_err(|e| RepFileError::Json(e.to_string()))?;
    let obj = root
        .as_object()
        .ok_or_else(|| schema("top level must be an object"))?;
    if let Some(extra) = obj.keys().find(|k| !KEYS.contains(&k.as_str())) {
        return Err(schema(format!("unknown key {extra:?}")));
    }
    let order = positive(obj, "cyclotomic_order")?;
    let dim = positive(obj, "dimension")?;
    let kind: RepKind = obj
        .get("kind")
        .ok_or_else(|| schema("missing key \"kind\""))?
        .as_str()
        .ok_or_else(|| schema("\"kind\" must be a string"))?
        .parse()
        .map_err(|_| schema("\"kind\" must be one of single, free, finite"))?;
    let gens = array(
        obj.get("generators")
            .ok_or_else(|| schema("missing key \"generators\""))?,
        "generators",
    )?;
    if gens.is_empty() {
        return Err(schema("generators: at least one matrix is required"));
    }
    let field = CycField::new(order).map_err(|e| RepFileError::Invalid(e.to_string()))?;
    let mut matrices = Vec::with_capacity(gens.len());
    for (g, mat) in gens.iter().enumerate() {
        let mpath = format!("generators[{g}]");
        let rows = array(mat, &mpath)?;
        if rows.len() != dim {
            return Err(RepFileError::Shape(format!(
                "{mpath}: {} rows, dimension is {dim}",
                rows.len()
            )));
        }
        let mut parsed = Vec::with_capacity(dim);
        for (i, row) in rows.iter().enumerate() {
            let rpath = format!("{mpath}[{i}]");
            let entries = array(row, &rpath)?;
            if entries.len() != dim {
                return Err(RepFileError::Shape(format!(
                    "{rpath}: {} entries, dimension is {dim}",
                    entries.len()
                )));
            }
            parsed.push(
                entries
                    .iter()
                    .enumerate()
                    .map(|(j, e)| parse_entry(&field, e, &format!("{rpath}[{j}]")))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        matrices.push(Matrix::from_rows(&field, parsed).map_err(|e| RepFileError::Invalid(e.to_string()))?);
    }
    MatRep::new(kind, matrices).map_err(|e| match e {
        CoreError::SingularGenerator(i) => RepFileError::SingularGenerator(i),
        other => RepFileError::Invalid(other.to_string()),
    })
}

pub fn parse_rep_file(path: &Path) -> Result<MatRep> {
    let text = std::fs::read_to_string(path).map_err(|e| RepFileError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_rep_text(&text)
}

fn rational_literal(c: &BigRational) -> String {
    format!("\"{}/{}\"", c.numer(), c.denom())
}

/// Canonical text of a representation: reduced fractions `"p/q"`, one
/// matrix row per line.
pub fn serialize_rep(rep: &MatRep) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    out.push_str(&format!("  \"cyclotomic_order\": {},\n", rep.order()));
    out.push_str(&format!("  \"dimension\": {},\n", rep.dim()));
    out.push_str(&format!("  \"kind\": \"{}\",\n", rep.kind().as_str()));
    out.push_str("  \"generators\": [\n");
    let gens = rep.generators();
    for (g, m) in gens.iter().enumerate() {
        out.push_str("    [\n");
        let rows = m.rows();
        for (i, row) in rows.iter().enumerate() {
            let entries: Vec<String> = row
                .iter()
                .map(|e| {
                    let coords: Vec<String> = e.coeffs().iter().map(rational_literal).collect();
                    format!("[{}]", coords.join(", "))
                })
                .collect();
            out.push_str(&format!("      [{}]", entries.join(", ")));
            out.push_str(if i + 1 < rows.len() { ",\n" } else { "\n" });
        }
        out.push_str(if g + 1 < gens.len() { "    ],\n" } else { "    ]\n" });
    }
    out.push_str("  ]\n}\n");
    out
}
