//! Canonical JSON: sorted keys, floats at 17 significant digits, scalar
//! arrays on one line. Output parses back to the same values and
//! re-serializes to the same bytes.

use std::fmt::Write as _;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::geometry::{AnyBody, ConvexBody};
use crate::sequence::ListStream;

pub const FORMAT_VERSION: &str = "1";

/// Serializes `value` in canonical form, newline-terminated.
pub fn to_canonical<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value).map_err(|e| Error::Schema(e.to_string()))?;
    let mut out = String::new();
    write_value(&v, 0, &mut out);
    out.push('\n');
    Ok(out)
}

pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
}

/// `x` with 17 significant digits.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn indent(level: usize, out: &mut String) {
    out.push('\n');
    for _ in 0..level {
        out.push_str("  ");
    }
}

fn write_value(v: &Value, level: usize, out: &mut String) {
    match v {
        Value::Null | Value::Bool(_) | Value::String(_) => out.push_str(&v.to_string()),
        Value::Number(n) => match (n.as_i64(), n.as_u64(), n.as_f64()) {
            (Some(i), _, _) => {
                let _ = write!(out, "{i}");
            }
            (_, Some(u), _) => {
                let _ = write!(out, "{u}");
            }
            (_, _, Some(x)) => out.push_str(&format_float(x)),
            _ => out.push_str(&n.to_string()),
        },
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) if items.iter().all(is_scalar) => {
            out.push('[');
            for (i, x) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_value(x, level, out);
            }
            out.push(']');
        }
        Value::Array(items) => {
            out.push('[');
            for (i, x) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                indent(level + 1, out);
                write_value(x, level + 1, out);
            }
            indent(level, out);
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            // serde_json's default map is ordered by key
            out.push('{');
            for (i, (k, x)) in map.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                indent(level + 1, out);
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(x, level + 1, out);
            }
            indent(level, out);
            out.push('}');
        }
    }
}

/// Generator name and parameters, kept for reproducibility.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorInfo {
    pub name: String,
    pub params: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyFile {
    pub version: String,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<GeneratorInfo>,
    pub bodies: Vec<AnyBody>,
}

impl FamilyFile {
    pub fn new(generator: Option<GeneratorInfo>, bodies: Vec<AnyBody>) -> Result<Self> {
        let dim = bodies.first().ok_or(Error::EmptyInput)?.dim();
        let f = FamilyFile { version: FORMAT_VERSION.into(), dim, generator, bodies };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        if self.version != FORMAT_VERSION {
            return Err(Error::Schema(format!("unsupported version {:?}", self.version)));
        }
        for b in &self.bodies {
            b.validate()?;
            if b.dim() != self.dim {
                return Err(Error::DimensionMismatch { expected: self.dim, found: b.dim() });
            }
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let f: FamilyFile = from_json(text)?;
        f.validate()?;
        Ok(f)
    }

    /// The bodies, all of which must be convex.
    pub fn convex_bodies(&self) -> Result<Vec<ConvexBody>> {
        self.bodies
            .iter()
            .enumerate()
            .map(|(i, b)| b.as_convex().cloned().ok_or_else(|| Error::Unsupported(format!("body {i} is not convex"))))
            .collect()
    }
}

/// Explicit finite streams, one per family.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StreamsFile {
    pub version: String,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<GeneratorInfo>,
    pub streams: Vec<ListStream>,
}

impl StreamsFile {
    pub fn new(generator: Option<GeneratorInfo>, streams: Vec<ListStream>) -> Result<Self> {
        let dim = streams.iter().flat_map(|s| s.members.first()).map(ConvexBody::dim).next().ok_or(Error::EmptyInput)?;
        let f = StreamsFile { version: FORMAT_VERSION.into(), dim, generator, streams };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        if self.version != FORMAT_VERSION {
            return Err(Error::Schema(format!("unsupported version {:?}", self.version)));
        }
        for b in self.streams.iter().flat_map(|s| &s.members) {
            b.validate()?;
            if b.dim() != self.dim {
                return Err(Error::DimensionMismatch { expected: self.dim, found: b.dim() });
            }
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let f: StreamsFile = from_json(text)?;
        f.validate()?;
        Ok(f)
    }
}
