//! The problem specification read from JSON or TOML.
//!
//! Exact values may be written as integers or as decimal strings `"p"` / `"p/q"`;
//! the canonical echo always uses strings.

use std::fmt;
use std::path::Path;

use gitfan::exactgeom::num::{fmt_rat, parse_rat};
use gitfan::exactgeom::{Int, IntMatrix, Rat};
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::error::CliError;

/// An exact rational read from an integer or a string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Num(pub Rat);

impl Num {
    pub fn integer(&self) -> Result<Int, CliError> {
        if self.0.is_integer() {
            Ok(self.0.to_integer())
        } else {
            Err(CliError::Malformed(format!("expected an integer, got {self}")))
        }
    }

    pub fn small(&self) -> Result<i64, CliError> {
        self.integer()?
            .to_i64()
            .ok_or_else(|| CliError::Malformed(format!("{self} does not fit in 64 bits")))
    }
}

impl fmt::Display for Num {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_rat(&self.0))
    }
}

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        let text = match Raw::deserialize(d)? {
            Raw::Int(x) => x.to_string(),
            Raw::Str(s) => s,
        };
        parse_rat(&text)
            .map(Num)
            .ok_or_else(|| serde::de::Error::custom(format!("not an exact rational: {text:?}")))
    }
}

pub type NumVec = Vec<Num>;

pub fn rats(v: &[Num]) -> Vec<Rat> {
    v.iter().map(|x| x.0.clone()).collect()
}

pub fn ints(v: &[Num]) -> Result<Vec<Int>, CliError> {
    v.iter().map(Num::integer).collect()
}

pub fn smalls(v: &[Num]) -> Result<Vec<i64>, CliError> {
    v.iter().map(Num::small).collect()
}

pub fn matrix(rows: &[NumVec]) -> Result<IntMatrix, CliError> {
    let rows: Vec<Vec<Int>> = rows.iter().map(|r| ints(r)).collect::<Result<_, _>>()?;
    if rows.is_empty() || rows.iter().any(|r| r.len() != rows[0].len()) || rows[0].is_empty() {
        return Err(CliError::Malformed("matrix rows must be nonempty and of equal length".into()));
    }
    Ok(IntMatrix::from_rows(rows))
}

/// Parses `"1,-1/2,0"`.
pub fn parse_vector(s: &str) -> Result<NumVec, CliError> {
    s.split(',')
        .map(|t| {
            parse_rat(t)
                .map(Num)
                .ok_or_else(|| CliError::Usage(format!("not an exact rational: {t:?}")))
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Quiver,
    Toric,
    Hypertoric,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverPayload {
    pub vertices: usize,
    #[serde(default)]
    pub edges: Vec<(usize, usize)>,
    pub framing: NumVec,
    pub v: NumVec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToricPayload {
    /// Rows of the `k × n` matrix whose columns generate the semigroup.
    pub generators: Vec<NumVec>,
    /// Rows of the `ρ × n` weight matrix.
    pub weights: Vec<NumVec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub constraints: Vec<NumVec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HypertoricPayload {
    pub a: Vec<NumVec>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    /// A stability parameter in ambient coordinates.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<NumVec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub other_theta: Option<NumVec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chamber: Option<usize>,
    /// A wall normal in the coordinates of the fan.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall: Option<NumVec>,
    /// Two vectors in fan coordinates spanning the plotted plane.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slice: Option<(NumVec, NumVec)>,
    /// Overrides the computed codimension-two roots (framed dimension vectors).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub codim2_roots: Option<Vec<NumVec>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quiver: Option<QuiverPayload>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub toric: Option<ToricPayload>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hypertoric: Option<HypertoricPayload>,
    #[serde(default, skip_serializing_if = "is_default")]
    pub options: Options,
}

fn is_default(o: &Options) -> bool {
    *o == Options::default()
}

impl ProblemSpec {
    fn check(self) -> Result<Self, CliError> {
        let present = [
            (Kind::Quiver, self.quiver.is_some()),
            (Kind::Toric, self.toric.is_some()),
            (Kind::Hypertoric, self.hypertoric.is_some()),
        ];
        for (kind, has) in present {
            if has != (kind == self.kind) {
                return Err(CliError::Malformed(format!(
                    "kind {:?} requires exactly the matching payload section",
                    self.kind
                )));
            }
        }
        if let Some(t) = &self.toric {
            if t.weights.is_empty() {
                return Err(CliError::Malformed("toric weights must have at least one row".into()));
            }
        }
        if let Some((u, v)) = &self.options.slice {
            if u.len() != v.len() || u.iter().chain(v).all(|x| x.0.is_zero()) {
                return Err(CliError::Malformed("slice vectors must have equal length and not both vanish".into()));
            }
        }
        Ok(self)
    }

    /// Accepts a bare specification or a result document carrying one under `input`.
    pub fn from_value(value: Value) -> Result<Self, CliError> {
        let value = match value {
            Value::Object(mut m) if m.contains_key("input") && !m.contains_key("kind") => {
                m.remove("input").unwrap_or(Value::Null)
            }
            v => v,
        };
        serde_json::from_value::<ProblemSpec>(value)
            .map_err(|e| CliError::Malformed(e.to_string()))?
            .check()
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let value: Value = if path.extension().is_some_and(|e| e == "toml") {
            toml::from_str(&text).map_err(|e| CliError::Malformed(e.to_string()))?
        } else {
            serde_json::from_str(&text).map_err(|e| CliError::Malformed(e.to_string()))?
        };
        Self::from_value(value)
    }

    pub fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| "unnamed".into())
    }
}
