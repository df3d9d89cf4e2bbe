//! JSON encodings of exact values and the human-readable table view.

use gitfan::exactgeom::num::fmt_rat;
use gitfan::exactgeom::{Cone, Int, Rat};
use gitfan::roots::DimensionVector;
use serde_json::{json, Map, Value};

pub fn int(x: &Int) -> Value {
    Value::String(x.to_string())
}

pub fn rat(x: &Rat) -> Value {
    Value::String(fmt_rat(x))
}

pub fn ivec(v: &[Int]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

pub fn rvec(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rat).collect())
}

pub fn imat(rows: &[Vec<Int>]) -> Value {
    Value::Array(rows.iter().map(|r| ivec(r)).collect())
}

pub fn dv(d: &DimensionVector) -> Value {
    Value::Array(d.0.iter().map(|x| Value::String(x.to_string())).collect())
}

pub fn small(x: i64) -> Value {
    Value::String(x.to_string())
}

pub fn cone(c: &Cone) -> Value {
    json!({
        "rays": imat(c.rays()),
        "lineality": imat(c.lineality()),
        "facets": imat(c.facets()),
        "equations": imat(c.equations()),
        "dim": c.dim(),
    })
}

/// Recursively rebuilds objects with sorted keys.
pub fn canonical(v: Value) -> Value {
    match v {
        Value::Object(m) => {
            let mut entries: Vec<(String, Value)> = m.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            let mut out = Map::new();
            for (k, v) in entries {
                out.insert(k, canonical(v));
            }
            Value::Object(out)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(canonical).collect()),
        v => v,
    }
}

pub fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(&canonical(v.clone())).expect("values serialize");
    s.push('\n');
    s
}

fn is_scalar(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.iter().all(|x| !x.is_object() && !x.is_array()) || a.iter().all(|x| match x {
            Value::Array(b) => b.iter().all(|y| !y.is_object() && !y.is_array()),
            _ => false,
        }),
        Value::Object(_) => false,
        _ => true,
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => format!("[{}]", a.iter().map(inline).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

fn table_into(v: &Value, prefix: &str, out: &mut String) {
    match v {
        Value::Object(m) => {
            let mut keys: Vec<&String> = m.keys().collect();
            keys.sort();
            for k in keys {
                let path = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                table_into(&m[k], &path, out);
            }
        }
        Value::Array(a) if !is_scalar(v) => {
            for (i, x) in a.iter().enumerate() {
                table_into(x, &format!("{prefix}[{i}]"), out);
            }
        }
        _ => {
            out.push_str(&format!("{prefix:<40} {}\n", inline(v)));
        }
    }
}

/// One `path value` line per leaf, nested vectors printed inline.
pub fn to_table(v: &Value) -> String {
    let mut out = String::new();
    table_into(v, "", &mut out);
    out
}
