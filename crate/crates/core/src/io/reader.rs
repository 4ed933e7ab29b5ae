//! Typed field access over a `serde_json::Value` tree that records
//! diagnostics with document paths instead of failing fast.

use std::str::FromStr;

use serde_json::{Map, Value};

use crate::diag::Diagnostic;
use crate::model::{Color, EntityId, Literal, Vec3};

pub(crate) const P_SYNTAX: &str = "P001";
pub(crate) const P_VERSION: &str = "P002";
pub(crate) const P_TYPE: &str = "P003";
pub(crate) const P_ENUM: &str = "P004";
pub(crate) const P_UNKNOWN_KEY: &str = "P005";

pub(crate) fn join(path: &str, segment: impl std::fmt::Display) -> String {
    if path.is_empty() {
        segment.to_string()
    } else {
        format!("{path}/{segment}")
    }
}

pub(crate) fn type_name(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "boolean",
        Value::Number(_) => "number",
        Value::String(_) => "string",
        Value::Array(_) => "array",
        Value::Object(_) => "object",
    }
}

pub(crate) fn mismatch(path: &str, expected: &str, found: &Value) -> Diagnostic {
    Diagnostic::error(
        P_TYPE,
        path,
        format!("expected {expected}, found {}", type_name(found)),
    )
}

pub(crate) struct Obj<'a> {
    pub map: &'a Map<String, Value>,
    pub path: String,
}

impl<'a> Obj<'a> {
    /// `None` (with a P003) when `value` is not an object.
    pub fn new(value: &'a Value, path: &str, diags: &mut Vec<Diagnostic>) -> Option<Obj<'a>> {
        match value {
            Value::Object(map) => Some(Obj {
                map,
                path: path.to_string(),
            }),
            other => {
                diags.push(mismatch(path, "an object", other));
                None
            }
        }
    }

    pub fn at(&self, key: &str) -> String {
        join(&self.path, key)
    }

    pub fn get(&self, key: &str) -> Option<&'a Value> {
        self.map.get(key)
    }

    /// P005 warning for every key not in `allowed`, in sorted key order.
    pub fn warn_unknown(&self, allowed: &[&str], diags: &mut Vec<Diagnostic>) {
        let mut keys: Vec<&String> = self.map.keys().collect();
        keys.sort();
        for key in keys {
            if !allowed.contains(&key.as_str()) {
                diags.push(Diagnostic::warning(
                    P_UNKNOWN_KEY,
                    self.at(key),
                    format!("unknown key `{key}` ignored"),
                ));
            }
        }
    }

    fn missing(&self, key: &str, diags: &mut Vec<Diagnostic>) {
        diags.push(Diagnostic::error(
            P_TYPE,
            self.at(key),
            format!("missing required field `{key}`"),
        ));
    }

    pub fn required(&self, key: &str, diags: &mut Vec<Diagnostic>) -> Option<&'a Value> {
        let v = self.get(key);
        if v.is_none() {
            self.missing(key, diags);
        }
        v
    }

    pub fn string(&self, key: &str, diags: &mut Vec<Diagnostic>) -> Option<String> {
        let v = self.required(key, diags)?;
        as_string(v, &self.at(key), diags)
    }

    pub fn string_or(
        &self,
        key: &str,
        default: &str,
        diags: &mut Vec<Diagnostic>,
    ) -> Option<String> {
        match self.get(key) {
            None => Some(default.to_string()),
            Some(v) => as_string(v, &self.at(key), diags),
        }
    }

    pub fn number_or(&self, key: &str, default: f64, diags: &mut Vec<Diagnostic>) -> Option<f64> {
        match self.get(key) {
            None => Some(default),
            Some(v) => as_number(v, &self.at(key), diags),
        }
    }

    pub fn number(&self, key: &str, diags: &mut Vec<Diagnostic>) -> Option<f64> {
        let v = self.required(key, diags)?;
        as_number(v, &self.at(key), diags)
    }

    pub fn uint(&self, key: &str, diags: &mut Vec<Diagnostic>) -> Option<u32> {
        let v = self.required(key, diags)?;
        as_uint(v, &self.at(key), diags)
    }

    pub fn uint_or(&self, key: &str, default: u32, diags: &mut Vec<Diagnostic>) -> Option<u32> {
        match self.get(key) {
            None => Some(default),
            Some(v) => as_uint(v, &self.at(key), diags),
        }
    }

    pub fn bool_or(&self, key: &str, default: bool, diags: &mut Vec<Diagnostic>) -> Option<bool> {
        match self.get(key) {
            None => Some(default),
            Some(Value::Bool(b)) => Some(*b),
            Some(other) => {
                diags.push(mismatch(&self.at(key), "a boolean", other));
                None
            }
        }
    }

    pub fn id(&self, key: &str, diags: &mut Vec<Diagnostic>) -> Option<EntityId> {
        let text = self.string(key, diags)?;
        as_id(&text, &self.at(key), diags)
    }

    pub fn opt_id(&self, key: &str, diags: &mut Vec<Diagnostic>) -> Option<Option<EntityId>> {
        match self.get(key) {
            None | Some(Value::Null) => Some(None),
            Some(v) => {
                let path = self.at(key);
                let text = as_string(v, &path, diags)?;
                as_id(&text, &path, diags).map(Some)
            }
        }
    }

    pub fn enumeration<T: FromStr>(
        &self,
        key: &str,
        what: &str,
        diags: &mut Vec<Diagnostic>,
    ) -> Option<T> {
        let text = self.string(key, diags)?;
        as_enum(&text, what, &self.at(key), diags)
    }

    pub fn vec3_or(&self, key: &str, default: Vec3, diags: &mut Vec<Diagnostic>) -> Option<Vec3> {
        match self.get(key) {
            None => Some(default),
            Some(v) => as_vec3(v, &self.at(key), diags),
        }
    }

    pub fn vec3(&self, key: &str, diags: &mut Vec<Diagnostic>) -> Option<Vec3> {
        let v = self.required(key, diags)?;
        as_vec3(v, &self.at(key), diags)
    }

    pub fn opt_color(&self, key: &str, diags: &mut Vec<Diagnostic>) -> Option<Option<Color>> {
        match self.get(key) {
            None | Some(Value::Null) => Some(None),
            Some(v) => as_color(v, &self.at(key), diags).map(Some),
        }
    }

    pub fn array(&self, key: &str, diags: &mut Vec<Diagnostic>) -> Option<&'a Vec<Value>> {
        let v = self.required(key, diags)?;
        as_array(v, &self.at(key), diags)
    }

    pub fn array_or_empty(&self, key: &str, diags: &mut Vec<Diagnostic>) -> Option<&'a [Value]> {
        match self.get(key) {
            None => Some(&[]),
            Some(v) => as_array(v, &self.at(key), diags).map(Vec::as_slice),
        }
    }
}

pub(crate) fn as_string(v: &Value, path: &str, diags: &mut Vec<Diagnostic>) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        other => {
            diags.push(mismatch(path, "a string", other));
            None
        }
    }
}

pub(crate) fn as_number(v: &Value, path: &str, diags: &mut Vec<Diagnostic>) -> Option<f64> {
    match v.as_f64() {
        Some(n) if n.is_finite() => Some(n),
        _ => {
            diags.push(mismatch(path, "a finite number", v));
            None
        }
    }
}

pub(crate) fn as_uint(v: &Value, path: &str, diags: &mut Vec<Diagnostic>) -> Option<u32> {
    match v.as_u64().and_then(|n| u32::try_from(n).ok()) {
        Some(n) => Some(n),
        None => {
            diags.push(mismatch(path, "a non-negative integer", v));
            None
        }
    }
}

pub(crate) fn as_array<'a>(
    v: &'a Value,
    path: &str,
    diags: &mut Vec<Diagnostic>,
) -> Option<&'a Vec<Value>> {
    match v {
        Value::Array(items) => Some(items),
        other => {
            diags.push(mismatch(path, "an array", other));
            None
        }
    }
}

pub(crate) fn as_id(text: &str, path: &str, diags: &mut Vec<Diagnostic>) -> Option<EntityId> {
    match EntityId::new(text) {
        Ok(id) => Some(id),
        Err(e) => {
            diags.push(Diagnostic::error(P_TYPE, path, e.to_string()));
            None
        }
    }
}

pub(crate) fn as_enum<T: FromStr>(
    text: &str,
    what: &str,
    path: &str,
    diags: &mut Vec<Diagnostic>,
) -> Option<T> {
    match text.parse::<T>() {
        Ok(v) => Some(v),
        Err(_) => {
            diags.push(Diagnostic::error(
                P_ENUM,
                path,
                format!("unknown {what} `{text}`"),
            ));
            None
        }
    }
}

pub(crate) fn as_color(v: &Value, path: &str, diags: &mut Vec<Diagnostic>) -> Option<Color> {
    let text = as_string(v, path, diags)?;
    match Color::parse(&text) {
        Ok(c) => Some(c),
        Err(e) => {
            let code = if text.starts_with('#') {
                P_TYPE
            } else {
                P_ENUM
            };
            diags.push(Diagnostic::error(code, path, e.to_string()));
            None
        }
    }
}

pub(crate) fn as_vec3(v: &Value, path: &str, diags: &mut Vec<Diagnostic>) -> Option<Vec3> {
    let obj = Obj::new(v, path, diags)?;
    obj.warn_unknown(&["x", "y", "z"], diags);
    let x = obj.number("x", diags);
    let y = obj.number("y", diags);
    let z = obj.number("z", diags);
    Some(Vec3::new(x?, y?, z?))
}

/// Booleans, numbers, strings and `{x,y,z}` vectors.
pub(crate) fn as_literal(v: &Value, path: &str, diags: &mut Vec<Diagnostic>) -> Option<Literal> {
    match v {
        Value::Bool(b) => Some(Literal::Bool(*b)),
        Value::Number(_) => as_number(v, path, diags).map(Literal::Number),
        Value::String(s) => Some(Literal::Text(s.clone())),
        Value::Object(_) => as_vec3(v, path, diags).map(Literal::Vec3),
        other => {
            diags.push(mismatch(path, "a boolean, number, string or vector", other));
            None
        }
    }
}
