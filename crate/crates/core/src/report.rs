//! Key/value report documents.
//!
//! One `key = value` line per field, in insertion order. Keys are `[a-z0-9_]+` and
//! unique; values are single-line. [`Document::to_json`] emits the same fields as one
//! JSON object, with plain decimal integers that fit in a `u64` as JSON numbers.

use std::collections::BTreeMap;

use serde_json::{Map, Value};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Document {
    fields: Vec<(String, String)>,
}

fn valid_key(key: &str) -> bool {
    !key.is_empty() && key.bytes().all(|b| b.is_ascii_lowercase() || b.is_ascii_digit() || b == b'_')
}

impl Document {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends a field, replacing any earlier value under the same key.
    pub fn push(&mut self, key: &str, value: impl ToString) -> &mut Self {
        assert!(valid_key(key), "invalid report key {key:?}");
        let value = value.to_string().replace(['\n', '\r'], " ");
        match self.fields.iter_mut().find(|(k, _)| k == key) {
            Some(slot) => slot.1 = value,
            None => self.fields.push((key.to_string(), value)),
        }
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn fields(&self) -> &[(String, String)] {
        &self.fields
    }

    pub fn extend(&mut self, other: &Document) -> &mut Self {
        for (k, v) in &other.fields {
            self.push(k, v);
        }
        self
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.fields {
            out.push_str(k);
            out.push_str(" = ");
            out.push_str(v);
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for (k, v) in &self.fields {
            let value = match v.parse::<u64>() {
                Ok(n) if n.to_string() == *v => Value::from(n),
                _ => Value::from(v.as_str()),
            };
            map.insert(k.clone(), value);
        }
        Value::Object(map)
    }

    pub fn parse(text: &str) -> Result<Document> {
        let mut doc = Document::new();
        let body = text.strip_suffix('\n').unwrap_or(text);
        if body.is_empty() {
            return Ok(doc);
        }
        for (lineno, line) in body.split('\n').enumerate() {
            let (key, value) = line
                .split_once(" = ")
                .ok_or_else(|| Error::Parse(format!("line {}: expected `key = value`", lineno + 1)))?;
            if !valid_key(key) {
                return Err(Error::Parse(format!("line {}: invalid key {key:?}", lineno + 1)));
            }
            if value.contains('\r') {
                return Err(Error::Parse(format!("line {}: carriage return in value", lineno + 1)));
            }
            if doc.get(key).is_some() {
                return Err(Error::Parse(format!("line {}: duplicate key {key:?}", lineno + 1)));
            }
            doc.fields.push((key.to_string(), value.to_string()));
        }
        Ok(doc)
    }
}

/// `degree:count` pairs, ascending by degree, comma-separated.
pub fn format_histogram(histogram: &BTreeMap<usize, u64>) -> String {
    histogram
        .iter()
        .map(|(d, c)| format!("{d}:{c}"))
        .collect::<Vec<_>>()
        .join(",")
}

pub fn parse_histogram(text: &str) -> Result<BTreeMap<usize, u64>> {
    let mut out = BTreeMap::new();
    if text.is_empty() {
        return Ok(out);
    }
    for entry in text.split(',') {
        let (d, c) = entry
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("histogram entry {entry:?} is not degree:count")))?;
        let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
        if !digits(d) || !digits(c) {
            return Err(Error::Parse(format!("histogram entry {entry:?} is not degree:count")));
        }
        let d: usize = d.parse().map_err(|_| Error::Parse(format!("degree {d:?} out of range")))?;
        let c: u64 = c.parse().map_err(|_| Error::Parse(format!("count {c:?} out of range")))?;
        if out.insert(d, c).is_some() {
            return Err(Error::Parse(format!("duplicate degree {d} in histogram")));
        }
    }
    Ok(out)
}
