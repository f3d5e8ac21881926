//! Named numeric parameters from a JSON object or `--key value` arguments.
//!
//! Keys are matched case-insensitively with `-` and `_` treated alike, so
//! `--eps_over_T` and `eps-over-t` name the same parameter. Every key must be
//! consumed; leftovers are reported as unknown with their full field path.

use std::collections::BTreeMap;

use serde_json::{Map, Value};

use crate::{CliError, Result};

fn normalize(key: &str) -> String {
    key.trim_start_matches('-').to_ascii_lowercase().replace('-', "_")
}

#[derive(Debug, Clone, Default)]
pub struct ParamSet {
    prefix: String,
    values: BTreeMap<String, Value>,
}

impl ParamSet {
    #[must_use]
    pub fn from_json(prefix: &str, map: &Map<String, Value>) -> Self {
        let values = map.iter().map(|(k, v)| (normalize(k), v.clone())).collect();
        Self { prefix: prefix.to_string(), values }
    }

    /// `--key value` pairs; a key without a value is an error.
    pub fn from_args(args: &[String]) -> Result<Self> {
        let mut values = BTreeMap::new();
        let mut it = args.iter();
        while let Some(k) = it.next() {
            if !k.starts_with("--") {
                return Err(CliError::validation(k.clone(), "expected `--name value`"));
            }
            let v = it.next().ok_or_else(|| CliError::validation(k.clone(), "missing value"))?;
            values.insert(normalize(k), Value::String(v.clone()));
        }
        Ok(Self { prefix: String::new(), values })
    }

    /// Full path of a field for error messages, e.g. `params.q`.
    #[must_use]
    pub fn field(&self, key: &str) -> String {
        if self.prefix.is_empty() {
            key.to_string()
        } else {
            format!("{}.{key}", self.prefix)
        }
    }

    pub fn take(&mut self, key: &str) -> Option<Value> {
        // null reads as absent, so resolved manifests parse back
        self.values.remove(&normalize(key)).filter(|v| !v.is_null())
    }

    pub fn f64_opt(&mut self, key: &str) -> Result<Option<f64>> {
        let Some(v) = self.take(key) else { return Ok(None) };
        let x = match &v {
            Value::Number(n) => n.as_f64(),
            Value::String(s) => match s.trim() {
                "inf" | "infinity" => Some(f64::INFINITY),
                t => t.parse().ok(),
            },
            _ => None,
        };
        x.map(Some).ok_or_else(|| CliError::validation(self.field(key), format!("expected a number, got {v}")))
    }

    pub fn f64(&mut self, key: &str, default: f64) -> Result<f64> {
        Ok(self.f64_opt(key)?.unwrap_or(default))
    }

    pub fn require(&mut self, key: &str) -> Result<f64> {
        self.f64_opt(key)?.ok_or_else(|| CliError::validation(self.field(key), "required"))
    }

    pub fn u64_opt(&mut self, key: &str) -> Result<Option<u64>> {
        let Some(v) = self.take(key) else { return Ok(None) };
        let x = match &v {
            Value::Number(n) => n.as_u64(),
            Value::String(s) => s.trim().parse().ok(),
            _ => None,
        };
        x.map(Some)
            .ok_or_else(|| CliError::validation(self.field(key), format!("expected a non-negative integer, got {v}")))
    }

    pub fn u64(&mut self, key: &str, default: u64) -> Result<u64> {
        Ok(self.u64_opt(key)?.unwrap_or(default))
    }

    pub fn usize(&mut self, key: &str, default: usize) -> Result<usize> {
        Ok(self.u64_opt(key)?.map_or(default, |x| x as usize))
    }

    pub fn string_opt(&mut self, key: &str) -> Result<Option<String>> {
        match self.take(key) {
            None | Some(Value::Null) => Ok(None),
            Some(Value::String(s)) => Ok(Some(s)),
            Some(v) => Err(CliError::validation(self.field(key), format!("expected a string, got {v}"))),
        }
    }

    /// A JSON array or a comma-separated string of numbers.
    pub fn f64_list(&mut self, key: &str) -> Result<Option<Vec<f64>>> {
        let Some(v) = self.take(key) else { return Ok(None) };
        let bad = || CliError::validation(self.field(key), format!("expected a list of numbers, got {v}"));
        let list: Option<Vec<f64>> = match &v {
            Value::Array(a) => a.iter().map(Value::as_f64).collect(),
            Value::Number(n) => n.as_f64().map(|x| vec![x]),
            Value::String(s) => s.split(',').map(|p| p.trim().parse().ok()).collect(),
            _ => None,
        };
        list.map(Some).ok_or_else(bad)
    }

    /// Fails on the first parameter nobody asked for.
    pub fn finish(self, expected: &[&str]) -> Result<()> {
        match self.values.keys().next() {
            None => Ok(()),
            Some(k) => Err(CliError::validation(
                self.field(k),
                format!("unknown parameter; expected one of: {}", expected.join(", ")),
            )),
        }
    }
}

/// Checks `lo < x < hi` (open) and names the field on failure.
pub fn check_open(ps: &ParamSet, key: &str, x: f64, lo: f64, hi: f64) -> Result<()> {
    if x > lo && x < hi {
        Ok(())
    } else {
        Err(CliError::validation(ps.field(key), format!("{x} must lie in ({lo}, {hi})")))
    }
}

pub fn check_positive(ps: &ParamSet, key: &str, x: f64) -> Result<()> {
    if x > 0.0 {
        Ok(())
    } else {
        Err(CliError::validation(ps.field(key), format!("{x} must be positive")))
    }
}
