//! Machine-readable run reports.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Bumped whenever a field is renamed or removed.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub version: String,
    pub command: String,
    pub params: BTreeMap<String, String>,
    pub results: Value,
    /// Milliseconds per phase.
    pub timings: BTreeMap<String, f64>,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            schema_version: SCHEMA_VERSION,
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            params: BTreeMap::new(),
            results: Value::Object(Default::default()),
            timings: BTreeMap::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        if let Value::Object(map) = &mut self.results {
            map.insert(key.to_string(), value.into());
        }
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.results.get(key)
    }

    /// Runs `f`, recording its wall time under `phase`.
    pub fn timed<T>(&mut self, phase: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.timings
            .insert(phase.to_string(), start.elapsed().as_secs_f64() * 1e3);
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Plain-text rendering: one `key: value` row per result field.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} (kturan {})\n", self.command, self.version);
        for (k, v) in &self.params {
            out.push_str(&format!("  param {k} = {v}\n"));
        }
        if let Value::Object(map) = &self.results {
            let width = map.keys().map(String::len).max().unwrap_or(0);
            for (k, v) in map {
                if k == "checks" {
                    continue;
                }
                let shown = match v {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                out.push_str(&format!("{k:<width$}  {shown}\n"));
            }
            if let Some(Value::Array(checks)) = map.get("checks") {
                out.push_str("checks:\n");
                for c in checks {
                    let pass = c.get("pass").and_then(Value::as_bool).unwrap_or(false);
                    let name = c.get("name").and_then(Value::as_str).unwrap_or("?");
                    let detail = c.get("detail").and_then(Value::as_str).unwrap_or("");
                    out.push_str(&format!("  [{}] {name} {detail}\n", if pass { "PASS" } else { "FAIL" }));
                }
            }
        }
        for (phase, ms) in &self.timings {
            out.push_str(&format!("  time {phase}: {ms:.1} ms\n"));
        }
        out
    }
}

/// Serde adapter writing `BigUint` as a decimal string.
pub mod decimal {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_str_radix(10))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(D::Error::custom)
    }
}
