//! Flat `key = value` configuration files with command-line overrides.
//!
//! Lines are UTF-8, `#` starts a comment, values keep their raw text until a
//! typed getter parses them. Power values accept an explicit `mW` or `dBm`
//! suffix.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use crate::calibrate::dbm_to_mw;
use crate::CliError;

#[derive(Debug, Clone, Default)]
pub struct Config {
    values: BTreeMap<String, String>,
}

impl Config {
    pub fn empty() -> Self {
        Config::default()
    }

    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| CliError::Model(format!("{}: {e}", path.display())))
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let mut values = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key = value", lineno + 1))?;
            let key = key.trim();
            if key.is_empty() {
                return Err(format!("line {}: empty key", lineno + 1));
            }
            values.insert(key.to_string(), value.trim().to_string());
        }
        Ok(Config { values })
    }

    /// Apply `key=value` overrides (from `--set`).
    pub fn apply_overrides(&mut self, overrides: &[String]) -> Result<(), CliError> {
        for item in overrides {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| CliError::Model(format!("override {item:?}: expected key=value")))?;
            self.values
                .insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(())
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(|s| s.as_str())
    }

    pub fn f64(&self, key: &str, default: f64) -> Result<f64, CliError> {
        match self.values.get(key) {
            None => Ok(default),
            Some(v) => v
                .parse()
                .map_err(|_| CliError::Model(format!("key {key}: cannot parse {v:?} as a number"))),
        }
    }

    pub fn require_f64(&self, key: &str) -> Result<f64, CliError> {
        match self.values.get(key) {
            None => Err(CliError::Model(format!("missing required key {key}"))),
            Some(v) => v
                .parse()
                .map_err(|_| CliError::Model(format!("key {key}: cannot parse {v:?} as a number"))),
        }
    }

    pub fn usize(&self, key: &str, default: usize) -> Result<usize, CliError> {
        match self.values.get(key) {
            None => Ok(default),
            Some(v) => v.parse().map_err(|_| {
                CliError::Model(format!("key {key}: cannot parse {v:?} as an integer"))
            }),
        }
    }

    pub fn string(&self, key: &str, default: &str) -> String {
        self.values
            .get(key)
            .cloned()
            .unwrap_or_else(|| default.to_string())
    }

    /// Power in mW; accepts `12.5`, `12.5 mW`, or `13.5 dBm`.
    pub fn power_mw(&self, key: &str, default_mw: f64) -> Result<f64, CliError> {
        match self.values.get(key) {
            None => Ok(default_mw),
            Some(v) => parse_power_mw(v)
                .map_err(|e| CliError::Model(format!("key {key}: {e}"))),
        }
    }
}

/// Parse a power with explicit unit suffix into mW.
pub fn parse_power_mw(text: &str) -> Result<f64, String> {
    let t = text.trim();
    let (num, is_dbm) = if let Some(stripped) = t.strip_suffix("dBm") {
        (stripped.trim(), true)
    } else if let Some(stripped) = t.strip_suffix("mW") {
        (stripped.trim(), false)
    } else {
        (t, false)
    };
    let value: f64 = num
        .parse()
        .map_err(|_| format!("cannot parse {text:?} as a power"))?;
    if is_dbm {
        Ok(dbm_to_mw(value))
    } else {
        if value < 0.0 {
            return Err(format!("power {text:?} must be nonnegative"));
        }
        Ok(value)
    }
}
