//! Flat `key = value` configuration files.
//!
//! Blank lines and lines starting with `#` are skipped. Keys use the long
//! flag names with `-` or `_` (`w1`, `delta-sign`, `g-grid`, ...). A value
//! given on the command line always wins over the file.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConfigFile {
    entries: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let mut entries = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Invalid(format!("config line {}: expected key = value", i + 1)))?;
            let key = key.trim().replace('_', "-");
            if key.is_empty() {
                return Err(CliError::Invalid(format!("config line {}: empty key", i + 1)));
            }
            if entries.insert(key.clone(), value.trim().to_string()).is_some() {
                return Err(CliError::Invalid(format!("config line {}: duplicate key {key}", i + 1)));
            }
        }
        Ok(Self { entries })
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    pub fn get<T: FromStr>(&self, key: &str) -> CliResult<Option<T>> {
        self.raw(key)
            .map(|v| {
                v.parse()
                    .map_err(|_| CliError::Invalid(format!("config key {key}: cannot parse {v:?}")))
            })
            .transpose()
    }

    /// Keys that no command consumed.
    pub fn unknown<'a>(&'a self, known: &[&str]) -> Vec<&'a str> {
        self.entries
            .keys()
            .map(String::as_str)
            .filter(|k| !known.contains(k))
            .collect()
    }
}

/// Flag, then config, then default.
pub fn pick<T: FromStr>(flag: Option<T>, file: &ConfigFile, key: &str, default: T) -> CliResult<T> {
    match flag {
        Some(v) => Ok(v),
        None => Ok(file.get(key)?.unwrap_or(default)),
    }
}

pub fn parse_list<T: FromStr>(text: &str, what: &str) -> CliResult<Vec<T>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|_| CliError::Invalid(format!("{what}: cannot parse {s:?}")))
        })
        .collect()
}
