//! Flat key-value configuration files and flag precedence.
//!
//! A config file holds `key = value` lines with `#` comments; keys are
//! the long flag names without the leading dashes (`lambda-min`,
//! `points`, `seed`, ...). Resolution order is CLI flag, then config
//! file, then built-in default. All numbers are parsed
//! locale-independently through Rust's standard `FromStr`.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use crate::CliError;

#[derive(Debug, Default, Clone)]
pub struct ConfigFile {
    entries: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
        let mut entries = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::usage(format!(
                    "{}:{}: expected `key = value`",
                    path.display(),
                    lineno + 1
                )));
            };
            entries.insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(Self { entries })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }
}

/// CLI flag if present, else config-file value, else default.
pub fn resolve<T: FromStr + Copy>(
    flag: Option<T>,
    config: &ConfigFile,
    key: &str,
    default: T,
) -> Result<T, CliError> {
    if let Some(v) = flag {
        return Ok(v);
    }
    match config.get(key) {
        Some(raw) => raw
            .parse()
            .map_err(|_| CliError::usage(format!("config key `{key}`: cannot parse `{raw}`"))),
        None => Ok(default),
    }
}

/// Same as [`resolve`], for a repeatable flag; config values are
/// comma-separated.
pub fn resolve_list(
    flag: &[f64],
    config: &ConfigFile,
    key: &str,
) -> Result<Option<Vec<f64>>, CliError> {
    if !flag.is_empty() {
        return Ok(Some(flag.to_vec()));
    }
    match config.get(key) {
        Some(raw) => raw
            .split(',')
            .map(|item| {
                item.trim().parse::<f64>().map_err(|_| {
                    CliError::usage(format!("config key `{key}`: cannot parse `{item}`"))
                })
            })
            .collect::<Result<Vec<f64>, CliError>>()
            .map(Some),
        None => Ok(None),
    }
}
