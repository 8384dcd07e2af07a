use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};

/// Environment variable consulted when `--config` is absent.
pub const CONFIG_ENV: &str = "COMPOSE_APPROX_CONFIG";

/// Keys accepted in a config file.
pub const CONFIG_KEYS: [&str; 10] = [
    "grid",
    "tol",
    "endpoint_gap",
    "tensor_budget",
    "remez_grid",
    "remez_tol",
    "max_iter",
    "seed",
    "out",
    "strict",
];

/// Flat `key = value` settings. `#` starts a comment line.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile {
    values: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::arg(format!("config line {}: expected key=value", i + 1)))?;
            let k = k.trim();
            if !CONFIG_KEYS.contains(&k) {
                return Err(Error::arg(format!("config line {}: unknown key `{k}`", i + 1)));
            }
            values.insert(k.to_string(), v.trim().to_string());
        }
        Ok(ConfigFile { values })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::arg(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn get<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>> {
        match self.raw(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| Error::arg(format!("config key `{key}`: cannot parse `{v}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_flat_file() {
        let c = ConfigFile::parse("# defaults\ngrid = 2049\n\nseed=7\nout = /tmp/x\n").unwrap();
        assert_eq!(c.get::<usize>("grid").unwrap(), Some(2049));
        assert_eq!(c.get::<u64>("seed").unwrap(), Some(7));
        assert_eq!(c.raw("out"), Some("/tmp/x"));
        assert_eq!(c.get::<f64>("tol").unwrap(), None);
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(ConfigFile::parse("grid 5").is_err());
        assert!(ConfigFile::parse("colour = red").is_err());
        let c = ConfigFile::parse("grid = many").unwrap();
        assert!(c.get::<usize>("grid").is_err());
    }
}
