//! Plain-text `key = value` configuration, overridden by flags.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use crate::UsageError;

pub const KEYS: [&str; 14] =
    ["n", "p", "ext-cap", "prec", "seed", "scope", "out", "format", "j", "curve", "subgroup", "e", "r", "config"];

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Config {
    values: BTreeMap<String, String>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Config, UsageError> {
        let mut values = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| UsageError(format!("config line {}: expected key = value", i + 1)))?;
            let k = k.trim().replace('_', "-");
            if !KEYS.contains(&k.as_str()) || k == "config" {
                return Err(UsageError(format!("config line {}: unknown key '{k}'", i + 1)));
            }
            values.insert(k, v.trim().to_string());
        }
        Ok(Config { values })
    }

    pub fn load(path: Option<&Path>) -> Result<Config, UsageError> {
        match path {
            None => Ok(Config::default()),
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| UsageError(format!("cannot read config {}: {e}", p.display())))?;
                Config::parse(&text)
            }
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    /// The flag if given, else the config entry, parsed.
    pub fn pick<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, UsageError>
    where
        T::Err: std::fmt::Display,
    {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.get(key) {
            None => Ok(None),
            Some(s) => s.parse().map(Some).map_err(|e| UsageError(format!("config key {key} = '{s}': {e}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_overrides() {
        let c = Config::parse("# run\nn = 7\n\np=5  # char\next_cap = 40\n").unwrap();
        assert_eq!(c.pick::<u64>(None, "n").unwrap(), Some(7));
        assert_eq!(c.pick(Some(11u64), "p").unwrap(), Some(11));
        assert_eq!(c.pick::<usize>(None, "ext-cap").unwrap(), Some(40));
        assert_eq!(c.pick::<u64>(None, "seed").unwrap(), None);
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(Config::parse("n 7").is_err());
        assert!(Config::parse("colour = red").is_err());
        assert!(Config::parse("n = seven").unwrap().pick::<u64>(None, "n").is_err());
    }
}
