//! Flat `key = value` config files with `#` comments and dotted keys.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::CliError;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct RunConfig {
    entries: BTreeMap<String, String>,
}

impl FromStr for RunConfig {
    type Err = CliError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut entries = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("line {}: expected `key = value`, got {raw:?}", n + 1)))?;
            let (k, v) = (k.trim(), v.trim());
            if k.is_empty() || !k.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.') {
                return Err(CliError::Config(format!("line {}: bad key {k:?}", n + 1)));
            }
            if entries.insert(k.to_string(), v.to_string()).is_some() {
                return Err(CliError::Config(format!("line {}: duplicate key {k:?}", n + 1)));
            }
        }
        Ok(Self { entries })
    }
}

/// Canonical form: keys sorted, one `key = value` per line.
impl fmt::Display for RunConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.entries {
            writeln!(f, "{k} = {v}")?;
        }
        Ok(())
    }
}

impl RunConfig {
    pub fn set(&mut self, key: &str, value: impl ToString) {
        self.entries.insert(key.to_string(), value.to_string());
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    /// Rejects any key outside `allowed`.
    pub fn check_keys(&self, allowed: &[&str]) -> Result<(), CliError> {
        let unknown: Vec<&str> = self.keys().filter(|k| !allowed.contains(k)).collect();
        if unknown.is_empty() {
            Ok(())
        } else {
            Err(CliError::Config(format!("unknown keys: {}", unknown.join(", "))))
        }
    }

    pub fn get_str(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        self.get_str(key)
            .map(|v| {
                v.parse::<T>()
                    .map_err(|_| CliError::Config(format!("cannot parse {key} = {v:?}")))
            })
            .transpose()
    }

    pub fn require<T: FromStr>(&self, key: &str) -> Result<T, CliError> {
        self.get(key)?
            .ok_or_else(|| CliError::Config(format!("missing required key {key}")))
    }

    pub fn or<T: FromStr>(&self, key: &str, default: T) -> Result<T, CliError> {
        Ok(self.get(key)?.unwrap_or(default))
    }

    pub fn positive(&self, key: &str) -> Result<f64, CliError> {
        let v: f64 = self.require(key)?;
        if v > 0.0 && v.is_finite() {
            Ok(v)
        } else {
            Err(CliError::Config(format!("{key} must be positive, got {v}")))
        }
    }

    /// Comma-separated list of floats.
    pub fn list(&self, key: &str) -> Result<Vec<f64>, CliError> {
        let v = self
            .get_str(key)
            .ok_or_else(|| CliError::Config(format!("missing required key {key}")))?;
        v.split(',')
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|_| CliError::Config(format!("cannot parse {key} entry {s:?}")))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_dotted_keys() {
        let c: RunConfig = "# header\nm1 = 1.5  # trailing\n\npotential.kind = coulomb\npotential.gamma=2\n"
            .parse()
            .unwrap();
        assert_eq!(c.require::<f64>("m1").unwrap(), 1.5);
        assert_eq!(c.get_str("potential.kind"), Some("coulomb"));
        assert_eq!(c.positive("potential.gamma").unwrap(), 2.0);
        assert!(c.require::<f64>("m2").is_err());
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!("novalue".parse::<RunConfig>().is_err());
        assert!("a b = 1".parse::<RunConfig>().is_err());
        assert!("a = 1\na = 2".parse::<RunConfig>().is_err());
    }

    #[test]
    fn unknown_keys() {
        let c: RunConfig = "m1 = 1\nbogus = 2".parse().unwrap();
        let err = c.check_keys(&["m1"]).unwrap_err();
        assert!(err.to_string().contains("bogus"));
    }

    #[test]
    fn canonical_round_trip() {
        let c: RunConfig = "z = 1\na = x y\nm.n = 1e-3".parse().unwrap();
        let text = c.to_string();
        assert_eq!(text, "a = x y\nm.n = 1e-3\nz = 1\n");
        assert_eq!(text.parse::<RunConfig>().unwrap(), c);
    }

    #[test]
    fn lists() {
        let c: RunConfig = "potential.r = 0.1, 0.5,1".parse().unwrap();
        assert_eq!(c.list("potential.r").unwrap(), vec![0.1, 0.5, 1.0]);
        assert!(c.positive("potential.r").is_err());
    }
}
