//! Flat `key = value` configuration with environment overrides.
//!
//! A value is taken from the first source that has it: command-line flag,
//! `PHI4_<KEY>` environment variable, config file, built-in default.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

pub const ENV_PREFIX: &str = "PHI4_";

/// Bad or missing user input; reported with exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>, UsageError> {
    let mut out = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| UsageError(format!("config line {}: expected `key = value`", n + 1)))?;
        let key = k.trim().to_ascii_lowercase().replace('-', "_");
        if key.is_empty() {
            return Err(UsageError(format!("config line {}: empty key", n + 1)));
        }
        out.insert(key, v.trim().to_string());
    }
    Ok(out)
}

pub fn env_name(key: &str) -> String {
    format!("{ENV_PREFIX}{}", key.to_ascii_uppercase())
}

pub struct Resolver {
    file: BTreeMap<String, String>,
    env: BTreeMap<String, String>,
    resolved: BTreeMap<String, String>,
}

impl Resolver {
    pub fn new(file: BTreeMap<String, String>, env: BTreeMap<String, String>) -> Self {
        Resolver { file, env, resolved: BTreeMap::new() }
    }

    pub fn from_sources(config: Option<&Path>) -> Result<Self, UsageError> {
        let file = match config {
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| UsageError(format!("cannot read config {}: {e}", p.display())))?;
                parse_config(&text)?
            }
            None => BTreeMap::new(),
        };
        let env = std::env::vars()
            .filter_map(|(k, v)| k.strip_prefix(ENV_PREFIX).map(|s| (s.to_ascii_lowercase(), v)))
            .collect();
        Ok(Resolver::new(file, env))
    }

    fn lookup(&self, key: &str, flag: Option<String>) -> Option<String> {
        flag.or_else(|| self.env.get(key).cloned()).or_else(|| self.file.get(key).cloned())
    }

    /// Resolves `key`, falling back to `default`.
    pub fn get<T: FromStr>(&mut self, key: &str, flag: Option<impl ToString>, default: &str) -> Result<T, UsageError>
    where
        T::Err: fmt::Display,
    {
        let raw = self.lookup(key, flag.map(|f| f.to_string())).unwrap_or_else(|| default.to_string());
        self.parse(key, raw)
    }

    /// Resolves a key with no default.
    pub fn require<T: FromStr>(&mut self, key: &str, flag: Option<impl ToString>) -> Result<T, UsageError>
    where
        T::Err: fmt::Display,
    {
        let raw = self
            .lookup(key, flag.map(|f| f.to_string()))
            .ok_or_else(|| UsageError(format!("missing `{key}` (flag, {} or config file)", env_name(key))))?;
        self.parse(key, raw)
    }

    fn parse<T: FromStr>(&mut self, key: &str, raw: String) -> Result<T, UsageError>
    where
        T::Err: fmt::Display,
    {
        let v = raw.parse::<T>().map_err(|e| UsageError(format!("bad value for `{key}`: '{raw}' ({e})")))?;
        self.resolved.insert(key.to_string(), raw);
        Ok(v)
    }

    pub fn resolved(&self) -> &BTreeMap<String, String> {
        &self.resolved
    }
}

/// Comma- or space-separated list, e.g. `0.1,0.2` or `100 200`.
#[derive(Clone, Debug, PartialEq)]
pub struct List<T>(pub Vec<T>);

impl<T: FromStr> FromStr for List<T>
where
    T::Err: fmt::Display,
{
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        s.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|p| !p.is_empty())
            .map(|p| p.parse::<T>().map_err(|e| format!("'{p}': {e}")))
            .collect::<Result<Vec<T>, String>>()
            .map(List)
    }
}

/// Joins flag values into the list syntax above.
pub fn join<T: ToString>(v: &[T]) -> Option<String> {
    if v.is_empty() {
        None
    } else {
        Some(v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
    }
}

/// Two-element list.
pub fn pair<T: Copy>(l: &List<T>, key: &str) -> Result<(T, T), UsageError> {
    match l.0.as_slice() {
        [a, b] => Ok((*a, *b)),
        _ => Err(UsageError(format!("`{key}` needs exactly two values"))),
    }
}
