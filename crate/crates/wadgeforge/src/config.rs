//! Bounds read from a `key=value` file, each overridable by an environment
//! variable `WADGEFORGE_<KEY>` (upper case).

use std::path::Path;

use thiserror::Error;
use wadgeforge_core::words::DEFAULT_STEP_LIMIT;

pub const ENV_PREFIX: &str = "WADGEFORGE_";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Config {
    /// Bound on the word size handed to eraser evaluation.
    pub step_limit: usize,
    /// Rounds played when `--rounds` is not given.
    pub game_rounds: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config { step_limit: DEFAULT_STEP_LIMIT, game_rounds: 50 }
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("config line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{key}: {value:?} is not a positive integer")]
    Value { key: String, value: String },
}

const KEYS: [&str; 2] = ["step_limit", "game_rounds"];

impl Config {
    fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let bad = || ConfigError::Value { key: key.to_string(), value: value.to_string() };
        let n: usize = value.trim().parse().map_err(|_| bad())?;
        if n == 0 {
            return Err(bad());
        }
        match key {
            "step_limit" => self.step_limit = n,
            "game_rounds" => self.game_rounds = n,
            _ => unreachable!("keys are checked by the caller"),
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Config, ConfigError> {
        let mut c = Config::default();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let syntax = |message: String| ConfigError::Syntax { line: i + 1, message };
            let (k, v) = line.split_once('=').ok_or_else(|| syntax(String::from("expected key=value")))?;
            let k = k.trim();
            if !KEYS.contains(&k) {
                return Err(syntax(format!("unknown key {k:?}")));
            }
            c.set(k, v)?;
        }
        Ok(c)
    }

    /// Defaults, then the file if given, then the environment.
    pub fn load(path: Option<&Path>, env: &dyn Fn(&str) -> Option<String>) -> Result<Config, ConfigError> {
        let mut c = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|source| ConfigError::Io { path: p.display().to_string(), source })?;
                Config::parse(&text)?
            }
            None => Config::default(),
        };
        for k in KEYS {
            if let Some(v) = env(&format!("{ENV_PREFIX}{}", k.to_uppercase())) {
                c.set(k, &v)?;
            }
        }
        Ok(c)
    }
}
