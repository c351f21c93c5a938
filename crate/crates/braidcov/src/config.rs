//! TOML configuration and the budget override variable.

use std::path::{Path, PathBuf};

use braidcov_core::covering::GeometryConfig;
use braidcov_core::rewriting::Budget;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Path of the config file when `--config` is not given.
pub const CONFIG_VAR: &str = "BRAIDCOV_CONFIG";
/// Comma-separated `key=value` overrides of the search budget.
pub const BUDGET_VAR: &str = "BRAIDCOV_BUDGET";

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("bad config {path}: {source}")]
    Toml { path: PathBuf, source: toml::de::Error },
    #[error("bad budget override `{0}`")]
    Budget(String),
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BudgetConfig {
    pub max_expansions: Option<usize>,
    pub max_length: Option<usize>,
    pub max_nodes: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub geometry: GeometryConfig,
    /// Seed for every random word the CLI draws.
    pub seed: u64,
    pub budget: BudgetConfig,
}

impl Default for Config {
    fn default() -> Self {
        Config { geometry: GeometryConfig::default(), seed: 20_240_229, budget: BudgetConfig::default() }
    }
}

impl Config {
    pub fn from_toml(text: &str, path: &Path) -> Result<Config, ConfigError> {
        toml::from_str(text).map_err(|source| ConfigError::Toml { path: path.into(), source })
    }

    /// Reads `path`, else the file named by [`CONFIG_VAR`], else the defaults.
    pub fn load(path: Option<&Path>) -> Result<Config, ConfigError> {
        let path = path.map(Path::to_path_buf).or_else(|| std::env::var_os(CONFIG_VAR).map(PathBuf::from));
        match path {
            None => Ok(Config::default()),
            Some(p) => {
                let text = std::fs::read_to_string(&p).map_err(|source| ConfigError::Io { path: p.clone(), source })?;
                Config::from_toml(&text, &p)
            }
        }
    }

    /// Default budget, then the config file, then [`BUDGET_VAR`].
    pub fn budget(&self) -> Result<Budget, ConfigError> {
        let mut b = Budget::default();
        apply(&mut b, &self.budget);
        if let Ok(text) = std::env::var(BUDGET_VAR) {
            apply(&mut b, &parse_budget_override(&text)?);
        }
        Ok(b)
    }
}

fn apply(b: &mut Budget, c: &BudgetConfig) {
    if let Some(v) = c.max_expansions {
        b.max_expansions = v;
    }
    if let Some(v) = c.max_nodes {
        b.max_nodes = v;
    }
    if c.max_length.is_some() {
        b.max_length = c.max_length;
    }
}

/// Parses `max_expansions=200000,max_nodes=500000,max_length=80`.
pub fn parse_budget_override(text: &str) -> Result<BudgetConfig, ConfigError> {
    let mut c = BudgetConfig::default();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let bad = || ConfigError::Budget(part.to_string());
        let (key, value) = part.split_once('=').ok_or_else(bad)?;
        let value: usize = value.trim().parse().map_err(|_| bad())?;
        match key.trim() {
            "max_expansions" => c.max_expansions = Some(value),
            "max_nodes" => c.max_nodes = Some(value),
            "max_length" => c.max_length = Some(value),
            _ => return Err(bad()),
        }
    }
    Ok(c)
}
