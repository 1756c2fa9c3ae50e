//! Workspace configuration, read from a JSON file.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use rrbg::cohomology::DEFAULT_VARIABLE_BOUND;
use rrbg::isoclinism::DEFAULT_ISOCLINISM_BOUND;
use rrbg::oracle::DEFAULT_TABLE_BOUND;

use crate::CliError;

/// Environment variable naming the config file when `--config` is absent.
pub const CONFIG_ENV: &str = "RRBG_CONFIG";

/// Search bounds that change results; recorded with every catalog entry.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields, default)]
pub struct Bounds {
    /// largest group order passed to homomorphism enumeration (brace isoclinism search)
    pub hom: usize,
    /// quotient and commutator orders for the isoclinism search
    pub isoclinism: usize,
    /// unknowns of one cocycle system
    pub cocycle_vars: usize,
    /// enumerated tables for `--oracle` checks
    pub oracle_tables: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { hom: 24, isoclinism: DEFAULT_ISOCLINISM_BOUND, cocycle_vars: DEFAULT_VARIABLE_BOUND, oracle_tables: DEFAULT_TABLE_BOUND }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields, default)]
pub struct WorkspaceConfig {
    pub schema_version: u32,
    pub bounds: Bounds,
    /// worker threads for library calls; 0 leaves the default
    pub threads: usize,
    /// relative paths are taken from the config file's directory
    pub catalog: PathBuf,
    pub seed: u64,
}

impl Default for WorkspaceConfig {
    fn default() -> Self {
        WorkspaceConfig {
            schema_version: crate::format::SCHEMA_VERSION,
            bounds: Bounds::default(),
            threads: 0,
            catalog: PathBuf::from("catalog.jsonl"),
            seed: 0x5eed_2024,
        }
    }
}

impl WorkspaceConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        let mut cfg: WorkspaceConfig =
            serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        if cfg.catalog.is_relative() {
            if let Some(dir) = path.parent() {
                cfg.catalog = dir.join(&cfg.catalog);
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// `explicit`, else the environment variable, else defaults.
    pub fn resolve(explicit: Option<&Path>) -> Result<Self, CliError> {
        match explicit {
            Some(p) => Self::load(p),
            None => match std::env::var_os(CONFIG_ENV) {
                Some(p) if !p.is_empty() => Self::load(Path::new(&p)),
                _ => Ok(Self::default()),
            },
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.schema_version != crate::format::SCHEMA_VERSION {
            return Err(CliError::Config(format!("schema_version {} is not supported", self.schema_version)));
        }
        let b = &self.bounds;
        for (name, v) in [("hom", b.hom as u64), ("isoclinism", b.isoclinism as u64), ("cocycle_vars", b.cocycle_vars as u64), ("oracle_tables", b.oracle_tables)] {
            if v == 0 {
                return Err(CliError::Config(format!("bound {name} must be positive")));
            }
        }
        Ok(())
    }

    /// Sizes the global worker pool; call once before any library work.
    pub fn apply_threads(&self) -> Result<(), CliError> {
        if self.threads > 0 {
            rayon::ThreadPoolBuilder::new()
                .num_threads(self.threads)
                .build_global()
                .map_err(|e| CliError::Config(e.to_string()))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_file_and_zero_bound() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.json");
        std::fs::write(&p, r#"{"bounds": {"isoclinism": 32}, "catalog": "out.jsonl"}"#).unwrap();
        let c = WorkspaceConfig::load(&p).unwrap();
        assert_eq!(c.bounds.isoclinism, 32);
        assert_eq!(c.bounds.cocycle_vars, DEFAULT_VARIABLE_BOUND);
        assert_eq!(c.catalog, dir.path().join("out.jsonl"));
        std::fs::write(&p, r#"{"bounds": {"hom": 0}}"#).unwrap();
        assert!(matches!(WorkspaceConfig::load(&p), Err(CliError::Config(_))));
    }
}
