//! The append-only result catalog: one JSON record per line.

use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Component, Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::Bounds;
use crate::CliError;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct InputDigest {
    /// relative to the catalog's directory when possible
    pub path: String,
    /// SHA-256 of the re-serialized document
    pub sha256: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CatalogRecord {
    pub schema_version: u32,
    pub tool_version: String,
    pub timestamp: String,
    pub operation: String,
    pub params: Value,
    pub bounds: Bounds,
    pub seed: u64,
    pub inputs: Vec<InputDigest>,
    pub status: String,
    pub result: Value,
}

/// `path` relative to `base` when they share more than the root, else absolute.
pub fn relative_to(path: &Path, base: &Path) -> PathBuf {
    let (Ok(p), Ok(b)) = (fs::canonicalize(path), fs::canonicalize(base)) else {
        return match std::env::current_dir() {
            Ok(cwd) if path.is_relative() => cwd.join(path),
            _ => path.to_path_buf(),
        };
    };
    let pc: Vec<Component> = p.components().collect();
    let bc: Vec<Component> = b.components().collect();
    let common = pc.iter().zip(&bc).take_while(|(x, y)| x == y).count();
    if common <= 1 {
        return p;
    }
    let mut out = PathBuf::new();
    for _ in common..bc.len() {
        out.push("..");
    }
    for c in &pc[common..] {
        out.push(c);
    }
    out
}

/// Directory against which relative paths in `catalog` are resolved.
pub fn catalog_dir(catalog: &Path) -> PathBuf {
    match catalog.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    }
}

pub fn ensure_dir(catalog: &Path) -> Result<(), CliError> {
    fs::create_dir_all(catalog_dir(catalog)).map_err(|e| CliError::Io(format!("{}: {e}", catalog.display())))
}

pub fn append(catalog: &Path, rec: &CatalogRecord) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", catalog.display()));
    ensure_dir(catalog)?;
    let mut line = serde_json::to_string(rec).expect("records serialize");
    line.push('\n');
    let mut f = OpenOptions::new().create(true).append(true).open(catalog).map_err(io)?;
    f.write_all(line.as_bytes()).map_err(io)
}

/// All records, in file order. Blank lines are skipped.
pub fn load(catalog: &Path) -> Result<Vec<CatalogRecord>, CliError> {
    let text = fs::read_to_string(catalog).map_err(|e| CliError::Io(format!("{}: {e}", catalog.display())))?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|e| CliError::Parse {
                path: catalog.display().to_string(),
                detail: format!("record on line {}: {e}", i + 1),
            })
        })
        .collect()
}

pub fn now() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relative_paths() {
        let dir = tempfile::tempdir().unwrap();
        fs::create_dir_all(dir.path().join("a/b")).unwrap();
        fs::create_dir_all(dir.path().join("c")).unwrap();
        fs::write(dir.path().join("a/b/x.json"), "{}").unwrap();
        assert_eq!(relative_to(&dir.path().join("a/b/x.json"), &dir.path().join("c")), PathBuf::from("../a/b/x.json"));
        assert_eq!(relative_to(&dir.path().join("a/b/x.json"), &dir.path().join("a")), PathBuf::from("b/x.json"));
    }

    #[test]
    fn append_and_load() {
        let dir = tempfile::tempdir().unwrap();
        let cat = dir.path().join("sub/cat.jsonl");
        let rec = CatalogRecord {
            schema_version: 1,
            tool_version: TOOL_VERSION.into(),
            timestamp: now(),
            operation: "verify".into(),
            params: serde_json::json!({"rrb": "x.json"}),
            bounds: Bounds::default(),
            seed: 7,
            inputs: vec![],
            status: "ok".into(),
            result: serde_json::json!({"valid": true}),
        };
        append(&cat, &rec).unwrap();
        append(&cat, &rec).unwrap();
        assert_eq!(load(&cat).unwrap(), vec![rec.clone(), rec]);
    }
}
