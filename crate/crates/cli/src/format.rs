//! JSON documents for groups, RRB groups and cocycles.

use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use rrbg::cohomology::{Cocycle4, TrivialModule};
use rrbg::group::FiniteGroup;
use rrbg::rrb::RrbGroup;

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    pub schema_version: u32,
    pub name: String,
    pub order: usize,
    pub table: Vec<Vec<usize>>,
}

/// Group files are referenced by path, relative to the RRB file.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct RrbDoc {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(rename = "H")]
    pub h: String,
    #[serde(rename = "G")]
    pub g: String,
    pub phi: Vec<Vec<usize>>,
    #[serde(rename = "R")]
    pub r: Vec<usize>,
}

/// Flat tables `tau1[a1][a2][i]`, `tau2[b1][b2][j]`, `rho[a][b][i]`, `chi[a][j]`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct CocycleDoc {
    pub schema_version: u32,
    pub a_order: usize,
    pub b_order: usize,
    pub k_moduli: Vec<u64>,
    pub l_moduli: Vec<u64>,
    pub s: Vec<Vec<i64>>,
    pub tau1: Vec<i64>,
    pub tau2: Vec<i64>,
    pub rho: Vec<i64>,
    pub chi: Vec<i64>,
}

/// A parsed input file and the digest of its canonical serialization.
#[derive(Clone, Debug)]
pub struct Loaded<T> {
    pub path: PathBuf,
    pub doc: T,
    pub digest: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn digest_of<T: Serialize>(doc: &T) -> String {
    sha256_hex(&serde_json::to_vec(doc).expect("documents serialize"))
}

fn parse_err(path: &Path, detail: impl Into<String>) -> CliError {
    CliError::Parse { path: path.display().to_string(), detail: detail.into() }
}

pub fn read_doc<T: DeserializeOwned + Serialize>(path: &Path) -> Result<Loaded<T>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| parse_err(path, e.to_string()))?;
    let doc: T = serde_json::from_str(&text)
        .map_err(|e| parse_err(path, format!("line {}, column {}: {e}", e.line(), e.column())))?;
    let digest = digest_of(&doc);
    Ok(Loaded { path: path.to_path_buf(), doc, digest })
}

pub fn write_doc<T: Serialize>(path: &Path, doc: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(doc).expect("documents serialize");
    text.push('\n');
    fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn check_version(path: &Path, v: u32) -> Result<(), CliError> {
    if v != SCHEMA_VERSION {
        return Err(parse_err(path, format!("schema_version {v} is not supported (expected {SCHEMA_VERSION})")));
    }
    Ok(())
}

impl GroupDoc {
    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupDoc { schema_version: SCHEMA_VERSION, name: g.name().to_string(), order: g.order(), table: g.table_rows() }
    }

    /// Shape problems are parse errors naming the row; group axioms are validation.
    pub fn to_group(&self, path: &Path) -> Result<FiniteGroup, CliError> {
        check_version(path, self.schema_version)?;
        if self.table.len() != self.order {
            return Err(parse_err(path, format!("table has {} rows, order is {}", self.table.len(), self.order)));
        }
        for (i, row) in self.table.iter().enumerate() {
            if row.len() != self.order {
                return Err(parse_err(path, format!("table row {i} has {} entries, expected {}", row.len(), self.order)));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= self.order) {
                return Err(parse_err(path, format!("table row {i} has entry {x} out of range")));
            }
        }
        FiniteGroup::from_table(self.table.clone(), self.name.clone())
            .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
    }
}

/// An RRB file together with the group files it references.
#[derive(Clone, Debug)]
pub struct RrbInput {
    pub rrb: Loaded<RrbDoc>,
    pub h: Loaded<GroupDoc>,
    pub g: Loaded<GroupDoc>,
}

impl RrbInput {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let rrb: Loaded<RrbDoc> = read_doc(path)?;
        check_version(path, rrb.doc.schema_version)?;
        let dir = path.parent().unwrap_or(Path::new("."));
        let h = read_doc(&dir.join(&rrb.doc.h))?;
        let g = read_doc(&dir.join(&rrb.doc.g))?;
        Ok(RrbInput { rrb, h, g })
    }

    pub fn files(&self) -> [(&Path, &str); 3] {
        [
            (self.rrb.path.as_path(), self.rrb.digest.as_str()),
            (self.h.path.as_path(), self.h.digest.as_str()),
            (self.g.path.as_path(), self.g.digest.as_str()),
        ]
    }

    pub fn build(&self) -> Result<RrbGroup, CliError> {
        let h = self.h.doc.to_group(&self.h.path)?;
        let g = self.g.doc.to_group(&self.g.path)?;
        let p = &self.rrb.path;
        if self.rrb.doc.phi.len() != g.order() {
            return Err(parse_err(p, format!("phi has {} rows, |G| = {}", self.rrb.doc.phi.len(), g.order())));
        }
        for (i, row) in self.rrb.doc.phi.iter().enumerate() {
            if row.len() != h.order() {
                return Err(parse_err(p, format!("phi row {i} has {} entries, |H| = {}", row.len(), h.order())));
            }
        }
        if self.rrb.doc.r.len() != h.order() {
            return Err(parse_err(p, format!("R has {} entries, |H| = {}", self.rrb.doc.r.len(), h.order())));
        }
        RrbGroup::new(h, g, self.rrb.doc.phi.clone(), self.rrb.doc.r.clone())
            .map_err(|e| CliError::Validation(format!("{}: {e}", p.display())))
    }
}

/// Writes `r` as an RRB file plus two group files next to it, named from `stem`.
pub fn write_rrb(dir: &Path, stem: &str, r: &RrbGroup) -> Result<PathBuf, CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    let (hname, gname) = (format!("{stem}.H.json"), format!("{stem}.G.json"));
    write_doc(&dir.join(&hname), &GroupDoc::from_group(r.h()))?;
    write_doc(&dir.join(&gname), &GroupDoc::from_group(r.g()))?;
    let doc = RrbDoc {
        schema_version: SCHEMA_VERSION,
        name: Some(stem.to_string()),
        h: hname,
        g: gname,
        phi: r.phi_rows(),
        r: r.r_map().to_vec(),
    };
    let path = dir.join(format!("{stem}.json"));
    write_doc(&path, &doc)?;
    Ok(path)
}

impl CocycleDoc {
    pub fn new(c: &Cocycle4, m: &TrivialModule) -> Self {
        let (na, nb, _, _) = c.dims();
        let [tau1, tau2, rho, chi] = c.tables();
        CocycleDoc {
            schema_version: SCHEMA_VERSION,
            a_order: na,
            b_order: nb,
            k_moduli: m.k().moduli().to_vec(),
            l_moduli: m.l().moduli().to_vec(),
            s: m.s_matrix().to_vec(),
            tau1: tau1.to_vec(),
            tau2: tau2.to_vec(),
            rho: rho.to_vec(),
            chi: chi.to_vec(),
        }
    }

    pub fn to_cocycle(&self, path: &Path) -> Result<(Cocycle4, TrivialModule), CliError> {
        check_version(path, self.schema_version)?;
        let m = TrivialModule::new(self.k_moduli.clone(), self.l_moduli.clone(), self.s.clone())
            .map_err(|e| parse_err(path, e.to_string()))?;
        let c = Cocycle4::from_tables(
            self.a_order,
            self.b_order,
            self.k_moduli.len(),
            self.l_moduli.len(),
            self.tau1.clone(),
            self.tau2.clone(),
            self.rho.clone(),
            self.chi.clone(),
        )
        .map_err(|e| parse_err(path, e.to_string()))?;
        Ok((c, m))
    }
}

/// Parses `"2,2"` into moduli.
pub fn parse_moduli(s: &str) -> Result<Vec<u64>, String> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|x| x.trim().parse::<u64>().map_err(|e| format!("bad modulus {x:?}: {e}"))).collect()
}

/// `identity`, `zero`, or rows separated by `;` with entries separated by `,`.
pub fn parse_s(s: &str, k: &[u64], l: &[u64]) -> Result<Vec<Vec<i64>>, String> {
    match s {
        "zero" => Ok(vec![vec![0; k.len()]; l.len()]),
        "identity" => {
            if k.len() != l.len() {
                return Err("identity S needs K and L of the same rank".into());
            }
            Ok((0..l.len()).map(|i| (0..k.len()).map(|j| (i == j) as i64).collect()).collect())
        }
        rows => rows
            .split(';')
            .map(|row| row.split(',').map(|x| x.trim().parse::<i64>().map_err(|e| format!("bad entry {x:?}: {e}"))).collect())
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s_syntax() {
        assert_eq!(parse_s("identity", &[2, 2], &[2, 2]).unwrap(), vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(parse_s("1,0;0,3", &[2, 4], &[2, 4]).unwrap(), vec![vec![1, 0], vec![0, 3]]);
        assert!(parse_s("identity", &[2], &[]).is_err());
        assert_eq!(parse_moduli("2, 3").unwrap(), vec![2, 3]);
    }

    #[test]
    fn digest_ignores_formatting() {
        let a: GroupDoc = serde_json::from_str(r#"{"schema_version":1,"name":"C2","order":2,"table":[[0,1],[1,0]]}"#).unwrap();
        let b: GroupDoc =
            serde_json::from_str("{\n \"name\": \"C2\", \"schema_version\": 1, \"order\": 2,\n \"table\": [[0, 1], [1, 0]]\n}").unwrap();
        assert_eq!(digest_of(&a), digest_of(&b));
    }
}
