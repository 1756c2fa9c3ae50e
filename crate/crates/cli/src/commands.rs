//! Subcommands. Each recorded operation is a pure function of its inputs and
//! bounds, so the catalog can be rechecked by running it again.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use rrbg::brace::{brace_isoclinic, verify_brace_isoclinism, BraceIsoclinism, SkewBrace};
use rrbg::cohomology::{h2_rrb, TrivialModule};
use rrbg::isoclinism::{
    are_isoclinic, are_weakly_isoclinic, shared_invariants, transport_to_braces, verify_witness, Mode, Verdict,
};
use rrbg::oracle::{rrb_h2_profile, rrb_multiplier_profile, OracleProfile};
use rrbg::rrb::RrbGroup;
use rrbg::schur::{build_schur_cover, SchurMultiplier};

use crate::config::{Bounds, WorkspaceConfig};
use crate::format::{sha256_hex, write_doc, write_rrb, CocycleDoc, RrbInput, SCHEMA_VERSION};
use crate::record::{self, catalog_dir, relative_to, CatalogRecord, InputDigest, TOOL_VERSION};
use crate::CliError;

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum ModeArg {
    Strict,
    Weak,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Strict => Mode::Strict,
            ModeArg::Weak => Mode::Weak,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "operation", content = "params", rename_all = "snake_case", deny_unknown_fields)]
pub enum Operation {
    Verify { rrb: PathBuf },
    H2 { rrb: PathBuf, k: Vec<u64>, l: Vec<u64>, s: Vec<Vec<i64>>, oracle: bool },
    Multiplier { rrb: PathBuf, oracle: bool },
    Cover { rrb: PathBuf },
    Isoclinic { first: PathBuf, second: PathBuf, mode: ModeArg },
    Ybe { rrb: PathBuf },
}

impl Operation {
    pub fn name(&self) -> &'static str {
        match self {
            Operation::Verify { .. } => "verify",
            Operation::H2 { .. } => "h2",
            Operation::Multiplier { .. } => "multiplier",
            Operation::Cover { .. } => "cover",
            Operation::Isoclinic { .. } => "isoclinic",
            Operation::Ybe { .. } => "ybe",
        }
    }

    fn map_paths(&self, f: impl Fn(&Path) -> PathBuf) -> Operation {
        let mut op = self.clone();
        match &mut op {
            Operation::Verify { rrb }
            | Operation::H2 { rrb, .. }
            | Operation::Multiplier { rrb, .. }
            | Operation::Cover { rrb }
            | Operation::Ybe { rrb } => *rrb = f(rrb),
            Operation::Isoclinic { first, second, .. } => {
                *first = f(first);
                *second = f(second);
            }
        }
        op
    }

    /// Splits into the record's `operation` and `params` fields.
    fn to_parts(&self) -> (String, Value) {
        let v = serde_json::to_value(self).expect("operations serialize");
        (self.name().to_string(), v["params"].clone())
    }

    fn from_parts(operation: &str, params: &Value) -> Result<Operation, String> {
        serde_json::from_value(json!({ "operation": operation, "params": params })).map_err(|e| e.to_string())
    }
}

/// Extra files an operation produces, written only when an output directory is given.
#[derive(Clone, Debug)]
pub enum Artifact {
    Rrb { stem: String, rrb: RrbGroup },
    Cocycle { file: String, doc: CocycleDoc },
    Text { file: String, text: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// an oracle or a checked identity disagrees
    Violation(String),
    /// a search bound stopped the computation; nothing is claimed
    Unknown(String),
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Violation(_) => "violation",
            Status::Unknown(_) => "unknown",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Violation(_) => 3,
            Status::Unknown(_) => 4,
        }
    }

    fn worst(self, other: Status) -> Status {
        if other.exit_code() == 3 || (other.exit_code() == 4 && self.exit_code() == 0) {
            other
        } else {
            self
        }
    }
}

#[derive(Clone, Debug)]
pub struct Execution {
    pub result: Value,
    pub status: Status,
    pub artifacts: Vec<Artifact>,
    /// every file read, with its digest
    pub inputs: Vec<(PathBuf, String)>,
}

impl Execution {
    fn new(result: Value, inputs: &[&RrbInput]) -> Self {
        let inputs = inputs
            .iter()
            .flat_map(|i| i.files())
            .map(|(p, d)| (p.to_path_buf(), d.to_string()))
            .collect();
        Execution { result, status: Status::Ok, artifacts: Vec::new(), inputs }
    }

    fn flag(&mut self, s: Status) {
        self.status = std::mem::replace(&mut self.status, Status::Ok).worst(s);
    }
}

fn load(path: &Path) -> Result<(RrbInput, RrbGroup), CliError> {
    let input = RrbInput::load(path)?;
    let r = input.build()?;
    Ok((input, r))
}

fn profile_json(p: &BTreeMap<u64, u64>) -> Value {
    json!(p.iter().map(|(k, v)| (k.to_string(), *v)).collect::<BTreeMap<_, _>>())
}

fn oracle_json(o: &OracleProfile) -> Value {
    json!({ "order": o.order, "profile": profile_json(&o.profile) })
}

fn sizes(sub: &rrbg::rrb::RrbSubgroup) -> Value {
    json!([sub.k.order(), sub.l.order()])
}

pub fn execute(op: &Operation, bounds: &Bounds) -> Result<Execution, CliError> {
    match op {
        Operation::Verify { rrb } => verify(rrb),
        Operation::H2 { rrb, k, l, s, oracle } => h2(rrb, k, l, s, *oracle, bounds),
        Operation::Multiplier { rrb, oracle } => multiplier(rrb, *oracle, bounds),
        Operation::Cover { rrb } => cover(rrb, bounds),
        Operation::Isoclinic { first, second, mode } => isoclinic(first, second, *mode, bounds),
        Operation::Ybe { rrb } => ybe(rrb),
    }
}

fn verify(path: &Path) -> Result<Execution, CliError> {
    let (input, r) = load(path)?;
    let result = json!({
        "valid": true,
        "name": r.name(),
        "h_order": r.h().order(),
        "g_order": r.g().order(),
        "bijective": r.is_bijective(),
        "trivial_action": r.has_trivial_action(),
        "center": sizes(&r.center()),
        "commutator": sizes(&r.commutator()),
        "image_of_r": r.image_of_r().order(),
        "kernel_of_phi": r.kernel_of_phi().order(),
    });
    Ok(Execution::new(result, &[&input]))
}

fn h2(path: &Path, k: &[u64], l: &[u64], s: &[Vec<i64>], oracle: bool, bounds: &Bounds) -> Result<Execution, CliError> {
    let (input, r) = load(path)?;
    let m = TrivialModule::new(k.to_vec(), l.to_vec(), s.to_vec()).map_err(|e| CliError::Validation(e.to_string()))?;
    let h = h2_rrb(&r, &m, bounds.cocycle_vars)?;
    let files: Vec<String> = (0..h.basis().len()).map(|i| format!("h2_generator_{i}.json")).collect();
    let mut ex = Execution::new(
        json!({
            "invariant_factors": h.structure().factors(),
            "order": h.order(),
            "generators": files,
        }),
        &[&input],
    );
    for (file, c) in files.into_iter().zip(h.basis()) {
        ex.artifacts.push(Artifact::Cocycle { file, doc: CocycleDoc::new(c, &m) });
    }
    if oracle {
        let o = rrb_h2_profile(&r, &m, bounds.oracle_tables)?;
        let agree = o.order == h.order() && o.profile == h.structure().order_profile();
        ex.result["oracle"] = oracle_json(&o);
        ex.result["oracle_agrees"] = json!(agree);
        if !agree {
            ex.flag(Status::Violation("H2 disagrees with enumeration".into()));
        }
    }
    Ok(ex)
}

fn multiplier(path: &Path, oracle: bool, bounds: &Bounds) -> Result<Execution, CliError> {
    let (input, r) = load(path)?;
    let m = SchurMultiplier::compute(&r, bounds.cocycle_vars)?;
    let p = m.structure();
    let (n, e) = m.moduli();
    let divides = n % m.exponent() == 0;
    let stable = m.stabilization_holds(bounds.cocycle_vars)?;
    let mut gens = Vec::new();
    let mut artifacts = Vec::new();
    for i in 0..p.rank() {
        let rep = m.minimize_representative(&p.unit(i))?;
        let file = format!("multiplier_generator_{i}.json");
        gens.push(json!({ "order": rep.order, "file": file }));
        artifacts.push(Artifact::Cocycle { file, doc: CocycleDoc::new(&rep.reduced, &TrivialModule::cyclic(rep.order)) });
    }
    let mut ex = Execution::new(
        json!({
            "invariant_factors": p.factors(),
            "order": m.order(),
            "exponent": m.exponent(),
            "moduli": [n, e],
            "exponent_divides_order": divides,
            "stable_under_doubling": stable,
            "generators": gens,
        }),
        &[&input],
    );
    ex.artifacts = artifacts;
    if !divides {
        ex.flag(Status::Violation(format!("exponent {} does not divide {n}", m.exponent())));
    }
    if !stable {
        ex.flag(Status::Violation("multiplier changes when the enlargement doubles".into()));
    }
    if oracle {
        let o = rrb_multiplier_profile(&r, bounds.oracle_tables)?;
        let agree = o.order == m.order() && o.profile == p.order_profile();
        ex.result["oracle"] = oracle_json(&o);
        ex.result["oracle_agrees"] = json!(agree);
        if !agree {
            ex.flag(Status::Violation("multiplier disagrees with enumeration".into()));
        }
    }
    Ok(ex)
}

fn cover(path: &Path, bounds: &Bounds) -> Result<Execution, CliError> {
    let (input, r) = load(path)?;
    let c = build_schur_cover(&r, bounds.cocycle_vars)?;
    let k = &c.checks;
    let total = &c.ext.total;
    let mut ex = Execution::new(
        json!({
            "kernel_moduli": [c.ext.module.k().moduli(), c.ext.module.l().moduli()],
            "cover": { "h_order": total.h().order(), "g_order": total.g().order(), "file": "cover.json" },
            "cocycle_file": "cover_cocycle.json",
            "checks": {
                "central": k.central,
                "in_commutator": k.in_commutator,
                "transgression_isomorphism": k.tra_isomorphism,
                "criteria_agree": k.criteria_agree,
            },
        }),
        &[&input],
    );
    ex.artifacts.push(Artifact::Rrb { stem: "cover".into(), rrb: total.clone() });
    ex.artifacts.push(Artifact::Cocycle { file: "cover_cocycle.json".into(), doc: CocycleDoc::new(&c.cocycle, &c.ext.module) });
    if !k.all_true() {
        ex.flag(Status::Violation("constructed extension fails a cover check".into()));
    }
    Ok(ex)
}

fn isoclinic(first: &Path, second: &Path, mode: ModeArg, bounds: &Bounds) -> Result<Execution, CliError> {
    let (i1, r1) = load(first)?;
    let (i2, r2) = load(second)?;
    let verdict = match mode {
        ModeArg::Strict => are_isoclinic(&r1, &r2, bounds.isoclinism)?,
        ModeArg::Weak => are_weakly_isoclinic(&r1, &r2, bounds.isoclinism)?,
    };
    let inv = shared_invariants(&r1, &r2);
    let invariants = json!({
        "image_quotients": inv.image_quotients,
        "displacements": inv.displacements,
        "iota_quotients": inv.iota_quotients,
    });
    let mut ex = Execution::new(json!({ "mode": mode, "invariants": invariants }), &[&i1, &i2]);
    match verdict {
        Verdict::Unknown(why) => {
            ex.result["verdict"] = json!("unknown");
            ex.result["reason"] = json!(why);
            ex.flag(Status::Unknown(why));
        }
        Verdict::NotRelated(why) => {
            ex.result["verdict"] = json!("not_related");
            ex.result["reason"] = json!(why);
        }
        Verdict::Related(w) => {
            ex.result["verdict"] = json!("related");
            ex.result["witness"] = json!({ "psi1": w.psi1, "eta1": w.eta1, "psi2": w.psi2, "eta2": w.eta2 });
            if let Err(e) = verify_witness(&r1, &r2, &w, mode.into()) {
                ex.flag(Status::Violation(format!("witness fails verification: {e}")));
            }
            if !inv.all() {
                ex.flag(Status::Violation("related pair with different invariants".into()));
            }
            let (b1, b2) = (SkewBrace::from_rrb(&r1), SkewBrace::from_rrb(&r2));
            match transport_to_braces(&r1, &r2, &w) {
                Ok(bw) => {
                    let ok = verify_brace_isoclinism(&b1, &b2, &bw).is_ok();
                    ex.result["brace_witness"] = json!({ "xi1": bw.xi1, "xi2": bw.xi2, "verified": ok });
                    if !ok {
                        ex.flag(Status::Violation("transported brace witness fails".into()));
                    }
                }
                Err(e) => ex.flag(Status::Violation(format!("brace transport fails: {e}"))),
            }
            // an independent search on the braces must agree
            match brace_isoclinic(&b1, &b2, bounds.hom) {
                Ok(BraceIsoclinism::Isoclinic(_)) => ex.result["brace_search"] = json!("isoclinic"),
                Ok(BraceIsoclinism::NotIsoclinic(why)) => {
                    ex.result["brace_search"] = json!("not_isoclinic");
                    ex.flag(Status::Violation(format!("induced braces not isoclinic: {why}")));
                }
                Err(e) => ex.result["brace_search"] = json!(format!("skipped: {e}")),
            }
        }
    }
    Ok(ex)
}

fn ybe(path: &Path) -> Result<Execution, CliError> {
    let (input, r) = load(path)?;
    let b = SkewBrace::from_rrb(&r);
    let map = b.ybe_map()?;
    let text = map.to_text();
    let mut ex = Execution::new(
        json!({
            "size": map.size(),
            "braid": true,
            "nondegenerate": true,
            "table_sha256": sha256_hex(text.as_bytes()),
            "file": "ybe.txt",
        }),
        &[&input],
    );
    ex.artifacts.push(Artifact::Text { file: "ybe.txt".into(), text });
    Ok(ex)
}

pub fn write_artifacts(dir: &Path, artifacts: &[Artifact]) -> Result<Vec<PathBuf>, CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    let mut out = Vec::new();
    for a in artifacts {
        match a {
            Artifact::Rrb { stem, rrb } => out.push(write_rrb(dir, stem, rrb)?),
            Artifact::Cocycle { file, doc } => {
                let p = dir.join(file);
                write_doc(&p, doc)?;
                out.push(p);
            }
            Artifact::Text { file, text } => {
                let p = dir.join(file);
                std::fs::write(&p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
                out.push(p);
            }
        }
    }
    Ok(out)
}

/// Runs `op` and, unless `record` is false, appends the outcome to the catalog.
pub fn run(op: &Operation, cfg: &WorkspaceConfig, record: bool) -> Result<(CatalogRecord, Execution), CliError> {
    let ex = execute(op, &cfg.bounds)?;
    if record {
        record::ensure_dir(&cfg.catalog)?;
    }
    let dir = catalog_dir(&cfg.catalog);
    let rel = |p: &Path| relative_to(p, &dir);
    let (operation, params) = op.map_paths(rel).to_parts();
    let rec = CatalogRecord {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION.to_string(),
        timestamp: record::now(),
        operation,
        params,
        bounds: cfg.bounds.clone(),
        seed: cfg.seed,
        inputs: ex
            .inputs
            .iter()
            .map(|(p, d)| InputDigest { path: rel(p).display().to_string(), sha256: d.clone() })
            .collect(),
        status: ex.status.label().to_string(),
        result: ex.result.clone(),
    };
    if record {
        record::append(&cfg.catalog, &rec)?;
    }
    Ok((rec, ex))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RecheckOutcome {
    Match,
    Mismatch(String),
}

/// Re-runs one record with its stored bounds, resolving paths against `dir`.
pub fn recheck_record(rec: &CatalogRecord, dir: &Path) -> RecheckOutcome {
    let op = match Operation::from_parts(&rec.operation, &rec.params) {
        Ok(op) => op.map_paths(|p| dir.join(p)),
        Err(e) => return RecheckOutcome::Mismatch(format!("unreadable parameters: {e}")),
    };
    let ex = match execute(&op, &rec.bounds) {
        Ok(ex) => ex,
        Err(e) => return RecheckOutcome::Mismatch(format!("recomputation failed: {e}")),
    };
    let stored: BTreeMap<PathBuf, &str> = rec.inputs.iter().map(|i| (dir.join(&i.path), i.sha256.as_str())).collect();
    for (p, d) in &ex.inputs {
        match stored.get(p) {
            Some(s) if *s == d => {}
            Some(_) => return RecheckOutcome::Mismatch(format!("{} changed since it was recorded", p.display())),
            None => return RecheckOutcome::Mismatch(format!("{} is not among the recorded inputs", p.display())),
        }
    }
    if ex.status.label() != rec.status {
        return RecheckOutcome::Mismatch(format!("status {} != stored {}", ex.status.label(), rec.status));
    }
    if ex.result != rec.result {
        return RecheckOutcome::Mismatch("result payload differs".into());
    }
    RecheckOutcome::Match
}

/// Human-readable rendering of a record.
pub fn render_record(i: usize, rec: &CatalogRecord) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "#{i} {} [{}] at {} (tool {})", rec.operation, rec.status, rec.timestamp, rec.tool_version);
    for inp in &rec.inputs {
        let _ = writeln!(s, "  input  {} sha256:{}", inp.path, &inp.sha256[..16.min(inp.sha256.len())]);
    }
    if let Value::Object(params) = &rec.params {
        for (k, v) in params {
            let _ = writeln!(s, "  param  {k} = {v}");
        }
    }
    if let Value::Object(result) = &rec.result {
        for (k, v) in result {
            let _ = writeln!(s, "  {k:<28} {v}");
        }
    }
    s
}

/// Operation tables of the induced brace and its Yang-Baxter map, as text.
pub fn render_brace(r: &RrbGroup) -> Result<String, CliError> {
    let b = SkewBrace::from_rrb(r);
    let mut s = String::new();
    let table = |s: &mut String, title: &str, rows: Vec<Vec<usize>>| {
        let _ = writeln!(s, "{title}");
        for row in rows {
            let _ = writeln!(s, "  {}", row.iter().map(|x| format!("{x:>3}")).collect::<String>());
        }
    };
    let _ = writeln!(s, "brace of {} (order {})", r.name(), b.order());
    table(&mut s, "additive group (x . y):", b.dot().table_rows());
    table(&mut s, "circle group (x o y):", b.circle().table_rows());
    let _ = writeln!(s, "annihilator: {:?}", b.annihilator().elements());
    let _ = writeln!(s, "commutator:  {:?}", b.commutator().elements());
    let _ = writeln!(s, "Yang-Baxter map:");
    s.push_str(&b.ybe_map()?.to_text());
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn operation_parts_round_trip() {
        let ops = [
            Operation::H2 { rrb: "a.json".into(), k: vec![2], l: vec![2], s: vec![vec![1]], oracle: true },
            Operation::Isoclinic { first: "a.json".into(), second: "b.json".into(), mode: ModeArg::Weak },
        ];
        for op in ops {
            let (name, params) = op.to_parts();
            assert_eq!(Operation::from_parts(&name, &params).unwrap(), op);
        }
    }

    #[test]
    fn status_order() {
        assert_eq!(Status::Ok.worst(Status::Unknown("b".into())).exit_code(), 4);
        assert_eq!(Status::Unknown("b".into()).worst(Status::Violation("v".into())).exit_code(), 3);
        assert_eq!(Status::Violation("v".into()).worst(Status::Unknown("b".into())).exit_code(), 3);
    }
}
