use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

use rrbg::cohomology::is_rrb_cocycle;
use rrbg_cli::format::{read_doc, CocycleDoc, RrbInput};

fn samples() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("samples")
}

fn rrbg(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rrbg"))
        .args(args)
        .current_dir(cwd)
        .env_remove("RRBG_CONFIG")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

/// The record printed by a recorded operation.
fn record(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("stdout is a record: {e}\n{}", String::from_utf8_lossy(&o.stdout)))
}

/// A scratch copy of the samples with its own catalog.
fn workspace() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    fs::create_dir(dir.path().join("groups")).unwrap();
    for sub in ["", "groups"] {
        for e in fs::read_dir(samples().join(sub)).unwrap() {
            let p = e.unwrap().path();
            if p.extension().is_some_and(|x| x == "json") {
                fs::copy(&p, dir.path().join(sub).join(p.file_name().unwrap())).unwrap();
            }
        }
    }
    fs::write(dir.path().join("config.json"), r#"{"catalog": "catalog.jsonl"}"#).unwrap();
    dir
}

#[test]
fn verify_reports_exit_codes() {
    let s = samples();
    let ok = rrbg(&["--no-record", "verify", "z2_over_trivial.json", "c4_by_v4.json"], &s);
    assert_eq!(code(&ok), 0, "{}", stderr(&ok));

    let bad = rrbg(&["--no-record", "verify", "bad_phi.json"], &s);
    assert_eq!(code(&bad), 2);
    assert!(stderr(&bad).contains("not an action"), "{}", stderr(&bad));

    let malformed = rrbg(&["--no-record", "verify", "malformed_row.json"], &s);
    assert_eq!(code(&malformed), 1);
    assert!(stderr(&malformed).contains("row 1"), "{}", stderr(&malformed));

    let missing = rrbg(&["--no-record", "verify", "no_such_file.json"], &s);
    assert_eq!(code(&missing), 1);
}

#[test]
fn usage_and_config_errors_exit_1() {
    let w = workspace();
    assert_eq!(code(&rrbg(&["frobnicate"], w.path())), 1);
    fs::write(w.path().join("zero.json"), r#"{"bounds": {"isoclinism": 0}}"#).unwrap();
    let o = rrbg(&["--config", "zero.json", "verify", "c2_identity.json"], w.path());
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("must be positive"));
}

#[test]
fn multiplier_of_z2_agrees_with_oracle() {
    let w = workspace();
    let o = rrbg(&["--config", "config.json", "multiplier", "z2_over_trivial.json", "--oracle"], w.path());
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = &record(&o)["result"];
    assert_eq!(r["invariant_factors"], serde_json::json!([]));
    assert_eq!(r["oracle_agrees"], Value::Bool(true));
    assert_eq!(r["oracle"]["order"], 1);

    let o = rrbg(&["--config", "config.json", "multiplier", "z2_zero_operator.json", "--oracle", "--out", "m"], w.path());
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = &record(&o)["result"];
    assert_eq!(r["invariant_factors"], serde_json::json!([2]));
    assert_eq!(r["oracle_agrees"], Value::Bool(true));
    // the generator file is a cocycle with values in Z/2
    let base = RrbInput::load(&w.path().join("z2_zero_operator.json")).unwrap().build().unwrap();
    let p = w.path().join("m").join(r["generators"][0]["file"].as_str().unwrap());
    let doc = read_doc::<CocycleDoc>(&p).unwrap();
    let (c, m) = doc.doc.to_cocycle(&p).unwrap();
    assert_eq!(doc.doc.k_moduli, vec![2]);
    assert!(is_rrb_cocycle(&base, &m, &c).unwrap());
}

#[test]
fn h2_files_are_cocycles() {
    let w = workspace();
    let o = rrbg(&["--no-record", "h2", "c2_identity.json", "--k", "2,2", "--l", "2,2", "--s", "identity", "--oracle", "--out", "h"], w.path());
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = &record(&o)["result"];
    assert_eq!(r["order"], 16);
    let base = RrbInput::load(&w.path().join("c2_identity.json")).unwrap().build().unwrap();
    for f in r["generators"].as_array().unwrap() {
        let p = w.path().join("h").join(f.as_str().unwrap());
        let (c, m) = read_doc::<CocycleDoc>(&p).unwrap().doc.to_cocycle(&p).unwrap();
        assert!(is_rrb_cocycle(&base, &m, &c).unwrap());
    }
}

#[test]
fn cover_of_trivial_multiplier_is_the_input() {
    let w = workspace();
    let o = rrbg(&["--no-record", "cover", "z2_over_trivial.json", "--out", "c"], w.path());
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = &record(&o)["result"];
    assert_eq!(r["cover"]["h_order"], 2);
    assert_eq!(r["cover"]["g_order"], 1);
    for k in ["central", "in_commutator", "transgression_isomorphism"] {
        assert_eq!(r["checks"][k], Value::Bool(true), "{k}");
    }
    let cover = RrbInput::load(&w.path().join("c/cover.json")).unwrap().build().unwrap();
    assert_eq!(cover.h().order(), 2);
}

#[test]
fn cover_of_bijective_sample_passes_checks() {
    let w = workspace();
    let o = rrbg(&["--no-record", "cover", "c4_by_v4.json", "--out", "c"], w.path());
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = &record(&o)["result"];
    assert_eq!(r["checks"]["criteria_agree"], Value::Bool(true));
    assert_eq!(r["cover"]["h_order"], 16);
}

#[test]
fn isoclinic_with_itself_gives_identity_witness() {
    let w = workspace();
    let o = rrbg(&["--no-record", "isoclinic", "s3_twisted.json", "s3_twisted.json"], w.path());
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = &record(&o)["result"];
    assert_eq!(r["verdict"], "related");
    let psi1: Vec<u64> = serde_json::from_value(r["witness"]["psi1"].clone()).unwrap();
    assert!(psi1.iter().enumerate().all(|(i, &x)| i as u64 == x));
    assert_eq!(r["brace_witness"]["verified"], Value::Bool(true));

    let o = rrbg(&["--no-record", "isoclinic", "c4_zero_operator.json", "s3_zero_operator.json"], w.path());
    assert_eq!(code(&o), 0);
    assert_eq!(record(&o)["result"]["verdict"], "not_related");
}

#[test]
fn bounds_exceeded_exit_4() {
    let w = workspace();
    let o = rrbg(&["--no-record", "multiplier", "c4_by_v4.json", "--oracle"], w.path());
    assert_eq!(code(&o), 4, "{}", stderr(&o));

    fs::write(w.path().join("tight.json"), r#"{"bounds": {"isoclinism": 1}}"#).unwrap();
    let o = rrbg(&["--config", "tight.json", "--no-record", "isoclinic", "s3_identity.json", "s3_identity.json"], w.path());
    assert_eq!(code(&o), 4, "{}", stderr(&o));
    let rec = record(&o);
    assert_eq!(rec["status"], "unknown");
    assert_eq!(rec["result"]["verdict"], "unknown");
}

#[test]
fn payloads_are_deterministic_and_recheck() {
    let w = workspace();
    let args = ["--config", "config.json", "isoclinic", "c4_by_v4.json", "c4_by_v4.json", "--mode", "weak"];
    let a = record(&rrbg(&args, w.path()));
    let b = record(&rrbg(&args, w.path()));
    assert_eq!(serde_json::to_string(&a["result"]).unwrap(), serde_json::to_string(&b["result"]).unwrap());
    assert_eq!(a["inputs"], b["inputs"]);
    assert_eq!(a["seed"], b["seed"]);
    assert_eq!(a["params"]["first"], "c4_by_v4.json");

    let o = rrbg(&["--config", "config.json", "recheck"], w.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));

    // a changed input is detected
    let p = w.path().join("groups/c4.json");
    let mut g: Value = serde_json::from_str(&fs::read_to_string(&p).unwrap()).unwrap();
    g["name"] = "Z4".into();
    fs::write(&p, g.to_string()).unwrap();
    let o = rrbg(&["--config", "config.json", "recheck"], w.path());
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stdout).contains("changed since it was recorded"));
}

#[test]
fn tampered_result_fails_recheck() {
    let w = workspace();
    assert_eq!(code(&rrbg(&["--config", "config.json", "multiplier", "z2_zero_operator.json"], w.path())), 0);
    let cat = w.path().join("catalog.jsonl");
    let text = fs::read_to_string(&cat).unwrap();
    fs::write(&cat, text.replace("\"invariant_factors\":[2]", "\"invariant_factors\":[4]")).unwrap();
    let o = rrbg(&["--config", "config.json", "recheck"], w.path());
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stdout).contains("result payload differs"));
}

#[test]
fn shipped_corpus_rechecks() {
    let o = rrbg(&["--config", "config.json", "recheck"], &samples());
    let out = String::from_utf8_lossy(&o.stdout);
    assert_eq!(code(&o), 0, "{out}");
    assert!(out.contains(" 0 mismatches"));
}

#[test]
fn report_renders_records_and_braces() {
    let o = rrbg(&["--config", "config.json", "report", "--index", "0"], &samples());
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).starts_with("#0 verify"));
    let o = rrbg(&["report", "--rrb", "c2_identity.json"], &samples());
    let out = String::from_utf8_lossy(&o.stdout);
    assert!(out.contains("Yang-Baxter map:") && out.contains("1 0 -> 0 1"), "{out}");
}

#[test]
fn ybe_writes_table() {
    let w = workspace();
    let o = rrbg(&["--no-record", "ybe", "s3_twisted.json", "--out", "y"], w.path());
    assert_eq!(code(&o), 0);
    assert_eq!(record(&o)["result"]["size"], 6);
    assert_eq!(fs::read_to_string(w.path().join("y/ybe.txt")).unwrap().lines().count(), 36);
}
