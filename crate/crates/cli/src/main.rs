use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};

use rrbg::catalog::{bijective_catalog, standard_catalog};
use rrbg_cli::commands::{self, render_brace, render_record, write_artifacts, ModeArg, Operation, RecheckOutcome};
use rrbg_cli::config::WorkspaceConfig;
use rrbg_cli::format::{parse_moduli, parse_s, write_rrb, RrbInput};
use rrbg_cli::record::{self, catalog_dir};
use rrbg_cli::CliError;

#[derive(Parser)]
#[command(name = "rrbg", version, about = "Relative Rota-Baxter groups: cohomology, multipliers, covers and isoclinism")]
struct Cli {
    /// JSON workspace configuration; defaults to $RRBG_CONFIG
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// catalog file, overriding the configuration
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    /// do not append a record to the catalog
    #[arg(long, global = true)]
    no_record: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the axioms of one or more RRB files
    Verify { files: Vec<PathBuf> },
    /// Second cohomology with coefficients in a trivial module (K, L, S)
    H2 {
        rrb: PathBuf,
        /// moduli of K, comma separated; empty for the trivial group
        #[arg(long, default_value = "")]
        k: String,
        #[arg(long, default_value = "")]
        l: String,
        /// `identity`, `zero`, or rows `a,b;c,d` of the matrix L x K
        #[arg(long, default_value = "zero")]
        s: String,
        /// cross-check against enumeration of all cocycle tables
        #[arg(long)]
        oracle: bool,
        /// directory for basis cocycle files
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Schur multiplier with minimized generator cocycles
    Multiplier {
        rrb: PathBuf,
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a Schur cover and run the cover checks
    Cover {
        rrb: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide isoclinism or weak isoclinism of two RRB groups
    Isoclinic {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, value_enum, default_value = "strict")]
        mode: ModeArg,
    },
    /// Yang-Baxter map of the induced brace, verified
    Ybe {
        rrb: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render catalog records, or the brace tables of an RRB file
    Report {
        /// only this record (0-based)
        #[arg(long)]
        index: Option<usize>,
        #[arg(long, conflicts_with = "index")]
        rrb: Option<PathBuf>,
    },
    /// Recompute every catalog record and compare payloads
    Recheck,
    /// Write the built-in corpus as RRB files
    Export {
        #[arg(long, value_enum, default_value = "bijective")]
        which: Corpus,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Corpus {
    Standard,
    Bijective,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = e.downcast_ref::<CliError>().map_or(1, CliError::exit_code);
            ExitCode::from(code as u8)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    let mut cfg = WorkspaceConfig::resolve(cli.config.as_deref())?;
    if let Some(c) = cli.catalog {
        cfg.catalog = c;
    }
    cfg.apply_threads()?;
    let record = !cli.no_record;
    let op_with_out = |op: Operation, out: Option<PathBuf>| -> anyhow::Result<i32> { operation(&cfg, op, out.as_deref(), record) };
    match cli.cmd {
        Cmd::Verify { files } => {
            anyhow::ensure!(!files.is_empty(), CliError::Config("no files given".into()));
            let mut code = 0;
            for f in files {
                match commands::run(&Operation::Verify { rrb: f.clone() }, &cfg, record) {
                    Ok((rec, _)) => println!("{}: valid {}", f.display(), rec.result),
                    Err(e) => {
                        eprintln!("{}: {e}", f.display());
                        if code == 0 {
                            code = e.exit_code();
                        }
                    }
                }
            }
            Ok(code)
        }
        Cmd::H2 { rrb, k, l, s, oracle, out } => {
            let bad = |e: String| CliError::Config(e);
            let k = parse_moduli(&k).map_err(bad)?;
            let l = parse_moduli(&l).map_err(bad)?;
            let s = parse_s(&s, &k, &l).map_err(bad)?;
            op_with_out(Operation::H2 { rrb, k, l, s, oracle }, out)
        }
        Cmd::Multiplier { rrb, oracle, out } => op_with_out(Operation::Multiplier { rrb, oracle }, out),
        Cmd::Cover { rrb, out } => op_with_out(Operation::Cover { rrb }, out),
        Cmd::Isoclinic { first, second, mode } => op_with_out(Operation::Isoclinic { first, second, mode }, None),
        Cmd::Ybe { rrb, out } => op_with_out(Operation::Ybe { rrb }, out),
        Cmd::Report { index, rrb } => {
            if let Some(p) = rrb {
                let r = RrbInput::load(&p)?.build()?;
                print!("{}", render_brace(&r)?);
                return Ok(0);
            }
            let recs = record::load(&cfg.catalog)?;
            match index {
                Some(i) => {
                    let rec = recs.get(i).ok_or_else(|| CliError::Config(format!("no record {i}, catalog has {}", recs.len())))?;
                    print!("{}", render_record(i, rec));
                }
                None => recs.iter().enumerate().for_each(|(i, r)| print!("{}", render_record(i, r))),
            }
            Ok(0)
        }
        Cmd::Recheck => {
            let recs = record::load(&cfg.catalog)?;
            let dir = catalog_dir(&cfg.catalog);
            let mut bad = 0;
            for (i, rec) in recs.iter().enumerate() {
                match commands::recheck_record(rec, &dir) {
                    RecheckOutcome::Match => println!("#{i} {} MATCH", rec.operation),
                    RecheckOutcome::Mismatch(why) => {
                        bad += 1;
                        println!("#{i} {} MISMATCH: {why}", rec.operation);
                    }
                }
            }
            println!("{} records, {bad} mismatches", recs.len());
            Ok(if bad == 0 { 0 } else { 3 })
        }
        Cmd::Export { which, out } => {
            let entries = match which {
                Corpus::Standard => standard_catalog(),
                Corpus::Bijective => bijective_catalog(),
            }
            .context("building the corpus")?;
            for (i, e) in entries.iter().enumerate() {
                write_rrb(&out, &format!("rrb_{i:03}"), &e.rrb)?;
            }
            println!("wrote {} RRB groups to {}", entries.len(), out.display());
            Ok(0)
        }
    }
}

fn operation(cfg: &WorkspaceConfig, op: Operation, out: Option<&Path>, record: bool) -> anyhow::Result<i32> {
    let (rec, ex) = commands::run(&op, cfg, record)?;
    if let Some(dir) = out {
        for p in write_artifacts(dir, &ex.artifacts)? {
            eprintln!("wrote {}", p.display());
        }
    }
    println!("{}", serde_json::to_string_pretty(&rec)?);
    match &ex.status {
        commands::Status::Ok => {}
        commands::Status::Violation(why) => eprintln!("violation: {why}"),
        commands::Status::Unknown(why) => eprintln!("bound exceeded, no verdict: {why}"),
    }
    Ok(ex.status.exit_code())
}
