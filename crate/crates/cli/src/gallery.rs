//! The example gallery: `<id>.json` problems with `<id>.expected.json` results.

use std::path::{Path, PathBuf};

use clap::Parser;
use serde_json::{json, Value};

use crate::args::Cli;
use crate::error::CliError;
use crate::problem::{parse_problem_file, Meta};
use crate::run::run_command;

pub fn default_dir() -> PathBuf {
    match std::env::var_os("GNORM_GALLERY") {
        Some(d) => PathBuf::from(d),
        None => Path::new(env!("CARGO_MANIFEST_DIR")).join("../../gallery"),
    }
}

/// Ids of all gallery entries, sorted.
pub fn ids(dir: &Path) -> Result<Vec<String>, CliError> {
    let rd = std::fs::read_dir(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    let mut out: Vec<String> = rd
        .filter_map(|e| e.ok())
        .filter_map(|e| e.file_name().into_string().ok())
        .filter(|n| n.ends_with(".json") && !n.ends_with(".expected.json"))
        .map(|n| n.trim_end_matches(".json").to_string())
        .collect();
    out.sort();
    Ok(out)
}

pub fn problem_path(dir: &Path, id: &str) -> PathBuf {
    dir.join(format!("{id}.json"))
}

pub fn expected_path(dir: &Path, id: &str) -> PathBuf {
    dir.join(format!("{id}.expected.json"))
}

/// Canonical text of a results value, as stored in expected files.
pub fn canonical(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn meta(dir: &Path, id: &str) -> Result<Meta, CliError> {
    let p = parse_problem_file(&problem_path(dir, id))?;
    p.file.meta.clone().ok_or_else(|| CliError::Validation {
        field: "meta".into(),
        line: None,
        msg: format!("gallery entry {id} has no meta block"),
    })
}

pub fn list(dir: &Path) -> Result<Value, CliError> {
    let mut out = Vec::new();
    for id in ids(dir)? {
        let m = meta(dir, &id)?;
        out.push(json!({"id": id, "command": m.command, "args": m.args, "description": m.description}));
    }
    Ok(json!({"entries": out}))
}

/// Runs one entry and returns its results value.
pub fn compute(dir: &Path, id: &str) -> Result<Value, CliError> {
    let m = meta(dir, id)?;
    let path = problem_path(dir, id);
    let mut argv: Vec<String> = vec!["gnorm".into(), m.command.clone()];
    argv.extend(m.args.iter().cloned());
    argv.push(path.display().to_string());
    let cli = Cli::try_parse_from(&argv).map_err(|e| CliError::Validation {
        field: "meta.command".into(),
        line: None,
        msg: e.to_string(),
    })?;
    let problem = parse_problem_file(&path)?;
    run_command(&cli.command, &problem)
}

/// Runs `id` (or every entry) and compares with the stored results byte for byte.
/// The second value is the mismatch error, if any entry disagreed.
pub fn run(dir: &Path, id: Option<&str>, bless: bool) -> Result<(Value, Option<CliError>), CliError> {
    let which = match id {
        Some(i) => {
            if !problem_path(dir, i).exists() {
                return Err(CliError::Io(format!("no gallery entry {i}")));
            }
            vec![i.to_string()]
        }
        None => ids(dir)?,
    };
    let mut entries = Vec::new();
    let mut bad = Vec::new();
    for i in &which {
        let m = meta(dir, i)?;
        let results = compute(dir, i)?;
        let text = canonical(&results);
        let exp = expected_path(dir, i);
        if bless {
            std::fs::write(&exp, &text).map_err(|e| CliError::Io(format!("{}: {e}", exp.display())))?;
        }
        let stored = std::fs::read_to_string(&exp).ok();
        let matches = stored.as_deref() == Some(text.as_str());
        if !matches {
            bad.push(i.clone());
        }
        entries.push(json!({
            "id": i,
            "command": m.command,
            "args": m.args,
            "matches": matches,
            "results": results,
        }));
    }
    let err = (!bad.is_empty()).then(|| CliError::Mismatch(format!("results differ from the stored report for {}", bad.join(", "))));
    Ok((json!({"entries": entries}), err))
}
