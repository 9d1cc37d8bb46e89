use std::path::{Path, PathBuf};
use std::process::Command;

use gnorm_cli::error::{EXIT_COMPUTATION, EXIT_LIMIT, EXIT_OK, EXIT_VALIDATION};
use gnorm_cli::{parse_problem, parse_problem_file, CliError, Report};

fn gallery() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../gallery")
}

fn fixture(id: &str) -> PathBuf {
    gallery().join(format!("{id}.json"))
}

fn gnorm(args: &[&str]) -> (i32, String, String) {
    gnorm_env(args, &[])
}

fn gnorm_env(args: &[&str], env: &[(&str, &str)]) -> (i32, String, String) {
    let mut c = Command::new(env!("CARGO_BIN_EXE_gnorm"));
    c.args(args);
    for (k, v) in env {
        c.env(k, v);
    }
    let out = c.output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("gnorm-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

#[test]
fn shipped_fixture_parses() {
    let p = parse_problem_file(&fixture("cusp-alpha2")).unwrap();
    assert_eq!(p.file.p, 2);
    assert_eq!(p.group.order(), 2);
    assert_eq!(p.points.len(), 1);
    assert!(p.derivation.is_some());
}

#[test]
fn illegal_t_degree_is_flagged_with_its_location() {
    let text = r#"{
  "p": 2,
  "curve": {"kind": "affine", "poly": "y^2 + x^3"},
  "group": "alpha(1)",
  "action": {
    "y": "y + T^2"
  }
}"#;
    match parse_problem(text).unwrap_err() {
        CliError::Validation { field, line, msg } => {
            assert_eq!(field, "action.y");
            assert_eq!(line, Some(6));
            assert!(msg.contains("T-degree"), "{msg}");
        }
        e => panic!("unexpected {e:?}"),
    }
}

#[test]
fn reducible_curve_is_rejected() {
    let text = r#"{"p": 2, "curve": {"kind": "affine", "poly": "x*y"}}"#;
    match parse_problem(text).unwrap_err() {
        CliError::Validation { field, msg, .. } => {
            assert_eq!(field, "curve.poly");
            assert!(msg.contains("reducible"), "{msg}");
        }
        e => panic!("unexpected {e:?}"),
    }
}

#[test]
fn malformed_json_reports_line_and_column() {
    let text = "{\n  \"p\": 2,\n  \"curve\": {\"kind\": \"affine\" \"poly\": \"y\"}\n}";
    match parse_problem(text).unwrap_err() {
        CliError::Parse { line, .. } => assert_eq!(line, 3),
        e => panic!("unexpected {e:?}"),
    }
}

#[test]
fn axioms_and_schema_are_checked() {
    let bad = [
        (r#"{"p": 4, "curve": {"kind": "affine", "poly": "y"}}"#, "p"),
        (r#"{"p": 2, "curve": {"kind": "conic", "poly": "y"}}"#, "curve.kind"),
        (r#"{"p": 2, "curve": {"kind": "affine", "poly": "y"}, "group": "beta(1)"}"#, "group"),
        (r#"{"p": 2, "curve": {"kind": "affine", "poly": "y^2 + x^3"}, "group": "alpha(1)", "action": {"y": "x"}}"#, "action"),
        (r#"{"p": 2, "curve": {"kind": "affine", "poly": "y^2 + x^3"}, "group": "alpha(1)"}"#, "action"),
        (r#"{"p": 2, "curve": {"kind": "affine", "poly": "y^2 + x^3"}, "points": ["x=1,y=0"]}"#, "points"),
        (r#"{"p": 2, "curve": {"kind": "projective", "poly": "z^2 + x*y"}, "group": "mu(1)", "action": {"x": "T*x"}}"#, "action"),
    ];
    for (text, want) in bad {
        match parse_problem(text) {
            Err(CliError::Validation { field, .. }) => assert_eq!(field, want, "{text}"),
            other => panic!("{text}: {other:?}"),
        }
    }
    let unknown = r#"{"p": 2, "curve": {"kind": "affine", "poly": "y"}, "colour": 1}"#;
    assert!(matches!(parse_problem(unknown), Err(CliError::Parse { .. })));
}

#[test]
fn report_round_trips() {
    let (code, out, _) = gnorm(&["check-gnormal", fixture("cusp-mu2").to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let r = Report::from_json(&out).unwrap();
    let again = Report::from_json(&r.to_json()).unwrap();
    assert_eq!(r, again);
    assert_eq!(r.results["is_g_normal"], false);
}

#[test]
fn output_is_deterministic_modulo_timing() {
    let f = fixture("cusp-mu2");
    let run = || {
        let (code, out, _) = gnorm(&["gnormalize", "--method", "both", f.to_str().unwrap()]);
        assert_eq!(code, EXIT_OK);
        Report::from_json(&out).unwrap().without_timing().to_json()
    };
    assert_eq!(run(), run());
}

#[test]
fn exit_codes() {
    let f = fixture("cusp-mu2");
    let f = f.to_str().unwrap();
    assert_eq!(gnorm(&["check-gnormal", f]).0, EXIT_OK);

    let d = scratch("exit");
    let bad = d.join("bad.json");
    std::fs::write(&bad, r#"{"p": 2, "curve": {"kind": "affine", "poly": "x*y"}}"#).unwrap();
    let (code, _, err) = gnorm(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(code, EXIT_VALIDATION);
    assert!(err.contains("curve.poly"), "{err}");
    assert_eq!(gnorm(&["analyze", d.join("missing.json").to_str().unwrap()]).0, EXIT_VALIDATION);

    let (code, _, err) = gnorm(&["gnormalize", "--method", "blowup", "--max-steps", "0", f]);
    assert_eq!(code, EXIT_LIMIT, "{err}");

    let (code, _, err) = gnorm_env(&["quotient", f], &[("GNORM_MAX_SPAIRS", "3")]);
    assert_eq!(code, EXIT_LIMIT, "{err}");
    assert!(err.contains("S-pairs"), "{err}");

    // a stored report that disagrees with the computation
    let g = scratch("gallery");
    std::fs::copy(fixture("cusp-alpha2"), g.join("cusp-alpha2.json")).unwrap();
    std::fs::write(g.join("cusp-alpha2.expected.json"), "{\"is_g_normal\": false}\n").unwrap();
    let (code, out, _) = gnorm(&["examples", "--gallery", g.to_str().unwrap(), "--id", "cusp-alpha2"]);
    assert_eq!(code, EXIT_COMPUTATION);
    let r = Report::from_json(&out).unwrap();
    assert_eq!(r.results["entries"][0]["matches"], false);
}

#[test]
fn orbit_command_and_text_output() {
    let f = fixture("cusp-alpha2");
    let (code, out, _) = gnorm(&["orbit", "--point", "x=0,y=0", f.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let r = Report::from_json(&out).unwrap();
    assert_eq!(r.results["orbits"][0]["orbit"], serde_json::json!(["x"]));
    assert_eq!(r.results["orbits"][0]["length"], 2);

    let (code, _, err) = gnorm(&["orbit", "--point", "x=1", f.to_str().unwrap()]);
    assert_eq!(code, EXIT_VALIDATION, "{err}");

    let (code, out, _) = gnorm(&["--text", "check-gnormal", fixture("cusp-mu2").to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("is_g_normal: false"), "{out}");
}

#[test]
fn gallery_lists_every_fixture() {
    let (code, out, _) = gnorm(&["examples", "--list"]);
    assert_eq!(code, EXIT_OK);
    let r = Report::from_json(&out).unwrap();
    let ids: Vec<&str> = r.results["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["id"].as_str().unwrap())
        .collect();
    for want in ["cusp-alpha2", "cusp-mu2", "quartic-alpha4", "quartic-mu4"] {
        assert!(ids.contains(&want), "{want} missing from {ids:?}");
    }
    for id in ids {
        assert!(gallery().join(format!("{id}.expected.json")).exists(), "{id} has no stored report");
    }
}
