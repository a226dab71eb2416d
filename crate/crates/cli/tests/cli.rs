use std::fs;
use std::process::Command;

use qmds_cli::{run, EXIT_INVALID, EXIT_IO, EXIT_OK, EXIT_VERIFICATION};
use qmds_core::{CodeFile, Elem, DEFAULT_MAX_FIELD_SIZE};

/// Runs the command in-process, returning (status, stdout, stderr).
fn qmds(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut diag = Vec::new();
    let argv = std::iter::once("qmds").chain(args.iter().copied());
    let status = run(argv, &mut out, &mut diag);
    (status, String::from_utf8(out).unwrap(), String::from_utf8(diag).unwrap())
}

#[test]
fn construct_additive_writes_verified_code() {
    let (status, out, diag) = qmds(&["construct", "theorem1", "--q", "3", "--t", "3", "--k", "2"]);
    assert_eq!(status, EXIT_OK, "{diag}");
    let file = CodeFile::from_json(&out).unwrap();
    let q = file.quantum.unwrap();
    assert_eq!((q.n, q.k, q.d, q.q), (9, 5, 3, 3));
    assert_eq!(file.provenance.unwrap().as_str(), "theorem1");
    assert!(diag.contains("[[9, 5, 3]]_3"));
    file.to_code(DEFAULT_MAX_FIELD_SIZE).unwrap();
}

#[test]
fn construct_extended_maps_distance_to_dimension() {
    let (status, out, _) = qmds(&["construct", "theorem2", "--q", "3", "--t", "2", "--d", "3"]);
    assert_eq!(status, EXIT_OK);
    let file = CodeFile::from_json(&out).unwrap();
    assert_eq!(file.k, 2);
    assert!(file.extended);
    assert_eq!(file.provenance.unwrap().as_str(), "prop1-special");
    let (status, out, _) = qmds(&["construct", "theorem2", "--q", "3", "--t", "2", "--d", "4"]);
    assert_eq!(status, EXIT_OK);
    assert_eq!(CodeFile::from_json(&out).unwrap().provenance.unwrap().as_str(), "prop1-general");
}

#[test]
fn invalid_and_excluded_parameters_exit_2() {
    let cases: &[&[&str]] = &[
        &["construct", "theorem1", "--q", "3", "--t", "3", "--k", "3"],
        &["construct", "theorem1", "--q", "6", "--t", "1", "--k", "1"],
        &["construct", "theorem2", "--q", "4", "--t", "3", "--d", "4"],
        &["construct", "theorem2", "--q", "3", "--t", "2", "--d", "5"],
        &["sweep", "--q", "2,10"],
        &["sweep", "--family", "theorem3"],
        &["check-lemmas"],
        &["--unknown-flag", "no515"],
    ];
    for args in cases {
        let (status, out, diag) = qmds(args);
        assert_eq!(status, EXIT_INVALID, "{args:?}: {diag}");
        assert!(out.is_empty(), "{args:?}");
        assert!(!diag.is_empty(), "{args:?}");
    }
    let (_, _, diag) = qmds(&["construct", "theorem2", "--q", "4", "--t", "3", "--d", "4"]);
    assert!(diag.contains("excluded") && diag.contains("(2, q - 1, q)"), "{diag}");
    let (_, _, diag) = qmds(&["--unknown-flag"]);
    assert!(diag.contains("Usage"), "{diag}");
}

#[test]
fn field_bound_flag_and_env() {
    let args = ["construct", "theorem1", "--q", "4", "--t", "1", "--k", "1"];
    let (status, _, _) = qmds(&[&["--max-field-size", "15"][..], &args].concat());
    assert_eq!(status, EXIT_INVALID);
    let (status, _, _) = qmds(&[&["--max-field-size", "16"][..], &args].concat());
    assert_eq!(status, EXIT_OK);

    let bin = env!("CARGO_BIN_EXE_qmds");
    let out = Command::new(bin).args(args).env("QMDS_MAX_FIELD_SIZE", "9").output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_INVALID));
    assert!(out.stdout.is_empty());
}

#[test]
fn verify_round_trip_and_failures() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("code.json");
    let path_str = path.to_str().unwrap();
    let (status, out, _) =
        qmds(&["construct", "theorem2", "--q", "5", "--t", "4", "--d", "6", "--out", path_str]);
    assert_eq!(status, EXIT_OK);
    assert!(out.is_empty());

    let (status, out, _) = qmds(&["verify", path_str]);
    assert_eq!(status, EXIT_OK);
    let report: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["hermitian_self_orthogonal"], true);
    assert_eq!(report["quantum"]["n"], 26);
    assert_eq!(report["quantum"]["k"], 16);
    assert_eq!(report["multipliers_reproduced"], true);

    // break self-orthogonality: the report carries a witness, exit 1
    let mut file = CodeFile::from_json(&fs::read_to_string(&path).unwrap()).unwrap();
    file.witnesses = None;
    file.quantum = None;
    file.provenance = None;
    file.v[0] = if file.v[0] == Elem::ONE { Elem::from_code(2) } else { Elem::ONE };
    fs::write(&path, file.to_json().unwrap()).unwrap();
    let (status, out, _) = qmds(&["verify", path_str]);
    assert_eq!(status, EXIT_VERIFICATION);
    let report: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["hermitian_self_orthogonal"], false);
    assert!(report["witness"].is_object());

    // invariant violations and malformed files are invalid input
    file.v[0] = Elem::ZERO;
    fs::write(&path, file.to_json().unwrap()).unwrap();
    let (status, _, diag) = qmds(&["verify", path_str]);
    assert_eq!(status, EXIT_INVALID);
    assert!(diag.contains("multiplier"), "{diag}");
    file.v[0] = Elem::ONE;
    file.a[1] = file.a[0];
    fs::write(&path, file.to_json().unwrap()).unwrap();
    let (status, _, diag) = qmds(&["verify", path_str]);
    assert_eq!(status, EXIT_INVALID);
    assert!(diag.contains("distinct"), "{diag}");
    fs::write(&path, "{not json").unwrap();
    assert_eq!(qmds(&["verify", path_str]).0, EXIT_INVALID);

    let missing = dir.path().join("missing.json");
    let (status, _, diag) = qmds(&["verify", missing.to_str().unwrap()]);
    assert_eq!(status, EXIT_IO);
    assert!(diag.contains("missing.json"));
}

#[test]
fn unwritable_output_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("no-such-dir").join("rows.csv");
    let (status, out, _) = qmds(&["sweep", "--q", "2", "--out", target.to_str().unwrap()]);
    assert_eq!(status, EXIT_IO);
    assert!(out.is_empty());
}

#[test]
fn sweep_formats() {
    let (status, out, diag) = qmds(&["sweep", "--q", "3", "--family", "theorem1"]);
    assert_eq!(status, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "q,t,k,family,N,K,D,n,kq,d,status");
    assert_eq!(lines.len(), 6);
    assert_eq!(lines[5], "3,3,2,theorem1,9,2,8,9,5,3,verified");
    assert!(diag.contains("5 rows"));

    let (status, out, _) = qmds(&["sweep", "--q", "4", "--family", "theorem2", "--format", "json"]);
    assert_eq!(status, EXIT_OK);
    let rows = qmds_core::verify::read_rows_json(&out).unwrap();
    let excluded: Vec<_> = rows.iter().filter(|r| r.is_excluded()).map(|r| (r.t, r.d)).collect();
    assert_eq!(excluded, vec![(3, 4)]);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rows.csv");
    let (status, out, _) = qmds(&["sweep", "--q", "2,3", "--out", path.to_str().unwrap()]);
    assert_eq!(status, EXIT_OK);
    assert!(out.is_empty());
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.contains("2,2,1,theorem1,4,1,4,4,2,2,verified"));
}

#[test]
fn self_tests_and_nonexistence() {
    let (status, out, _) = qmds(&["check-lemmas", "--q", "3"]);
    assert_eq!(status, EXIT_OK);
    for line in out.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["failed"], 0, "{line}");
        assert_eq!(v["q"], 3);
    }
    assert_eq!(out.lines().count(), 14);

    let (status, out, diag) = qmds(&["no515"]);
    assert_eq!(status, EXIT_OK);
    let record: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(record["confirmed"], true);
    assert_eq!(record["examined"], 243);
    assert_eq!(record["classes"], 81);
    assert!(diag.contains("confirmed"));
}

#[test]
fn help_goes_to_stdout() {
    let (status, out, diag) = qmds(&["--help"]);
    assert_eq!(status, EXIT_OK);
    assert!(out.contains("construct") && out.contains("check-lemmas") && out.contains("no515"));
    assert!(diag.is_empty());
}

#[test]
fn binary_output_is_deterministic() {
    let bin = env!("CARGO_BIN_EXE_qmds");
    let run = || Command::new(bin).args(["construct", "theorem2", "--q", "7", "--t", "6", "--d", "7"]).output().unwrap();
    let (a, b) = (run(), run());
    assert_eq!(a.status.code(), Some(EXIT_OK));
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}
