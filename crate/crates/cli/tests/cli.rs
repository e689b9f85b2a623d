use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use ideal_families::{parse_family, write_family, FamilyReport, SetFamily};
use ideal_families_cli::{example_families, run, EXIT_FAILED, EXIT_OK, EXIT_USAGE};
use serde_json::Value;
use tempfile::tempdir;

fn idealfam(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_idealfam")).args(args).output().expect("binary runs")
}

/// In-process invocation: (status, stdout, stderr).
fn run_with(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("idealfam").chain(args.iter().copied());
    let code = run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

const THREE_VERTEX: &str = "n=3\n000\n100\n010\n001\n110\n101\n111\n";
const NON_IDEAL: &str = "# closed under intersection, but {1} is missing\nn=3\n000\n100\n110\n101\n111\n";

#[test]
fn check_three_vertex_family_as_json() {
    let dir = tempdir().unwrap();
    let file = write(dir.path(), "f.fam", THREE_VERTEX);
    let out = idealfam(&["check", "--json", &file]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let report: FamilyReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!((report.nds, report.tsh, report.is_ideal), (-1, 10, true));
    assert_eq!(report.degrees, [4, 3, 3]);
}

#[test]
fn check_non_ideal_family() {
    let dir = tempdir().unwrap();
    let file = write(dir.path(), "g.fam", NON_IDEAL);
    let (code, out, _) = run_with(&["check", "--json", &file], "");
    assert_eq!(code, EXIT_OK);
    let report: FamilyReport = serde_json::from_str(&out).unwrap();
    assert_eq!(report.nds, 1);
    assert!(!report.is_ideal && report.is_intersection_closed);
    assert_eq!(report.rare_vertices, [1, 2]);
}

#[test]
fn malformed_file_reports_line_number() {
    let dir = tempdir().unwrap();
    let file = write(dir.path(), "bad.fam", "n=3\n000\n\n10\n");
    let (code, _, err) = run_with(&["check", &file], "");
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("line 4"), "{err}");
    let (code, _, err) = run_with(&["check", &dir.path().join("missing.fam").to_string_lossy()], "");
    assert_eq!(code, EXIT_USAGE, "{err}");
}

#[test]
fn replay_exit_statuses() {
    let dir = tempdir().unwrap();
    let bad = write(dir.path(), "g.fam", NON_IDEAL);
    let out = idealfam(&["replay", &bad]);
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not an ideal family"));

    let good = write(dir.path(), "f.fam", THREE_VERTEX);
    let out = idealfam(&["replay", &good]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("root [DegGe2WithUV] n=3 |F|=7 NDS=-1 v=2"), "{text}");
    assert_eq!(text.lines().count(), 5);

    let (code, out, _) = run_with(&["replay", "--json", &good], "");
    assert_eq!(code, EXIT_OK);
    let tree: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(tree["children"][1]["case"], "Deg1WithUV");
}

#[test]
fn enumerate_five_with_every_check() {
    let out =
        idealfam(&["enumerate", "--n", "5", "--verify-nds", "--verify-injection", "--verify-identities", "--json"]);
    assert_eq!(out.status.code(), Some(EXIT_OK), "{}", String::from_utf8_lossy(&out.stderr));
    let stats: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(stats["families_visited"], 7579);
    assert_eq!(stats["violations"], 0);
    assert_eq!(stats["nds_max"], 0);
    assert_eq!(stats["injection_failures"], 0);
    assert_eq!(stats["identity_failures"], 0);
    assert!(stats["wall_time_ms"].is_u64());
}

#[test]
fn enumerate_counts_and_gates() {
    let (code, out, _) = run_with(&["enumerate", "--n", "4", "--count-only", "--up-to-iso", "--json"], "");
    assert_eq!(code, EXIT_OK);
    let stats: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(stats["families_visited"], 166);
    assert_eq!(stats["downward_closed"], 168);
    assert_eq!(stats["iso_classes"], 28);

    assert_eq!(run_with(&["enumerate", "--n", "6"], "").0, EXIT_USAGE);
    assert_eq!(run_with(&["enumerate", "--n", "7", "--deep"], "").0, EXIT_USAGE);
    assert_eq!(run_with(&["enumerate", "--n", "0"], "").0, EXIT_USAGE);
    assert_eq!(run_with(&["enumerate", "--n", "3", "--count-only", "--verify-nds"], "").0, EXIT_USAGE);
    assert_eq!(run_with(&["enumerate", "--n", "3", "--bogus"], "").0, EXIT_USAGE);
}

#[test]
fn search_emits_families() {
    let dir = tempdir().unwrap();
    let emit = dir.path().join("found");
    let out = idealfam(&[
        "search",
        "--n",
        "3",
        "--require-empty",
        "--require-ground",
        "--emit-families",
        emit.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["coverage"]["mode"], "exhaustive");
    assert_eq!(report["violations"], 6);

    let mut files: Vec<_> = fs::read_dir(&emit).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    assert_eq!(files.len(), 6);
    let example = parse_family(NON_IDEAL).unwrap();
    let mut seen_example = false;
    for path in files {
        let f = parse_family(&fs::read_to_string(&path).unwrap()).unwrap();
        assert!(f.nds() > 0 && f.is_intersection_closed());
        seen_example |= f == example;
    }
    assert!(seen_example);
}

#[test]
fn sampled_search_is_labeled() {
    let (code, out, _) = run_with(&["search", "--n", "4", "--require-empty", "--samples", "200", "--seed", "9"], "");
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("coverage: sampled, not exhaustive (200 samples, seed 9)"), "{out}");
    assert_eq!(run_with(&["search", "--n", "6"], "").0, EXIT_USAGE);
    assert_eq!(run_with(&["search", "--n", "3", "--seed", "1"], "").0, EXIT_USAGE);
}

#[test]
fn minor_from_stdin_and_file() {
    let (code, out, _) = run_with(&["minor", "--op", "con", "--vertex", "2"], THREE_VERTEX);
    assert_eq!(code, EXIT_OK);
    // {∅,{0},{0,1}} on {0,1}
    assert_eq!(out, "n=2\n00\n10\n11\n");

    let dir = tempdir().unwrap();
    let file = write(dir.path(), "f.fam", THREE_VERTEX);
    let (code, out, _) = run_with(&["minor", "--op", "trace", "--vertex", "0", "--in", &file], "");
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "n=2\n00\n10\n01\n11\n");

    let (code, out, _) = run_with(&["minor", "--op", "delp", "--vertex", "1", "--report", &file], "");
    assert_eq!(code, EXIT_OK);
    let family = parse_family(&out).unwrap();
    assert_eq!(family.num_edges(), 4);
    let line = out.lines().find_map(|l| l.strip_prefix("# identities ")).unwrap();
    let report: Value = serde_json::from_str(line).unwrap();
    assert!(report["checks"].as_array().unwrap().iter().all(|c| c["holds"] == true));
}

#[test]
fn minor_errors_are_usage_errors() {
    // vertex outside the ground set
    assert_eq!(run_with(&["minor", "--op", "del", "--vertex", "3"], THREE_VERTEX).0, EXIT_USAGE);
    // ideal deletion of a non-ideal family
    assert_eq!(run_with(&["minor", "--op", "delp", "--vertex", "0"], NON_IDEAL).0, EXIT_USAGE);
    // contraction by a vertex of degree zero
    assert_eq!(run_with(&["minor", "--op", "con", "--vertex", "1"], "n=2\n00\n10\n").0, EXIT_USAGE);
    assert_eq!(run_with(&["minor", "--op", "squash", "--vertex", "0"], THREE_VERTEX).0, EXIT_USAGE);
    assert_eq!(run_with(&["minor", "--op", "del", "--vertex", "0", "--report"], NON_IDEAL).0, EXIT_USAGE);
}

#[test]
fn examples_recheck_to_reference_values() {
    let dir = tempdir().unwrap();
    let out = idealfam(&["examples", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let expected: [(&str, usize, i64, &[u64], bool); 4] = [
        ("power_set_n2.fam", 4, 0, &[2, 2], true),
        ("three_vertex.fam", 7, -1, &[4, 3, 3], true),
        ("degree_one_n4.fam", 9, -4, &[5, 5, 5, 1], true),
        ("intersection_closed_nds1_n3.fam", 5, 1, &[4, 2, 2], false),
    ];
    for (name, edges, nds, degrees, ideal) in expected {
        let path = dir.path().join(name);
        let out = idealfam(&["check", "--json", path.to_str().unwrap()]);
        let report: FamilyReport = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(report.num_edges, edges, "{name}");
        assert_eq!(report.nds, nds, "{name}");
        assert_eq!(report.degrees, degrees, "{name}");
        assert_eq!(report.is_ideal, ideal, "{name}");
    }
}

#[test]
fn written_families_round_trip() {
    let dir = tempdir().unwrap();
    run_with(&["examples", "--out", dir.path().to_str().unwrap()], "");
    for (name, family) in example_families() {
        let text = fs::read_to_string(dir.path().join(name)).unwrap();
        let back: SetFamily = parse_family(&text).unwrap();
        assert_eq!(back, family, "{name}");
        assert_eq!(write_family(&back), text, "{name}");
    }
    // minors are written on compact labels and re-parse to the same shape
    for v in ["0", "1", "2"] {
        for op in ["del", "delp", "con", "trace"] {
            let (code, out, err) = run_with(&["minor", "--op", op, "--vertex", v], THREE_VERTEX);
            assert_eq!(code, EXIT_OK, "{op} {v}: {err}");
            let back = parse_family(&out).unwrap();
            assert_eq!(write_family(&back), out);
        }
    }
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = run_with(&["--help"], "");
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("enumerate"));
    assert_eq!(run_with(&[], "").0, EXIT_USAGE);
    assert_eq!(EXIT_FAILED, 1);
}
