use std::path::{Path, PathBuf};
use std::process::Command;

use cr_cli::{bundled_maps, run_file, Stages};

fn maps_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("maps")
}

fn crmap(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_crmap")).args(args).output().expect("crmap runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("crmap-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn bundled_files_meet_their_expectations() {
    let maps = bundled_maps();
    assert!(maps.len() >= 10);
    for path in maps {
        let report = run_file(&path, None, None, Stages::default()).unwrap();
        let degenerate = path.file_stem().unwrap() == "degenerate";
        assert_eq!(report.exit_code(), if degenerate { 1 } else { 0 }, "{}:\n{}", path.display(), report.summary());
    }
}

#[test]
fn reports_are_deterministic() {
    for name in ["r_eps_half", "phi_after_r_eps", "i_series"] {
        let path = maps_dir().join(format!("{name}.toml"));
        let a = run_file(&path, None, None, Stages::default()).unwrap();
        let b = run_file(&path, None, None, Stages::default()).unwrap();
        assert_eq!(a.to_json_untimed(), b.to_json_untimed());
    }
}

#[test]
fn points_file_adds_ranks_and_transversality() {
    let path = maps_dir().join("r_eps_half.toml");
    let points = maps_dir().join("r_eps_half.points.toml");
    let report = run_file(&path, Some(&points), None, Stages::default()).unwrap();
    assert_eq!(report.rank_at.len(), 4);
    assert!(report.rank_at.iter().all(|r| r.rank == 1));
    assert_eq!(report.transversality.unwrap().at_points, vec![true; 3]);
}

#[test]
fn stage_flags_select_work() {
    let path = maps_dir().join("r_n1_eps1.toml");
    let report = run_file(&path, None, None, Stages { check: true, ..Stages::default() }).unwrap();
    assert_eq!(report.maps_into, Some(true));
    assert!(report.ahlfors.is_none() && report.generic_rank.is_none() && report.isometry.is_none());
    let report = run_file(&path, None, None, Stages { isometry: true, ..Stages::default() }).unwrap();
    assert_eq!(report.isometry, Some(true));
}

#[test]
fn binary_exit_codes_and_json() {
    let good = maps_dir().join("r_n1_eps1.toml");
    let json = std::env::temp_dir().join(format!("crmap-report-{}.json", std::process::id()));
    let (code, stdout, _) = crmap(&[good.to_str().unwrap(), "--report", json.to_str().unwrap()]);
    assert_eq!(code, 0, "{stdout}");
    assert!(stdout.contains("result: pass"));
    let value: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(value["maps_into"], serde_json::Value::Bool(true));
    assert_eq!(value["q"], "z1*z1b + z1 + z1b + 1");

    let (code, stdout, _) = crmap(&[maps_dir().join("degenerate.toml").to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(stdout.contains("nowhere transversal"));

    let (code, _, stderr) = crmap(&["/nonexistent/map.toml"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("cannot read"));
}

#[test]
fn malformed_inputs_exit_with_two() {
    let cases = [
        ("syntax.toml", "components = [\n"),
        (
            "expr.toml",
            r#"mode = "rational"
components = ["z1", "w*(1 +", "w"]
[source]
kind = "hyperquadric"
n = 1
[target]
kind = "winkelmann"
n = 1
ell = 1
"#,
        ),
        (
            "kind.toml",
            r#"mode = "rational"
components = ["z1", "w"]
[source]
kind = "sphere"
n = 1
[target]
kind = "hyperquadric"
n = 1
"#,
        ),
        (
            "float.toml",
            r#"mode = "rational"
components = ["z1", "0.5*w"]
[source]
kind = "hyperquadric"
n = 1
[target]
kind = "hyperquadric"
n = 1
"#,
        ),
    ];
    for (name, text) in cases {
        let path = scratch(name, text);
        let (code, _, stderr) = crmap(&[path.to_str().unwrap()]);
        assert_eq!(code, 2, "{name}: {stderr}");
        assert!(stderr.starts_with("crmap: "), "{name}: {stderr}");
    }
    let path = scratch("expr.toml", cases[1].1);
    let (_, _, stderr) = crmap(&[path.to_str().unwrap()]);
    assert!(stderr.contains("component 2") && stderr.contains("column"), "{stderr}");
}

#[test]
fn not_into_target_is_a_check_failure() {
    let path = scratch(
        "not_into.toml",
        r#"mode = "rational"
components = ["z1", "2*w"]
[source]
kind = "hyperquadric"
n = 1
[target]
kind = "hyperquadric"
n = 1
"#,
    );
    let (code, stdout, _) = crmap(&[path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(stdout.contains("maps into target: false"));
}

#[test]
fn series_order_override() {
    let path = maps_dir().join("i_series.toml");
    let report = run_file(&path, None, Some(6), Stages::default()).unwrap();
    assert_eq!(report.mode, "series");
    assert_eq!(report.exit_code(), 0, "{}", report.summary());
    let ahlfors = report.ahlfors.unwrap();
    assert!(ahlfors.vanishes);
    assert!(ahlfors.order.unwrap() < 6);
}
