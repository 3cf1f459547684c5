use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_noma-exp"));
    c.env("RUST_LOG", "warn");
    c
}

fn recipe(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs").join(name)
}

fn write_config(dir: &TempDir, body: &str) -> PathBuf {
    let p = dir.path().join("exp.toml");
    std::fs::write(&p, body).unwrap();
    p
}

fn run(args: &[&str], config: Option<&Path>) -> Output {
    let mut c = bin();
    c.args(args);
    if let Some(p) = config {
        c.arg("--config").arg(p);
    }
    c.output().unwrap()
}

const SMALL_SWEEP: &str = r#"
snr_reference = "far_effective"
sweep_axis = "snr_db"
sweep_start = 0.0
sweep_stop = 20.0
sweep_step = 10.0
"#;

#[test]
fn validate_recipe_passes() {
    let out = run(&["validate"], Some(&recipe("validate_snr.toml")));
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 7);
}

#[test]
fn rmse_breach_exits_two() {
    let dir = TempDir::new().unwrap();
    let p = write_config(&dir, &format!("{SMALL_SWEEP}pop_rmse_threshold = 1e-12\n"));
    let out = run(&["validate", "--samples", "10000"], Some(&p));
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stdout.is_empty(), "rows are still written");
}

#[test]
fn empty_range_exits_one_with_diagnostic() {
    let dir = TempDir::new().unwrap();
    let p = write_config(&dir, "sweep_start = 10.0\nsweep_stop = 0.0\n");
    let out = run(&["sweep"], Some(&p));
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("empty sweep range"));
}

#[test]
fn config_errors_exit_one() {
    let dir = TempDir::new().unwrap();
    let p = write_config(&dir, "no_such_key = 3\n");
    assert_eq!(run(&["sweep"], Some(&p)).status.code(), Some(1));
    let p = write_config(&dir, "sweep_step = 0.0\n");
    assert_eq!(run(&["sweep"], Some(&p)).status.code(), Some(1));
    let missing = dir.path().join("absent.toml");
    assert_eq!(run(&["sweep"], Some(&missing)).status.code(), Some(1));
    assert_eq!(run(&["sweep", "--format", "xml"], None).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"], None).status.code(), Some(1));
}

#[test]
fn help_exits_zero() {
    assert_eq!(run(&["--help"], None).status.code(), Some(0));
    assert_eq!(run(&["tradeoff", "--help"], None).status.code(), Some(0));
}

#[test]
fn one_row_is_two_csv_lines() {
    let dir = TempDir::new().unwrap();
    let p = write_config(&dir, "sweep_start = 5.0\nsweep_stop = 5.0\n");
    let out = run(&["sweep"], Some(&p));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 2);
}

#[test]
fn csv_and_json_carry_the_same_fields() {
    let dir = TempDir::new().unwrap();
    let p = write_config(&dir, SMALL_SWEEP);
    for mode in ["sweep", "optimize", "compare", "tradeoff"] {
        let csv_out = run(&[mode, "--format", "csv"], Some(&p));
        let json_out = run(&[mode, "--format", "json"], Some(&p));
        assert_eq!(csv_out.status.code(), Some(0));
        assert_eq!(json_out.status.code(), Some(0));

        let mut rdr = csv::Reader::from_reader(csv_out.stdout.as_slice());
        let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
        let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
        let json: Vec<serde_json::Map<String, Value>> = serde_json::from_slice(&json_out.stdout).unwrap();
        assert_eq!(rows.len(), json.len(), "{mode}");
        for (row, obj) in rows.iter().zip(&json) {
            let keys: Vec<&String> = obj.keys().collect();
            assert_eq!(keys, header.iter().collect::<Vec<_>>(), "{mode}");
            for (name, cell) in header.iter().zip(row.iter()) {
                match &obj[name] {
                    Value::Number(n) => {
                        let a: f64 = cell.parse().unwrap();
                        assert_eq!(a, n.as_f64().unwrap(), "{mode}.{name}");
                    }
                    Value::String(s) => assert_eq!(s, cell, "{mode}.{name}"),
                    other => panic!("{mode}.{name}: unexpected {other}"),
                }
            }
        }
    }
}

#[test]
fn infeasible_points_use_the_sentinel() {
    let dir = TempDir::new().unwrap();
    let p = write_config(
        &dir,
        r#"
snr_reference = "far_effective"
snr_db = 10.0
r1_th_bps_hz = 0.7
r2_th_bps_hz = 0.7
sweep_axis = "xi"
sweep_start = 0.1
sweep_stop = 0.3
sweep_step = 0.1
"#,
    );
    let out = run(&["tradeoff"], Some(&p));
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let first = text.lines().nth(1).unwrap();
    assert!(first.contains("infeasible"), "{first}");
    assert!(!text.to_lowercase().contains("nan"));
}

#[test]
fn out_flag_writes_the_file() {
    let dir = TempDir::new().unwrap();
    let p = write_config(&dir, SMALL_SWEEP);
    let target = dir.path().join("rows.json");
    let out = bin()
        .args(["sweep", "--format", "json", "--config"])
        .arg(&p)
        .arg("--out")
        .arg(&target)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let rows: Vec<Value> = serde_json::from_slice(&std::fs::read(&target).unwrap()).unwrap();
    assert_eq!(rows.len(), 3);
}

#[test]
fn unwritable_output_names_the_path() {
    let dir = TempDir::new().unwrap();
    let target = dir.path().join("missing-dir").join("rows.csv");
    let out = bin().arg("sweep").arg("--out").arg(&target).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing-dir"));
}

#[test]
fn identical_runs_are_byte_identical() {
    let a = run(&["validate", "--samples", "50000", "--seed", "7"], Some(&recipe("validate_snr.toml")));
    let b = run(&["validate", "--samples", "50000", "--seed", "7"], Some(&recipe("validate_snr.toml")));
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["validate", "--samples", "50000", "--seed", "8"], Some(&recipe("validate_snr.toml")));
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn every_recipe_runs() {
    for entry in std::fs::read_dir(Path::new(env!("CARGO_MANIFEST_DIR")).join("configs")).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        let mode = text
            .lines()
            .find_map(|l| l.strip_prefix("mode = "))
            .map(|m| m.trim_matches('"').to_string())
            .unwrap();
        let out = run(&[&mode, "--samples", "20000"], Some(&path));
        // Fewer samples than the recipe may breach the RMSE check, nothing worse.
        let ok = if mode == "validate" { [0, 2].contains(&out.status.code().unwrap()) } else { out.status.success() };
        assert!(ok, "{}: {}", path.display(), String::from_utf8_lossy(&out.stderr));
        assert!(String::from_utf8(out.stdout).unwrap().lines().count() >= 2);
    }
}
