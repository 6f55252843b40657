use std::path::Path;
use std::process::{Command, Output};

fn phi4(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_phi4")).arg("--out").arg(dir).args(args).output().expect("spawn phi4")
}

fn csv_rows(path: &Path) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_path(path).unwrap();
    r.records().map(|x| x.unwrap().iter().map(str::to_string).collect()).collect()
}

fn manifest(dir: &Path, cmd: &str) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join(format!("{cmd}.manifest.json"))).unwrap()).unwrap()
}

#[test]
fn radius_of_ground_state() {
    let d = tempfile::tempdir().unwrap();
    let o = phi4(d.path(), &["radius", "--nmax", "8", "--level", "0", "--sector", "even", "--orders", "200", "--fit", "100", "200"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let rows = csv_rows(&d.path().join("radius.csv"));
    let r: f64 = rows[0][4].parse().unwrap();
    assert!((r - 0.0651).abs() < 5e-4, "radius {r}");
    let m = manifest(d.path(), "radius");
    assert_eq!(m["config"]["n_max"], "8");
    assert!(m["error"].is_null());
}

#[test]
fn resources_four_qubits() {
    let d = tempfile::tempdir().unwrap();
    assert!(phi4(d.path(), &["resources", "--nq", "4"]).status.success());
    let rows = csv_rows(&d.path().join("resources.csv"));
    assert_eq!(rows[0][1], "55");
    assert_eq!(rows[0][2], "495");
}

#[test]
fn zeroth_order_projector_has_no_transition() {
    let d = tempfile::tempdir().unwrap();
    let o = phi4(d.path(), &["evolve", "--method", "projector", "--nmax", "4", "--lambda", "0", "--order", "0", "--points", "11"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    for row in csv_rows(&d.path().join("evolve.csv")) {
        assert_eq!(row[3].parse::<f64>().unwrap(), 0.0);
    }
}

#[test]
fn usage_errors_exit_two() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(phi4(d.path(), &["radius", "--bogus"]).status.code(), Some(2));
    assert_eq!(phi4(d.path(), &["radius", "--level", "0"]).status.code(), Some(2));
    assert_eq!(phi4(d.path(), &["radius", "--nmax", "8", "--level", "1", "--sector", "even"]).status.code(), Some(2));
    assert_eq!(phi4(d.path(), &["evolve", "--method", "trotter", "--nmax", "6"]).status.code(), Some(2));
    assert_eq!(phi4(d.path(), &["--help"]).status.code(), Some(0));
}

#[test]
fn library_errors_exit_one_with_record() {
    let d = tempfile::tempdir().unwrap();
    let o = phi4(d.path(), &["spectrum", "--nmax", "4", "--sites", "7", "--kappa", "0.1", "--lambda", "0.1"]);
    assert_eq!(o.status.code(), Some(1));
    let m = manifest(d.path(), "spectrum");
    assert_eq!(m["error"]["kind"], "dimension_cap");
    assert!(m["artifacts"].as_array().unwrap().is_empty());
}

#[test]
fn output_is_reproducible_across_thread_counts() {
    let args = ["scan", "--nmax", "6", "--re", "-0.3", "0.1", "--im", "-0.2", "0.2", "--resolution", "30", "--minima", "4"];
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let mut one = vec!["--threads", "1"];
    one.extend(args);
    assert!(phi4(a.path(), &one).status.success());
    let mut four = vec!["--threads", "4"];
    four.extend(args);
    assert!(phi4(b.path(), &four).status.success());
    for f in ["scan.csv", "scan_refined.csv", "scan_minima.csv"] {
        assert_eq!(std::fs::read(a.path().join(f)).unwrap(), std::fs::read(b.path().join(f)).unwrap(), "{f}");
    }
}

#[test]
fn config_file_and_environment() {
    let d = tempfile::tempdir().unwrap();
    let cfg = d.path().join("run.conf");
    std::fs::write(&cfg, "# series setup\nn_max = 8\norders = 3 # short\nlevel = 2\n").unwrap();
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_phi4"));
        c.arg("--config").arg(&cfg).arg("--out").arg(d.path()).arg("series").args(extra);
        if let Some(v) = env {
            c.env("PHI4_ORDERS", v);
        }
        assert!(c.output().unwrap().status.success());
        csv_rows(&d.path().join("series.csv")).len()
    };
    assert_eq!(run(None, &[]), 4);
    assert_eq!(run(Some("5"), &[]), 6);
    assert_eq!(run(Some("5"), &["--orders", "1"]), 2);
    assert_eq!(manifest(d.path(), "series")["config"]["level"], "2");
}

#[test]
fn json_mirror() {
    let d = tempfile::tempdir().unwrap();
    assert!(phi4(d.path(), &["--json", "pauli", "--nq", "2", "--lambda", "0.5"]).status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(d.path().join("pauli.json")).unwrap()).unwrap();
    assert_eq!(v[0]["string"], "II");
    assert_eq!(v[0]["coefficient"], 3.875);
}
