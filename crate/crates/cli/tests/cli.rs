use std::path::Path;
use std::process::{Command, Output};

fn mgzz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mgzz"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(o)).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    r.records()
        .map(|rec| rec.unwrap().iter().map(str::to_string).collect())
        .collect()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn identity_file_gives_one() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("id.json");
    std::fs::write(&file, r#"{"format":1,"n":3,"gates":[]}"#).unwrap();
    let v = json(&mgzz(&["run", "--circuit", path_str(&file), "--qubit", "1"]));
    assert_eq!(v["value"], 1.0);
    assert_eq!(v["format"], 1);
    assert_eq!(v["chi_total"], 0);
}

#[test]
fn fermi_hubbard_profile_records_three_zz_steps() {
    let dir = tempfile::tempdir().unwrap();
    let prof = dir.path().join("p.csv");
    let out = dir.path().join("r.json");
    let o = mgzz(&[
        "run",
        "--builder",
        "fermi-hubbard:n_sites=5,T=3,sites=1",
        "--state",
        "bits:1000010000",
        "--profile",
        path_str(&prof),
        "--out",
        path_str(&out),
    ]);
    assert!(o.status.success());
    let rows = csv_rows(&std::fs::read_to_string(&prof).unwrap());
    assert_eq!(rows.iter().filter(|r| r[1] == "cphase").count(), 3);
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let chi: u64 = rows.iter().map(|r| r[2].parse::<u64>().unwrap()).sum();
    assert_eq!(v["chi_total"], chi);
}

#[test]
fn pruned_run_reports_mass() {
    let v = json(&mgzz(&[
        "run",
        "--builder",
        "mgzz:n=8,N=60,m=3",
        "--epsilon",
        "1e-8",
        "--seed",
        "3",
    ]));
    assert!(v["pruned_mass_total"].as_f64().unwrap() >= 0.0);
    assert_eq!(v["epsilon"], 1e-8);
}

#[test]
fn interaction_mode_agrees() {
    let args = |mode: &'static str, cut: &'static str| {
        json(&mgzz(&[
            "run", "--builder", "mgzz:n=6,N=30,m=2,flavor=mixed", "--seed", "5", "--qubit", "3",
            "--state", "bits:101100", "--mode", mode, "--cut", cut,
        ]))["value"]
            .as_f64()
            .unwrap()
    };
    let h = args("heisenberg", "0");
    for cut in ["0", "10", "30"] {
        assert!((args("interaction", cut) - h).abs() < 1e-9);
    }
}

#[test]
fn runs_are_deterministic() {
    let a = mgzz(&["build", "--builder", "mgzz:n=5,N=20,m=2", "--seed", "11"]);
    let b = mgzz(&["build", "--builder", "mgzz:n=5,N=20,m=2", "--seed", "11"]);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn built_file_runs_like_builder() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("c.json");
    let spec = "mgzz:n=5,N=25,m=2,flavor=mixed";
    assert!(mgzz(&["build", "--builder", spec, "--seed", "2", "--out", path_str(&file)])
        .status
        .success());
    let a = json(&mgzz(&["run", "--circuit", path_str(&file), "--qubit", "2"]));
    let b = json(&mgzz(&["run", "--builder", spec, "--seed", "2", "--qubit", "2"]));
    assert_eq!(a["value"], b["value"]);
    assert_eq!(a["chi_total"], b["chi_total"]);
}

#[test]
fn bounds_report_marks_boundary() {
    let v = json(&mgzz(&["bounds", "--n", "12", "--m", "5", "--N", "7"]));
    assert_eq!(v["m_c"], 5);
    assert_eq!(v["regime"], "polynomial");
    assert_eq!(v["N"], 7);
    assert_eq!(v["format"], 1);
    let v = json(&mgzz(&["bounds", "--n", "12", "--m", "6"]));
    assert_eq!(v["regime"], "exponential");
}

#[test]
fn m1_polynomial_bound_formula() {
    let v = json(&mgzz(&["bounds", "--n", "6", "--m", "1"]));
    let want = 495.0 / (1.0 - (4.0f64 / 9.0).powi(2));
    assert!((v["bound_general"].as_f64().unwrap() - want).abs() < 1e-9 * want);
}

#[test]
fn sweep_is_monotone_in_m() {
    let o = mgzz(&["bounds", "--sweep", "4..12"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("n,m,N,chi_general,bound,regime"));
    let rows = csv_rows(&text);
    for n in 4..=12 {
        let b: Vec<f64> = rows
            .iter()
            .filter(|r| r[0] == n.to_string())
            .map(|r| r[4].parse().unwrap())
            .collect();
        assert_eq!(b.len(), n - 1);
        assert!(b.windows(2).all(|w| w[1] >= w[0]), "n = {n}: {b:?}");
    }
}

#[test]
fn bounds_range_errors() {
    let o = mgzz(&["bounds", "--n", "4", "--m", "3"]);
    assert!(!o.status.success());
    assert!(!mgzz(&["bounds"]).status.success());
}

#[test]
fn check_passes_on_matchgate_and_mgzz_circuits() {
    let o = mgzz(&["check", "--seeds", "6", "--max-zz", "0"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let o = mgzz(&["check", "--seeds", "10", "--n", "3..5", "--max-zz", "4"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("ok"));
}

#[test]
fn check_catches_corrupted_tables() {
    let o = mgzz(&["check", "--seeds", "4", "--corrupt"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAILED"));
}

#[test]
fn profile_fh_columns_and_shape() {
    let o = mgzz(&[
        "profile-fh",
        "--n-sites",
        "5",
        "--trotter",
        "0..4",
        "--epsilon",
        "0,1e-5",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("n_sites,T,epsilon,chi_per_gate,time_per_gate,abs_error_vs_eps0"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 10);
    let exact: Vec<&Vec<String>> = rows.iter().filter(|r| r[2] == "0e0").collect();
    let chi: Vec<f64> = exact.iter().map(|r| r[3].parse().unwrap()).collect();
    assert!(chi.windows(2).all(|w| w[1] >= w[0]), "{chi:?}");
    assert!(exact.iter().all(|r| r[5].is_empty()));
    for pair in rows.chunks(2) {
        let (a, b): (f64, f64) = (pair[0][3].parse().unwrap(), pair[1][3].parse().unwrap());
        assert!(b <= a);
        assert!(!pair[1][5].is_empty());
    }
}

#[test]
fn profile_fh_skips_oversized() {
    let o = mgzz(&["profile-fh", "--n-sites", "3,20", "--trotter", "1", "--max-qubits", "10"]);
    assert!(o.status.success());
    assert_eq!(csv_rows(&stdout(&o)).len(), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("skipping"));
}

#[test]
fn bad_inputs_exit_nonzero() {
    assert!(!mgzz(&["run", "--builder", "nope:n=3"]).status.success());
    assert!(!mgzz(&["run", "--builder", "identity:n=3", "--state", "bits:01"]).status.success());
    assert!(!mgzz(&["run", "--builder", "identity:n=3", "--epsilon", "-1"]).status.success());
    assert!(!mgzz(&["run"]).status.success());
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.json");
    std::fs::write(&file, "{not json").unwrap();
    assert!(!mgzz(&["run", "--circuit", path_str(&file)]).status.success());
}
