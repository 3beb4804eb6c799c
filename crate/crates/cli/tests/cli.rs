use std::process::{Command, Output};

use serde_json::Value;

fn bandsolve(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bandsolve"))
        .args(args)
        .env_clear()
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn flat_strip_for_zero_angle() {
    let out = bandsolve(&["solve-bvp", "--a", "1", "--beta", "0", "--kappa", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["u0"], 0.0);
    assert_eq!(v["young_residual"], 0.0);
    assert_eq!(v["passed"], true);
}

#[test]
fn pendent_unit_case() {
    let out = bandsolve(&["pendent", "--kappa", "-1", "--u0", "-1"]);
    assert_eq!(out.status.code(), Some(0));
    let s = &json(&out)["summary"];
    let slope = s["max_slope"].as_f64().unwrap();
    assert!((slope - 0.74536).abs() < 1e-5, "{slope}");
    assert!(s["r_o"].as_f64().unwrap() > 3f64.sqrt());
}

#[test]
fn unit_sessile_bounds_pass() {
    let out = bandsolve(&["bounds", "--a", "1", "--beta", "1", "--kappa", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert!(v["records"].as_array().unwrap().len() >= 8);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(bandsolve(&["solve-bvp", "--a", "1"]).status.code(), Some(2));
    assert_eq!(
        bandsolve(&["solve-bvp", "--a", "-1", "--beta", "1", "--kappa", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        bandsolve(&["compare", "--mode", "u0", "--k1", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        bandsolve(&["compare", "--mode", "kappa", "--u0", "1", "--k1", "-1", "--k2", "1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn flags_override_environment() {
    let run = |envs: &[(&str, &str)], args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_bandsolve"))
            .args(args)
            .env_clear()
            .envs(envs.iter().copied())
            .output()
            .unwrap()
    };
    let from_env = run(
        &[("BANDSOLVE_A", "1"), ("BANDSOLVE_BETA", "1"), ("BANDSOLVE_KAPPA", "2")],
        &["solve-bvp"],
    );
    let from_flags = run(&[], &["solve-bvp", "--a", "1", "--beta", "1", "--kappa", "2"]);
    assert_eq!(from_env.stdout, from_flags.stdout);
    let overridden = run(&[("BANDSOLVE_KAPPA", "5")], &["solve-bvp", "--a", "1", "--beta", "1", "--kappa", "2"]);
    assert_eq!(overridden.stdout, from_flags.stdout);
}

#[test]
fn output_is_deterministic() {
    let args = ["solve-ivp", "--kappa", "1", "--u0", "0.5", "--rmax", "3"];
    let (a, b) = (bandsolve(&args), bandsolve(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let sweep = [
        "sweep", "--a", "0.5,1", "--beta", "-1,0.5", "--kappa", "1,-1", "--jobs", "3",
    ];
    let (a, b) = (bandsolve(&sweep), bandsolve(&sweep));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let rows = json(&a);
    assert_eq!(rows.as_array().unwrap().len(), 8);
    assert_eq!(rows[0]["a"], 0.5);
    assert_eq!(rows[0]["beta"], -1.0);
    assert_eq!(rows[0]["kappa"], 1.0);
}

#[test]
fn files_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let path = |name: &str| dir.path().join(name).to_str().unwrap().to_owned();
    let out = bandsolve(&[
        "solve-ivp", "--kappa", "-1", "--u0", "-1", "--rmax", "4", "--format", "csv", "--out",
        &path("p.csv"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(path("p.csv")).unwrap();
    assert!(csv.starts_with("r,u,slope,v,psi,residual\n"));

    let out = bandsolve(&[
        "export-mesh", "--kappa", "1", "--u0", "1", "--rmax", "1", "--rulings", "11",
        "--segments", "2", "--mesh", &path("m.obj"), "--out", &path("m.json"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let obj = std::fs::read_to_string(path("m.obj")).unwrap();
    assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 33);
    let summary: Value = serde_json::from_str(&std::fs::read_to_string(path("m.json")).unwrap()).unwrap();
    assert_eq!(summary["rulings_horizontal"], true);

    let out = bandsolve(&[
        "plot", "--kappa", "1", "--a", "1", "--beta", "1", "--overlays", "--svg", &path("p.svg"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let svg = std::fs::read_to_string(path("p.svg")).unwrap();
    assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"));
    assert!(svg.contains(r#"class="envelope""#));
}

#[test]
fn comparison_modes() {
    for args in [
        &["compare", "--mode", "kappa", "--u0", "1", "--k1", "0.5", "--k2", "2"][..],
        &["compare", "--mode", "kappa", "--u0", "-1", "--k1", "-2", "--k2", "-1"][..],
        &["compare", "--mode", "kappa", "--a", "1", "--beta", "1", "--k1", "0.5", "--k2", "2"][..],
        &["compare", "--mode", "u0", "--kappa", "1", "--u0", "0.5", "--delta", "0.1"][..],
        &["compare", "--mode", "u0", "--kappa", "-1", "--u0", "-1", "--delta", "0.1"][..],
    ] {
        let out = bandsolve(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(json(&out)["passed"], true);
    }
}

#[test]
fn foliation_leaf() {
    let out = bandsolve(&["foliate", "--a", "1", "--b", "3", "--kappa", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let u0 = json(&out)["leaf"]["u0"].as_f64().unwrap();
    assert!(0.0 < u0 && u0 < 3.0);
}
