use std::path::Path;
use std::process::{Command, Output};

use cliffspin::classify::{ClassificationJson, TableRow};
use cliffspin::clifford::Signature;
use cliffspin::gamma::RepresentationJson;
use cliffspin::geometry::{ConnectionField, FrameField, Grid, SpinorField, SpinorFieldJson};
use cliffspin::geometry::{ConnectionJson, FrameJson};
use cliffspin::Complex64;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cliffspin"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/data").join(name);
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn classify_dirac_algebra() {
    let text = stdout(&["classify", "3", "1"]);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["type"], serde_json::json!({"d": 4, "ring": "R", "doubled": false}));
    let parsed: ClassificationJson = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed, ClassificationJson::new(Signature::new(3, 1).unwrap()));
}

#[test]
fn classify_scalars() {
    let v: Value = serde_json::from_str(&stdout(&["classify", "0", "0"])).unwrap();
    assert_eq!(v["type"], serde_json::json!({"d": 1, "ring": "R", "doubled": false}));
}

#[test]
fn classify_with_oracle() {
    let v: Value = serde_json::from_str(&stdout(&["classify", "1", "4", "--oracle"])).unwrap();
    assert_eq!(v["type"], serde_json::json!({"d": 2, "ring": "H", "doubled": true}));
}

#[test]
fn tables_match_golden_files() {
    let euclid = stdout(&["table", "--min", "4", "--max", "11", "--family", "euclidean", "--format", "md"]);
    assert_eq!(euclid, golden("euclidean_table.md"));
    let hyper = stdout(&["table", "--family", "hyperbolic", "--format", "md"]);
    assert_eq!(hyper, golden("hyperbolic_table.md"));
}

#[test]
fn table_json_round_trips() {
    let text = stdout(&["table", "--min", "1", "--max", "8"]);
    let rows: Vec<TableRow> = serde_json::from_str(&text).unwrap();
    assert_eq!(rows.len(), 8);
    assert_eq!(serde_json::to_string_pretty(&rows).unwrap() + "\n", text);
    let csv = stdout(&["table", "--format", "csv"]);
    assert_eq!(csv.lines().count(), 9);
}

#[test]
fn rep_round_trips() {
    let text = stdout(&["rep", "3", "1"]);
    let parsed: RepresentationJson = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed.f, 4);
    let c = parsed.conjugation.as_ref().unwrap();
    assert_eq!(c.c_squared, 1);
    let rep = parsed.into_representation().unwrap();
    assert!(rep.relation_residual() < 1e-12);
}

#[test]
fn rep_time_first_moves_the_time_generator() {
    let plain: RepresentationJson = serde_json::from_str(&stdout(&["rep", "3", "1"])).unwrap();
    let physics: RepresentationJson =
        serde_json::from_str(&stdout(&["rep", "3", "1", "--time-first"])).unwrap();
    assert_eq!(physics.gammas[0], plain.gammas[3]);
    assert_eq!(physics.gammas[1], plain.gammas[0]);
}

#[test]
fn boost_columns() {
    let v: Value = serde_json::from_str(&stdout(&[
        "spin", "boost", "--signature", "3,1", "--beta", "1", "--axis", "0",
    ]))
    .unwrap();
    let chi = &v["chi"];
    let at = |r: usize, c: usize| chi[r][c].as_f64().unwrap();
    assert!((at(3, 3) - 1f64.cosh()).abs() < 1e-12);
    assert!((at(0, 3) - 1f64.sinh()).abs() < 1e-12);
    assert_eq!(v["component"], "L+↑");

    let physics: Value = serde_json::from_str(&stdout(&[
        "spin", "boost", "--signature", "3,1", "--beta", "1", "--axis", "1", "--time-first",
    ]))
    .unwrap();
    assert!((physics["chi"][0][0].as_f64().unwrap() - 1f64.cosh()).abs() < 1e-12);
    assert!((physics["chi"][1][0].as_f64().unwrap() - 1f64.sinh()).abs() < 1e-12);
}

#[test]
fn full_turn_is_minus_one() {
    let two_pi = std::f64::consts::TAU.to_string();
    let v: Value = serde_json::from_str(&stdout(&[
        "spin", "rotate", "--signature", "3,0", "--theta", &two_pi, "--plane", "0,1",
    ]))
    .unwrap();
    assert_eq!(v["element"]["terms"], serde_json::json!([{"blade": [], "re": "-1"}]));
}

#[test]
fn hypercharges_balance() {
    let v: Value = serde_json::from_str(&stdout(&["sm", "hypercharges"])).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r["balanced"] == true));
    let md = stdout(&["sm", "hypercharges", "--format", "md"]);
    assert!(md.contains("| 1 | quark | 2/3 | 2/3 | yes |"));
}

#[test]
fn incomplete_registry_is_a_domain_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.json");
    std::fs::write(&path, r#"{"version":1,"particles":[]}"#).unwrap();
    let out = run(&["sm", "hypercharges", "--registry", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("registry incomplete"));
}

#[test]
fn dirac_apply_on_plane_wave() {
    let sig = Signature::new(2, 0).unwrap();
    let grid = Grid::cube(2, 8).unwrap();
    let h = grid.spacing[0];
    let frame = FrameField::flat(sig, grid.clone()).unwrap();
    let conn = ConnectionField::zero(sig, grid.clone()).unwrap();
    let psi0 = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.5)];
    let k = [1.0, 2.0];
    let psi = SpinorField::plane_wave(sig, grid, &psi0, &k).unwrap();

    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, text: String| {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p.to_str().unwrap().to_owned()
    };
    let f = write("frame.json", serde_json::to_string(&FrameJson::from(&frame)).unwrap());
    let c = write("conn.json", serde_json::to_string(&ConnectionJson::from(&conn)).unwrap());
    let p = write("psi.json", serde_json::to_string(&SpinorFieldJson::from(&psi)).unwrap());

    let text = stdout(&["dirac", "apply", "--frame", &f, "--conn", &c, "--psi", &p]);
    let out = serde_json::from_str::<SpinorFieldJson>(&text).unwrap().into_field().unwrap();

    let rep: cliffspin::FloatRepresentation =
        cliffspin::gamma::build_representation(sig).unwrap();
    let mut symbol = cliffspin::linalg::Matrix::zeros(2, 2);
    for (g, ka) in rep.gammas.iter().zip(k) {
        symbol = &symbol + &g.scale(&Complex64::new(0.0, (ka * h).sin() / h));
    }
    let expected = SpinorField::plane_wave(sig, psi.grid.clone(), &symbol.mul_vec(&psi0), &k).unwrap();
    assert!(out.max_abs_diff(&expected) < 1e-12);

    let csv = stdout(&["dirac", "apply", "--frame", &f, "--conn", &c, "--psi", &p, "--format", "csv"]);
    assert_eq!(csv.lines().count(), 65);
}

#[test]
fn check_is_deterministic() {
    let args = ["check", "--max-n", "4", "--seed", "7", "--samples", "40"];
    let a = stdout(&args);
    let b = stdout(&args);
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["suites"][0]["passed"], 15);
    assert!(v["suites"].as_array().unwrap().iter().all(|s| s["failed"] == 0));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "3"]).status.code(), Some(2));
    assert_eq!(run(&["rep", "3", "1", "--format", "md"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "40", "1"]).status.code(), Some(1));
    assert_eq!(run(&["spin", "boost", "--signature", "3,0", "--beta", "1", "--axis", "0"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
