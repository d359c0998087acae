use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures/paper")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coxform"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = run(&all);
    let v: Value =
        serde_json::from_str(&stdout(&o)).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)));
    assert_eq!(v["schema"], 1);
    (v, o.status.code().unwrap())
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn fx(name: &str) -> String {
    fixture(name).to_str().unwrap().to_string()
}

#[test]
fn identity_form() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "id.mat", "# identity\n1 0\n0 1\n");
    let (v, code) = json(&["analyze-form", &p]);
    assert_eq!(code, 0);
    assert_eq!(v["form"]["classification"], "positive");
    assert_eq!(v["form"]["period"], 2);
    assert_eq!(v["form"]["coxeter"], serde_json::json!(["-1 0", "0 -1"]));
}

#[test]
fn symmetrized_polynomial_of_first_spectral_poset() {
    let o = run(&["analyze-form", &fx("specm_1_euler.mat")]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("symmetrized charpoly: x^5 - 10x^4 + 36x^3 - 56x^2 + 34x - 4"));
}

#[test]
fn periodic_indefinite_form() {
    let o = run(&["analyze-form", &fx("ex_periodic_euler.mat")]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("summary: periodic, period 6; indefinite; witness value -1"));
}

#[test]
fn two_chain() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "c2.poset", "a < b\n");
    let (v, code) = json(&["analyze-poset", &p]);
    assert_eq!(code, 0);
    assert_eq!(v["form"]["coxeter"], serde_json::json!(["0 -1", "1 -1"]));
    assert_eq!(v["form"]["period"], 3);
    assert_eq!(v["form"]["classification"], "positive");
    assert_eq!(v["poset"]["hasse"], serde_json::json!([["a", "b"]]));
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["passed"] == true));
}

#[test]
fn d4_quiver() {
    let (v, code) = json(&["analyze-quiver", &fx("ex_prod_d4.quiver")]);
    assert_eq!(code, 0);
    assert_eq!(v["quiver"]["graph_type"], "D4");
    assert_eq!(v["quiver"]["positive"], true);
    assert_eq!(v["form"]["period"], 6);
}

#[test]
fn spectrum_off_the_circle() {
    let o = run(&["analyze-poset", &fx("ex_spec.poset")]);
    let out = stdout(&o);
    assert!(o.status.success());
    assert!(out.contains("spectrum in S^1 ∪ R: NO"));
    assert!(out.contains("charpoly: x^8 + 2x^7 + 4x^6 + 14x^5 + 22x^4 + 14x^3 + 4x^2 + 2x + 1"));
}

#[test]
fn reflections_of_a2() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "a2.mat", "2 -1\n-1 2\n");
    for (perm, product) in [("1 2", ["0 -1", "1 -1"]), ("2 1", ["-1 1", "-1 0"])] {
        let (v, code) = json(&["reflections", &p, "--perm", perm]);
        assert_eq!(code, 0);
        let case = &v["reflections"]["case"];
        assert_eq!(case["product"], serde_json::json!(product), "{perm}");
        assert_eq!(case["holds"], true);
    }
    let o = run(&["reflections", &p, "--perm", "2 1"]);
    assert!(stdout(&o).contains("factorization identity: HOLDS"));
}

#[test]
fn reflections_random_trials() {
    let (v, code) = json(&["reflections", "--random", "50"]);
    assert_eq!(code, 0);
    assert_eq!(v["reflections"]["random"]["held"], 50);
    let (v, code) = json(&[
        "reflections",
        "--random",
        "50",
        "--general",
        "--size",
        "4",
        "--seed",
        "3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["reflections"]["random"]["held"], 50);
}

#[test]
fn reflections_need_diagonal_two() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "g.mat", "1 3\n-2 0\n");
    assert_eq!(run(&["reflections", &p]).status.code(), Some(3));
    let (v, code) = json(&["reflections", &p, "--general", "--perm", "2 1"]);
    assert_eq!(code, 0);
    assert_eq!(v["reflections"]["case"]["holds"], true);
    assert_eq!(
        run(&["reflections", &p, "--perm", "1 1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["reflections", &p, "--general", "--perm", "1 2 3"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn product_of_a3_and_d4() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("p.poset");
    let (v, code) = json(&[
        "product",
        &fx("ex_prod_a3.poset"),
        &fx("ex_prod_d4.poset"),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["product"]["size"], 12);
    assert_eq!(v["product"]["left_period"], 4);
    assert_eq!(v["product"]["right_period"], 6);
    assert_eq!(v["product"]["period"], 12);
    let (w, code) = json(&["analyze-poset", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(w["form"]["size"], 12);
    assert_eq!(w["form"]["period"], 12);
    let o = run(&["product", &fx("ex_prod_a3.poset"), &fx("ex_prod_d4.poset")]);
    assert!(stdout(&o).contains("period 12"));
}

#[test]
fn product_with_a_point() {
    let dir = TempDir::new().unwrap();
    let x = fx("ex_periodic.poset");
    let point = write(&dir, "pt.poset", "elements: p\n");
    let out = dir.path().join("xp.poset");
    let (_, code) = json(&["product", &x, &point, "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let (a, _) = json(&["analyze-poset", &x]);
    let (b, _) = json(&["analyze-poset", out.to_str().unwrap()]);
    for key in ["euler_form", "coxeter", "charpoly", "period"] {
        assert_eq!(a["form"][key], b["form"][key], "{key}");
    }
    assert_eq!(
        a["poset"]["hasse"].as_array().unwrap().len(),
        b["poset"]["hasse"].as_array().unwrap().len()
    );
}

#[test]
fn product_of_two_chains() {
    let dir = TempDir::new().unwrap();
    let c2 = write(&dir, "c2.poset", "a < b\n");
    let (v, code) = json(&["product", &c2, &c2]);
    assert_eq!(code, 0);
    assert_eq!(v["product"]["period"], 6);
    let names: Vec<_> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"period") && names.contains(&"periodic factors"));
}

#[test]
fn scan_counts() {
    for (n, count) in [(3, 19), (4, 219)] {
        let (v, code) = json(&["scan", "--max-size", &n.to_string()]);
        assert_eq!(code, 0);
        let last = v["scan"]["rows"]
            .as_array()
            .unwrap()
            .last()
            .unwrap()
            .clone();
        assert_eq!(last["posets"], count);
        assert_eq!(last["violations"], 0);
    }
    assert_eq!(run(&["scan", "--max-size", "7"]).status.code(), Some(3));
}

#[test]
fn paper_check_passes() {
    let o = run(&["paper-check"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("12 of 12 checks passed"));
}

#[test]
fn paper_check_json_and_corruption() {
    let (v, code) = json(&["paper-check", "--scan-max", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["checks"].as_array().unwrap().len(), 12);
    let dir = TempDir::new().unwrap();
    let text = std::fs::read_to_string(fixture("ex_periodic.poset")).unwrap();
    write(
        &dir,
        "ex_periodic.poset",
        &text.replacen("t1 < m1\n", "", 1),
    );
    let (v, code) = json(&[
        "paper-check",
        "--scan-max",
        "3",
        "--fixtures",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code, 1);
    let failed: Vec<_> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["name"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(failed.len(), 1, "{failed:?}");
    assert!(failed[0].contains("periodic"), "{failed:?}");
}

#[test]
fn json_is_deterministic_and_round_trips() {
    let args = ["--json", "analyze-poset", &fx("ex_spec.poset")];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let v: Value = serde_json::from_str(&text).unwrap();
    let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(again, v);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let ragged = write(&dir, "r.mat", "1 2\n3\n");
    let nonsquare = write(&dir, "n.mat", "1 2\n");
    let singular = write(&dir, "s.mat", "1 1\n1 1\n");
    let scaled = write(&dir, "d.mat", "2 0\n0 2\n");
    let cycle = write(&dir, "c.poset", "a < b < a\n");
    let qcycle = write(&dir, "c.quiver", "a -> b -> a\n");
    let split = write(&dir, "s.quiver", "vertices: a b c\na -> b\n");
    let missing = dir.path().join("nope.mat");
    assert_eq!(run(&["analyze-form", &ragged]).status.code(), Some(2));
    assert_eq!(run(&["analyze-form", &nonsquare]).status.code(), Some(2));
    assert_eq!(
        run(&["analyze-form", missing.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["analyze-form", &singular]).status.code(), Some(3));
    assert_eq!(run(&["analyze-form", &scaled]).status.code(), Some(3));
    assert_eq!(run(&["analyze-poset", &cycle]).status.code(), Some(2));
    assert_eq!(run(&["analyze-quiver", &qcycle]).status.code(), Some(2));
    assert_eq!(run(&["analyze-quiver", &split]).status.code(), Some(3));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn quiet_prints_nothing_on_success() {
    let o = run(&["--quiet", "analyze-poset", &fx("ex_spec.poset")]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
}
