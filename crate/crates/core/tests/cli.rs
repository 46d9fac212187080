use std::path::Path;
use std::process::{Command, Output};

use posviro::commands::{cyclic_family, order_family, run_checks, CheckRequest};
use posviro::fixtures::{prism_poset, s63_decoration, s63_system};
use posviro::io::{to_json, write_json};
use posviro::numerics::{certified_positive_count, CountOptions};
use posviro::linalg::ratio;

fn posviro(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_posviro"))
        .args(args)
        .env_remove("POSVIRO_PRECISION_BITS")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn snd_11_5_has_38_facets() {
    let o = posviro(&["family", "snd", "--n", "11", "--d", "5", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["complex"]["facets"].as_array().unwrap().len(), 38);
}

#[test]
fn family_json_matches_library() {
    let o = posviro(&["--format", "json", "family", "cyclic", "--n", "6", "--d", "3"]);
    let lib = to_json(&cyclic_family(6, 3, None, false).unwrap()).unwrap();
    assert_eq!(stdout(&o), lib);
    let o = posviro(&["family", "cyclic", "--n", "6", "--d", "3"]);
    let text = stdout(&o);
    for f in ["1 2 3 4", "1 2 4 5", "1 2 5 6", "2 3 4 5", "2 3 5 6", "3 4 5 6"] {
        assert!(text.lines().any(|l| l == f), "{text}");
    }
}

#[test]
fn order_family_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let chain = dir.path().join("chain3.json");
    std::fs::write(&chain, r#"{"elements":3,"relations":[[1,2],[2,3]]}"#).unwrap();
    let out = dir.path().join("out");
    let o = posviro(&["family", "order", "--poset", path(&chain), "--out", path(&out), "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["complex"]["facets"].as_array().unwrap().len(), 1);
    for f in ["complex.json", "points.json", "heights.json", "coloring.json"] {
        assert!(out.join(f).exists(), "{f}");
    }
}

#[test]
fn check_exit_codes_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let f = cyclic_family(6, 3, None, true).unwrap();
    let k = dir.path().join("k.json");
    let c = dir.path().join("c.json");
    write_json(&k, &f.complex).unwrap();
    write_json(&c, &s63_decoration()).unwrap();

    let o = posviro(&["check", "--complex", path(&k), "--bipartite", "--balanced"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("PASS bipartite"));
    assert!(stdout(&o).contains("FAIL balanced"));

    let o = posviro(&["--format", "json", "check", "--complex", path(&k), "--matrix", path(&c), "--decorated"]);
    assert_eq!(code(&o), 0);
    let req = CheckRequest {
        decorated: true,
        ..Default::default()
    };
    let lib = run_checks(&f.complex, None, Some(&s63_decoration()), None, req).unwrap();
    assert_eq!(stdout(&o), to_json(&lib).unwrap());

    let o = posviro(&["check", "--complex", path(&k), "--decorated"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn prism_checks() {
    let dir = tempfile::tempdir().unwrap();
    let f = order_family(&prism_poset()).unwrap();
    let (k, a, h) = (dir.path().join("k"), dir.path().join("a"), dir.path().join("h"));
    write_json(&k, &f.complex).unwrap();
    write_json(&a, &f.points).unwrap();
    write_json(&h, &f.heights).unwrap();
    let o = posviro(&["check", "--complex", path(&k), "--points", path(&a), "--unimodular", "--balanced"]);
    assert_eq!(code(&o), 0);
    // the convex heights |y|^2 lift the other diagonal of each square face
    let o = posviro(&["check", "--complex", path(&k), "--points", path(&a), "--heights", path(&h), "--regular"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn decorate_viro_count_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let fam = dir.path().join("s63");
    assert_eq!(code(&posviro(&["family", "snd", "--n", "6", "--d", "3", "--out", path(&fam)])), 0);
    let c = dir.path().join("c.json");
    let o = posviro(&["decorate", "--complex", path(&fam.join("complex.json")), "--out", path(&c)]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = posviro(&[
        "--format",
        "json",
        "viro",
        "--points",
        path(&fam.join("points.json")),
        "--heights",
        path(&fam.join("heights.json")),
        "--matrix",
        path(&c),
    ]);
    assert_eq!(code(&o), 0);
    let sys = dir.path().join("sys.json");
    std::fs::write(&sys, stdout(&o)).unwrap();
    let k = fam.join("complex.json");
    let args = ["count", "--system", path(&sys), "--complex", path(&k), "--t", "1/1000"];
    let o = posviro(&[&args[..], &["--expect", "5"]].concat());
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = posviro(&[&args[..], &["--expect", "6"]].concat());
    assert_eq!(code(&o), 1);
    let o = posviro(&[&args[..2], &["--complex", path(&k), "--t", "-1"]].concat());
    assert_eq!(code(&o), 2);
}

#[test]
fn count_json_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    let e = s63_system().unwrap();
    let (sys, k) = (dir.path().join("sys"), dir.path().join("k"));
    write_json(&sys, &e.system).unwrap();
    write_json(&k, &e.complex).unwrap();
    let o = posviro(&[
        "--format", "json", "--precision", "192", "count", "--system", path(&sys), "--complex", path(&k), "--t", "1/100",
    ]);
    assert_eq!(code(&o), 0);
    let lib = certified_positive_count(&e.system, &e.complex, &ratio(1, 100), &CountOptions::with_precision(192)).unwrap();
    assert_eq!(stdout(&o), to_json(&lib).unwrap());
}

#[test]
fn verify_paper_cases() {
    for case in ["table1", "ex3.6", "ex5.8", "appendixA"] {
        let o = posviro(&["verify-paper", case]);
        assert_eq!(code(&o), 0, "{case}: {}", stdout(&o));
    }
    let o = posviro(&["verify-paper", "prism"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("PASS regular (concave)"));
}

#[test]
fn usage_errors() {
    assert_eq!(code(&posviro(&["verify-paper", "ex9"])), 2);
    assert_eq!(code(&posviro(&["family", "snd", "--n", "6"])), 2);
    assert_eq!(code(&posviro(&["frobnicate"])), 2);
    assert_eq!(code(&posviro(&["--jobs", "0", "verify-paper", "table1"])), 2);
    assert_eq!(code(&posviro(&["check", "--complex", "/nonexistent.json", "--bipartite"])), 2);
    assert_eq!(code(&posviro(&["--help"])), 0);
}
