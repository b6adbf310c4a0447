use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use gassmann::transplant::InvolutionSystem;
use gassmann::triples::TripleSpec;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_gassmann"));
    c.env_remove("GF_BOUND");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("gassmann-cli-{name}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&d);
    fs::create_dir_all(&d).unwrap();
    d
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn emit_psl32(dir: &Path) -> PathBuf {
    let p = dir.join("psl32.yaml");
    let o = run(&["catalog", "emit", "--nq", "3,2", "--out", s(&p)]);
    assert_eq!(code(&o), 0);
    p
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

#[test]
fn catalog_spec_verifies() {
    let d = scratch("verify");
    let spec = emit_psl32(&d);
    let o = run(&["verify", s(&spec), "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["order"], 168);
    for p in ["ac", "ec", "ff", "max"] {
        assert_eq!(v[p], true, "{p}");
    }
    assert_eq!(v["pair"], "confirmed");
    assert_eq!(v["inv"]["fixed_counts"].as_array().unwrap().len(), 3);
}

#[test]
fn emitted_spec_round_trips() {
    let d = scratch("roundtrip");
    let spec = emit_psl32(&d);
    let text = fs::read_to_string(&spec).unwrap();
    assert_eq!(TripleSpec::parse(&text).unwrap().to_yaml(), text);
}

#[test]
fn parse_errors_exit_2() {
    let d = scratch("parse");
    let bad = d.join("bad.yaml");
    fs::write(&bad, "label: x\ndegree: 3\ngenerators: ['(1 2']\nH: []\nK: []\n").unwrap();
    assert_eq!(code(&run(&["verify", s(&bad)])), 2);
    assert_eq!(code(&run(&["verify", s(&d.join("missing.yaml"))])), 2);
    let sys = d.join("bad.sys");
    fs::write(&sys, "tiles: 2\nsides: 1\nside 1: (1 3) ; boundary:\n").unwrap();
    assert_eq!(code(&run(&["transplant", s(&sys), s(&sys)])), 2);
}

#[test]
fn bound_exceeded_exits_3() {
    let d = scratch("bound");
    let spec = emit_psl32(&d);
    let o = bin().args(["verify", s(&spec)]).env("GF_BOUND", "10").output().unwrap();
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).contains("undecided"));
    let o = run(&["--bound", "10", "verify", s(&spec), "--props", "ac"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn kernel_breaks_ff_with_witness() {
    let d = scratch("kernel");
    let spec = emit_psl32(&d);
    let e = d.join("c2.yaml");
    fs::write(&e, "degree: 2\ngenerators: ['(1 2)']\n").unwrap();
    let out = d.join("kern.yaml");
    assert_eq!(code(&run(&["construct", s(&spec), "--kernel", s(&e), "--out", s(&out)])), 0);
    let o = run(&["verify", s(&out), "--props", "ac,ff", "--json"]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    assert_eq!(v["ac"], true);
    assert_eq!(v["ff"], false);
    assert!(v["witnesses"]["ff"].as_str().unwrap().contains("(15 16)"));
}

#[test]
fn direct_square_fails_max() {
    let d = scratch("power");
    let spec = emit_psl32(&d);
    let out = d.join("sq.yaml");
    assert_eq!(code(&run(&["construct", s(&spec), "--power", "2", "-o", s(&out)])), 0);
    let o = run(&["verify", s(&out), "--props", "max", "--json"]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["max"], false);
}

fn with_stanza(dir: &Path, name: &str, stanza: &str) -> PathBuf {
    let base = emit_psl32(dir);
    let p = dir.join(name);
    fs::write(&p, fs::read_to_string(base).unwrap() + stanza).unwrap();
    p
}

#[test]
fn trivial_type1_gives_the_input_back() {
    let d = scratch("type1-trivial");
    let spec = with_stanza(&d, "t.yaml", "construct:\n  variant: I\n  n: 1\n  T:\n    degree: 1\n    generators: []\n");
    let out = d.join("out.yaml");
    assert_eq!(code(&run(&["construct", s(&spec), "--type", "1", "--out", s(&out)])), 0);
    assert_eq!(fs::read(out).unwrap(), fs::read(d.join("psl32.yaml")).unwrap());
}

#[test]
fn type1_square_over_the_catalog_triple() {
    let d = scratch("type1");
    let spec = with_stanza(&d, "t.yaml", "construct:\n  variant: I\n  n: 2\n  T:\n    degree: 2\n    generators: ['(1 2)']\n");
    let out = d.join("out.yaml");
    assert_eq!(code(&run(&["construct", s(&spec), "--type", "I", "--out", s(&out)])), 0);
    let o = run(&["verify", s(&out), "--props", "ec,ff,max", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["order"], 56448);
    assert_eq!(v["degree"], 28);
    assert_eq!(v["index_h"], 49);
}

#[test]
fn construct_rejections() {
    let d = scratch("reject");
    let t3 = with_stanza(&d, "t3.yaml", "construct:\n  variant: III\n  l: 1\n  k: 2\n  T:\n    degree: 2\n    generators: ['(1 2)']\n");
    let o = run(&["construct", s(&t3)]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("l, k ≥ 2"));
    // stanza says III, flag says 1
    assert_eq!(code(&run(&["construct", s(&t3), "--type", "1"])), 2);
    // no stanza at all
    assert_eq!(code(&run(&["construct", s(&d.join("psl32.yaml"))])), 2);
}

#[test]
fn scan_and_transplant() {
    let d = scratch("scan");
    let spec = emit_psl32(&d);
    let out = d.join("pairs");
    fs::create_dir(&out).unwrap();
    let o = run(&["scan", s(&spec), "--out-dir", s(&out), "--json"]);
    assert_eq!(code(&o), 0);
    let n = json(&o)["pairs"].as_array().unwrap().len();
    assert_eq!(n, 14);
    let (a, b) = (out.join("pair-1-a.sys"), out.join("pair-1-b.sys"));
    InvolutionSystem::parse(&fs::read_to_string(&a).unwrap()).unwrap();
    let o = run(&["transplant", s(&a), s(&b), "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["invertible"], true);
    assert!(v["permutation_solution"].is_null());
    // a system against itself: the identity is a permutation solution
    let o = run(&["transplant", s(&a), s(&a), "--json"]);
    assert_eq!(code(&o), 0);
    assert!(json(&o)["permutation_solution"].is_string());
}

#[test]
fn unfold_then_spectrum() {
    let d = scratch("unfold");
    let sys = d.join("square.sys");
    // two half-squares glued along the hypotenuse: the unit square
    fs::write(&sys, "tiles: 2\nsides: 3\nside 1: (1 2) ; boundary:\nside 2: ; boundary: 1 2\nside 3: ; boundary: 1 2\n").unwrap();
    let (dom, svg) = (d.join("sq.json"), d.join("sq.svg"));
    let o = run(&["unfold", "--system", s(&sys), "--out", s(&dom), "--svg", s(&svg), "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["overlap"], false);
    assert_eq!(v["boundary"]["perimeter"], "4");
    assert!(fs::read_to_string(&svg).unwrap().contains("id=\"boundary\""));

    let a = run(&["spectrum", "--domain", s(&dom), "--k", "3", "--h", "1/32", "--json"]);
    let b = run(&["spectrum", "--domain", s(&dom), "--k", "3", "--h", "0.03125", "--json"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let ev = json(&a)["eigenvalues"][0].as_f64().unwrap();
    let exact = 2.0 * std::f64::consts::PI.powi(2);
    assert!((ev - exact).abs() / exact < 0.01);
    assert_eq!(code(&run(&["spectrum", "--domain", s(&dom), "--h", "zero"])), 2);
}

#[test]
fn compare_is_thread_independent() {
    let d = scratch("compare");
    let o = run(&["gww", "--out-dir", s(&d), "--h", "1/16", "--k", "3"]);
    assert_eq!(code(&o), 0);
    let (a, b) = (d.join("a.json"), d.join("b.json"));
    let args = |t: &'static str| ["--threads", t, "spectrum-compare", "--a", s(&a), "--b", s(&b), "--h", "1/16", "--k", "4"].map(String::from);
    let one = bin().args(args("1")).output().unwrap();
    let four = bin().args(args("4")).output().unwrap();
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, four.stdout);
    assert!(stdout(&one).contains("PASS"));
}

#[test]
fn gww_pipeline_passes() {
    let o = run(&["gww"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("AC ✓, tree ✓, Fixeq ✓ (sum 9), T invertible ✓, permutation solution ✗, spectra pairwise within 1%"));
    assert!(text.trim_end().ends_with("PASS gww pipeline"));
}

#[test]
fn gww_on_a_coarse_grid() {
    let o = run(&["gww", "--h", "1/32", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["spectra"]["tolerance"], 0.02);
    assert!(v["spectra"]["gaps"].as_array().unwrap().iter().all(|g| g.as_f64().unwrap() < 0.02));
}

#[test]
fn gww_with_equilateral_tiles() {
    let d = scratch("equilateral");
    let o = run(&["gww", "--tile", "equilateral", "--out-dir", s(&d), "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["geometry"]["tile"], "equilateral");
    assert!(v["geometry"]["overlap_a"].is_boolean());
    let dom: serde_json::Value = serde_json::from_str(&fs::read_to_string(d.join("a.json")).unwrap()).unwrap();
    assert_eq!(dom["field"], "Q(sqrt3)");
}

#[test]
fn seed_changes_nothing_visible() {
    let d = scratch("seed");
    let o = run(&["gww", "--out-dir", s(&d), "--h", "1/16", "--k", "2"]);
    assert_eq!(code(&o), 0);
    let a = run(&["--seed", "0", "spectrum", "--domain", s(&d.join("a.json")), "--h", "1/16", "--k", "4", "--json"]);
    let b = run(&["--seed", "9", "spectrum", "--domain", s(&d.join("a.json")), "--h", "1/16", "--k", "4", "--json"]);
    let (x, y) = (json(&a)["eigenvalues"].clone(), json(&b)["eigenvalues"].clone());
    for (p, q) in x.as_array().unwrap().iter().zip(y.as_array().unwrap()) {
        let (p, q) = (p.as_f64().unwrap(), q.as_f64().unwrap());
        assert!((p - q).abs() <= 1e-8 * p);
    }
}
