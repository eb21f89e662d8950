use std::collections::BTreeMap;
use std::path::Path;
use std::process::{Command, Output};

use lorentz_surfaces::corpus;
use lorentz_surfaces::io::{read_chart, write_chart};
use lorentz_surfaces::numerics::linspace;
use lorentz_surfaces::{Chart, Field, Grid, Sign};
use serde_json::Value;

fn lsl(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lsl")).args(args).current_dir(dir).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn report(dir: &Path, name: &str) -> Value {
    serde_json::from_slice(&std::fs::read(dir.join(name)).unwrap()).unwrap()
}

fn check<'a>(r: &'a Value, name: &str) -> &'a Value {
    r["checks"].as_array().unwrap().iter().find(|c| c["name"] == name).unwrap()
}

fn cone_origin() -> String {
    format!("{}", 2.0 * std::f64::consts::SQRT_2 * 3f64.powf(0.25))
}

#[test]
fn analyze_enneper_first_kind() {
    let d = tempfile::tempdir().unwrap();
    let out = lsl(d.path(), &["analyze", "enneper1", "--grid", "41x41", "-o", "r.json", "--mesh", "e"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(d.path(), "r.json");
    assert_eq!(r["properties"]["kind"], "first");
    assert_eq!(r["properties"]["canonical"], "pass");
    for end in ["min", "max"] {
        assert!(r["properties"]["H_range"][end].as_f64().unwrap().abs() < 1e-12);
    }
    for c in r["checks"].as_array().unwrap() {
        assert_eq!(c["pass"], c["max_abs"].as_f64().unwrap() <= c["tolerance"].as_f64().unwrap());
    }
    assert!(d.path().join("e.obj").exists() && d.path().join("e.csv").exists());
}

#[test]
fn analyze_sphere_is_not_general_type() {
    let d = tempfile::tempdir().unwrap();
    let out = lsl(d.path(), &["analyze", "lorentz_sphere", "--grid", "21x21", "-o", "r.json"]);
    assert_eq!(code(&out), 0);
    let r = report(d.path(), "r.json");
    assert_eq!(r["properties"]["kind"], "not_general_type");
    assert!(r["properties"]["canonical"].as_str().unwrap().starts_with("unavailable"));
}

#[test]
fn nonpositive_f_names_the_node() {
    let d = tempfile::tempdir().unwrap();
    let chart = corpus::reference_chart("cylinder", linspace(0.0, 1.0, 5), linspace(0.0, 1.0, 5), 0.5, 0.5).unwrap();
    write_chart(&d.path().join("c.json"), &chart, BTreeMap::new()).unwrap();
    let text = std::fs::read_to_string(d.path().join("c.json")).unwrap();
    let mut doc: Value = serde_json::from_str(&text).unwrap();
    doc["F"][1][2] = Value::from(-1.0);
    std::fs::write(d.path().join("bad.json"), doc.to_string()).unwrap();
    let out = lsl(d.path(), &["analyze", "bad.json"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("node (2, 1)"));
}

#[test]
fn malformed_inputs_exit_2() {
    let d = tempfile::tempdir().unwrap();
    std::fs::write(d.path().join("junk.json"), "{ not json").unwrap();
    assert_eq!(code(&lsl(d.path(), &["analyze", "junk.json"])), 2);
    assert_eq!(code(&lsl(d.path(), &["analyze", "no_such_surface"])), 2);
    assert_eq!(code(&lsl(d.path(), &["analyze", "enneper1", "--grid", "2x9"])), 2);
}

#[test]
fn canonicalize_cone_matches_closed_form() {
    let d = tempfile::tempdir().unwrap();
    let c = cone_origin();
    let args = [
        "canonicalize", "hyperbolic_cone", "--grid", "101x101", "--u0", "0", "--v0", "0", "--tilde-u0", &c,
        "--tilde-v0", &c, "--chart", "cone.json", "-o", "r.json",
    ];
    let out = lsl(d.path(), &args);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(d.path(), "r.json");
    assert!(check(&r, "closed_form_F")["max_abs"].as_f64().unwrap() < 1e-6);
    let chart = read_chart(&d.path().join("cone.json")).unwrap();
    assert!(chart.canonical);
}

#[test]
fn canonicalize_enneper_is_identity() {
    let d = tempfile::tempdir().unwrap();
    let out = lsl(d.path(), &["canonicalize", "enneper1", "--grid", "21x21", "--chart", "c.json", "-o", "r.json"]);
    assert_eq!(code(&out), 0);
    let got = read_chart(&d.path().join("c.json")).unwrap();
    let want = corpus::reference_chart("enneper1", linspace(1.0, 2.0, 21), linspace(-1.0, 0.0, 21), 1.5, -0.5).unwrap();
    for (a, b) in got.grid.u.iter().zip(&want.grid.u).chain(got.grid.v.iter().zip(&want.grid.v)) {
        assert!((a - b).abs() < 1e-12);
    }
    for (a, b) in got.f.values().iter().zip(want.f.values()) {
        assert!((a - b).abs() < 1e-9 * b, "{a} vs {b}");
    }
}

#[test]
fn canonicalize_sphere_exits_1() {
    let d = tempfile::tempdir().unwrap();
    let out = lsl(d.path(), &["canonicalize", "lorentz_sphere", "--grid", "21x21", "--chart", "c.json"]);
    assert_eq!(code(&out), 1);
    assert!(!d.path().join("c.json").exists());
}

#[test]
fn residual_examples() {
    let d = tempfile::tempdir().unwrap();
    lsl(d.path(), &["corpus", "chart", "cylinder", "--grid", "31x31", "-o", "cyl.json"]);
    assert_eq!(code(&lsl(d.path(), &["residual", "cyl.json", "--mode", "general", "-o", "g.json"])), 0);
    assert!(check(&report(d.path(), "g.json"), "general_residual")["max_abs"].as_f64().unwrap() <= 1e-12);

    let out = lsl(d.path(), &["residual", "enneper1", "--mode", "minimal", "--refined", "enneper1", "-o", "m.json"]);
    assert_eq!(code(&out), 0);
    let m = report(d.path(), "m.json");
    let c = check(&m, "minimal_residual");
    assert!(c["max_abs"].as_f64().unwrap() <= 1e-3);
    assert!((c["order_estimate"].as_f64().unwrap() - 2.0).abs() < 0.1);

    let n = 9;
    let g = Grid::new(linspace(0.0, 1.0, n), linspace(0.0, 1.0, n)).unwrap();
    let mut sphere = Chart::new(g, Field::constant(n, n, 1.0), Field::constant(n, n, 1.0), (4, 4), (Sign::Plus, Sign::Plus))
        .unwrap();
    sphere.k = Some(Field::constant(n, n, 1.0));
    write_chart(&d.path().join("s.json"), &sphere, BTreeMap::new()).unwrap();
    assert_eq!(code(&lsl(d.path(), &["residual", "s.json", "--mode", "cmc"])), 2);
}

#[test]
fn reconstruct_cylinder_and_pair() {
    let d = tempfile::tempdir().unwrap();
    lsl(d.path(), &["corpus", "chart", "cylinder", "--grid", "41x41", "--domain", "0:1,0:1", "-o", "cyl.json"]);
    let out = lsl(d.path(), &["reconstruct", "cyl.json", "--mesh", "m", "-o", "r.json"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(d.path(), "r.json");
    assert!(r["properties"]["form_mismatch"]["f_max_rel"].as_f64().unwrap() < 1e-4);
    assert!(d.path().join("m.obj").exists() && d.path().join("m.csv").exists());

    let out = lsl(d.path(), &["reconstruct", "cyl.json", "--pair", "--mesh", "m", "-o", "p.json"]);
    assert_eq!(code(&out), 0);
    let p = report(d.path(), "p.json");
    for (key, want) in [("p.second_form_mean", [1.0, 1.0, 1.0]), ("m.second_form_mean", [-1.0, 1.0, -1.0])] {
        let got = p["properties"][key].as_array().unwrap();
        for (g, w) in got.iter().zip(want) {
            assert!((g.as_f64().unwrap() - w).abs() < 1e-4, "{key}: {got:?}");
        }
    }
    assert_eq!(p["properties"]["pair_relation"]["relation"], "neither");
    for f in ["m_p.obj", "m_p.csv", "m_m.obj", "m_m.csv"] {
        assert!(d.path().join(f).exists(), "{f}");
    }
}

#[test]
fn planted_defect_warns_but_passes() {
    let d = tempfile::tempdir().unwrap();
    let mut chart = corpus::reference_chart("cylinder", linspace(0.0, 1.0, 41), linspace(0.0, 1.0, 41), 0.5, 0.5).unwrap();
    chart.f = chart.f.map(|x| 1.05 * x);
    write_chart(&d.path().join("bad.json"), &chart, BTreeMap::new()).unwrap();
    let out = lsl(d.path(), &["reconstruct", "bad.json", "--mesh", "m", "-o", "r.json"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    let r = report(d.path(), "r.json");
    assert_eq!(r["properties"]["natural_warning"], true);
    let compat = r["properties"]["compat_residual_max"].as_f64().unwrap();
    assert!((1e-3..1.0).contains(&compat), "{compat}");
}

#[test]
fn corpus_listing() {
    let d = tempfile::tempdir().unwrap();
    let out = lsl(d.path(), &["corpus", "list"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    for name in corpus::NAMES {
        assert!(text.contains(name));
    }
    let out = lsl(d.path(), &["corpus", "show", "hyperbolic_cone"]);
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["kind"], "first");
    assert_eq!(code(&lsl(d.path(), &["corpus", "show", "torus"])), 2);
}

#[test]
fn timing_is_opt_in() {
    let d = tempfile::tempdir().unwrap();
    lsl(d.path(), &["analyze", "cylinder", "--grid", "11x11", "-o", "a.json"]);
    lsl(d.path(), &["--timing", "analyze", "cylinder", "--grid", "11x11", "-o", "b.json"]);
    assert!(report(d.path(), "a.json").get("wall_time_s").is_none());
    assert!(report(d.path(), "b.json")["wall_time_s"].as_f64().is_some());
}
