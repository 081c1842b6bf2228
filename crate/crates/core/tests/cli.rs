use std::process::Command;
use std::sync::Arc;

use gerbes::cli::dispatch;
use gerbes::deligne::random::random_rational;
use gerbes::deligne::CoverNerve;
use gerbes::io::{write_json, CochainFile};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn json(argv: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(argv);
    let (code, out) = dispatch(&full);
    (code, serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}")))
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_gerbes");
    let out = Command::new(bin).args(["k0", "E8"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "60");
    let out = Command::new(bin).arg("k0").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stdout).contains("Usage"));
    assert_eq!(Command::new(bin).arg("--help").output().unwrap().status.code(), Some(0));
}

#[test]
fn coboundary_fixture_passes() {
    let (code, v) = json(&["deligne", "check", &fixture("coboundary.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "pass");
    let check = &v["checks"][0];
    assert_eq!(check["residual"], 0.0);
    assert!(check["tolerance"].is_number());
    assert_eq!(v["inputs"].as_object().unwrap().values().next().unwrap().as_str().unwrap().len(), 64);
}

#[test]
fn failures_and_obstructions_exit_one() {
    assert_eq!(dispatch(&["deligne", "check", &fixture("not_a_cocycle.json")]).0, 1);
    let (code, v) = json(&["deligne", "trivialize", &fixture("flat_torsion.json")]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["trivialized"], false);
    let (code, v) = json(&["deligne", "dd", &fixture("flat_torsion.json")]);
    assert_eq!(code, 0, "{v}");
    assert_eq!((v["result"]["group"].as_str(), v["result"]["zero"].as_bool()), (Some("Z/2"), Some(false)));
    assert_eq!(dispatch(&["deligne", "check", "/nonexistent.json"]).0, 2);
}

#[test]
fn structure_fixtures_pass() {
    for (cmd, file) in [
        ("check-module", "bundle.json"),
        ("check-equivariant", "equivariant.json"),
        ("check-jandl", "jandl.json"),
        ("trivialize", "coboundary.json"),
    ] {
        let (code, v) = json(&["deligne", cmd, &fixture(file)]);
        assert_eq!((code, v["verdict"].as_str()), (0, Some("pass")), "{cmd}: {v}");
    }
}

#[test]
fn holonomy_subcommands() {
    let (code, v) = json(&[
        "holonomy",
        "surface",
        "--complex",
        &fixture("sphere_icosahedron.json"),
        "--cochain",
        &fixture("gerbe_icosahedron.json"),
        "--assignment",
        &fixture("assignment_icosahedron.json"),
    ]);
    assert_eq!(code, 0);
    assert!((v["result"]["abs"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    let hol = v["result"]["holonomy"].as_str().unwrap().to_string();
    let (_, again) = json(&[
        "holonomy",
        "surface",
        "--complex",
        &fixture("sphere_icosahedron.json"),
        "--cochain",
        &fixture("gerbe_icosahedron.json"),
    ]);
    let z = |s: &str| gerbes::io::parse_complex(s).unwrap();
    assert!((z(&hol) - z(again["result"]["holonomy"].as_str().unwrap())).norm() < 1e-9);

    for seed in ["0", "9"] {
        let (code, v) = json(&["--seed", seed, "holonomy", "stokes", "--complex", &fixture("ball_coned.json")]);
        assert_eq!((code, v["verdict"].as_str()), (0, Some("pass")), "{v}");
    }
}

#[test]
fn wzw_on_fixture_ball() {
    let (code, v) = json(&["lienum", "wzw", "--ball", &fixture("ball_layered.json"), "--level", "3"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["result"]["degree"].as_i64().unwrap().abs(), 1);
    let (code, v) = json(&["lienum", "wzw", "--ball", &fixture("ball_layered.json"), "--map", &fixture("map_layered.json")]);
    assert_eq!(code, 0, "{v}");
    assert!((v["result"]["integral"].as_f64().unwrap().abs() - 0.5).abs() < 1e-2);
}

#[test]
fn same_arguments_same_bytes() {
    for argv in [
        &["--json", "--seed", "11", "holonomy", "stokes", "--complex", &fixture("ball_coned.json")][..],
        &["--json", "--seed", "11", "lienum", "verify-omega", "--samples", "3"][..],
        &["--json", "alcove", "F4"][..],
    ] {
        assert_eq!(dispatch(argv), dispatch(argv));
    }
    let (_, a) = dispatch(&["--json", "--seed", "1", "lienum", "verify-omega", "--samples", "3"]);
    let (_, b) = dispatch(&["--json", "--seed", "2", "lienum", "verify-omega", "--samples", "3"]);
    assert_ne!(a, b);
    let (_, t) = json(&["--timing", "k0", "G2"]);
    assert!(t["wall_time_s"].is_number());
    let (_, t) = json(&["k0", "G2"]);
    assert!(t.get("wall_time_s").is_none());
}

#[test]
fn freshly_written_cochain_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    let nerve = Arc::new(CoverNerve::simplex(5, Some(3)).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let c = random_rational(&mut rng, 1, 2, &nerve, 9).unwrap().differential();
    write_json(&path, &CochainFile::from_cochain(&c)).unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(dispatch(&["deligne", "check", p]).0, 0);
    let (code, v) = json(&["deligne", "dd", p]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["zero"], true, "{v}");
}

#[test]
fn root_system_subcommands() {
    let (_, v) = json(&["k0", "E7"]);
    assert_eq!(v["result"]["k0"], 12);
    let (code, v) = json(&["alcove", "G2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["vertices"].as_array().unwrap().len(), 3);
    let (code, v) = json(&["centralizer", "A3", "--face", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["num_roots"], 12);
    assert_eq!(dispatch(&["centralizer", "A3", "--face", "7"]).0, 2);
}
