use std::process::{Command, Output};

use serde_json::Value;

fn gctk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gctk"))
        .args(args)
        .output()
        .expect("run gctk")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn report(dir: &tempfile::TempDir, name: &str, samples: &str, extra: &[&str]) -> (Output, Value) {
    let path = dir.path().join(name);
    let p = path.to_str().unwrap();
    let mut args = vec![
        "verify",
        "--n",
        "1",
        "--seed",
        "42",
        "--samples",
        samples,
        "--out",
        p,
    ];
    args.extend_from_slice(extra);
    let o = gctk(&args);
    let v = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    (o, v)
}

fn strip_elapsed(mut v: Value) -> Value {
    for c in v["checks"].as_array_mut().unwrap() {
        c.as_object_mut().unwrap().remove("elapsed_ms");
    }
    v
}

#[test]
fn verify_passes_and_lists_every_check_once() {
    let dir = tempfile::tempdir().unwrap();
    let (o, v) = report(&dir, "r.json", "50", &[]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(v["schema"], 1);
    assert_eq!(v["seed"], 42);
    let ids: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["check_id"].as_str().unwrap())
        .collect();
    let mut want = gctk_cli::suite::check_ids();
    assert_eq!(ids, want);
    want.sort();
    want.dedup();
    assert_eq!(want.len(), ids.len());
    let dpsi = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["check_id"] == "twistor.dpsi_zero")
        .unwrap();
    assert_eq!(dpsi["residual"]["exact_zero"], true);
    assert_eq!(dpsi["status"], "pass");
}

#[test]
fn verify_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (_, a) = report(&dir, "a.json", "5", &[]);
    let (_, b) = report(&dir, "b.json", "5", &[]);
    assert_eq!(strip_elapsed(a), strip_elapsed(b));
}

#[test]
fn mutation_fails_dpsi() {
    let dir = tempfile::tempdir().unwrap();
    let (o, v) = report(&dir, "m.json", "5", &["--mutate", "nonclosed-omega"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("twistor.dpsi_zero"), "{err}");
    assert_eq!(v["mutation"], "nonclosed-omega");
    let failed: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "fail")
        .map(|c| c["check_id"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["twistor.dpsi_zero", "twistor.dpsi_prime_zero"]);
}

#[test]
fn usage_errors() {
    assert_eq!(gctk(&["verify", "--n", "4"]).status.code(), Some(2));
    assert_eq!(gctk(&["verify", "--n", "0"]).status.code(), Some(2));
    assert_eq!(
        gctk(&["verify", "--n", "1", "--mutate", "other"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        gctk(&["typemap", "--n", "1", "--grid", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        gctk(&["fmap", "--eta", "0.5", "--zeta", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(
        gctk(&["spinor", "--n", "1", "--alpha", "1"]).status.code(),
        Some(2)
    );
}

#[test]
fn thread_cap() {
    let run = |v: &str| {
        Command::new(env!("CARGO_BIN_EXE_gctk"))
            .args(["fmap", "--eta", "0", "--zeta", "1"])
            .env("GCTK_THREADS", v)
            .output()
            .unwrap()
            .status
            .code()
    };
    assert_eq!(run("1"), Some(0));
    assert_eq!(run("0"), Some(2));
    assert_eq!(run("many"), Some(2));
}

#[test]
fn typemap_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let p = path.to_str().unwrap();
    assert!(gctk(&["typemap", "--n", "1", "--grid", "3", "--out", p])
        .status
        .success());
    let first = std::fs::read(&path).unwrap();
    assert!(gctk(&["typemap", "--n", "1", "--grid", "3", "--out", p])
        .status
        .success());
    assert_eq!(first, std::fs::read(&path).unwrap());
    assert!(!first.contains(&b'\r'));
    let text = String::from_utf8(first).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("alpha_re,alpha_im,beta_re,beta_im,chart_a,chart_b,type")
    );
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 36);
    for pair in [["0", "0"], ["0", "1"], ["1", "0"], ["1", "1"]] {
        assert_eq!(
            rows.iter()
                .filter(|r| r[4] == pair[0] && r[5] == pair[1])
                .count(),
            9
        );
    }
    for r in &rows {
        let same = r[4] == r[5] && r[..2] == r[2..4];
        if same {
            assert_eq!(r[6], "4");
        } else if r[4] == r[5] {
            assert_eq!(r[6], "2");
        }
        assert!(r[6] == "2" || r[6] == "4");
    }

    let fiber = stdout(&gctk(&["typemap", "--n", "1", "--grid", "3", "--fiber"]));
    for l in fiber.lines().skip(1) {
        let r: Vec<&str> = l.split(',').collect();
        assert!(r[6] == "0" || r[6] == "2");
        if r[4] == r[5] && r[..2] == r[2..4] {
            assert_eq!(r[6], "2");
        }
    }
}

#[test]
fn spinor_output() {
    let o = gctk(&["spinor", "--n", "1", "--alpha", "0", "--beta", "0"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o).trim(),
        "1 * dx0^dx2 + 1*i * dx1^dx2 + 1*i * dx0^dx3 + -1 * dx1^dx3"
    );

    let sym = stdout(&gctk(&["spinor", "--n", "1"]));
    for name in ["a1", "a2", "b1", "b2", "dx0^dx1^dx2^dx3"] {
        assert!(sym.contains(name), "{sym}");
    }

    let o = gctk(&[
        "spinor", "--n", "2", "--alpha", "1", "--beta", "1", "--format", "json",
    ]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 16);
    assert!(terms
        .iter()
        .all(|t| t["form"].as_str().unwrap().matches("dx").count() == 4));
}

#[test]
fn fmap_output() {
    let f = |eta: &str, zeta: &str| {
        stdout(&gctk(&["fmap", "--eta", eta, "--zeta", zeta]))
            .trim()
            .to_string()
    };
    assert_eq!(f("0", "1/2"), "(1/2, -1/2)");
    assert_eq!(f("1", "0"), "(1, 1)");
    assert_eq!(f("1", "1"), "(inf, 0)");
    assert_eq!(f("-1/2", "0"), "(-1/2, -1/2)");
}
