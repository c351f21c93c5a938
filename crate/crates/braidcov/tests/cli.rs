use std::process::Command;

fn braidcov(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_braidcov"))
        .args(args)
        .env_remove("BRAIDCOV_CONFIG")
        .env_remove("BRAIDCOV_BUDGET")
        .output()
        .unwrap();
    (out.status.code().unwrap(), String::from_utf8_lossy(&out.stdout).into_owned())
}

#[test]
fn present_enumerate_compare() {
    let dir = tempfile::tempdir().unwrap();
    let (code, text) = braidcov(&["present", "rp2", "2"]);
    assert_eq!(code, 0);
    let file = dir.path().join("p.txt");
    std::fs::write(&file, text).unwrap();
    let table = dir.path().join("t.txt");
    let f = file.to_str().unwrap();
    let (code, out) = braidcov(&["enumerate", f, "--compare", "dic:4", "--table", table.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("index 16") && out.contains("isomorphic to"));
    assert!(std::fs::read_to_string(&table).unwrap().contains("cosets: 16"));
    let (code, _) = braidcov(&["enumerate", f, "--compare", "q8"]);
    assert_eq!(code, 1);
    let (code, out) = braidcov(&["enumerate", f, "--subgroup", "s1", "--strategy", "felsch"]);
    assert_eq!((code, out.trim_end().ends_with("index 4")), (0, true), "{out}");
}

#[test]
fn derive_and_check() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("c.json");
    let (code, out) = braidcov(&["derive", "conjri_2", "3", "--out", cert.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    let (code, out) = braidcov(&["check", cert.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    let text = std::fs::read_to_string(&cert).unwrap();
    std::fs::write(&cert, text.replacen('\n', "\n ", 1)).unwrap();
    assert_eq!(braidcov(&["check", cert.to_str().unwrap()]).0, 1);
    assert_eq!(braidcov(&["derive", "nonsense", "3"]).0, 1);
}

#[test]
fn word_problems() {
    let (code, out) = braidcov(&["wp", "s2", "4", "s1 s2 s3 s3 s2 s1"]);
    assert_eq!(code, 0);
    assert!(out.contains("Trivial"), "{out}");
    let (code, out) = braidcov(&["wp", "s2", "3", "s1 s2 s1 s2 s1 s2", "--json"]);
    assert_eq!(code, 0);
    assert!(out.contains("FullTwist") && out.contains("evidence"), "{out}");
    assert!(braidcov(&["wp", "disc", "3", "s1 s2 s1 s2^-1 s1^-1 s2^-1"]).1.contains("Trivial"));
    assert!(braidcov(&["wp", "annulus", "2", "t1 s1 t1 s1"]).1.contains("Nontrivial"));
    assert_eq!(braidcov(&["wp", "s2", "3", "s0"]).0, 1);
}

#[test]
fn lift_writes_both_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let (code, out) = braidcov(&["lift", "2", "r1 s1", "--out-dir", d]);
    assert_eq!(code, 0);
    assert!(out.contains("lift: "));
    assert!(dir.path().join("scene.txt").exists() && dir.path().join("scene.svg").exists());
    let (code, _) = braidcov(&["lift", "3", "t1 s2", "--cover", "annulus", "--sheets", "3", "--out-dir", d]);
    assert_eq!(code, 0);
}

#[test]
fn classify_verify_report() {
    let (code, out) = braidcov(&["classify", "rp2", "5", "--trace"]);
    assert_eq!(code, 0);
    assert!(out.contains("Dic40") && out.contains("Dic32") && out.contains("Removed"), "{out}");
    assert_eq!(braidcov(&["classify", "torus", "5"]).0, 1);
    assert_eq!(braidcov(&["verify", "2"]).0, 0);
    let (code, json) = braidcov(&["report", "3", "--format", "json"]);
    assert_eq!(code, 2);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["schema"], 1);
    assert!(v["claims"].as_array().unwrap().iter().all(|c| c["status"]["status"] == "verified"));
    let (code, md) = braidcov(&["report", "3", "--format", "md"]);
    assert_eq!(code, 2);
    assert!(md.contains("## Claims") && md.contains("partially-verified"));
}

#[test]
fn budget_variable_makes_gaps() {
    let out = Command::new(env!("CARGO_BIN_EXE_braidcov"))
        .args(["report", "2"])
        .env("BRAIDCOV_BUDGET", "max_expansions=1")
        .output()
        .unwrap();
    let code = out.status.code().unwrap();
    assert_ne!(code, 0, "a tiny budget must not pass silently");
    let bad = Command::new(env!("CARGO_BIN_EXE_braidcov")).args(["verify", "2"]).env("BRAIDCOV_BUDGET", "oops").output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
}
