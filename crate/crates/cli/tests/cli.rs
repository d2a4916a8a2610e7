use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn niho(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_niho")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = niho(&all);
    (o.status.code().unwrap(), serde_json::from_slice(&o.stdout).unwrap())
}

/// Drops timing fields so two reports can be compared byte for byte.
fn strip_timings(v: &mut Value) {
    match v {
        Value::Object(m) => {
            m.remove("wall_ms");
            m.remove("millis");
            m.values_mut().for_each(strip_timings);
        }
        Value::Array(a) => a.iter_mut().for_each(strip_timings),
        _ => {}
    }
}

#[test]
fn pp_check_q4_examples() {
    let o = niho(&["pp-check", "--n", "2", "--a", "0x1", "--b", "0x1:0x0"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("criterion   PP\n") && text.contains("exhaustive  PP\n"), "{text}");
    assert!(text.contains("agreement   yes"));

    let (code, v) = json(&["pp-check", "--n", "2", "--a", "0x2", "--b", "0x2:0x0"]);
    assert_eq!(code, 0);
    assert_eq!(v["command"], "pp-check");
    let verdicts: Vec<&Value> = v["results"].as_array().unwrap().iter().filter_map(|r| r.get("pp")).collect();
    assert_eq!(verdicts.len(), 3);
    assert!(verdicts.iter().all(|p| **p == Value::Bool(false)));
    assert_eq!(v["summary"]["fail"], 0);
}

#[test]
fn parse_errors_exit_1() {
    assert_eq!(niho(&["pp-check", "--n", "2", "--a", "0x1", "--b", "0x1"]).status.code(), Some(1));
    assert_eq!(niho(&["pp-check", "--n", "2", "--a", "0x9", "--b", "0x1:0x0"]).status.code(), Some(1));
    assert_eq!(niho(&["pp-check", "--n", "2"]).status.code(), Some(1));
    assert_eq!(niho(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(niho(&["replay", "--stages", "foo"]).status.code(), Some(1));
    assert_eq!(niho(&["poly", "gcd", "a+", "a", "--var", "a"]).status.code(), Some(1));
}

#[test]
fn verify_theorem_counts() {
    for (n, count) in [("2", 1), ("3", 3), ("4", 5)] {
        let (code, v) = json(&["verify-theorem", "--n", n, "--workers", "2"]);
        assert_eq!(code, 0);
        let counts = &v["results"][0];
        assert_eq!(counts["pp_count"], count);
        assert_eq!(counts["rootless_count"], count);
        assert_eq!(v["summary"]["fail"], 0);
    }
}

#[test]
fn seeded_reports_are_reproducible() {
    let args = ["verify-theorem", "--n", "7", "--budget", "2000", "--seed", "11", "--workers", "3"];
    let (_, mut a) = json(&args);
    let (_, mut b) = json(&args);
    strip_timings(&mut a);
    strip_timings(&mut b);
    assert_eq!(a.to_string(), b.to_string());
    assert_eq!(a["config"]["seed"], 11);
}

#[test]
fn poly_tools() {
    let o = niho(&["poly", "resultant", "@E2", "@E3", "--var", "a"]);
    assert_eq!(stdout(&o), "b1^17*k^2\n");
    let o = niho(&["poly", "gcd", "a^2+1", "a+1", "--var", "a"]);
    assert_eq!(stdout(&o), "a + 1\n");
    let (code, v) = json(&["poly", "pseudo-rem", "@h1 + b1^8*@h1p", "@h2", "--var", "k"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"][0]["output"], "0");
    assert!(v["results"][0]["exponent"].as_u64().unwrap() > 0);
}

#[test]
fn replay_coefficients_text_and_json() {
    let o = niho(&["replay", "--stages", "coefficients"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("== coefficients"));
    assert!(text.contains("DISP A "), "{text}");
    assert!(text.contains("0 failed"));

    let (code, v) = json(&["replay", "--stages", "closing"]);
    assert_eq!(code, 0);
    let ids: Vec<&str> = v["results"].as_array().unwrap().iter().map(|r| r["id"].as_str().unwrap()).collect();
    assert!(ids.contains(&"coefficients/F6"), "dependencies run too");
    assert!(ids.contains(&"closing/L2-closed"));
    assert!(v["results"].as_array().unwrap().iter().all(|r| r["anchor"].is_string()));
}

fn export(dir: &Path) {
    let o = niho(&["corpus", "export", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn tampered_corpus_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    export(dir.path());
    let path = dir.path().join("C4.poly");
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::write(&path, text.replacen(" + ", " + b1^7 + ", 1)).unwrap();
    let d = dir.path().to_str().unwrap();
    let (code, v) = json(&["replay", "--stages", "coefficients", "--corpus-dir", d]);
    assert_eq!(code, 2);
    let failed: Vec<&str> = v["results"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["status"] == "fail")
        .map(|r| r["id"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["corpus/digests", "coefficients/C4"]);
}

#[test]
fn certify_reproduces_the_shipped_certificates() {
    let dir = tempfile::tempdir().unwrap();
    export(dir.path());
    let certs = |d: &Path| {
        let mut v: Vec<(String, String)> = std::fs::read_dir(d)
            .unwrap()
            .map(|e| e.unwrap().path())
            .filter(|p| p.file_name().unwrap().to_str().unwrap().starts_with("cert_"))
            .map(|p| (p.file_name().unwrap().to_str().unwrap().to_string(), std::fs::read_to_string(&p).unwrap()))
            .collect();
        v.sort();
        v
    };
    let before = certs(dir.path());
    assert!(!before.is_empty());
    for (name, _) in &before {
        std::fs::remove_file(dir.path().join(name)).unwrap();
    }
    let o = niho(&["corpus", "certify", "--corpus-dir", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(certs(dir.path()), before);
}
