use std::process::{Command, Output};

fn pi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pi"))
        .args(args)
        .output()
        .expect("run pi")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

const PI_50: &str = "3.14159265358979323846264338327950288419716939937510\n";

#[test]
fn compute_plain_50() {
    let o = pi(&["compute", "--method", "ramanujan58", "--digits", "50"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), PI_50);
}

#[test]
fn compute_lines_of_80() {
    let o = pi(&["compute", "--method", "chudnovsky", "--digits", "500"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.ends_with('\n'));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 7);
    assert!(lines[0].starts_with("3.1415"));
    assert_eq!(lines[0].len(), 82);
    assert!(lines[1..6].iter().all(|l| l.len() == 80));
    assert_eq!(lines[6].len(), 20);
}

#[test]
fn compute_json_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pi.json");
    let o = pi(&[
        "compute",
        "--method",
        "agm",
        "--digits",
        "30",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["method"], "agm");
    assert_eq!(v["digits"], 30);
    assert!(v["terms"].is_null());
    assert!(v["seconds"].as_f64().unwrap() >= 0.0);
    assert_eq!(v["value"], "3.141592653589793238462643383279");
}

#[test]
fn large_cross_method_agreement() {
    let a = pi(&["compute", "--method", "chudnovsky", "--digits", "100000"]);
    let b = pi(&["compute", "--method", "ramanujan58", "--digits", "100000"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(b.status.code(), Some(0));
    assert_eq!(a.stdout.len(), b.stdout.len());
    assert!(a.stdout == b.stdout);
}

#[test]
fn stable_under_more_digits() {
    for m in ["ramanujan7j", "chancooper"] {
        let short = stdout(&pi(&["compute", "--method", m, "--digits", "300"]));
        let long = stdout(&pi(&["compute", "--method", m, "--digits", "400"]));
        let strip = |s: &str| s.replace('\n', "");
        assert!(strip(&long).starts_with(&strip(&short)), "{m}");
    }
}

#[test]
fn gregory_is_refused() {
    let o = pi(&["compute", "--method", "gregory", "--digits", "50"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("impractical method for requested digits"));
    assert!(o.stdout.is_empty());
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["compute", "--method", "nope", "--digits", "10"][..],
        &["compute", "--method", "agm", "--digits", "1000001"],
        &["compute", "--method", "agm", "--digits", "0"],
        &["compute", "--method", "agm"],
        &["compute", "--method", "agm", "--digits", "ten"],
        &["verify", "--digits", "16"],
        &["frobnicate"],
        &[],
    ] {
        let o = pi(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
    }
    let o = pi(&["verify", "--digits", "16"]);
    assert!(stderr(&o).contains("precision too low for table suite"));
    let o = pi(&["compute", "--method", "nope", "--digits", "10"]);
    assert!(stderr(&o).contains("nope"));
}

#[test]
fn verify_passes_at_100() {
    let o = pi(&["verify", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["digits"], 100);
    assert_eq!(v["passed"], true);
    let checks = v["checks"].as_array().unwrap();
    let rows: Vec<_> = checks
        .iter()
        .filter(|c| c["name"].as_str().unwrap().starts_with("table row"))
        .collect();
    assert_eq!(rows.len(), 14);
    assert!(rows.iter().all(|c| c["passed"] == true));
    for name in [
        "legendre relation",
        "lattice modulus k58",
        "coefficients ramanujan58",
        "reciprocal pi identity N=58",
    ] {
        assert!(checks.iter().any(|c| c["name"] == name), "{name}");
    }
}

#[test]
fn verify_names_a_corrupted_row() {
    let text = include_str!("../data/singular_values.toml");
    // alpha(58) with one integer nudged
    let bad = text.replacen("33*sqrt(29) - 148", "33*sqrt(29) - 149", 1);
    assert_ne!(bad, text);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.toml");
    std::fs::write(&path, bad).unwrap();
    let o = pi(&["verify", "--digits", "50", "--table", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(
        out.lines()
            .any(|l| l.starts_with("FAIL") && l.contains("table row N=58")),
        "{out}"
    );
    assert!(stderr(&o).contains("table row N=58"));
}

#[test]
fn unreadable_table_is_a_usage_error() {
    let o = pi(&["verify", "--table", "/nonexistent/table.toml"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn catalog_entries() {
    let o = pi(&["catalog", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let list = v.as_array().unwrap();
    assert_eq!(list.len(), 10);
    let find = |k: &str| list.iter().find(|e| e["key"] == k).unwrap().clone();
    assert_eq!(find("ramanujan58")["A"], "1103");
    assert_eq!(find("ramanujan58")["B"], "26390");
    assert_eq!(find("chudnovsky")["A"], "13591409");
    for e in list {
        for key in [
            "family",
            "multiplier",
            "A",
            "B",
            "base",
            "alternating",
            "pattern",
            "provenance",
            "digits_per_term",
        ] {
            assert!(e.get(key).is_some(), "{} lacks {key}", e["key"]);
        }
    }
    let plain = stdout(&pi(&["catalog"]));
    assert_eq!(plain.lines().count(), 11);
}

#[test]
fn bench_table() {
    let o = pi(&["bench", "--digits", "1000", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v.as_array().unwrap();
    let row = |k: &str| rows.iter().find(|r| r["method"] == k).unwrap().clone();
    let terms = |k: &str| row(k)["terms"].as_u64().unwrap();
    let r58 = terms("ramanujan58");
    assert!((120..=135).contains(&r58), "{r58}");
    assert!(terms("chudnovsky") < r58 && r58 < terms("ramanujan7j"));
    let g = row("gregory");
    assert_eq!(g["terms"], 10_000_000);
    assert!(g["digits"].as_f64().unwrap() <= 8.0);
    // sorted by rate, fastest first
    let rates: Vec<f64> = rows
        .iter()
        .filter_map(|r| r["digits_per_term"].as_f64())
        .collect();
    assert!(rates.windows(2).all(|w| w[0] >= w[1]));
    assert_eq!(rows[0]["method"], "chudnovsky");
}
