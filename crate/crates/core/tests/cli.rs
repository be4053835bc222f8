use std::path::PathBuf;
use std::process::{Command, Output};

fn rgroup(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rgroup"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn instance(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("instances")
        .join(format!("{name}.json"))
        .display()
        .to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn analyze_worked_example_counts() {
    for (name, n) in [("EX_A", 8), ("EX_B", 4), ("EX_C", 2)] {
        let out = rgroup(&["analyze", &instance(name)]);
        assert_eq!(out.status.code(), Some(0));
        let text = stdout(&out);
        assert!(text.contains(&format!("{n} elliptic constituents")), "{text}");
        assert!(text.contains("verdict     ELLIPTIC"));
    }
}

#[test]
fn example_subcommand_matches_files() {
    let a = rgroup(&["example", "EX_GU3", "--format", "json"]);
    let b = rgroup(&["analyze", &instance("EX_GU3"), "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["classification"]["verdict"], "NOT_INDUCED");
    assert_eq!(rgroup(&["example", "EX_Z"]).status.code(), Some(1));
}

#[test]
fn analyze_with_oracle_is_deterministic() {
    let path = instance("EX_B");
    let a = rgroup(&["analyze", &path, "--format", "json", "--oracle"]);
    let b = rgroup(&["analyze", &path, "--format", "json", "--oracle"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["oracle"]["pass"], true);
}

#[test]
fn invalid_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(
        &path,
        r#"{"family":"GSp_even","gamma_rank":1,"m":0,
        "blocks":[{"size":1,"class":"a"}],
        "classes":{"a":{"size":1,"eps_dual":"a","omega":"1","x_holds":true}},
        "x_rho_generators":[]}"#,
    )
    .unwrap();
    let out = rgroup(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("x_holds requires omega in X(rho)"), "{err}");

    std::fs::write(&path, "{not json").unwrap();
    assert_eq!(rgroup(&["analyze", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn cap_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("big.json");
    let blocks = vec![r#"{"size":1,"class":"a"}"#; 8].join(",");
    std::fs::write(
        &path,
        format!(
            r#"{{"family":"GO_odd","gamma_rank":0,"m":0,"blocks":[{blocks}],
            "classes":{{"a":{{"size":1,"eps_dual":"a","omega":null,"x_holds":true}}}},"x_rho_generators":[]}}"#
        ),
    )
    .unwrap();
    assert_eq!(rgroup(&["verify", path.to_str().unwrap()]).status.code(), Some(4));
    // the closed form alone has no cap
    assert_eq!(rgroup(&["analyze", path.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(rgroup(&["catalog", "--family", "GO_odd", "--r", "5"]).status.code(), Some(4));
}

#[test]
fn verify_passes() {
    let out = rgroup(&["verify", &instance("EX_B")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("PASS"));
}

#[test]
fn fuzz_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.jsonl");
    let b = dir.path().join("b.jsonl");
    let args = |p: &PathBuf| {
        vec![
            "fuzz".to_string(),
            "--family".into(),
            "GSp_even".into(),
            "--max-r".into(),
            "5".into(),
            "--count".into(),
            "500".into(),
            "--seed".into(),
            "7".into(),
            "--out".into(),
            p.display().to_string(),
        ]
    };
    let run = |p: &PathBuf| {
        let args = args(p);
        rgroup(&args.iter().map(String::as_str).collect::<Vec<_>>())
    };
    let oa = run(&a);
    let ob = run(&b);
    assert_eq!(oa.status.code(), Some(0));
    assert_eq!(oa.stdout, ob.stdout);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let summary: serde_json::Value = serde_json::from_slice(&oa.stdout).unwrap();
    assert_eq!(summary["passed"], 500);
    let lines = std::fs::read_to_string(&a).unwrap();
    assert_eq!(lines.lines().count(), 500);
    let first: serde_json::Value = serde_json::from_str(lines.lines().next().unwrap()).unwrap();
    for key in ["index", "instance", "w_sigma_order", "w_prime_order", "d", "verdict", "pass"] {
        assert!(first.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn fuzz_count_zero_fails() {
    assert_ne!(rgroup(&["fuzz", "--count", "0"]).status.code(), Some(0));
}

#[test]
fn catalog_golden_counts() {
    for (family, r, rank, count) in [("GO_odd", 2, 1, 19), ("GSp_even", 2, 2, 455), ("GU_even", 1, 1, 9)] {
        let out = rgroup(&["catalog", "--family", family, "--r", &r.to_string(), "--gamma-rank", &rank.to_string()]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(stdout(&out).lines().count(), count, "{family} r={r} rank={rank}");
    }
}
