use std::process::{Command, Output};

fn seqop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seqop"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone())
        .unwrap()
        .trim_end()
        .to_string()
}

#[test]
fn coefficient() {
    let o = seqop(&["coeff", "(12)", "1", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "-(12131)");
    let o = seqop(&["coeff", "(12)", "1", "2", "--ring", "F2"]);
    assert_eq!(stdout(&o), "(12131)");
}

#[test]
fn phi_evaluation() {
    let o = seqop(&["phi-eval", "(12)", "[x]", "[y]", "--ring", "F2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "[x|y]+[y|x]+[(121)(x,y)]");
    let o = seqop(&["phi-eval", "(1)", "[u]", "--gen", "u:3", "--ring", "Z"]);
    assert_eq!(stdout(&o), "[u]");
}

#[test]
fn low_degree_generators_need_a_flag() {
    let o = seqop(&[
        "phi-eval", "(12)", "[a]", "[b]", "--gen", "a:1", "--gen", "b:0",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = seqop(&[
        "phi-eval",
        "(12)",
        "[a]",
        "[b]",
        "--gen",
        "a:1",
        "--gen",
        "b:0",
        "--min-degree",
        "0",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
}

#[test]
fn diagonal() {
    let o = seqop(&["diagonal", "(121)"]);
    assert_eq!(stdout(&o), "(12)⊗(121)+(121)⊗(21)");
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(seqop(&["coeff", "(12)", "1"]).status.code(), Some(2));
    assert_eq!(seqop(&["coeff", "(11)", "1"]).status.code(), Some(2));
    assert_eq!(
        seqop(&["coeff", "(12)", "1", "1", "--ring", "F4"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        seqop(&["phi-eval", "(12)", "[]", "[x]"]).status.code(),
        Some(2)
    );
    assert_eq!(seqop(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        seqop(&["loop-cohomology", "--space", "RP2"]).status.code(),
        Some(2)
    );
}

#[test]
fn loop_cohomology_of_the_two_sphere() {
    let o = seqop(&[
        "loop-cohomology",
        "--space",
        "S2",
        "--prime",
        "2",
        "--max-degree",
        "4",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for n in 1..=4 {
        assert!(text.contains(&format!("H^{n}: 1")), "{text}");
    }
    let o = seqop(&[
        "loop-cohomology",
        "--space",
        "S2",
        "--max-degree",
        "3",
        "--format",
        "structured",
    ]);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["dimensions"]["3"], 1);
}

#[test]
fn space_files() {
    let dir = std::env::temp_dir().join(format!("seqop-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("s2.json");
    std::fs::write(
        &path,
        r#"{"basepoint": "v", "dimensions": [["v"], [], ["t"]], "faces": {"t": ["s0 v", "s0 v", "s0 v"]}}"#,
    )
    .unwrap();
    let o = seqop(&[
        "steenrod-table",
        "--space",
        path.to_str().unwrap(),
        "--max-degree",
        "5",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert!(stdout(&o).contains("Sq^2"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verification_reports_are_deterministic() {
    let args = [
        "verify",
        "operad",
        "--max-entries",
        "5",
        "--max-bar-length",
        "2",
        "--samples",
        "20",
        "--seed",
        "7",
        "--format",
        "structured",
    ];
    let a = seqop(&args);
    let b = seqop(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let doc: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(doc[0]["suite"], "operad");
    assert!(doc[0]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["failed"] == 0));
}

#[test]
fn failing_suites_exit_with_one() {
    // Δ does not commute with composition once the outer operation has
    // positive degree, so this suite reports failures.
    let o = seqop(&["verify", "diagonal", "--max-entries", "3", "--samples", "5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAILED"));
}
