//! Acceptance criterion 12, the CLI half of the gate (criteria 1–11 live in
//! the library's acceptance target): rerunning any command with identical
//! flags and seed produces byte-identical JSON output.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[String]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scalewalk"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn criterion_12_cli_determinism() {
    let sierpinski = fixture("sierpinski.json");
    let grid = fixture("grid5.json");
    let quarter = fixture("quarter-scale.json");
    let split = fixture("split.json");

    let dir = tempfile::tempdir().unwrap();
    let alpha = dir.path().join("alpha.json");
    std::fs::write(
        &alpha,
        r#"{"map":[["0","1/2"],["1/2","1/1"]],"type":"expansion-map"}"#,
    )
    .unwrap();

    // Every subcommand, JSON format, covering both exit-0 and exit-1 paths.
    let commands: Vec<Vec<String>> = vec![
        vec!["metrize", "--in", &sierpinski, "--format", "json"],
        vec![
            "components", "--in", &grid, "--scale", &quarter, "--format", "json",
        ],
        vec![
            "walk", "--in", &grid, "--uniform", "1/4", "--variant", "weak", "--from", "0",
            "--to", "1", "--format", "json",
        ],
        vec!["connected", "--in", &sierpinski, "--format", "json"],
        vec!["connected", "--in", &split, "--format", "json"],
        vec![
            "uniform-connected", "--in", &grid, "--variant", "weak", "--format", "json",
        ],
        vec![
            "sigma-connected", "--in", &grid, "--system", "bounded:1/2", "--variant", "weak",
            "--format", "json",
        ],
        vec![
            "sigma-connected", "--in", &grid, "--system",
            &format!("expansion:{}", alpha.display()), "--variant", "weak", "--format", "json",
        ],
        vec![
            "verify", "--theorem", "alterstep", "--corpus", "exhaustive:2", "--format", "json",
        ],
        vec![
            "verify", "--theorem", "hierarchy", "--corpus", "random:3:4", "--seed", "11",
            "--format", "json",
        ],
        vec!["laws", "--quantale", "omega:2", "--format", "json"],
        vec!["laws", "--quantale", "ext_rational", "--seed", "5", "--format", "json"],
        vec![
            "random", "--kind", "topology", "--points", "4", "--seed", "3", "--format", "json",
        ],
        vec![
            "random", "--kind", "metric", "--points", "3", "--seed", "9", "--format", "json",
        ],
    ]
    .into_iter()
    .map(|v| v.into_iter().map(String::from).collect())
    .collect();

    for args in &commands {
        let first = run(args);
        let second = run(args);
        assert!(
            !first.stdout.is_empty(),
            "no output for scalewalk {}",
            args.join(" ")
        );
        assert_eq!(
            first.stdout,
            second.stdout,
            "rerun of scalewalk {} differed",
            args.join(" ")
        );
        assert_eq!(first.status.code(), second.status.code());
        assert!(
            serde_json::from_slice::<serde_json::Value>(&first.stdout).is_ok(),
            "scalewalk {} did not print JSON",
            args.join(" ")
        );
    }

    // --out artifacts are byte-identical too.
    let out_a = dir.path().join("a.json");
    let out_b = dir.path().join("b.json");
    for out in [&out_a, &out_b] {
        let st = run(&[
            "metrize".into(),
            "--in".into(),
            sierpinski.clone(),
            "--out".into(),
            out.display().to_string(),
            "--format".into(),
            "json".into(),
        ]);
        assert_eq!(st.status.code(), Some(0));
    }
    assert_eq!(
        std::fs::read(&out_a).unwrap(),
        std::fs::read(&out_b).unwrap(),
        "metrize --out artifacts differed between reruns"
    );

    println!("acceptance 12 (CLI determinism): pass");
}
