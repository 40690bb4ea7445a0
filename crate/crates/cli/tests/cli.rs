//! Binary-level behavior: exit codes, file formats, determinism, config
//! precedence.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_dpend"));
    c.env_remove("HET_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn invalid_arguments_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let orbit = dir.path().join("o.csv");
    let summary = dir.path().join("s.json");
    let o = orbit.to_str().unwrap();
    let s = summary.to_str().unwrap();

    // negative amplitude, named in the message
    let out = run(&["solve", "--amplitude", "-1", "--orbit", o, "--summary", s]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("amplitude"));

    // the connection must leave 0
    let out = run(&["solve", "--target", "0", "--orbit", o, "--summary", s]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("target"));

    // schedule must decrease
    let out = run(&[
        "solve",
        "--epsilon-schedule",
        "0.3,0.6",
        "--orbit",
        o,
        "--summary",
        s,
    ]);
    assert_eq!(code(&out), 3);

    // epsilon outside (0, 2π/3)
    let out = run(&["solve", "--epsilon", "2.2", "--orbit", o, "--summary", s]);
    assert_eq!(code(&out), 3);

    let out = run(&["portrait", "--steps", "0"]);
    assert_eq!(code(&out), 3);

    let out = run(&["verify", "--suite", "nonsense"]);
    assert_eq!(code(&out), 3);

    let out = run(&["sweep", "--targets", "1,0"]);
    assert_eq!(code(&out), 3);

    // unknown flag goes through the same exit code
    let out = run(&["solve", "--no-such-flag"]);
    assert_eq!(code(&out), 3);

    // malformed config file
    let cfg = dir.path().join("bad.json");
    std::fs::write(&cfg, "{\"amplitude\": }").unwrap();
    let out = run(&["--config", cfg.to_str().unwrap(), "delta", "--epsilon", "1"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn nonconvergence_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let orbit = dir.path().join("o.csv");
    let summary = dir.path().join("s.json");
    let out = run(&[
        "solve",
        "--amplitude",
        "1",
        "--max-iter",
        "1",
        "--orbit",
        orbit.to_str().unwrap(),
        "--summary",
        summary.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
    // outputs still written for diagnosis
    let parsed: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&summary).unwrap()).unwrap();
    assert_eq!(parsed["certificate"], "denied");
    assert!(orbit.exists());
}

#[test]
fn solve_outputs_are_deterministic_and_recomputable() {
    let dir = tempfile::tempdir().unwrap();
    let run_once = |tag: &str| -> (Vec<u8>, serde_json::Value) {
        let orbit = dir.path().join(format!("orbit_{tag}.csv"));
        let summary = dir.path().join(format!("summary_{tag}.json"));
        let out = run(&[
            "solve",
            "--amplitude",
            "1",
            "--target",
            "1",
            "--orbit",
            orbit.to_str().unwrap(),
            "--summary",
            summary.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
        let bytes = std::fs::read(&orbit).unwrap();
        let summary: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(&summary).unwrap()).unwrap();
        (bytes, summary)
    };
    let (bytes_a, summary_a) = run_once("a");
    let (bytes_b, _) = run_once("b");
    assert_eq!(bytes_a, bytes_b, "orbit files differ between identical runs");

    // the summary's action value matches a recomputation from the file
    let text = String::from_utf8(bytes_a).unwrap();
    let mut rows: Vec<(i64, f64, f64)> = Vec::new();
    for line in text.lines().skip(1) {
        let mut parts = line.split(',');
        let n: i64 = parts.next().unwrap().parse().unwrap();
        let y: f64 = parts.next().unwrap().parse().unwrap();
        let dy: f64 = parts.next().unwrap().parse().unwrap();
        rows.push((n, y, dy));
    }
    let n_min = rows.first().unwrap().0;
    let n_max = rows.last().unwrap().0;
    let amplitude = summary_a["amplitude"].as_f64().unwrap();
    let mut j = 0.0;
    for &(n, y, dy) in &rows {
        if n <= n_max - 1 {
            j += 0.5 * dy * dy;
        }
        if n > n_min && n < n_max {
            j += amplitude * (1.0 - y.cos());
        }
    }
    let reported = summary_a["action_value"].as_f64().unwrap();
    assert!(
        (j - reported).abs() <= 1e-10,
        "recomputed {j} vs reported {reported}"
    );
}

#[test]
fn portrait_steps_one_gives_length_two_traces() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("p.csv");
    let svg = dir.path().join("p.svg");
    let out = run(&[
        "portrait",
        "--amplitude",
        "0.1",
        "--steps",
        "1",
        "--csv",
        csv.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "trace_id,n,x,dx");
    // 20 default traces, 2 rows each
    assert_eq!(text.lines().count(), 1 + 20 * 2);
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));
}

#[test]
fn portrait_files_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let make = |tag: &str| {
        let csv = dir.path().join(format!("p_{tag}.csv"));
        let svg = dir.path().join(format!("p_{tag}.svg"));
        let out = run(&[
            "portrait",
            "--amplitude",
            "1",
            "--steps",
            "400",
            "--csv",
            csv.to_str().unwrap(),
            "--svg",
            svg.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0);
        (std::fs::read(csv).unwrap(), std::fs::read(svg).unwrap())
    };
    assert_eq!(make("a"), make("b"));
}

#[test]
fn sweep_writes_table_and_checks_order() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let out = run(&[
        "sweep",
        "--amplitude",
        "1",
        "--epsilons",
        "0.6,0.3",
        "--targets",
        "1,2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "epsilon,target,c_value,converged");
    assert_eq!(text.lines().count(), 1 + 4);

    // c(4π) stays above c(2π) in every row
    let mut by_eps: std::collections::BTreeMap<String, Vec<(i64, f64)>> = Default::default();
    for line in text.lines().skip(1) {
        let parts: Vec<&str> = line.split(',').collect();
        by_eps
            .entry(parts[0].to_string())
            .or_default()
            .push((parts[1].parse().unwrap(), parts[2].parse().unwrap()));
    }
    for (_, entries) in by_eps {
        let c1 = entries.iter().find(|(k, _)| *k == 1).unwrap().1;
        let c2 = entries.iter().find(|(k, _)| *k == 2).unwrap().1;
        assert!(c2 > c1);
    }
}

#[test]
fn verify_subcommand_passes_fast_suites() {
    let out = run(&["verify", "--suite", "alpha", "--suite", "norm", "--suite", "symmetry"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let parsed: serde_json::Value =
        serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(parsed["all_passed"], true);
    assert_eq!(parsed["suites"].as_array().unwrap().len(), 3);
}

#[test]
fn delta_prints_value() {
    let out = run(&["delta", "--epsilon", "1", "--amplitude", "1"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let value: f64 = text.trim().parse().unwrap();
    assert!((value - 0.055548413177789024).abs() < 1e-9);

    let out = run(&["delta", "--epsilon", "3.0"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn config_file_feeds_defaults_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let orbit = dir.path().join("o.csv");
    let summary = dir.path().join("s.json");
    let cfg = dir.path().join("run.json");
    std::fs::write(
        &cfg,
        format!(
            r#"{{
                "amplitude": -5.0,
                "target_multiple": 1,
                "epsilon_schedule": [0.5, 0.25],
                "orbit_path": {:?},
                "summary_path": {:?}
            }}"#,
            orbit.to_str().unwrap(),
            summary.to_str().unwrap()
        ),
    )
    .unwrap();

    // config alone: the bad amplitude is rejected
    let out = run(&["--config", cfg.to_str().unwrap(), "solve"]);
    assert_eq!(code(&out), 3);

    // flag overrides the config value; paths come from the file
    let out = run(&["--config", cfg.to_str().unwrap(), "solve", "--amplitude", "1"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let parsed: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&summary).unwrap()).unwrap();
    assert_eq!(parsed["amplitude"], 1.0);
    assert_eq!(
        parsed["epsilon_schedule"],
        serde_json::json!([0.5, 0.25])
    );
}

#[test]
fn het_seed_env_is_validated() {
    let out = bin()
        .env("HET_SEED", "not-a-number")
        .args(["verify", "--suite", "alpha"])
        .output()
        .unwrap();
    assert_eq!(out.status.code().unwrap(), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("HET_SEED"));

    let out = bin()
        .env("HET_SEED", "123")
        .args(["verify", "--suite", "alpha"])
        .output()
        .unwrap();
    assert_eq!(out.status.code().unwrap(), 0);
}
