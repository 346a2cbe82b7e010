use std::process::{Command, Output};

fn qtradeoff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qtradeoff"))
        .args(args)
        .env("NO_COLOR", "1")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn data_rows(csv: &str) -> Vec<Vec<f64>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect()
}

#[test]
fn fidelity_of_center_and_pole() {
    let out = qtradeoff(&["fidelity", "--bloch", "0,0,0", "--bloch", "0,0,1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "0.707106781187\n");
}

#[test]
fn fidelity_of_identical_states_is_one() {
    let out = qtradeoff(&[
        "fidelity",
        "--bloch",
        "0.3,-0.2,0.5",
        "--bloch",
        "0.3,-0.2,0.5",
    ]);
    assert_eq!(stdout(&out), "1\n");
    let out = qtradeoff(&["fidelity", "--diag", "0.25", "--diag", "0.25"]);
    assert_eq!(stdout(&out), "1\n");
}

#[test]
fn fidelity_mixes_state_kinds() {
    // diag(1, 0) is the north pole
    let out = qtradeoff(&["fidelity", "--diag", "1", "--bloch", "0,0,0"]);
    assert_eq!(stdout(&out), "0.707106781187\n");
}

#[test]
fn probability_of_orthogonalizing() {
    let out = qtradeoff(&["probability", "--s-in", "0.6", "--s-out", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "0.4\n");
}

#[test]
fn probability_with_mixed_targets() {
    let out = qtradeoff(&[
        "probability",
        "--s-in",
        "0.8",
        "--diag",
        "1",
        "--diag",
        "0.5",
    ]);
    let p: f64 = stdout(&out).trim().parse().unwrap();
    assert!((p - 0.2 / (1.0 - 0.5f64.sqrt())).abs() < 1e-11);
}

#[test]
fn usage_errors_exit_two() {
    let cases: &[&[&str]] = &[
        &["curve-transform", "--s-psi", "0.6", "--s-phi", "0.7"],
        &["curve-transform", "--s-psi", "1.0", "--s-phi", "0.2"],
        &[
            "curve-transform",
            "--s-psi",
            "0.6",
            "--s-phi",
            "0.1",
            "--points",
            "1",
        ],
        &["curve-semiclassical", "--beta", "0"],
        &["curve-semiclassical", "--beta", "1.5"],
        &[
            "curve-quantum-inversion",
            "--beta",
            "0.5",
            "--overlap-in",
            "1",
        ],
        &["verify", "transform", "--tolerance", "-1"],
        &["verify", "transform", "--restarts", "0"],
        &["verify", "transform", "--rank", "5"],
        &["verify", "nonsense"],
        &["fidelity", "--bloch", "0,0,2", "--bloch", "0,0,1"],
        &["fidelity", "--bloch", "0,0"],
        &["fidelity", "--diag", "0.5"],
        &["fidelity", "--diag", "nope"],
        &["probability", "--s-in", "0.5", "--s-out", "1"],
        &["frobnicate"],
        &[],
    ];
    for args in cases {
        let out = qtradeoff(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn diagnostics_name_the_constraint() {
    let out = qtradeoff(&["curve-transform", "--s-psi", "0.6", "--s-phi", "0.7"]);
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.lines().count(), 1);
    assert!(err.contains("0.7") && err.contains("0.6"), "{err}");
    let out = qtradeoff(&["curve-semiclassical", "--beta", "0"]);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("degenerate contraction"), "{err}");
}

#[test]
fn transform_csv_layout() {
    let out = qtradeoff(&[
        "curve-transform",
        "--s-psi",
        "0.6",
        "--s-phi",
        "0,0.1,0.2,0.3,0.4,0.5,0.6",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert!(lines
        .next()
        .unwrap()
        .starts_with("# qtradeoff curve-transform"));
    assert_eq!(lines.next().unwrap(), "# seed 0");
    assert_eq!(lines.next().unwrap(), "s_psi,s_phi,p,F");
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 6 * 200 + 1);
    assert_eq!(rows.last().unwrap(), &vec![0.6, 0.6, 1.0, 1.0]);
    assert!(!text.contains('\r'));
}

#[test]
fn overlap_point_nine_dataset() {
    let out = qtradeoff(&[
        "curve-transform",
        "--s-psi",
        "0.9",
        "--s-phi",
        "0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9",
        "--points",
        "50",
    ]);
    let rows = data_rows(&stdout(&out));
    assert_eq!(rows.len(), 9 * 50 + 1);
    let first = &rows[0];
    assert!((first[2] - 0.1).abs() < 1e-15);
    assert_eq!(first[3], 1.0);
}

#[test]
fn semiclassical_csv() {
    let out = qtradeoff(&[
        "curve-semiclassical",
        "--beta",
        "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1.0",
        "--points",
        "20",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.lines().any(|l| l == "beta,p,F"));
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 9 * 20 + 1);
    let end = rows.iter().find(|r| r[0] == 0.1 && r[1] == 1.0).unwrap();
    assert!((end[2] - 2.0 * 0.1f64.sqrt() / 1.1).abs() < 1e-12);
    assert!((end[2] - 0.57496).abs() < 1e-5);
    assert_eq!(rows.last().unwrap(), &vec![1.0, 1.0, 1.0]);
}

#[test]
fn quantum_inversion_edge_cases() {
    let out = qtradeoff(&[
        "curve-quantum-inversion",
        "--beta",
        "1",
        "--overlap-in",
        "0.3",
    ]);
    let rows = data_rows(&stdout(&out));
    assert_eq!(rows.len(), 1);
    assert_eq!(&rows[0][2..], &[1.0, 1.0]);

    let out = qtradeoff(&[
        "curve-quantum-inversion",
        "--beta",
        "0.9",
        "--overlap-in",
        "0.999",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rows = data_rows(&stdout(&out));
    assert_eq!(rows.len(), 200);
    let (c2, d2) = (0.9995, 0.0005 * 0.81);
    let s_in = (c2 - d2) / (c2 + d2);
    assert!((rows[0][1] - s_in).abs() < 1e-12);
    assert!(
        (rows[0][2] - (1.0 - s_in) / 0.001).abs() < 1e-9,
        "p0 = {}",
        rows[0][2]
    );
}

#[test]
fn output_file_is_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let args = |p: &std::path::Path| {
        vec![
            "curve-transform".to_string(),
            "--s-psi".into(),
            "0.99".into(),
            "--s-phi".into(),
            "0.09,0.49,0.99".into(),
            "--output".into(),
            p.display().to_string(),
        ]
    };
    for p in [&a, &b] {
        let owned = args(p);
        let refs: Vec<&str> = owned.iter().map(String::as_str).collect();
        let out = qtradeoff(&refs);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
    }
    let strip = |p: &std::path::Path| {
        std::fs::read_to_string(p)
            .unwrap()
            .lines()
            .filter(|l| !l.starts_with('#'))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(strip(&a), strip(&b));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 2);
}

#[test]
fn verify_transform_small_budget() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("verify.csv");
    let out = qtradeoff(&[
        "verify",
        "transform",
        "--restarts",
        "4",
        "--iters",
        "100",
        "--output",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.lines().last().unwrap().ends_with("PASS"));
    assert!(!text.contains('\x1b'));
    let report = std::fs::read_to_string(&csv).unwrap();
    assert!(report
        .lines()
        .any(|l| l == "suite,a,b,p,frontier_F,best_F,best_p,violation,samples"));
    assert_eq!(
        report
            .lines()
            .filter(|l| l.starts_with("transform,"))
            .count(),
        24 * 11 + 3
    );
}

#[test]
fn tiny_tolerance_is_reported_as_a_violation() {
    // p slightly below target is allowed by the feasibility slack, so the
    // semiclassical suite finds gains of order 1e-13
    let out = qtradeoff(&[
        "verify",
        "semiclassical",
        "--restarts",
        "2",
        "--iters",
        "50",
        "--tolerance",
        "1e-300",
    ]);
    assert_eq!(out.status.code(), Some(1), "{}", stdout(&out));
    assert!(stdout(&out).lines().last().unwrap().ends_with("FAIL"));
}

#[test]
fn help_documents_ranges() {
    for cmd in [
        "curve-transform",
        "curve-semiclassical",
        "curve-quantum-inversion",
        "verify",
        "fidelity",
        "probability",
    ] {
        let out = qtradeoff(&[cmd, "--help"]);
        assert_eq!(out.status.code(), Some(0));
        let text = stdout(&out);
        assert!(
            text.contains('[') || text.contains("positive"),
            "{cmd}: {text}"
        );
    }
    let out = qtradeoff(&["--help"]);
    assert!(stdout(&out).contains("dimensionless"));
}
