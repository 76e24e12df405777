//! End-to-end checks of the command-line interface: exit codes, output
//! shapes, artifact determinism, and the result cache.

use std::process::Command;

fn topgrav(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_topgrav"))
        .args(args)
        .env_remove("TOPGRAV_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(out: &std::process::Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn compute_two_dim_tilde_latex() {
    let out = topgrav(&["compute", "--model", "2d", "--genus", "2", "--form", "tilde", "--latex"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("\\frac{7}{1440}"), "{text}");
    assert!(text.contains("\\frac{29}{5760}"), "{text}");
    assert!(text.contains("\\frac{1}{1152}"), "{text}");
}

#[test]
fn compute_genus_zero_series() {
    let out = topgrav(&["compute", "--model", "1d", "--genus", "0", "--order", "4"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("I0^2"));
}

#[test]
fn compute_eval_n_collapses() {
    let hmm = topgrav(&["compute", "--model", "hmm", "--genus", "2", "--eval-n", "1"]);
    let one = topgrav(&["compute", "--model", "1d", "--genus", "2"]);
    assert!(hmm.status.success() && one.status.success());
    assert_eq!(stdout(&hmm), stdout(&one));
}

#[test]
fn usage_errors_exit_two() {
    let out = topgrav(&["compute", "--model", "3d", "--genus", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = topgrav(&["transform", "--what", "i0", "--max-deg", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = topgrav(&["compute", "--model", "1d"]);
    assert_eq!(out.status.code(), Some(2));
    let out = topgrav(&["verify", "--suite", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn transform_examples() {
    let out = topgrav(&["transform", "--what", "i0", "--max-deg", "3", "--max-var", "3"]);
    assert_eq!(stdout(&out).trim(), "t0 + t0*t1 + t0*t1^2 + (1/2)*t0^2*t2");
    let out = topgrav(&["transform", "--what", "t", "--n", "1", "--at-i0-zero"]);
    assert_eq!(stdout(&out).trim(), "I1");
    let out = topgrav(&["transform", "--what", "ghost", "--n", "1", "--max-deg", "2"]);
    assert!(stdout(&out).contains("t0^2"));
    let out = topgrav(&["transform", "--what", "roundtrip", "--max-var", "3", "--max-deg", "4"]);
    assert!(out.status.success());
}

#[test]
fn verify_suites_pass() {
    for suite in ["tables", "homogeneity"] {
        let out = topgrav(&["verify", "--suite", suite]);
        assert!(out.status.success(), "suite {suite} failed: {}", stdout(&out));
    }
}

#[test]
fn artifacts_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = Command::new(env!("CARGO_BIN_EXE_topgrav"))
            .args(["compute", "--model", "2d", "--genus", "3", "--json", "--out"])
            .arg(path)
            .env_remove("TOPGRAV_CACHE_DIR")
            .output()
            .unwrap();
        assert!(out.status.success());
    }
    let bytes_a = std::fs::read(&a).unwrap();
    let bytes_b = std::fs::read(&b).unwrap();
    assert!(!bytes_a.is_empty());
    assert_eq!(bytes_a, bytes_b);
}

#[test]
fn cache_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        let out = Command::new(env!("CARGO_BIN_EXE_topgrav"))
            .args(["compute", "--model", "1d", "--genus", "3", "--json"])
            .env("TOPGRAV_CACHE_DIR", dir.path())
            .output()
            .unwrap();
        assert!(out.status.success());
        String::from_utf8_lossy(&out.stdout).into_owned()
    };
    let cold = run();
    let entries: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(entries.len(), 1, "one cache entry expected");
    let warm = run();
    assert_eq!(cold, warm, "cache hit must reproduce the fresh result");
}

#[test]
fn curve_emission() {
    let out = topgrav(&[
        "curve", "--model", "1d", "--coords", "i", "--orders", "-2..3", "--json",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("\"sqrt2\":true"));
    assert!(text.contains("\"exponent\":\"-1\""));
    let out = topgrav(&[
        "curve", "--model", "2d", "--coords", "t", "--orders", "-5/2..5/2", "--json",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("\"exponent\":\"1/2\""));
}
