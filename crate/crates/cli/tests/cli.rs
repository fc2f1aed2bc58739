use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn fastrip(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fastrip"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_config(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.display().to_string()
}

#[test]
fn rip_run_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "rip.cfg", "n = 16\nk = 8\ns = 2\nseed = 42\n");
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for out in [&a, &b] {
        let o = fastrip(&["rip", "--config", &cfg, "--out", out.to_str().unwrap(), "--quiet"]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let a = fs::read(&a).unwrap();
    assert_eq!(a, fs::read(&b).unwrap());
    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with("# fastrip rip: construction = theorem1; n = 16; k = 8; s = 2; seed = 42;"));
    assert_eq!(
        text.lines().nth(1).unwrap(),
        "construction,n,k,s,method,delta,trials,seed,wall_time_ms"
    );
}

#[test]
fn kappa_too_large_exits_two_with_value() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "t2.cfg",
        "construction = theorem2\nn = 1024\nk = 40\ns = 8\nC_kappa = 1\n",
    );
    let o = fastrip(&["build", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("kappa = 1.47"), "{err}");
}

#[test]
fn unknown_key_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "bad.cfg", "n = 16\nsed = 3\n");
    let o = fastrip(&["rip", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn size_guard_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "big.cfg", "n = 8192\nk = 64\ns = 1\nmethod = exact\n");
    let o = fastrip(&["rip", "--config", &cfg, "--quiet"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn chaos_on_full_sampling_reports_zero_variance() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "c.cfg", "n = 32\nk = 32\n");
    let o = fastrip(&["chaos", "--config", &cfg, "--trials", "200"]);
    assert!(o.status.success());
    let summary = String::from_utf8_lossy(&o.stderr);
    assert!(summary.contains("variance = 0.00000000"), "{summary}");
    let csv = String::from_utf8_lossy(&o.stdout);
    assert!(csv.contains("trials = 200"));
}

#[test]
fn seed_flag_overrides_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "s.cfg", "n = 16\nk = 8\ns = 2\nseed = 1\n");
    let a = fastrip(&["rip", "--config", &cfg, "--seed", "42", "--quiet"]);
    let cfg42 = write_config(dir.path(), "s42.cfg", "n = 16\nk = 8\ns = 2\nseed = 42\n");
    let b = fastrip(&["rip", "--config", &cfg42, "--quiet"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn every_subcommand_is_deterministic_without_timing() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "all.cfg",
        "n = 64\nk = 16\ns = 2\nseed = 7\ntrials = 300\ninstances = 5\nn_list = 64,128,256\n",
    );
    for cmd in ["build", "rip", "chaos", "recover", "bench"] {
        let a = fastrip(&[cmd, "--config", &cfg, "--quiet"]);
        let b = fastrip(&[cmd, "--config", &cfg, "--quiet"]);
        assert!(a.status.success(), "{cmd}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "{cmd}");
    }
}

#[test]
fn timing_flag_adds_times() {
    let o = fastrip(&["bench", "--quiet", "--timing"]);
    assert!(o.status.success());
    let csv = String::from_utf8_lossy(&o.stdout);
    let row = csv.lines().nth(3).unwrap();
    assert!(!row.ends_with(','), "{row}");
}
