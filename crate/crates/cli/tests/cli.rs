use std::fs::File;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn zetalab(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zetalab"))
        .env_remove("ZETALAB_CACHE_DIR")
        .arg("--cache-dir")
        .arg(cache)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines().map(|l| l.split(',').map(str::to_owned).collect()).collect()
}

/// theta(t) from its asymptotic series, enough terms for t = 100.
fn theta_series(t: f64) -> f64 {
    use std::f64::consts::PI;
    t / 2.0 * (t / (2.0 * PI)).ln() - t / 2.0 - PI / 8.0 + 1.0 / (48.0 * t) + 7.0 / (5760.0 * t.powi(3))
        + 31.0 / (80640.0 * t.powi(5))
}

#[test]
fn theta_is_a_single_value_table() {
    let dir = TempDir::new().unwrap();
    let o = zetalab(dir.path(), &["theta", "--t", "100"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0], ["t", "theta"]);
    let value: f64 = rows[1][1].parse().unwrap();
    assert!((value - theta_series(100.0)).abs() < 1e-9, "{value}");
    // 12 significant digits
    assert_eq!(rows[1][1].split('e').next().unwrap().replace(['.', '-'], "").len(), 12);
}

#[test]
fn limit_t1_rows_target_two_over_pi() {
    let dir = TempDir::new().unwrap();
    let o = zetalab(dir.path(), &["limit", "--kind", "t1", "--x", "2", "--tau", "1e3,1e4,1e5"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows[0], ["tau", "ratio", "target", "gap"]);
    assert_eq!(rows.len(), 4);
    let gaps: Vec<f64> = rows[1..].iter().map(|r| r[3].parse().unwrap()).collect();
    for r in &rows[1..] {
        let target: f64 = r[2].parse().unwrap();
        assert!((target - 2.0 / std::f64::consts::PI).abs() < 1e-11);
    }
    assert!(gaps[2] < gaps[0]);
}

#[test]
fn rational_and_decimal_x_agree() {
    let dir = TempDir::new().unwrap();
    let a = zetalab(dir.path(), &["limit", "--kind", "zeta", "--x", "91/125", "--tau", "1e3"]);
    let b = zetalab(dir.path(), &["limit", "--kind", "zeta", "--x", "0.728", "--tau", "1e3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn usage_errors_exit_64() {
    let dir = TempDir::new().unwrap();
    for args in [
        &["frobnicate"][..],
        &[][..],
        &["report", "--suite", ""],
        &["report", "--suite", "nope"],
        &["theta"],
        &["theta", "--t", "100", "--correction-order", "11"],
        &["limit", "--kind", "t3", "--x", "1"],
    ] {
        let o = zetalab(dir.path(), args);
        assert_eq!(o.status.code(), Some(64), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn help_and_version_exit_zero() {
    let dir = TempDir::new().unwrap();
    assert_eq!(zetalab(dir.path(), &["--help"]).status.code(), Some(0));
    assert_eq!(zetalab(dir.path(), &["--version"]).status.code(), Some(0));
}

#[test]
fn domain_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    for args in [
        &["theta", "--t", "5"][..],
        &["t1", "--x", "2"],
        &["limit", "--kind", "zeta", "--x", "0"],
        &["fermat-scan", "--max-n", "2"],
    ] {
        let o = zetalab(dir.path(), args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn output_is_deterministic_and_survives_cache_deletion() {
    let dir = TempDir::new().unwrap();
    let args = ["hl", "--T", "1e3,2e3"];
    let cold = zetalab(dir.path(), &args);
    let warm = zetalab(dir.path(), &args);
    assert_eq!(cold.status.code(), Some(0));
    assert_eq!(cold.stdout, warm.stdout);
    assert!(dir.path().join("gram.bin").exists());
    std::fs::remove_dir_all(dir.path()).unwrap();
    let again = zetalab(dir.path(), &args);
    assert_eq!(cold.stdout, again.stdout);
}

#[test]
fn cache_flag_wins_over_environment() {
    let env_dir = TempDir::new().unwrap();
    let flag_dir = TempDir::new().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_zetalab"))
        .env("ZETALAB_CACHE_DIR", env_dir.path())
        .args(["gram", "--x", "100", "--cache-dir"])
        .arg(flag_dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(flag_dir.path().join("gram.bin").exists());
    assert!(!env_dir.path().join("gram.bin").exists());

    let o = Command::new(env!("CARGO_BIN_EXE_zetalab"))
        .env("ZETALAB_CACHE_DIR", env_dir.path())
        .args(["gram", "--x", "100"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(env_dir.path().join("gram.bin").exists());
}

#[test]
fn gram_lists_points_below_x() {
    let dir = TempDir::new().unwrap();
    let o = zetalab(dir.path(), &["gram", "--x", "30"]);
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows[0], ["nu", "t", "z"]);
    // t_0 ~ 17.85, t_1 ~ 23.17, t_2 ~ 27.67, t_3 ~ 31.72
    assert_eq!(rows.len(), 4);
    assert!(rows[1][1].starts_with("1.78455995"));
}

#[test]
fn json_mirrors_csv_fields() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("ladder.json");
    let o = zetalab(dir.path(), &["ladder", "--T", "1e3", "--r", "2", "--format", "json", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let json = std::fs::read_to_string(&out).unwrap();
    let csv = stdout(&zetalab(dir.path(), &["ladder", "--T", "1e3", "--r", "2"]));
    assert!(csv.starts_with("r,T_r\n"));
    assert_eq!(csv.lines().count(), 4);
    assert_eq!(json.matches("\"T_r\"").count(), 3);
    assert_eq!(json.matches("\"r\"").count(), 3);
}

#[test]
fn fermat_scan_finds_nothing() {
    let dir = TempDir::new().unwrap();
    let o = zetalab(dir.path(), &["fermat-scan", "--max-xyz", "20", "--max-n", "7"]);
    assert_eq!(stdout(&o), "max_xyz,max_n,checked,unit_values\n20,7,40000,0\n");
}

#[test]
fn report_sections_carry_pass_flags() {
    let dir = TempDir::new().unwrap();
    let o = zetalab(dir.path(), &["report", "--suite", "fermat", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("\"fermat\""));
    assert!(text.contains("\"passed\": true"));
}

#[test]
fn held_cache_lease_is_refused() {
    let dir = TempDir::new().unwrap();
    let lock = File::create(dir.path().join(".lock")).unwrap();
    lock.lock().unwrap();
    let o = zetalab(dir.path(), &["theta", "--t", "100"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("in use"));
    lock.unlock().unwrap();
    assert_eq!(zetalab(dir.path(), &["theta", "--t", "100"]).status.code(), Some(0));
}

#[test]
fn ortho_gram_is_orthonormal() {
    let dir = TempDir::new().unwrap();
    let o = zetalab(dir.path(), &["ortho-gram", "--T", "1e4", "--p", "1", "--nmax", "3", "--normalization", "empirical"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows[0], ["m", "n", "value"]);
    assert_eq!(rows.len(), 1 + 16);
    for r in &rows[1..] {
        let v: f64 = r[2].parse().unwrap();
        let expected = if r[0] == r[1] { 1.0 } else { 0.0 };
        assert!((v - expected).abs() < 1e-3, "{r:?}");
    }
}

#[test]
fn mr_emits_cauchy_rows() {
    let dir = TempDir::new().unwrap();
    let o = zetalab(dir.path(), &["mr", "--decay", "1.1", "--M", "64", "--points", "10", "--T", "1e3"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows[0], ["t", "M", "S_M", "S_2M", "gap"]);
    // M = 1, 2, 4, 8, 16, 32 at ten points
    assert_eq!(rows.len(), 1 + 60);
}
