use std::fs::OpenOptions;
use std::io::Write;
use std::path::Path;

use zetalab::cache::{write_gram_csv, GRAM_FILE, HL_FILE};
use zetalab::hardy_littlewood::hl_integral;
use zetalab::{Lab, LabConfig, Strategy, ZetaEvalConfig};

fn lab_at(dir: &Path) -> Lab {
    Lab::new(LabConfig {
        cache_dir: Some(dir.to_path_buf()),
        ..LabConfig::default()
    })
    .unwrap()
}

fn snapshot(lab: &Lab, n: usize) -> Vec<(u64, u64, u64)> {
    lab.with_gram(n, |g| g[..n].iter().map(|r| (r.nu, r.t.to_bits(), r.z.to_bits())).collect())
        .unwrap()
}

#[test]
fn reload_is_bit_identical() {
    let dir = tempfile::tempdir().unwrap();
    let (before, integral) = {
        let lab = lab_at(dir.path());
        (snapshot(&lab, 3000), hl_integral(&lab, 2500.0).unwrap())
    };
    let lab = lab_at(dir.path());
    assert!(lab.gram_len() >= 3000, "records were not persisted");
    assert_eq!(snapshot(&lab, 3000), before);
    assert_eq!(hl_integral(&lab, 2500.0).unwrap().to_bits(), integral.to_bits());
}

#[test]
fn deleting_the_cache_reproduces_values() {
    let dir = tempfile::tempdir().unwrap();
    let first = {
        let lab = lab_at(dir.path());
        (snapshot(&lab, 1000), hl_integral(&lab, 900.0).unwrap())
    };
    std::fs::remove_file(dir.path().join(GRAM_FILE)).unwrap();
    std::fs::remove_file(dir.path().join(HL_FILE)).unwrap();
    let lab = lab_at(dir.path());
    assert_eq!(lab.gram_len(), 0);
    assert_eq!(snapshot(&lab, 1000), first.0);
    assert_eq!(hl_integral(&lab, 900.0).unwrap().to_bits(), first.1.to_bits());
}

#[test]
fn torn_tail_is_dropped() {
    let dir = tempfile::tempdir().unwrap();
    let before = snapshot(&lab_at(dir.path()), 200);
    for name in [GRAM_FILE, HL_FILE] {
        let mut f = OpenOptions::new().append(true).open(dir.path().join(name)).unwrap();
        f.write_all(&[1, 2, 3, 4, 5]).unwrap();
    }
    let lab = lab_at(dir.path());
    assert_eq!(lab.gram_len(), 200);
    assert_eq!(snapshot(&lab, 200), before);
    // extension still appends aligned records
    let more = snapshot(&lab, 400);
    drop(lab);
    assert_eq!(snapshot(&lab_at(dir.path()), 400), more);
}

#[test]
fn changed_settings_rebuild_the_cache() {
    let dir = tempfile::tempdir().unwrap();
    lab_at(dir.path()).ensure_gram_len(100).unwrap();
    let other = Lab::new(LabConfig {
        zeta: ZetaEvalConfig {
            correction_order: 6,
            ..ZetaEvalConfig::default()
        },
        cache_dir: Some(dir.path().to_path_buf()),
        ..LabConfig::default()
    })
    .unwrap();
    assert_eq!(other.gram_len(), 0);
}

#[test]
fn bad_magic_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join(GRAM_FILE), b"not a zetalab cache file at all").unwrap();
    let err = Lab::new(LabConfig {
        cache_dir: Some(dir.path().to_path_buf()),
        ..LabConfig::default()
    })
    .unwrap_err();
    assert!(err.to_string().contains("magic"), "{err}");
}

#[test]
fn sequential_and_parallel_agree_bitwise() {
    let run = |strategy| {
        let lab = Lab::new(LabConfig {
            strategy,
            ..LabConfig::default()
        })
        .unwrap();
        (snapshot(&lab, 2000), hl_integral(&lab, 1500.0).unwrap().to_bits())
    };
    assert_eq!(run(Strategy::Sequential), run(Strategy::Parallel));
}

#[test]
fn csv_export() {
    let lab = Lab::in_memory();
    let mut out = Vec::new();
    lab.with_gram(3, |g| write_gram_csv(&mut out, &g[..3])).unwrap().unwrap();
    let text = String::from_utf8(out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("nu,t,z"));
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first[0], "0");
    assert_eq!(first[1].parse::<f64>().unwrap(), lab.gram_record(0).unwrap().t);
    assert_eq!(text.lines().count(), 4);
}
