mod common;

use common::*;
use zetalab::table::{Table, Tabular};
use zetalab::titchmarsh::*;

#[test]
fn single_term_sums_in_first_gap() {
    let lab = shared_lab();
    let g0 = lab.gram_record(0).unwrap();
    let g1 = lab.gram_record(1).unwrap();
    for x in [g0.t, 20.0, g1.t - 1e-9] {
        assert_eq!(t1_sum(lab, x).unwrap(), g0.z);
        assert_eq!(t2_sum(lab, x).unwrap(), -g0.z * g1.z);
    }
}

#[test]
fn step_semantics() {
    let lab = shared_lab();
    for nu in [5usize, 500, 5000] {
        let a = lab.gram_record(nu).unwrap().t;
        let b = lab.gram_record(nu + 1).unwrap().t;
        let inner = b - (b - a) * 1e-9;
        assert_eq!(t1_sum(lab, a).unwrap(), t1_sum(lab, inner).unwrap());
        assert_eq!(t2_sum(lab, a).unwrap(), t2_sum(lab, inner).unwrap());
        assert_ne!(t1_sum(lab, a).unwrap(), t1_sum(lab, b).unwrap());
    }
}

#[test]
fn prefix_additivity() {
    let lab = shared_lab();
    let (m, n) = (300usize, 2_000usize);
    let tm = lab.gram_record(m).unwrap().t;
    let tn = lab.gram_record(n).unwrap().t;
    let middle: f64 = lab.with_gram(n + 1, |g| g[m + 1..=n].iter().map(|r| r.zeta()).sum()).unwrap();
    let lhs = t1_sum(lab, tn).unwrap();
    let rhs = t1_sum(lab, tm).unwrap() + middle;
    assert!((lhs - rhs).abs() < 1e-9 * lhs.abs());
}

#[test]
fn ratios_to_gram_count_at_1e4() {
    let lab = shared_lab();
    let p = prefix(lab, 1e4).unwrap();
    let n = p.n as f64;
    let r1 = p.t1 / (2.0 * n);
    let r2 = p.t2 / (2.0 * (1.0 + EULER) * n);
    assert!((0.8..=1.2).contains(&r1), "{r1}");
    assert!((0.7..=1.3).contains(&r2), "{r2}");
}

#[test]
fn product_sum_is_negative() {
    let lab = shared_lab();
    // sum Z(t_nu) Z(t_{nu+1}) = -T2
    assert!(t2_sum(lab, 1e4).unwrap() > 0.0);
}

#[test]
fn main_term_ratio_is_one_plus_c() {
    for x in [10.0, 1e3, 12345.6, 1e7] {
        let r = t2_main_term(x).unwrap() / t1_main_term(x).unwrap();
        assert!((r - (1.0 + EULER)).abs() < 1e-14);
    }
}

#[test]
fn residual_constants_over_a_decade() {
    // |sum - main| / scale over X in [1e4, 1e5]
    let lab = shared_lab();
    let xs: Vec<f64> = (0..=10).map(|i| 1e4 * 10f64.powf(i as f64 / 10.0)).collect();
    for r in asymptotic_report(lab, &xs).unwrap() {
        assert!(r.normalized <= 5.0, "{r:?}");
    }
}

#[test]
fn relative_gaps_shrink_over_decades() {
    let lab = shared_lab();
    let rows = asymptotic_report(lab, &[1e3, 1e4, 1e5]).unwrap();
    assert_eq!(rows.len(), 6);
    for kind in [SumKind::T1, SumKind::T2] {
        let gaps: Vec<f64> = rows.iter().filter(|r| r.kind == kind).map(|r| r.relative_gap()).collect();
        assert!(gaps[0] > gaps[1] && gaps[1] > gaps[2], "{kind:?}: {gaps:?}");
    }
}

#[test]
fn report_schema_and_singleton() {
    let lab = shared_lab();
    let rows = asymptotic_report(lab, &[500.0]).unwrap();
    assert_eq!(rows.len(), 2);
    let csv = Table::from_rows(&rows).to_csv_string();
    assert!(csv.starts_with("X,N,kind,sum,main,residual,normalized\n"));
    assert_eq!(AsymptoticRow::columns().len(), 7);
    assert!(asymptotic_report(lab, &[1e3, 500.0]).unwrap_err().is_domain());
}
