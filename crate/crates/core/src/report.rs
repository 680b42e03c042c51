//! Bundled evidence tables with pass flags, one suite per topic.

use std::f64::consts::PI;
use std::io::{self, Write};
use std::str::FromStr;

use serde_json::{Map, Value};

use crate::error::{LabError, Result};
use crate::fermat::{convergence_rows, exact_verdict, fermat_scan, FermatRational, LimitKind, Verdict};
use crate::gram::GRAM_RESIDUAL_TOL;
use crate::hardy_littlewood::comparator;
use crate::lab::Lab;
use crate::ladder::{phi1, phi1_reverse, Backend, LadderContext};
use crate::ortho::{cauchy_table, power_law_coeffs, sample_points, GeneratedSystem, GenerationSpec, Normalization};
use crate::table::{Cell, Format, Table};
use crate::titchmarsh::{asymptotic_report, SumKind};
use crate::zeta_core::theta_unchecked;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Gram,
    Asymptotics,
    Ladder,
    Limits,
    Fermat,
    Ortho,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 7] = ["gram", "asymptotics", "ladder", "limits", "fermat", "ortho", "all"];
}

impl FromStr for Suite {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "gram" => Suite::Gram,
            "asymptotics" => Suite::Asymptotics,
            "ladder" => Suite::Ladder,
            "limits" => Suite::Limits,
            "fermat" => Suite::Fermat,
            "ortho" => Suite::Ortho,
            "all" => Suite::All,
            _ => {
                return Err(LabError::Config(format!(
                    "unknown suite {s:?}; expected one of {}",
                    Suite::NAMES.join(", ")
                )))
            }
        })
    }
}

/// Heights (X, T or tau) used by the decade-trend suites.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportOptions {
    pub heights: Vec<f64>,
    pub ladder: LadderContext,
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self {
            heights: vec![1e3, 1e4, 1e5],
            ladder: LadderContext::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Section {
    pub name: String,
    pub table: Table,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub sections: Vec<Section>,
}

impl Report {
    /// True when every `pass` cell of every section is true.
    pub fn passed(&self) -> bool {
        self.sections.iter().all(|s| {
            match s.table.columns.iter().position(|c| c == "pass") {
                Some(i) => s.table.rows.iter().all(|r| r[i] == Cell::Bool(true)),
                None => true,
            }
        })
    }

    /// CSV: each section as "# name" followed by its table and a blank line.
    /// JSON: an object keyed by section name.
    pub fn write<W: Write>(&self, format: Format, mut out: W) -> io::Result<()> {
        match format {
            Format::Csv => {
                for (i, s) in self.sections.iter().enumerate() {
                    if i > 0 {
                        writeln!(out)?;
                    }
                    writeln!(out, "# {}", s.name)?;
                    s.table.write_csv(&mut out)?;
                }
                Ok(())
            }
            Format::Json => {
                let mut obj: Map<String, Value> =
                    self.sections.iter().map(|s| (s.name.clone(), s.table.to_json())).collect();
                obj.insert("passed".into(), Value::Bool(self.passed()));
                serde_json::to_writer_pretty(&mut out, &Value::Object(obj))?;
                writeln!(out)
            }
        }
    }
}

pub fn run(lab: &Lab, suite: Suite, opts: &ReportOptions) -> Result<Report> {
    if opts.heights.is_empty() || opts.heights.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(LabError::domain("report", "heights must be non-empty and strictly ascending"));
    }
    let mut sections = Vec::new();
    let all = suite == Suite::All;
    if all || suite == Suite::Gram {
        sections.push(gram_section(lab)?);
    }
    if all || suite == Suite::Asymptotics {
        sections.extend(asymptotic_sections(lab, opts)?);
    }
    if all || suite == Suite::Ladder {
        sections.push(ladder_section(lab, opts)?);
    }
    if all || suite == Suite::Limits {
        sections.push(limit_section(lab, opts)?);
    }
    if all || suite == Suite::Fermat {
        sections.push(fermat_section()?);
    }
    if all || suite == Suite::Ortho {
        sections.extend(ortho_sections(lab, opts)?);
    }
    Ok(Report { sections })
}

fn section(name: &str, table: Table) -> Section {
    Section {
        name: name.into(),
        table,
    }
}

fn gram_section(lab: &Lab) -> Result<Section> {
    let mut t = Table::new(&["nu", "t", "residual", "pass"]);
    for nu in [0usize, 1, 10, 1_000, 10_000, 100_000] {
        let r = lab.gram_record(nu)?;
        let residual = (theta_unchecked(r.t) - PI * nu as f64).abs();
        t.push(vec![nu.into(), r.t.into(), residual.into(), (residual <= GRAM_RESIDUAL_TOL).into()]);
    }
    Ok(section("gram", t))
}

/// Strictly decreasing sequence.
fn decreasing(values: &[f64]) -> Vec<bool> {
    values
        .iter()
        .enumerate()
        .map(|(i, &v)| i == 0 || v < values[i - 1])
        .collect()
}

fn asymptotic_sections(lab: &Lab, opts: &ReportOptions) -> Result<Vec<Section>> {
    let rows = asymptotic_report(lab, &opts.heights)?;
    let mut t = Table::new(&["X", "N", "kind", "sum", "main", "residual", "normalized", "relative_gap", "pass"]);
    for kind in [SumKind::T1, SumKind::T2] {
        let of_kind: Vec<_> = rows.iter().filter(|r| r.kind == kind).collect();
        let gaps: Vec<f64> = of_kind.iter().map(|r| r.relative_gap()).collect();
        for (r, dec) in of_kind.iter().zip(decreasing(&gaps)) {
            t.push(vec![
                r.x.into(),
                r.n.into(),
                kind.as_str().into(),
                r.sum.into(),
                r.main.into(),
                r.residual.into(),
                r.normalized.into(),
                r.relative_gap().into(),
                (r.normalized <= 5.0 && dec).into(),
            ]);
        }
    }
    let mut hl = Table::new(&["T", "integral", "main", "residual", "normalized", "pass"]);
    let mut peak: Option<f64> = None;
    for &x in &opts.heights {
        let c = comparator(lab, x)?;
        // bounded: never more than double the largest earlier value
        let ok = peak.is_none_or(|p| c.normalized <= 2.0 * p);
        peak = Some(peak.map_or(c.normalized, |p| p.max(c.normalized)));
        hl.push(vec![
            c.t.into(),
            c.integral.into(),
            c.main.into(),
            c.residual.into(),
            c.normalized.into(),
            ok.into(),
        ]);
    }
    Ok(vec![section("titchmarsh", t), section("hardy_littlewood", hl)])
}

fn ladder_section(lab: &Lab, opts: &ReportOptions) -> Result<Section> {
    let ctx = LadderContext {
        backend: Backend::Smooth,
        ..opts.ladder
    };
    let mut t = Table::new(&["T", "reverse", "inverse_error", "increment_law", "pass"]);
    let mut prev_gap = f64::INFINITY;
    for &x in &opts.heights {
        let y = phi1_reverse(lab, x, &ctx)?;
        let err = (phi1(lab, y, &ctx)? - x).abs() / x;
        let law = (y - x) * x.ln() / ((1.0 - ctx.c) * x);
        let gap = (law - 1.0).abs();
        let ok = err <= 1e-8 && gap < prev_gap && gap <= 0.25;
        prev_gap = gap;
        t.push(vec![x.into(), y.into(), err.into(), law.into(), ok.into()]);
    }
    Ok(section("ladder", t))
}

fn limit_section(lab: &Lab, opts: &ReportOptions) -> Result<Section> {
    let mut t = Table::new(&["kind", "x", "tau", "ratio", "target", "gap", "pass"]);
    for kind in LimitKind::ALL {
        for x in [1.0, 2.0] {
            let rows = convergence_rows(lab, kind, x, &opts.heights, &opts.ladder)?;
            let first_gap = rows[0].gap;
            for (i, r) in rows.iter().enumerate() {
                let ok = i == 0 || (r.gap < first_gap && r.relative_gap() <= 0.2);
                t.push(vec![
                    kind.as_str().into(),
                    x.into(),
                    r.tau.into(),
                    r.ratio.into(),
                    r.target.into(),
                    r.gap.into(),
                    ok.into(),
                ]);
            }
        }
    }
    Ok(section("limits", t))
}

fn fermat_section() -> Result<Section> {
    let (max_xyz, max_n) = (20, 7);
    let scan = fermat_scan(max_xyz, max_n)?;
    let mut holds = 0u64;
    for n in 3..=max_n {
        for x in 1..=max_xyz {
            for y in 1..=max_xyz {
                for z in 1..=max_xyz {
                    let fr = FermatRational::new(x, y, z, n)?;
                    holds += u64::from(exact_verdict(&fr) == Verdict::Holds);
                }
            }
        }
    }
    let mut t = Table::new(&["max_xyz", "max_n", "checked", "unit_values", "verdicts_hold", "pass"]);
    t.push(vec![
        (max_xyz as u64).into(),
        (max_n as u64).into(),
        scan.checked.into(),
        scan.unit_values.len().into(),
        holds.into(),
        (scan.unit_values.is_empty() && holds == scan.checked).into(),
    ]);
    Ok(section("fermat", t))
}

fn ortho_sections(lab: &Lab, opts: &ReportOptions) -> Result<Vec<Section>> {
    let spec = GenerationSpec::new(vec![1], 1e4, 6);
    let sys = GeneratedSystem::new(lab, spec, &opts.ladder)?;
    let u_lo = sys.u_map(1, -1.0)?;
    let u_hi = sys.u_map(1, 1.0)?;
    let g = sys.gram_matrix(512, Normalization::Empirical)?;
    let diag = g.diagonal();
    let diag_dev = diag.iter().map(|d| (d - 1.0).abs()).fold(0.0, f64::max);
    let mut t = Table::new(&[
        "T", "p", "n_max", "quad_order", "max_off_diagonal", "max_diagonal_deviation", "doubling_change",
        "endpoint_error", "pass",
    ]);
    let endpoint = (u_lo + 1.0).abs().max((u_hi - 1.0).abs());
    t.push(vec![
        1e4.into(),
        1u64.into(),
        6u64.into(),
        512u64.into(),
        g.max_off_diagonal().into(),
        diag_dev.into(),
        g.doubling_change.into(),
        endpoint.into(),
        (g.max_off_diagonal() <= 1e-3 && diag_dev <= 1e-3 && g.doubling_change <= 1e-4 && endpoint <= 1e-6).into(),
    ]);

    let coeffs = power_law_coeffs(1.1, 65);
    let ms = [8, 16, 32];
    let rows = cauchy_table(&sys, &coeffs, &sample_points(10), &ms, Normalization::Empirical)?;
    let mut mr = Table::new(&["t", "M", "S_M", "S_2M", "gap", "pass"]);
    for chunk in rows.chunks(ms.len()) {
        let gaps: Vec<f64> = chunk.iter().map(|r| r.gap).collect();
        for (r, ok) in chunk.iter().zip(decreasing(&gaps)) {
            mr.push(vec![r.t.into(), r.m.into(), r.s_m.into(), r.s_2m.into(), r.gap.into(), ok.into()]);
        }
    }
    Ok(vec![section("orthogonality", t), section("menshov_rademacher", mr)])
}
