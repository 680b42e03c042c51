//! Titchmarsh sums over Gram points as right-continuous step functions.
//!
//! T1(X) = sum_{t_nu <= X} (-1)^nu Z(t_nu) and
//! T2(X) = -sum_{t_nu <= X} Z(t_nu) Z(t_{nu+1}). A T2 term is included as
//! soon as t_nu <= X, whatever the position of t_{nu+1}.

use std::f64::consts::{E, PI};

use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::lab::Lab;
use crate::sum::compensated_sum;
use crate::table::{Cell, Tabular};
use crate::zeta_core::EULER_GAMMA;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TitchmarshPrefix {
    pub x: f64,
    /// Index of the last Gram point at or below `x`.
    pub n: u64,
    pub t1: f64,
    pub t2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SumKind {
    T1,
    T2,
}

impl SumKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SumKind::T1 => "t1",
            SumKind::T2 => "t2",
        }
    }

    /// Error scale used to normalize residuals: X^{3/4} ln X for T1 and
    /// X^{11/12} ln^{23/12} X for T2.
    pub fn error_scale(self, x: f64) -> f64 {
        let l = x.ln();
        match self {
            SumKind::T1 => x.powf(0.75) * l,
            SumKind::T2 => x.powf(11.0 / 12.0) * l.powf(23.0 / 12.0),
        }
    }

    pub fn main_term(self, x: f64) -> Result<f64> {
        match self {
            SumKind::T1 => t1_main_term(x),
            SumKind::T2 => t2_main_term(x),
        }
    }

    pub fn sum(self, lab: &Lab, x: f64) -> Result<f64> {
        match self {
            SumKind::T1 => t1_sum(lab, x),
            SumKind::T2 => t2_sum(lab, x),
        }
    }
}

pub fn prefix(lab: &Lab, x: f64) -> Result<TitchmarshPrefix> {
    let n = lab.gram_index(x)? as usize;
    lab.with_gram(n + 2, |g| TitchmarshPrefix {
        x,
        n: n as u64,
        t1: compensated_sum(g[..=n].iter().map(|r| r.zeta())),
        t2: -compensated_sum(g[..=n].iter().zip(&g[1..]).map(|(a, b)| a.z * b.z)),
    })
}

pub fn t1_sum(lab: &Lab, x: f64) -> Result<f64> {
    let n = lab.gram_index(x)? as usize;
    lab.with_gram(n + 1, |g| compensated_sum(g[..=n].iter().map(|r| r.zeta())))
}

pub fn t2_sum(lab: &Lab, x: f64) -> Result<f64> {
    let n = lab.gram_index(x)? as usize;
    lab.with_gram(n + 2, |g| {
        -compensated_sum(g[..=n].iter().zip(&g[1..]).map(|(a, b)| a.z * b.z))
    })
}

fn check_main_domain(x: f64) -> Result<()> {
    if !(x > E) || !x.is_finite() {
        return Err(LabError::domain("main term", format!("X = {x} must exceed e")));
    }
    Ok(())
}

/// (1/pi) X ln X - (1/pi)(1 + ln 2pi) X
pub fn t1_main_term(x: f64) -> Result<f64> {
    check_main_domain(x)?;
    Ok((x * x.ln() - (1.0 + (2.0 * PI).ln()) * x) / PI)
}

/// (1 + c) times the T1 main term.
pub fn t2_main_term(x: f64) -> Result<f64> {
    Ok((1.0 + EULER_GAMMA) * t1_main_term(x)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticRow {
    pub x: f64,
    pub n: u64,
    pub kind: SumKind,
    pub sum: f64,
    pub main: f64,
    /// sum - main
    pub residual: f64,
    /// |residual| divided by the kind's error scale.
    pub normalized: f64,
}

impl AsymptoticRow {
    /// |sum - main| / main
    pub fn relative_gap(&self) -> f64 {
        (self.residual / self.main).abs()
    }
}

impl Tabular for AsymptoticRow {
    fn columns() -> &'static [&'static str] {
        &["X", "N", "kind", "sum", "main", "residual", "normalized"]
    }

    fn cells(&self) -> Vec<Cell> {
        vec![
            self.x.into(),
            self.n.into(),
            self.kind.as_str().into(),
            self.sum.into(),
            self.main.into(),
            self.residual.into(),
            self.normalized.into(),
        ]
    }
}

/// One row per X and per sum kind, X-major.
pub fn asymptotic_report(lab: &Lab, xs: &[f64]) -> Result<Vec<AsymptoticRow>> {
    if xs.windows(2).any(|w| !(w[0] <= w[1])) {
        return Err(LabError::domain("asymptotic_report", "X values must be ascending"));
    }
    let mut rows = Vec::with_capacity(2 * xs.len());
    for &x in xs {
        let p = prefix(lab, x)?;
        for (kind, sum) in [(SumKind::T1, p.t1), (SumKind::T2, p.t2)] {
            let main = kind.main_term(x)?;
            let residual = sum - main;
            rows.push(AsymptoticRow {
                x,
                n: p.n,
                kind,
                sum,
                main,
                residual,
                normalized: residual.abs() / kind.error_scale(x),
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn main_terms_vanish_at_two_pi_e() {
        let x = 2.0 * PI * E;
        assert!(t1_main_term(x).unwrap().abs() < 1e-12);
        assert!(t2_main_term(x).unwrap().abs() < 1e-12);
        assert!(t1_main_term(2.0).unwrap_err().is_domain());
    }

    #[test]
    fn single_term_sums() {
        let lab = Lab::in_memory();
        let g0 = lab.gram_record(0).unwrap();
        let g1 = lab.gram_record(1).unwrap();
        assert_eq!(t1_sum(&lab, 20.0).unwrap(), g0.z);
        assert_eq!(t2_sum(&lab, 20.0).unwrap(), -g0.z * g1.z);
        assert!(t1_sum(&lab, 15.0).unwrap_err().is_domain());
    }
}
