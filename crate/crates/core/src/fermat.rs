//! Fermat rationals (x^n + y^n) / z^n in exact arithmetic, and the limit
//! experiments whose targets are linear in such a value.

use std::f64::consts::PI;
use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::hardy_littlewood::hl_increment;
use crate::lab::Lab;
use crate::ladder::{phi1_reverse, LadderContext};
use crate::table::{Cell, Tabular};
use crate::titchmarsh::{t1_sum, t2_sum};
use crate::zeta_core::EULER_GAMMA;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FermatRational {
    x: BigUint,
    y: BigUint,
    z: BigUint,
    n: u32,
}

impl FermatRational {
    pub fn new(x: impl Into<BigUint>, y: impl Into<BigUint>, z: impl Into<BigUint>, n: u32) -> Result<Self> {
        let (x, y, z) = (x.into(), y.into(), z.into());
        if x.is_zero() || y.is_zero() || z.is_zero() {
            return Err(LabError::domain("FermatRational", "x, y, z must be positive integers"));
        }
        if n < 3 {
            return Err(LabError::domain("FermatRational", format!("exponent n = {n} must be at least 3")));
        }
        Ok(Self { x, y, z, n })
    }

    pub fn x(&self) -> &BigUint {
        &self.x
    }

    pub fn y(&self) -> &BigUint {
        &self.y
    }

    pub fn z(&self) -> &BigUint {
        &self.z
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    fn numerator(&self) -> BigUint {
        self.x.pow(self.n) + self.y.pow(self.n)
    }

    /// (x^n + y^n) / z^n in lowest terms.
    pub fn value(&self) -> BigRational {
        BigRational::new(self.numerator().into(), self.z.pow(self.n).into())
    }

    /// x^n + y^n = z^n, decided on integers.
    pub fn is_unit_value(&self) -> bool {
        self.numerator() == self.z.pow(self.n)
    }

    /// Nearest double of the exact value; only used for numerics.
    pub fn to_f64(&self) -> f64 {
        self.value().to_f64().unwrap_or(f64::INFINITY)
    }
}

impl fmt::Display for FermatRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}^{n} + {}^{n}) / {}^{n}", self.x, self.y, self.z, n = self.n)
    }
}

/// Exact value (x^n + y^n) / z^n.
pub fn fermat_value_exact(fr: &FermatRational) -> BigRational {
    fr.value()
}

pub fn is_unit_value(fr: &FermatRational) -> bool {
    fr.is_unit_value()
}

/// The three limit statements: Hardy-Littlewood increment, T1 and T2
/// increments across one reverse ladder step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LimitKind {
    Zeta,
    T1,
    T2,
}

impl LimitKind {
    pub const ALL: [LimitKind; 3] = [LimitKind::Zeta, LimitKind::T1, LimitKind::T2];

    /// Multiplier s with target = s * x.
    pub fn scale(self) -> f64 {
        match self {
            LimitKind::Zeta => 1.0,
            LimitKind::T1 => 1.0 / PI,
            LimitKind::T2 => (1.0 + EULER_GAMMA) / PI,
        }
    }

    pub fn target(self, x: f64) -> f64 {
        self.scale() * x
    }

    pub fn as_str(self) -> &'static str {
        match self {
            LimitKind::Zeta => "zeta",
            LimitKind::T1 => "t1",
            LimitKind::T2 => "t2",
        }
    }

    /// (1/tau) times the increment over [X, [X]^1] with X = x tau / (1 - c).
    pub fn ratio(self, lab: &Lab, x: f64, tau: f64, ctx: &LadderContext) -> Result<f64> {
        let (a, b) = increment_range(lab, x, tau, ctx)?;
        let inc = match self {
            LimitKind::Zeta => hl_increment(lab, a, b)?,
            LimitKind::T1 => t1_sum(lab, b)? - t1_sum(lab, a)?,
            LimitKind::T2 => t2_sum(lab, b)? - t2_sum(lab, a)?,
        };
        Ok(inc / tau)
    }
}

fn increment_range(lab: &Lab, x: f64, tau: f64, ctx: &LadderContext) -> Result<(f64, f64)> {
    if !(x > 0.0) || !(tau > 0.0) || !x.is_finite() || !tau.is_finite() {
        return Err(LabError::domain("increment ratio", format!("need x > 0 and tau > 0, got x = {x}, tau = {tau}")));
    }
    let a = x * tau / (1.0 - ctx.c);
    if a < ctx.t_floor {
        return Err(LabError::domain(
            "increment ratio",
            format!("x tau / (1 - c) = {a} is below t_floor = {}", ctx.t_floor),
        ));
    }
    Ok((a, phi1_reverse(lab, a, ctx)?))
}

/// Target x.
pub fn hl_increment_ratio(lab: &Lab, x: f64, tau: f64, ctx: &LadderContext) -> Result<f64> {
    LimitKind::Zeta.ratio(lab, x, tau, ctx)
}

/// Target x / pi.
pub fn t1_increment_ratio(lab: &Lab, x: f64, tau: f64, ctx: &LadderContext) -> Result<f64> {
    LimitKind::T1.ratio(lab, x, tau, ctx)
}

/// Target (1 + c) x / pi.
pub fn t2_increment_ratio(lab: &Lab, x: f64, tau: f64, ctx: &LadderContext) -> Result<f64> {
    LimitKind::T2.ratio(lab, x, tau, ctx)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub tau: f64,
    pub ratio: f64,
    pub target: f64,
    pub gap: f64,
}

impl ConvergenceRow {
    pub fn new(tau: f64, ratio: f64, target: f64) -> Self {
        Self {
            tau,
            ratio,
            target,
            gap: (ratio - target).abs(),
        }
    }

    pub fn relative_gap(&self) -> f64 {
        self.gap / self.target.abs()
    }
}

impl Tabular for ConvergenceRow {
    fn columns() -> &'static [&'static str] {
        &["tau", "ratio", "target", "gap"]
    }

    fn cells(&self) -> Vec<Cell> {
        vec![self.tau.into(), self.ratio.into(), self.target.into(), self.gap.into()]
    }
}

/// Rows for one kind and one x over ascending tau values.
pub fn convergence_rows(
    lab: &Lab,
    kind: LimitKind,
    x: f64,
    taus: &[f64],
    ctx: &LadderContext,
) -> Result<Vec<ConvergenceRow>> {
    if taus.windows(2).any(|w| !(w[0] <= w[1])) {
        return Err(LabError::domain("convergence rows", "tau values must be ascending"));
    }
    taus.iter()
        .map(|&tau| Ok(ConvergenceRow::new(tau, kind.ratio(lab, x, tau, ctx)?, kind.target(x))))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    /// The limit differs from the forbidden value.
    Holds,
    /// x^n + y^n = z^n, so the limit equals the forbidden value.
    Fails,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub kind: LimitKind,
    pub x: String,
    pub y: String,
    pub z: String,
    pub n: u32,
    /// Exact value as "p/q".
    pub value: String,
    /// Value the limit must avoid: scale * 1.
    pub forbidden: f64,
    pub target: f64,
    pub verdict: Verdict,
    pub rows: Vec<ConvergenceRow>,
}

/// The verdict shared by all three kinds: the limit avoids its forbidden
/// value exactly when the Fermat rational differs from 1.
pub fn exact_verdict(fr: &FermatRational) -> Verdict {
    if fr.is_unit_value() {
        Verdict::Fails
    } else {
        Verdict::Holds
    }
}

/// Exact verdict plus numerical illustration over `taus`.
pub fn condition_report(
    lab: &Lab,
    kind: LimitKind,
    fr: &FermatRational,
    taus: &[f64],
    ctx: &LadderContext,
) -> Result<ConditionReport> {
    let value = fr.value();
    let x = fr.to_f64();
    let rows = if taus.is_empty() {
        Vec::new()
    } else {
        convergence_rows(lab, kind, x, taus, ctx)?
    };
    Ok(ConditionReport {
        kind,
        x: fr.x.to_string(),
        y: fr.y.to_string(),
        z: fr.z.to_string(),
        n: fr.n,
        value: format!("{}/{}", value.numer(), value.denom()),
        forbidden: kind.scale(),
        target: kind.target(x),
        verdict: exact_verdict(fr),
        rows,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub max_xyz: u32,
    pub max_n: u32,
    pub checked: u64,
    /// (x, y, z, n) with x^n + y^n = z^n.
    pub unit_values: Vec<(u32, u32, u32, u32)>,
}

/// Exhaustive integer scan over 1 <= x, y, z <= max_xyz and 3 <= n <= max_n.
pub fn fermat_scan(max_xyz: u32, max_n: u32) -> Result<ScanSummary> {
    if max_xyz == 0 || max_n < 3 {
        return Err(LabError::domain("fermat_scan", "need max_xyz >= 1 and max_n >= 3"));
    }
    let mut unit_values = Vec::new();
    let mut checked = 0u64;
    for n in 3..=max_n {
        let powers: Vec<BigUint> = (0..=max_xyz).map(|k| BigUint::from(k).pow(n)).collect();
        for x in 1..=max_xyz {
            for y in 1..=max_xyz {
                let lhs = &powers[x as usize] + &powers[y as usize];
                for z in 1..=max_xyz {
                    checked += 1;
                    if lhs == powers[z as usize] {
                        unit_values.push((x, y, z, n));
                    }
                }
            }
        }
    }
    Ok(ScanSummary {
        max_xyz,
        max_n,
        checked,
        unit_values,
    })
}

/// Parses "p/q" or a decimal into an exact positive rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || LabError::domain("parse_rational", format!("cannot parse {s:?} as a positive rational"));
    let s = s.trim();
    let value = if let Some((p, q)) = s.split_once('/') {
        let p: num_bigint::BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: num_bigint::BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        BigRational::new(p, q)
    } else {
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if int.is_empty() && frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits: num_bigint::BigInt = format!("{}{}", if int.is_empty() { "0" } else { int }, frac)
            .parse()
            .map_err(|_| bad())?;
        let denom = num_bigint::BigInt::from(10u32).pow(frac.len() as u32);
        BigRational::new(digits, denom)
    };
    if value <= BigRational::zero() {
        return Err(bad());
    }
    Ok(value)
}

/// [`parse_rational`] rounded to the nearest double.
pub fn parse_positive_real(s: &str) -> Result<f64> {
    let value = parse_rational(s)?;
    value
        .to_f64()
        .filter(|v| v.is_finite() && *v > 0.0)
        .ok_or_else(|| LabError::domain("parse_positive_real", format!("{s:?} is not representable as a positive double")))
}
