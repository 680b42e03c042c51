//! Jacob's ladder phi1, its forward iterations and reverse iterations
//! [T]^r = phi1^{-r}(T).
//!
//! Two backends:
//! - `Smooth` solves V(phi1(T)) = I(T)/pi for the main value V.
//! - `Cumulative` integrates phi1'(t) = Z(t)^2 / ln t from `t_floor`,
//!   anchored to the smooth value there.

use std::f64::consts::E;

use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::hardy_littlewood::{hl_integral, main_value_derivative, main_value_unchecked};
use crate::lab::{solve_monotone, Lab, Weight};
use crate::table::{Cell, Tabular};
use crate::zeta_core::EULER_GAMMA;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Smooth,
    Cumulative,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LadderContext {
    /// Euler's constant.
    pub c: f64,
    pub c0: f64,
    pub backend: Backend,
    pub t_floor: f64,
    pub tol_rel: f64,
}

impl Default for LadderContext {
    fn default() -> Self {
        Self {
            c: EULER_GAMMA,
            c0: 0.0,
            backend: Backend::Smooth,
            t_floor: 100.0,
            tol_rel: 1e-10,
        }
    }
}

impl LadderContext {
    pub fn with_backend(backend: Backend) -> Self {
        Self {
            backend,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.c > 0.577215 && self.c < 0.577216) {
            return Err(LabError::Config(format!("c = {} is not Euler's constant", self.c)));
        }
        if !(self.t_floor >= 10.0 * E) {
            return Err(LabError::Config(format!("t_floor = {} is below 10e", self.t_floor)));
        }
        if !(self.tol_rel > 0.0 && self.tol_rel < 1e-3) {
            return Err(LabError::Config(format!("tol_rel = {} out of range", self.tol_rel)));
        }
        if !self.c0.is_finite() {
            return Err(LabError::Config("c0 must be finite".into()));
        }
        Ok(())
    }

    fn check(&self, op: &'static str, t: f64) -> Result<()> {
        self.validate()?;
        if !(t >= self.t_floor) || !t.is_finite() {
            return Err(LabError::domain(op, format!("T = {t} is below t_floor = {}", self.t_floor)));
        }
        Ok(())
    }
}

fn phi1_smooth(lab: &Lab, t: f64, ctx: &LadderContext) -> Result<f64> {
    let target = hl_integral(lab, t)? / std::f64::consts::PI;
    if main_value_unchecked(E, ctx) > target {
        return Err(LabError::domain("phi1", format!("c0 = {} puts V(e) above I(T)/pi", ctx.c0)));
    }
    solve_monotone(
        "phi1",
        ctx.tol_rel * 1e-3,
        E,
        t,
        |y| main_value_unchecked(y, ctx) - target,
        |y| main_value_derivative(y, ctx),
    )
}

/// phi1(t_floor) - J(t_floor), with J the cumulative Z^2/ln t table.
pub(crate) fn cumulative_offset(lab: &Lab, ctx: &LadderContext) -> Result<f64> {
    Ok(phi1_smooth(lab, ctx.t_floor, ctx)? - lab.cumulative(Weight::InvLog, ctx.t_floor)?)
}

pub fn phi1(lab: &Lab, t: f64, ctx: &LadderContext) -> Result<f64> {
    ctx.check("phi1", t)?;
    match ctx.backend {
        Backend::Smooth => phi1_smooth(lab, t, ctx),
        Backend::Cumulative => Ok(cumulative_offset(lab, ctx)? + lab.cumulative(Weight::InvLog, t)?),
    }
}

/// [T]^1 = phi1^{-1}(T), the unique Y > T with phi1(Y) = T.
pub fn phi1_reverse(lab: &Lab, t: f64, ctx: &LadderContext) -> Result<f64> {
    ctx.check("phi1_reverse", t)?;
    let y = match ctx.backend {
        Backend::Smooth => {
            let target = std::f64::consts::PI * main_value_unchecked(t, ctx);
            lab.inverse_cumulative(Weight::Plain, target)?
        }
        Backend::Cumulative => {
            let target = t - cumulative_offset(lab, ctx)?;
            lab.inverse_cumulative(Weight::InvLog, target)?
        }
    };
    if !(y > t) {
        return Err(LabError::convergence(
            "phi1_reverse",
            0,
            format!("inverse {y} does not exceed T = {t}"),
        ));
    }
    Ok(y)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Reverse,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationChain {
    pub base: f64,
    pub direction: Direction,
    /// points[0] = base; points[r] = phi1^r(base) or [base]^r.
    pub points: Vec<f64>,
    /// A forward chain stopped early because the next iterate fell below
    /// `t_floor`.
    pub truncated: bool,
}

impl IterationChain {
    /// Consecutive differences |points[r] - points[r-1]|.
    pub fn gaps(&self) -> Vec<f64> {
        self.points.windows(2).map(|w| (w[1] - w[0]).abs()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainRow {
    pub r: usize,
    pub t: f64,
}

impl Tabular for ChainRow {
    fn columns() -> &'static [&'static str] {
        &["r", "T_r"]
    }

    fn cells(&self) -> Vec<Cell> {
        vec![self.r.into(), self.t.into()]
    }
}

impl IterationChain {
    pub fn rows(&self) -> Vec<ChainRow> {
        self.points
            .iter()
            .enumerate()
            .map(|(r, &t)| ChainRow { r, t })
            .collect()
    }
}

pub fn iterate(lab: &Lab, t: f64, r: usize, direction: Direction, ctx: &LadderContext) -> Result<IterationChain> {
    ctx.check("iterate", t)?;
    let mut points = vec![t];
    let mut truncated = false;
    for _ in 0..r {
        let last = *points.last().unwrap();
        let next = match direction {
            Direction::Reverse => phi1_reverse(lab, last, ctx)?,
            Direction::Forward => {
                let next = phi1(lab, last, ctx)?;
                if next < ctx.t_floor {
                    truncated = true;
                    break;
                }
                next
            }
        };
        points.push(next);
    }
    Ok(IterationChain {
        base: t,
        direction,
        points,
        truncated,
    })
}

/// phi1 applied `k` times.
pub fn phi1_pow(lab: &Lab, mut t: f64, k: usize, ctx: &LadderContext) -> Result<f64> {
    for _ in 0..k {
        t = phi1(lab, t, ctx)?;
    }
    Ok(t)
}

/// Normalized increment ([T]^1 - T) ln T / ((1 - c) T); tends to 1.
pub fn increment_law(lab: &Lab, t: f64, ctx: &LadderContext) -> Result<f64> {
    let y = phi1_reverse(lab, t, ctx)?;
    Ok((y - t) * t.ln() / ((1.0 - ctx.c) * t))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn context_validation() {
        assert!(LadderContext::default().validate().is_ok());
        let bad = LadderContext { t_floor: 20.0, ..Default::default() };
        assert!(bad.validate().is_err());
        let lab = Lab::in_memory();
        assert!(phi1(&lab, 50.0, &LadderContext::default()).unwrap_err().is_domain());
    }

    #[test]
    fn backends_agree_at_floor() {
        let lab = Lab::in_memory();
        let s = phi1(&lab, 100.0, &LadderContext::with_backend(Backend::Smooth)).unwrap();
        let c = phi1(&lab, 100.0, &LadderContext::with_backend(Backend::Cumulative)).unwrap();
        assert!((s - c).abs() < 1e-9 * s);
        assert!(s < 100.0);
    }

    #[test]
    fn reverse_then_forward() {
        let lab = Lab::in_memory();
        for backend in [Backend::Smooth, Backend::Cumulative] {
            let ctx = LadderContext::with_backend(backend);
            let y = phi1_reverse(&lab, 500.0, &ctx).unwrap();
            assert!(y > 500.0);
            assert!((phi1(&lab, y, &ctx).unwrap() - 500.0).abs() < 1e-8 * 500.0, "{backend:?}");
        }
    }

    #[test]
    fn zero_step_chain() {
        let lab = Lab::in_memory();
        let chain = iterate(&lab, 300.0, 0, Direction::Reverse, &LadderContext::default()).unwrap();
        assert_eq!(chain.points, vec![300.0]);
    }
}
