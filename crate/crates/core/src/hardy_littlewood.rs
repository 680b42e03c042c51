//! I(T) = integral of |zeta(1/2 + it)|^2 over [0, T], its increments, and
//! the almost-linear main value V(Y) that defines the ladder.

use std::f64::consts::{E, PI};

use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::lab::{Lab, LabConfig, Weight};
use crate::ladder::LadderContext;
use crate::table::{Cell, Tabular};
use crate::zeta_core::EULER_GAMMA;

/// Exponent of the residual scale T^{1/3 + delta} with delta = 0.1.
pub const COMPARATOR_EXPONENT: f64 = 1.0 / 3.0 + 0.1;

pub fn hl_integral(lab: &Lab, t: f64) -> Result<f64> {
    lab.cumulative(Weight::Plain, t)
}

/// Integral over [a, b], by direct panels for short ranges.
pub fn hl_increment(lab: &Lab, a: f64, b: f64) -> Result<f64> {
    lab.increment(Weight::Plain, a, b)
}

/// V(Y) = (1/pi)(Y ln Y + (c - ln 2pi) Y) + c0
pub fn ladder_main_value(y: f64, ctx: &LadderContext) -> Result<f64> {
    if !(y > E) || !y.is_finite() {
        return Err(LabError::domain("ladder_main_value", format!("Y = {y} must exceed e")));
    }
    Ok(main_value_unchecked(y, ctx))
}

pub(crate) fn main_value_unchecked(y: f64, ctx: &LadderContext) -> f64 {
    (y * y.ln() + (ctx.c - (2.0 * PI).ln()) * y) / PI + ctx.c0
}

pub(crate) fn main_value_derivative(y: f64, ctx: &LadderContext) -> f64 {
    (y.ln() + 1.0 + ctx.c - (2.0 * PI).ln()) / PI
}

/// Classical mean value T ln(T/2pi) + (2c - 1) T.
pub fn classical_main(t: f64) -> f64 {
    t * (t / (2.0 * PI)).ln() + (2.0 * EULER_GAMMA - 1.0) * t
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComparatorRow {
    pub t: f64,
    pub integral: f64,
    pub main: f64,
    pub residual: f64,
    /// |residual| / T^{0.4333..}
    pub normalized: f64,
}

impl Tabular for ComparatorRow {
    fn columns() -> &'static [&'static str] {
        &["T", "integral", "main", "residual", "normalized"]
    }

    fn cells(&self) -> Vec<Cell> {
        vec![
            self.t.into(),
            self.integral.into(),
            self.main.into(),
            self.residual.into(),
            self.normalized.into(),
        ]
    }
}

pub fn comparator(lab: &Lab, t: f64) -> Result<ComparatorRow> {
    let integral = hl_integral(lab, t)?;
    let main = classical_main(t);
    let residual = integral - main;
    Ok(ComparatorRow {
        t,
        integral,
        main,
        residual,
        normalized: residual.abs() / t.powf(COMPARATOR_EXPONENT),
    })
}

/// Relative change of I(T) when the per-gap quadrature order is doubled,
/// measured with a fresh in-memory lab.
pub fn order_doubling_change(lab: &Lab, t: f64) -> Result<f64> {
    let base = hl_integral(lab, t)?;
    let doubled = Lab::new(LabConfig {
        quad_order: 2 * lab.config().quad_order,
        cache_dir: None,
        ..lab.config().clone()
    })?;
    Ok(((hl_integral(&doubled, t)? - base) / base).abs())
}
