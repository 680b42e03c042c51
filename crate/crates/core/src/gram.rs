//! Gram points t_nu with theta(t_nu) = pi * nu, indexed from nu = 0.

use std::f64::consts::{E, PI};

use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::lab::Lab;
use crate::zeta_core::{theta_derivative_unchecked, theta_unchecked, ZetaEvalConfig};

/// Residual |theta(t_nu) - pi nu| every Gram point must meet.
pub const GRAM_RESIDUAL_TOL: f64 = 1e-9;
const MAX_NEWTON_ITERATIONS: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GramPoint {
    pub nu: u64,
    pub t: f64,
}

/// A cached Gram point together with Z(t_nu).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GramRecord {
    pub nu: u64,
    pub t: f64,
    pub z: f64,
}

impl GramRecord {
    pub fn point(&self) -> GramPoint {
        GramPoint {
            nu: self.nu,
            t: self.t,
        }
    }

    /// zeta(1/2 + i t_nu) = (-1)^nu Z(t_nu), a real number.
    pub fn zeta(&self) -> f64 {
        if self.nu.is_multiple_of(2) {
            self.z
        } else {
            -self.z
        }
    }
}

/// Principal branch of Lambert W on [0, inf).
fn lambert_w(y: f64) -> f64 {
    let mut w = (1.0 + y).ln();
    for _ in 0..64 {
        let ew = w.exp();
        let f = w * ew - y;
        let step = f / (ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0));
        w -= step;
        if step.abs() <= 1e-15 * w.abs().max(1e-300) {
            break;
        }
    }
    w
}

/// Starting point from inverting pi nu = (t/2) ln(t/2pi) - t/2 - pi/8:
/// with x = t/(2 pi e) this is x ln x = (nu + 1/8)/e.
pub(crate) fn initial_guess(nu: u64) -> f64 {
    let m = nu as f64 + 0.125;
    2.0 * PI * m / lambert_w(m / E)
}

/// Solves theta(t) = pi nu by Newton iteration.
pub fn gram_point(nu: u64, cfg: &ZetaEvalConfig) -> Result<GramPoint> {
    let target = PI * nu as f64;
    let mut t = initial_guess(nu).max(cfg.t_min);
    for _ in 0..MAX_NEWTON_ITERATIONS {
        let f = theta_unchecked(t) - target;
        let step = f / theta_derivative_unchecked(t);
        t -= step;
        if step.abs() <= 4.0 * f64::EPSILON * t {
            break;
        }
    }
    let residual = (theta_unchecked(t) - target).abs();
    if !(residual <= GRAM_RESIDUAL_TOL) || t < cfg.t_min {
        return Err(LabError::convergence(
            "gram_point",
            MAX_NEWTON_ITERATIONS,
            format!("nu = {nu}: residual {residual:e} at t = {t}"),
        ));
    }
    Ok(GramPoint { nu, t })
}

/// Main terms of 2N in terms of t_N: (1/pi) t ln t - (1/pi)(1 + ln 2pi) t.
pub fn count_main_terms(t: f64) -> f64 {
    (t * t.ln() - (1.0 + (2.0 * PI).ln()) * t) / PI
}

/// All Gram points with t_nu <= x, in order.
pub fn gram_range(lab: &Lab, x: f64) -> Result<Vec<GramPoint>> {
    let n = gram_count(lab, x)?;
    lab.with_gram(n as usize + 1, |recs| recs[..=n as usize].iter().map(GramRecord::point).collect())
}

/// N(x) = max { nu : t_nu <= x }.
pub fn gram_count(lab: &Lab, x: f64) -> Result<u64> {
    lab.gram_index(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambert_w_inverts() {
        for &y in &[0.0, 0.01, 0.5, 1.0, 10.0, 1e3, 1e6] {
            let w = lambert_w(y);
            assert!((w * w.exp() - y).abs() <= 1e-12 * y.max(1.0), "y = {y}");
        }
    }

    #[test]
    fn first_points() {
        let cfg = ZetaEvalConfig::default();
        let g0 = gram_point(0, &cfg).unwrap();
        let g1 = gram_point(1, &cfg).unwrap();
        assert!((g0.t - 17.845_599_540_4).abs() < 1e-6);
        assert!((g1.t - 23.170_282_701_2).abs() < 1e-6);
    }

    #[test]
    fn initial_guess_is_close() {
        for nu in [0u64, 10, 1000, 100_000] {
            let g = gram_point(nu, &ZetaEvalConfig::default()).unwrap();
            assert!((initial_guess(nu) - g.t).abs() < 0.05 * (2.0 * PI / g.t.ln()));
        }
    }

    #[test]
    fn zeta_sign_follows_parity() {
        let r = GramRecord { nu: 3, t: 30.0, z: 1.5 };
        assert_eq!(r.zeta(), -1.5);
    }
}
