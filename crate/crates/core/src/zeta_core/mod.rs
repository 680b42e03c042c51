//! theta(t), Z(t) and |zeta(1/2 + it)|^2 on the critical line.
//!
//! Z is evaluated with the Riemann-Siegel main sum plus a configurable number
//! of the classical correction terms C_0, C_1, ... . The result is real by
//! construction: only the cosine sum is ever formed.

mod euler_maclaurin;
mod rs_coeffs;

use std::f64::consts::PI;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::sum::Neumaier;

pub use euler_maclaurin::zeta_critical_line;
/// Largest supported number of correction terms.
pub const MAX_CORRECTION_ORDER: usize = rs_coeffs::MAX_TERMS;

const TWO_PI: f64 = 2.0 * PI;

/// Euler's constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Evaluation settings shared by every consumer of Z.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZetaEvalConfig {
    /// Number of Riemann-Siegel correction terms C_0 .. C_{k-1}.
    pub correction_order: usize,
    /// Smallest admissible height.
    pub t_min: f64,
    pub target_abs_tol: f64,
}

impl Default for ZetaEvalConfig {
    fn default() -> Self {
        Self {
            correction_order: 8,
            t_min: 10.0,
            target_abs_tol: 1e-5,
        }
    }
}

impl ZetaEvalConfig {
    pub fn validate(&self) -> Result<()> {
        if self.correction_order > MAX_CORRECTION_ORDER {
            return Err(LabError::Config(format!(
                "correction_order {} exceeds the {} available terms",
                self.correction_order, MAX_CORRECTION_ORDER
            )));
        }
        if !(self.target_abs_tol > 0.0) {
            return Err(LabError::Config("target_abs_tol must be positive".into()));
        }
        if !(self.t_min.is_finite() && self.t_min >= TWO_PI) {
            return Err(LabError::Config(format!(
                "t_min must be at least 2*pi for the asymptotic expansions, got {}",
                self.t_min
            )));
        }
        Ok(())
    }

    pub fn height(&self, t: f64) -> Result<CriticalHeight> {
        self.validate()?;
        if !t.is_finite() || t < self.t_min {
            return Err(LabError::domain(
                "critical height",
                format!("t = {t} is below t_min = {} or not finite", self.t_min),
            ));
        }
        Ok(CriticalHeight(t))
    }
}

/// A height t >= t_min on the critical line.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct CriticalHeight(f64);

impl CriticalHeight {
    pub fn get(self) -> f64 {
        self.0
    }
}

/// Riemann-Siegel theta function.
pub fn theta(t: f64, cfg: &ZetaEvalConfig) -> Result<f64> {
    cfg.height(t).map(|h| theta_unchecked(h.get()))
}

/// d(theta)/dt.
pub fn theta_derivative(t: f64, cfg: &ZetaEvalConfig) -> Result<f64> {
    cfg.height(t).map(|h| theta_derivative_unchecked(h.get()))
}

/// The Riemann-Siegel function Z(t) = exp(i theta(t)) zeta(1/2 + it).
pub fn riemann_siegel_z(t: f64, cfg: &ZetaEvalConfig) -> Result<f64> {
    let h = cfg.height(t)?;
    Ok(z_unchecked(h.get(), cfg.correction_order))
}

/// |zeta(1/2 + it)|^2, i.e. Z(t)^2.
pub fn zeta_mod_sq(t: f64, cfg: &ZetaEvalConfig) -> Result<f64> {
    riemann_siegel_z(t, cfg).map(|z| z * z)
}

// Asymptotic tail of theta: 1/(48t) + 7/(5760t^3) + 31/(80640t^5) + 127/(430080t^7).
// At t = 10 the first omitted term is below 5e-13.
const THETA_TAIL: [f64; 4] = [
    1.0 / 48.0,
    7.0 / 5760.0,
    31.0 / 80640.0,
    127.0 / 430080.0,
];

#[inline]
pub(crate) fn theta_unchecked(t: f64) -> f64 {
    let r = 1.0 / t;
    let r2 = r * r;
    let tail = r * (THETA_TAIL[0] + r2 * (THETA_TAIL[1] + r2 * (THETA_TAIL[2] + r2 * THETA_TAIL[3])));
    0.5 * t * (t / TWO_PI).ln() - 0.5 * t - PI / 8.0 + tail
}

#[inline]
pub(crate) fn theta_derivative_unchecked(t: f64) -> f64 {
    let r2 = 1.0 / (t * t);
    let tail = r2
        * (THETA_TAIL[0]
            + r2 * (3.0 * THETA_TAIL[1] + r2 * (5.0 * THETA_TAIL[2] + r2 * 7.0 * THETA_TAIL[3])));
    0.5 * (t / TWO_PI).ln() - tail
}

const TABLE_LEN: usize = 4096;

/// (ln n, n^{-1/2}) for n = 1 .. TABLE_LEN, index n - 1.
fn log_table() -> &'static [(f64, f64)] {
    static TABLE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    TABLE.get_or_init(|| {
        (1..=TABLE_LEN)
            .map(|n| {
                let nf = n as f64;
                (nf.ln(), 1.0 / nf.sqrt())
            })
            .collect()
    })
}

#[inline]
pub(crate) fn z_unchecked(t: f64, correction_order: usize) -> f64 {
    z_with_theta(t, theta_unchecked(t), correction_order)
}

pub(crate) fn z_with_theta(t: f64, th: f64, correction_order: usize) -> f64 {
    let a = (t / TWO_PI).sqrt();
    let n_main = a.floor() as usize;
    let table = log_table();

    let mut acc = Neumaier::new();
    for n in 1..=n_main {
        let (ln_n, inv_sqrt) = if n <= TABLE_LEN {
            table[n - 1]
        } else {
            let nf = n as f64;
            (nf.ln(), 1.0 / nf.sqrt())
        };
        acc.add(inv_sqrt * (th - t * ln_n).cos());
    }
    let main = 2.0 * acc.value();
    if correction_order == 0 {
        return main;
    }

    let p = a - n_main as f64;
    let z = 2.0 * p - 1.0;
    let inv_a = 1.0 / a;
    let mut corr = 0.0;
    let mut scale = 1.0;
    for k in 0..correction_order.min(rs_coeffs::MAX_TERMS) {
        corr += scale * correction_poly(k, z);
        scale *= inv_a;
    }
    let sign = if n_main % 2 == 1 { 1.0 } else { -1.0 };
    main + sign * inv_a.sqrt() * corr
}

/// C_k(z), z = 2p - 1.
fn correction_poly(k: usize, z: f64) -> f64 {
    let coeffs = rs_coeffs::RS_COEFFS[k];
    let z2 = z * z;
    let mut v = 0.0;
    for &c in coeffs.iter().rev() {
        v = v * z2 + c;
    }
    if k % 2 == 1 {
        v * z
    } else {
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> ZetaEvalConfig {
        ZetaEvalConfig::default()
    }

    #[test]
    fn below_t_min_is_a_domain_error() {
        assert!(theta(9.99, &cfg()).unwrap_err().is_domain());
        assert!(theta_derivative(5.0, &cfg()).unwrap_err().is_domain());
        assert!(riemann_siegel_z(f64::NAN, &cfg()).unwrap_err().is_domain());
        assert!(zeta_mod_sq(-1.0, &cfg()).unwrap_err().is_domain());
    }

    #[test]
    fn config_validation() {
        let mut c = cfg();
        assert!(c.validate().is_ok());
        c.correction_order = 11;
        assert!(c.validate().is_err());
        c.correction_order = 10;
        assert!(c.validate().is_ok());
        c.target_abs_tol = 0.0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn correction_polys_at_centre() {
        // C_0(1/2) = cos(5 pi / 8) / cos(pi)... = 0.38268343236508977, and the
        // odd polynomials vanish at z = 0.
        assert!((correction_poly(0, 0.0) - 0.382_683_432_365_089_8).abs() < 1e-15);
        assert_eq!(correction_poly(1, 0.0), 0.0);
        assert_eq!(correction_poly(3, 0.0), 0.0);
    }

    #[test]
    fn c0_matches_closed_form() {
        // C_0(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p)
        for &p in &[0.05, 0.2, 0.4, 0.6, 0.9] {
            let exact = (2.0 * PI * (p * p - p - 1.0 / 16.0)).cos() / (2.0 * PI * p).cos();
            let got = correction_poly(0, 2.0 * p - 1.0);
            assert!((got - exact).abs() < 1e-14, "p = {p}: {got} vs {exact}");
        }
    }

    #[test]
    fn theta_derivative_is_positive() {
        for i in 0..200 {
            let t = 10.0 + 37.3 * i as f64;
            assert!(theta_derivative(t, &cfg()).unwrap() > 0.0);
        }
    }

    #[test]
    fn z_is_continuous_across_main_sum_cutoff() {
        // N = floor(sqrt(t / 2pi)) jumps from 3 to 4 at t = 32 pi.
        let t = 32.0 * PI;
        let below = z_unchecked(t - 1e-9, 8);
        let above = z_unchecked(t + 1e-9, 8);
        assert!((below - above).abs() < 1e-7, "{below} vs {above}");
    }
}
