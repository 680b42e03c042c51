//! Orthogonal systems generated from Legendre polynomials by ladder
//! automorphisms of [-1, 1].
//!
//! For depth p the affine map w_p sends [-1, 1] onto [T^p, (T+2)^p] (reverse
//! iterates), and u_p(t) = phi1^p(w_p(t)) - T - 1 maps [-1, 1] onto itself.
//! With phi1' = Z~^2 = Z^2 / ln t the functions
//! P_n(u_p(t)) * prod_{r<p} |Z~(phi1^r(w_p(t)))|
//! are orthogonal with squared norm (2 / L_p) * 2 / (2n + 1), where
//! L_p = (T+2)^p - T^p. Deeper generations compose these maps.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::lab::{Lab, Weight};
use crate::ladder::{cumulative_offset, iterate, Backend, Direction, LadderContext};
use crate::quad::GaussLegendre;
use crate::sum::compensated_sum;
use crate::table::{Cell, Tabular};

/// Largest series index handled by the partial sums.
pub const MAX_SERIES_INDEX: usize = 128;
/// Doubling the quadrature order may move a Gram entry at most this much
/// before a warning is attached.
pub const QUADRATURE_STABILITY_TOL: f64 = 1e-4;
const DEFAULT_NORM_ORDER: usize = 1024;
const ENDPOINT_SLACK: f64 = 1e-6;

/// Legendre polynomial P_n(t) by the three-term recurrence.
pub fn legendre(n: usize, t: f64) -> Result<f64> {
    if !(t.abs() <= 1.0) {
        return Err(LabError::domain("legendre", format!("t = {t} outside [-1, 1]")));
    }
    Ok(*legendre_all(n, t).last().unwrap())
}

/// P_0(t), ..., P_n(t).
pub fn legendre_all(n: usize, t: f64) -> Vec<f64> {
    let mut p = Vec::with_capacity(n + 1);
    p.push(1.0);
    if n >= 1 {
        p.push(t);
    }
    for k in 1..n {
        let kf = k as f64;
        p.push(((2.0 * kf + 1.0) * t * p[k] - kf * p[k - 1]) / (kf + 1.0));
    }
    p
}

/// |Z~(t)| = |Z(t)| / sqrt(ln t).
pub fn ztilde_abs(lab: &Lab, t: f64, ctx: &LadderContext) -> Result<f64> {
    if !(t >= ctx.t_floor) {
        return Err(LabError::domain("ztilde_abs", format!("t = {t} is below t_floor = {}", ctx.t_floor)));
    }
    Ok(lab.z(t)?.abs() / t.ln().sqrt())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerationSpec {
    /// (p_1, ..., p_s), outermost first.
    pub depths: Vec<usize>,
    /// Largest admissible depth.
    pub k: usize,
    /// Base point T.
    pub t: f64,
    pub n_max: usize,
}

impl GenerationSpec {
    pub fn new(depths: Vec<usize>, t: f64, n_max: usize) -> Self {
        let k = depths.iter().copied().max().unwrap_or(0);
        Self { depths, k, t, n_max }
    }

    pub fn s(&self) -> usize {
        self.depths.len()
    }

    pub fn validate(&self, ctx: &LadderContext) -> Result<()> {
        if let Some(&p) = self.depths.iter().find(|&&p| p == 0 || p > self.k) {
            return Err(LabError::domain("GenerationSpec", format!("depth {p} outside 1..={}", self.k)));
        }
        if !(self.t >= ctx.t_floor) || !self.t.is_finite() {
            return Err(LabError::domain(
                "GenerationSpec",
                format!("T = {} is below t_floor = {}", self.t, ctx.t_floor),
            ));
        }
        if self.n_max > MAX_SERIES_INDEX {
            return Err(LabError::domain("GenerationSpec", format!("n_max above {MAX_SERIES_INDEX}")));
        }
        Ok(())
    }
}

/// Reverse iterates T^r and (T+2)^r for r = 0..=k.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReverseGrid {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl ReverseGrid {
    pub fn new(lab: &Lab, t: f64, k: usize, ctx: &LadderContext) -> Result<Self> {
        Ok(Self {
            lower: iterate(lab, t, k, Direction::Reverse, ctx)?.points,
            upper: iterate(lab, t + 2.0, k, Direction::Reverse, ctx)?.points,
        })
    }

    /// L_p = (T+2)^p - T^p
    pub fn length(&self, p: usize) -> f64 {
        self.upper[p] - self.lower[p]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Normalization {
    Raw,
    /// prod_{i=0}^{s} sqrt(2 / ((T+2)^i - T^i)), independent of n.
    Nominal,
    /// Division by the quadrature-measured norm.
    Empirical,
}

#[derive(Debug)]
pub struct GeneratedSystem<'a> {
    lab: &'a Lab,
    ctx: LadderContext,
    spec: GenerationSpec,
    grid: ReverseGrid,
    /// phi1(t) = offset + J(t) on the cumulative backend.
    offset: f64,
    norm_order: usize,
    norms: OnceLock<Vec<f64>>,
}

impl<'a> GeneratedSystem<'a> {
    /// The ladder is always the cumulative backend here: orthogonality rests
    /// on phi1' = Z~^2 holding pointwise.
    pub fn new(lab: &'a Lab, spec: GenerationSpec, ctx: &LadderContext) -> Result<Self> {
        let ctx = LadderContext {
            backend: Backend::Cumulative,
            ..*ctx
        };
        ctx.validate()?;
        spec.validate(&ctx)?;
        let grid = ReverseGrid::new(lab, spec.t, spec.k, &ctx)?;
        Ok(Self {
            offset: cumulative_offset(lab, &ctx)?,
            lab,
            ctx,
            spec,
            grid,
            norm_order: DEFAULT_NORM_ORDER,
            norms: OnceLock::new(),
        })
    }

    /// Quadrature order used to measure empirical norms.
    pub fn with_norm_order(mut self, order: usize) -> Self {
        self.norm_order = order;
        self.norms = OnceLock::new();
        self
    }

    pub fn spec(&self) -> &GenerationSpec {
        &self.spec
    }

    pub fn grid(&self) -> &ReverseGrid {
        &self.grid
    }

    fn phi1(&self, t: f64) -> Result<f64> {
        Ok(self.offset + self.lab.cumulative(Weight::InvLog, t)?)
    }

    fn check_depth(&self, p: usize, t: f64) -> Result<()> {
        if p > self.spec.k {
            return Err(LabError::domain("u_map", format!("depth {p} exceeds k = {}", self.spec.k)));
        }
        if !(t.abs() <= 1.0) {
            return Err(LabError::domain("u_map", format!("t = {t} outside [-1, 1]")));
        }
        Ok(())
    }

    /// w_p(t) = T^p + (t + 1) ((T+2)^p - T^p) / 2
    fn affine(&self, p: usize, t: f64) -> f64 {
        self.grid.lower[p] + 0.5 * (t + 1.0) * self.grid.length(p)
    }

    /// [w, phi1(w), ..., phi1^p(w)] for w = w_p(t).
    fn orbit(&self, p: usize, t: f64) -> Result<Vec<f64>> {
        let mut orbit = Vec::with_capacity(p + 1);
        orbit.push(self.affine(p, t));
        for _ in 0..p {
            orbit.push(self.phi1(*orbit.last().unwrap())?);
        }
        Ok(orbit)
    }

    pub fn u_map(&self, p: usize, t: f64) -> Result<f64> {
        self.check_depth(p, t)?;
        Ok(self.orbit(p, t)?[p] - self.spec.t - 1.0)
    }

    pub fn v_map(&self, p: usize, r: usize, t: f64) -> Result<f64> {
        self.check_depth(p, t)?;
        if r >= p {
            return Err(LabError::domain("v_map", format!("r = {r} must be below p = {p}")));
        }
        Ok(self.orbit(p, t)?[r])
    }

    fn ztilde(&self, t: f64) -> f64 {
        // heights here are >= T >= t_floor, checked at construction
        let z = crate::zeta_core::z_unchecked(t, self.lab.zeta_config().correction_order);
        z.abs() / t.ln().sqrt()
    }

    /// Final argument and accumulated |Z~| factor for input t.
    fn compose(&self, t: f64) -> Result<(f64, f64)> {
        if !(t.abs() <= 1.0) {
            return Err(LabError::domain("generated_fn", format!("t = {t} outside [-1, 1]")));
        }
        let mut arg = t;
        let mut factor = 1.0;
        for &p in self.spec.depths.iter().rev() {
            let orbit = self.orbit(p, arg)?;
            factor *= orbit[..p].iter().map(|&v| self.ztilde(v)).product::<f64>();
            let u = orbit[p] - self.spec.t - 1.0;
            if u.abs() > 1.0 + ENDPOINT_SLACK {
                return Err(LabError::convergence("generated_fn", 0, format!("u = {u} left [-1, 1]")));
            }
            arg = u.clamp(-1.0, 1.0);
        }
        Ok((arg, factor))
    }

    /// Generated functions f_0(t), ..., f_m(t) without normalization.
    pub fn values(&self, t: f64, m: usize) -> Result<Vec<f64>> {
        let (arg, factor) = self.compose(t)?;
        Ok(legendre_all(m, arg).into_iter().map(|p| p * factor).collect())
    }

    pub fn generated_fn(&self, n: usize, t: f64) -> Result<f64> {
        Ok(self.values(t, n)?[n])
    }

    /// prod_{i=0}^{s} sqrt(2 / ((T+2)^i - T^i)).
    pub fn nominal_factor(&self) -> Result<f64> {
        let s = self.spec.s();
        let grid = if s > self.spec.k {
            ReverseGrid::new(self.lab, self.spec.t, s, &self.ctx)?
        } else {
            self.grid.clone()
        };
        Ok((0..=s).map(|i| (2.0 / grid.length(i)).sqrt()).product())
    }

    /// Squared norm from the change of variables:
    /// prod_i (2 / L_{p_i}) * 2 / (2n + 1).
    pub fn analytic_norm_sq(&self, n: usize) -> f64 {
        let scale: f64 = self.spec.depths.iter().map(|&p| 2.0 / self.grid.length(p)).product();
        scale * 2.0 / (2.0 * n as f64 + 1.0)
    }

    /// Node values f_n(t_i) for n = 0..=m over a Gauss-Legendre rule.
    fn node_values(&self, rule: &GaussLegendre, m: usize) -> Result<Vec<Vec<f64>>> {
        let nodes = rule.nodes();
        self.lab
            .strategy()
            .try_map_range(nodes.len(), |i| self.values(nodes[i], m))
    }

    /// sqrt of the quadrature-measured squared norms, n = 0..=MAX_SERIES_INDEX.
    pub fn measured_norms(&self) -> Result<&[f64]> {
        if let Some(n) = self.norms.get() {
            return Ok(n);
        }
        let rule = GaussLegendre::new(self.norm_order);
        let vals = self.node_values(&rule, MAX_SERIES_INDEX)?;
        let norms = (0..=MAX_SERIES_INDEX)
            .map(|n| {
                compensated_sum(rule.weights().iter().zip(&vals).map(|(w, v)| w * v[n] * v[n])).sqrt()
            })
            .collect();
        Ok(self.norms.get_or_init(|| norms))
    }

    /// Multipliers c_n with normalized f_n = c_n * f_n.
    pub fn normalizers(&self, mode: Normalization, m: usize) -> Result<Vec<f64>> {
        Ok(match mode {
            Normalization::Raw => vec![1.0; m + 1],
            Normalization::Nominal => vec![self.nominal_factor()?; m + 1],
            Normalization::Empirical => {
                if m > MAX_SERIES_INDEX {
                    return Err(LabError::domain("normalizers", format!("index {m} above {MAX_SERIES_INDEX}")));
                }
                self.measured_norms()?[..=m].iter().map(|n| 1.0 / n).collect()
            }
        })
    }

    pub fn normalized_fn(&self, n: usize, t: f64, mode: Normalization) -> Result<f64> {
        Ok(self.generated_fn(n, t)? * self.normalizers(mode, n)?[n])
    }

    fn matrix_at(&self, order: usize, scale: &[f64]) -> Result<Vec<Vec<f64>>> {
        let m = self.spec.n_max;
        let rule = GaussLegendre::new(order);
        let vals = self.node_values(&rule, m)?;
        let mut g = vec![vec![0.0; m + 1]; m + 1];
        for i in 0..=m {
            for j in 0..=i {
                let e = compensated_sum(rule.weights().iter().zip(&vals).map(|(w, v)| w * v[i] * v[j]));
                g[i][j] = e * scale[i] * scale[j];
                g[j][i] = g[i][j];
            }
        }
        Ok(g)
    }

    /// Inner products <f_m, f_n> over [-1, 1] for m, n <= n_max, together
    /// with the change under a doubled quadrature order.
    pub fn gram_matrix(&self, quad_order: usize, mode: Normalization) -> Result<GramMatrix> {
        if quad_order < 2 {
            return Err(LabError::Config("quad_order must be at least 2".into()));
        }
        let scale = self.normalizers(mode, self.spec.n_max)?;
        let entries = self.matrix_at(quad_order, &scale)?;
        let doubled = self.matrix_at(2 * quad_order, &scale)?;
        let doubling_change = entries
            .iter()
            .flatten()
            .zip(doubled.iter().flatten())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        let warning = (doubling_change > QUADRATURE_STABILITY_TOL).then(|| {
            format!("doubling quad_order to {} moves an entry by {doubling_change:e}", 2 * quad_order)
        });
        Ok(GramMatrix {
            quad_order,
            normalization: mode,
            entries,
            doubling_change,
            warning,
        })
    }

    /// S_M(t) = sum_{n <= M} a_n * normalized f_n(t).
    pub fn mr_partial_sum(&self, coeffs: &[f64], t: f64, m: usize, mode: Normalization) -> Result<f64> {
        Ok(*self.mr_partial_sums(coeffs, t, m, mode)?.last().unwrap())
    }

    /// S_0(t), ..., S_M(t).
    pub fn mr_partial_sums(&self, coeffs: &[f64], t: f64, m: usize, mode: Normalization) -> Result<Vec<f64>> {
        if m >= coeffs.len() || m > MAX_SERIES_INDEX {
            return Err(LabError::domain(
                "mr_partial_sum",
                format!("M = {m} needs {} coefficients and at most index {MAX_SERIES_INDEX}", m + 1),
            ));
        }
        let scale = self.normalizers(mode, m)?;
        let vals = self.values(t, m)?;
        let mut acc = crate::sum::Neumaier::new();
        Ok((0..=m)
            .map(|n| {
                acc.add(coeffs[n] * scale[n] * vals[n]);
                acc.value()
            })
            .collect())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GramMatrix {
    pub quad_order: usize,
    pub normalization: Normalization,
    pub entries: Vec<Vec<f64>>,
    /// Largest entry change when the order is doubled.
    pub doubling_change: f64,
    pub warning: Option<String>,
}

impl GramMatrix {
    pub fn max_off_diagonal(&self) -> f64 {
        let mut worst = 0.0f64;
        for (i, row) in self.entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if i != j {
                    worst = worst.max(e.abs());
                }
            }
        }
        worst
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.entries.len()).map(|i| self.entries[i][i]).collect()
    }

    pub fn max_asymmetry(&self) -> f64 {
        let n = self.entries.len();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| (self.entries[i][j] - self.entries[j][i]).abs())
            .fold(0.0, f64::max)
    }

    pub fn rows(&self) -> Vec<GramEntry> {
        self.entries
            .iter()
            .enumerate()
            .flat_map(|(m, row)| row.iter().enumerate().map(move |(n, &value)| GramEntry { m, n, value }))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GramEntry {
    pub m: usize,
    pub n: usize,
    pub value: f64,
}

impl Tabular for GramEntry {
    fn columns() -> &'static [&'static str] {
        &["m", "n", "value"]
    }

    fn cells(&self) -> Vec<Cell> {
        vec![self.m.into(), self.n.into(), self.value.into()]
    }
}

/// a_n = (n + 1)^{-exponent} for n = 0..count-1.
pub fn power_law_coeffs(exponent: f64, count: usize) -> Vec<f64> {
    (0..count).map(|n| (n as f64 + 1.0).powf(-exponent)).collect()
}

/// Least-squares slope of -ln|a_n| against ln(n + 1) over the nonzero tail
/// (second half of the sequence).
pub fn fitted_decay_exponent(coeffs: &[f64]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = coeffs
        .iter()
        .enumerate()
        .skip(coeffs.len() / 2)
        .filter(|(_, a)| **a != 0.0)
        .map(|(n, a)| ((n as f64 + 1.0).ln(), -a.abs().ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Whether sum (a_n ln(n+1))^2 converges for a sequence decaying like
/// (n+1)^{-exponent}: true iff exponent > 1/2, or all coefficients vanish.
/// Without an explicit exponent, one is fitted to the supplied tail.
pub fn mr_condition(coeffs: &[f64], exponent: Option<f64>) -> bool {
    if coeffs.iter().all(|&a| a == 0.0) && exponent.is_none() {
        return true;
    }
    match exponent.or_else(|| fitted_decay_exponent(coeffs)) {
        Some(p) => p > 0.5,
        None => false,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CauchyRow {
    pub t: f64,
    pub m: usize,
    pub s_m: f64,
    pub s_2m: f64,
    /// |S_{2M}(t) - S_M(t)|
    pub gap: f64,
}

impl Tabular for CauchyRow {
    fn columns() -> &'static [&'static str] {
        &["t", "M", "S_M", "S_2M", "gap"]
    }

    fn cells(&self) -> Vec<Cell> {
        vec![self.t.into(), self.m.into(), self.s_m.into(), self.s_2m.into(), self.gap.into()]
    }
}

/// `count` interior sample points, the midpoints of an even partition of
/// [-1, 1].
pub fn sample_points(count: usize) -> Vec<f64> {
    (0..count)
        .map(|i| -1.0 + 2.0 * (i as f64 + 0.5) / count as f64)
        .collect()
}

/// |S_{2M} - S_M| at every point for every M.
pub fn cauchy_table(
    system: &GeneratedSystem<'_>,
    coeffs: &[f64],
    points: &[f64],
    ms: &[usize],
    mode: Normalization,
) -> Result<Vec<CauchyRow>> {
    let top = ms.iter().copied().max().unwrap_or(0) * 2;
    let mut rows = Vec::with_capacity(points.len() * ms.len());
    for &t in points {
        let sums = system.mr_partial_sums(coeffs, t, top, mode)?;
        for &m in ms {
            rows.push(CauchyRow {
                t,
                m,
                s_m: sums[m],
                s_2m: sums[2 * m],
                gap: (sums[2 * m] - sums[m]).abs(),
            });
        }
    }
    Ok(rows)
}
