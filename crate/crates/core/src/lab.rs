//! Shared numerical state: the Gram table with Z(t_nu), and cumulative
//! integrals of Z^2 (Hardy-Littlewood) and Z^2 / ln t (ladder derivative)
//! checkpointed at every Gram point.
//!
//! Tables only ever grow. Extension holds the write lock (one writer at a
//! time); new blocks are computed with the configured [`Strategy`] and merged
//! in index order, then appended to the cache files when a cache directory is
//! configured.

use std::path::PathBuf;
use std::sync::{RwLock, RwLockReadGuard, RwLockWriteGuard};

use crate::cache::{CacheKey, Checkpoint, GramFile, HlFile};
use crate::error::{LabError, Result};
use crate::exec::Strategy;
use crate::gram::{gram_point, GramRecord};
use crate::quad::GaussLegendre;
use crate::sum::{compensated_sum, Neumaier};
use crate::zeta_core::{theta_unchecked, z_unchecked, zeta_critical_line, ZetaEvalConfig};

/// Nodes per Gram gap used for Hardy-Littlewood panels by default.
pub const DEFAULT_QUAD_ORDER: usize = 8;
const HEAD_PANELS: usize = 8;
const SMALL_T_PANEL: f64 = 0.25;
const SMALL_T_NODES: usize = 20;
const MAX_ROOT_ITERATIONS: usize = 100;
/// Ranges spanning at most this many Gram points are integrated directly.
const DIRECT_GAPS: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct LabConfig {
    pub zeta: ZetaEvalConfig,
    /// Gauss-Legendre nodes per Gram gap.
    pub quad_order: usize,
    pub strategy: Strategy,
    pub cache_dir: Option<PathBuf>,
}

impl Default for LabConfig {
    fn default() -> Self {
        Self {
            zeta: ZetaEvalConfig::default(),
            quad_order: DEFAULT_QUAD_ORDER,
            strategy: Strategy::default(),
            cache_dir: None,
        }
    }
}

/// Integrand weight applied to Z(t)^2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weight {
    /// Z(t)^2 = |zeta(1/2 + it)|^2; cumulative values start at t = 0.
    Plain,
    /// Z(t)^2 / ln t; cumulative values start at t = t_min.
    InvLog,
}

impl Weight {
    fn index(self) -> usize {
        match self {
            Weight::Plain => 0,
            Weight::InvLog => 1,
        }
    }

    #[inline]
    fn apply(self, t: f64, z: f64) -> f64 {
        match self {
            Weight::Plain => z * z,
            Weight::InvLog => z * z / t.ln(),
        }
    }
}

#[derive(Debug, Default)]
struct Cumulative {
    /// values[nu] = integral up to t_nu
    values: Vec<f64>,
    acc: Neumaier,
}

#[derive(Debug, Default)]
struct State {
    gram: Vec<GramRecord>,
    cum: [Cumulative; 2],
    gram_file: Option<GramFile>,
    hl_file: Option<HlFile>,
}

#[derive(Debug)]
pub struct Lab {
    cfg: LabConfig,
    rule: GaussLegendre,
    small_t: f64,
    state: RwLock<State>,
}

impl Lab {
    pub fn new(cfg: LabConfig) -> Result<Self> {
        cfg.zeta.validate()?;
        if cfg.quad_order < 2 {
            return Err(LabError::Config("quad_order must be at least 2".into()));
        }
        if cfg.zeta.t_min > 17.0 {
            return Err(LabError::Config("t_min must lie below the first Gram point".into()));
        }
        let small_t = small_t_integral(cfg.zeta.t_min);
        let mut state = State::default();
        if let Some(dir) = &cfg.cache_dir {
            let key = CacheKey {
                correction_order: cfg.zeta.correction_order as u32,
                t_min: cfg.zeta.t_min,
            };
            let (gram_file, gram) = GramFile::open(dir, key)?;
            let (hl_file, checkpoints) = HlFile::open(dir, key, cfg.quad_order as u32, small_t)?;
            let usable = checkpoints
                .iter()
                .zip(&gram)
                .take_while(|(c, g)| c.t.to_bits() == g.t.to_bits())
                .count();
            if usable < checkpoints.len() {
                hl_file.truncate(usable)?;
            }
            let plain = &mut state.cum[0];
            plain.values = checkpoints[..usable].iter().map(|c| c.integral).collect();
            plain.acc = Neumaier::with_value(plain.values.last().copied().unwrap_or(0.0));
            state.gram = gram;
            state.gram_file = Some(gram_file);
            state.hl_file = Some(hl_file);
        }
        Ok(Self {
            rule: GaussLegendre::new(cfg.quad_order),
            cfg,
            small_t,
            state: RwLock::new(state),
        })
    }

    pub fn in_memory() -> Self {
        Self::new(LabConfig::default()).expect("default configuration is valid")
    }

    pub fn config(&self) -> &LabConfig {
        &self.cfg
    }

    pub fn zeta_config(&self) -> &ZetaEvalConfig {
        &self.cfg.zeta
    }

    pub fn strategy(&self) -> Strategy {
        self.cfg.strategy
    }

    pub fn t_min(&self) -> f64 {
        self.cfg.zeta.t_min
    }

    /// Integral of |zeta(1/2 + it)|^2 over [0, t_min].
    pub fn small_t_integral(&self) -> f64 {
        self.small_t
    }

    /// Z(t) with this lab's settings, for t >= t_min.
    pub fn z(&self, t: f64) -> Result<f64> {
        crate::zeta_core::riemann_siegel_z(t, &self.cfg.zeta)
    }

    fn read(&self) -> RwLockReadGuard<'_, State> {
        self.state.read().unwrap_or_else(|e| e.into_inner())
    }

    fn write(&self) -> RwLockWriteGuard<'_, State> {
        self.state.write().unwrap_or_else(|e| e.into_inner())
    }

    pub fn gram_len(&self) -> usize {
        self.read().gram.len()
    }

    /// Makes sure Gram points nu = 0 .. n-1 are available.
    pub fn ensure_gram_len(&self, n: usize) -> Result<()> {
        if self.read().gram.len() >= n {
            return Ok(());
        }
        let mut st = self.write();
        let start = st.gram.len();
        if start >= n {
            return Ok(());
        }
        let cfg = self.cfg.zeta;
        let block = self.cfg.strategy.try_map_range(n - start, |i| {
            let nu = (start + i) as u64;
            gram_point(nu, &cfg).map(|g| GramRecord {
                nu,
                t: g.t,
                z: z_unchecked(g.t, cfg.correction_order),
            })
        })?;
        if let Some(f) = &st.gram_file {
            f.append(&block)?;
        }
        st.gram.extend(block);
        Ok(())
    }

    /// Makes sure some Gram point lies strictly above `x`.
    pub fn ensure_gram_beyond(&self, x: f64) -> Result<()> {
        if !x.is_finite() {
            return Err(LabError::domain("gram table", format!("x = {x} is not finite")));
        }
        let estimate = if x >= self.t_min() {
            (theta_unchecked(x) / std::f64::consts::PI).max(0.0).floor() as usize + 2
        } else {
            1
        };
        self.ensure_gram_len(estimate)?;
        loop {
            let (len, last) = {
                let st = self.read();
                (st.gram.len(), st.gram.last().map(|r| r.t))
            };
            match last {
                Some(t) if t > x => return Ok(()),
                _ => self.ensure_gram_len(len + 16)?,
            }
        }
    }

    /// N(x) = max { nu : t_nu <= x }.
    pub fn gram_index(&self, x: f64) -> Result<u64> {
        self.ensure_gram_len(1)?;
        let t0 = self.read().gram[0].t;
        if !(x >= t0) {
            return Err(LabError::domain(
                "gram_count",
                format!("x = {x} lies below the first Gram point {t0}"),
            ));
        }
        self.ensure_gram_beyond(x)?;
        let st = self.read();
        Ok((st.gram.partition_point(|r| r.t <= x) - 1) as u64)
    }

    /// Runs `f` on the first `n` Gram records (at least; the slice may be longer).
    pub fn with_gram<R>(&self, n: usize, f: impl FnOnce(&[GramRecord]) -> R) -> Result<R> {
        self.ensure_gram_len(n)?;
        let st = self.read();
        Ok(f(&st.gram))
    }

    pub fn gram_record(&self, nu: usize) -> Result<GramRecord> {
        self.with_gram(nu + 1, |g| g[nu])
    }

    fn weighted_z2(&self, weight: Weight, t: f64) -> f64 {
        weight.apply(t, z_unchecked(t, self.cfg.zeta.correction_order))
    }

    /// Gauss-Legendre panel over [a, b], meant for ranges no longer than one
    /// Gram gap.
    fn panel(&self, weight: Weight, a: f64, b: f64) -> f64 {
        self.rule.integrate(a, b, |t| self.weighted_z2(weight, t))
    }

    /// [t_min, b] split into equal panels, used below the first Gram point.
    fn head(&self, weight: Weight, b: f64) -> f64 {
        let a = self.t_min();
        let h = (b - a) / HEAD_PANELS as f64;
        compensated_sum((0..HEAD_PANELS).map(|i| {
            let lo = a + h * i as f64;
            let hi = if i + 1 == HEAD_PANELS { b } else { lo + h };
            self.panel(weight, lo, hi)
        }))
    }

    fn base(&self, weight: Weight) -> f64 {
        match weight {
            Weight::Plain => self.small_t,
            Weight::InvLog => 0.0,
        }
    }

    /// Makes sure cumulative values exist for nu = 0 .. n-1.
    fn ensure_cumulative(&self, weight: Weight, n: usize) -> Result<()> {
        let w = weight.index();
        if self.read().cum[w].values.len() >= n {
            return Ok(());
        }
        self.ensure_gram_len(n)?;
        let mut st = self.write();
        let start = st.cum[w].values.len();
        if start >= n {
            return Ok(());
        }
        let mut fresh = Vec::with_capacity(n - start);
        let first_gap = if start == 0 {
            let head = self.base(weight) + self.head(weight, st.gram[0].t);
            st.cum[w].acc = Neumaier::with_value(head);
            fresh.push(head);
            0
        } else {
            start - 1
        };
        let gram = &st.gram;
        let gaps = self.cfg.strategy.map_range(n - 1 - first_gap, |i| {
            let nu = first_gap + i;
            self.panel(weight, gram[nu].t, gram[nu + 1].t)
        });
        let mut acc = st.cum[w].acc;
        for g in gaps {
            acc.add(g);
            fresh.push(acc.value());
        }
        st.cum[w].acc = acc;
        if weight == Weight::Plain {
            if let Some(f) = &st.hl_file {
                let order = self.cfg.quad_order as u32;
                let cps: Vec<Checkpoint> = fresh
                    .iter()
                    .enumerate()
                    .map(|(i, &integral)| Checkpoint {
                        t: st.gram[start + i].t,
                        integral,
                        quad_order: order,
                    })
                    .collect();
                f.append(&cps)?;
            }
        }
        st.cum[w].values.extend(fresh);
        Ok(())
    }

    fn check_height(&self, op: &'static str, t: f64) -> Result<()> {
        if !t.is_finite() || t < self.t_min() {
            return Err(LabError::domain(op, format!("t = {t} is below t_min = {}", self.t_min())));
        }
        Ok(())
    }

    /// Cumulative integral of the weighted Z^2 up to `t` (from 0 for
    /// [`Weight::Plain`], from t_min for [`Weight::InvLog`]).
    pub fn cumulative(&self, weight: Weight, t: f64) -> Result<f64> {
        self.check_height("cumulative integral", t)?;
        self.ensure_gram_beyond(t)?;
        let nu = {
            let st = self.read();
            if t < st.gram[0].t {
                drop(st);
                return Ok(self.base(weight) + self.head(weight, t));
            }
            st.gram.partition_point(|r| r.t <= t) - 1
        };
        self.ensure_cumulative(weight, nu + 1)?;
        let (start, value) = {
            let st = self.read();
            (st.gram[nu].t, st.cum[weight.index()].values[nu])
        };
        Ok(value + self.panel(weight, start, t))
    }

    /// Integral of the weighted Z^2 over [a, b] by direct panels split at
    /// Gram points, falling back to checkpoint differences for long ranges.
    pub fn increment(&self, weight: Weight, a: f64, b: f64) -> Result<f64> {
        self.check_height("increment", a)?;
        if !(b >= a) || !b.is_finite() {
            return Err(LabError::domain("increment", format!("bad range [{a}, {b}]")));
        }
        if a == b {
            return Ok(0.0);
        }
        self.ensure_gram_beyond(b)?;
        let cuts: Option<Vec<f64>> = {
            let st = self.read();
            let lo = st.gram.partition_point(|r| r.t <= a);
            let hi = st.gram.partition_point(|r| r.t < b);
            (hi.saturating_sub(lo) <= DIRECT_GAPS).then(|| st.gram[lo..hi].iter().map(|r| r.t).collect())
        };
        let Some(cuts) = cuts else {
            return Ok(self.cumulative(weight, b)? - self.cumulative(weight, a)?);
        };
        let t0 = self.read().gram[0].t;
        let mut edges = vec![a];
        edges.extend(cuts);
        edges.push(b);
        let mut acc = Neumaier::new();
        for w in edges.windows(2) {
            if w[1] <= t0 {
                // below the first Gram point gaps are wider; use head-sized panels
                let h = (w[1] - w[0]) / HEAD_PANELS as f64;
                for i in 0..HEAD_PANELS {
                    let lo = w[0] + h * i as f64;
                    acc.add(self.panel(weight, lo, if i + 1 == HEAD_PANELS { w[1] } else { lo + h }));
                }
            } else {
                acc.add(self.panel(weight, w[0], w[1]));
            }
        }
        Ok(acc.value())
    }

    /// Smallest t >= t_min with cumulative(weight, t) = target.
    pub fn inverse_cumulative(&self, weight: Weight, target: f64) -> Result<f64> {
        let base = self.base(weight);
        if !target.is_finite() || target < base {
            return Err(LabError::domain(
                "inverse cumulative integral",
                format!("target {target} lies below the value {base} at t_min"),
            ));
        }
        self.ensure_cumulative(weight, 1)?;
        let w = weight.index();
        loop {
            let (last, len, last_t) = {
                let st = self.read();
                let v = &st.cum[w].values;
                (*v.last().unwrap(), v.len(), st.gram[v.len() - 1].t)
            };
            if last > target {
                break;
            }
            // grow by ~25% in height
            let reach = last_t * 1.25 + 10.0;
            self.ensure_gram_beyond(reach)?;
            let n = self.read().gram.partition_point(|r| r.t <= reach) + 1;
            self.ensure_cumulative(weight, n.max(len + 1))?;
        }
        let (lo, hi, lo_value) = {
            let st = self.read();
            let v = &st.cum[w].values;
            let k = v.partition_point(|&x| x <= target);
            if k == 0 {
                (self.t_min(), st.gram[0].t, base)
            } else {
                (st.gram[k - 1].t, st.gram[k].t, v[k - 1])
            }
        };
        let head = lo == self.t_min();
        let residual = |t: f64| -> f64 {
            if head {
                self.base(weight) + self.head(weight, t) - target
            } else {
                lo_value + self.panel(weight, lo, t) - target
            }
        };
        solve_monotone(
            "inverse cumulative integral",
            0.0,
            lo,
            hi,
            residual,
            |t| self.weighted_z2(weight, t),
        )
    }
}

/// Root of an increasing function on [lo, hi] with residual(lo) <= 0 <=
/// residual(hi): Newton steps, falling back to bisection whenever a step
/// leaves the bracket. Stops once a step or the bracket shrinks below
/// `rel_tol * |x|`.
pub(crate) fn solve_monotone(
    op: &'static str,
    rel_tol: f64,
    mut lo: f64,
    mut hi: f64,
    residual: impl Fn(f64) -> f64,
    derivative: impl Fn(f64) -> f64,
) -> Result<f64> {
    let mut x = 0.5 * (lo + hi);
    for _ in 0..MAX_ROOT_ITERATIONS {
        let r = residual(x);
        if r == 0.0 {
            return Ok(x);
        }
        if r < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let d = derivative(x);
        let newton = x - r / d;
        let next = if d > 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        let tol = rel_tol.max(2.0 * f64::EPSILON) * x.abs();
        if (next - x).abs() <= tol || hi - lo <= 2.0 * tol {
            return Ok(next);
        }
        x = next;
    }
    Err(LabError::convergence(op, MAX_ROOT_ITERATIONS, format!("bracket [{lo}, {hi}]")))
}

/// Integral of |zeta(1/2 + it)|^2 over [0, t_max] by Euler-Maclaurin values
/// on dense Gauss-Legendre panels.
pub(crate) fn small_t_integral(t_max: f64) -> f64 {
    let rule = GaussLegendre::new(SMALL_T_NODES);
    let panels = (t_max / SMALL_T_PANEL).ceil().max(1.0) as usize;
    let h = t_max / panels as f64;
    compensated_sum((0..panels).map(|i| {
        let a = h * i as f64;
        rule.integrate(a, a + h, |t| zeta_critical_line(t).norm_sqr())
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_t_constant() {
        // mpmath: quad(|zeta(1/2+it)|^2, [0, 10]) = 9.9827346379189925314
        assert!((small_t_integral(10.0) - 9.982_734_637_918_993).abs() < 1e-10);
    }

    #[test]
    fn solve_monotone_cubic() {
        let r = solve_monotone("t", 0.0, 0.0, 3.0, |x| x * x * x - 2.0, |x| 3.0 * x * x).unwrap();
        assert!((r - 2f64.cbrt()).abs() < 1e-14);
    }

    #[test]
    fn solve_monotone_flat_derivative() {
        // zero derivative forces bisection steps
        let r = solve_monotone("t", 1e-12, -1.0, 2.5, |x| (x - 1.0).powi(3), |_| 0.0).unwrap();
        assert!((r - 1.0).abs() < 1e-11);
    }

    #[test]
    fn gram_index_and_domain() {
        let lab = Lab::in_memory();
        assert_eq!(lab.gram_index(18.0).unwrap(), 0);
        assert!(lab.gram_index(16.0).unwrap_err().is_domain());
        assert_eq!(lab.gram_index(23.5).unwrap(), 1);
    }

    #[test]
    fn cumulative_is_continuous_at_gram_points() {
        let lab = Lab::in_memory();
        let g = lab.gram_record(5).unwrap();
        for w in [Weight::Plain, Weight::InvLog] {
            let below = lab.cumulative(w, g.t - 1e-9).unwrap();
            let at = lab.cumulative(w, g.t).unwrap();
            assert!((at - below).abs() < 1e-7, "{w:?}: {below} {at}");
        }
    }

    #[test]
    fn inverse_recovers_height() {
        let lab = Lab::in_memory();
        for &t in &[12.0, 17.0, 40.0, 333.3] {
            for w in [Weight::Plain, Weight::InvLog] {
                let v = lab.cumulative(w, t).unwrap();
                let back = lab.inverse_cumulative(w, v).unwrap();
                assert!((back - t).abs() < 1e-9 * t, "{w:?} t={t} back={back}");
            }
        }
    }
}
