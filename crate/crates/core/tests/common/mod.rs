//! Independent oracles and shared fixtures for the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;
use std::path::PathBuf;
use std::sync::OnceLock;

use num_complex::Complex64;
use zetalab::{Lab, LabConfig};

/// One lab per test binary, backed by a cache that survives between runs.
pub fn shared_lab() -> &'static Lab {
    static LAB: OnceLock<Lab> = OnceLock::new();
    LAB.get_or_init(|| {
        Lab::new(LabConfig {
            cache_dir: Some(cache_dir()),
            ..LabConfig::default()
        })
        .expect("shared lab")
    })
}

pub fn cache_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("zetalab-cache")
}

// B_2, B_4, ..., B_24
const BERNOULLI: [f64; 12] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
];

/// zeta(s) by Euler-Maclaurin with N = 40 + 2|t| terms and 12 correction
/// terms; a different cut-off than the library uses.
pub fn zeta_em(s: Complex64) -> Complex64 {
    let n = 40 + 2 * s.im.abs().ceil() as usize;
    let nf = n as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 1..n {
        sum += Complex64::new(k as f64, 0.0).powc(-s);
    }
    let n_s = Complex64::new(nf, 0.0).powc(-s);
    sum += n_s * nf / (s - 1.0) + n_s * 0.5;
    // rising factorial s (s+1) ... (s+2k-2) / (2k)! * N^{-s-2k+1}
    let mut poch = s;
    let mut fact = 2.0;
    let mut npow = n_s / nf;
    for (j, b) in BERNOULLI.iter().enumerate() {
        sum += poch * npow * (*b / fact);
        let k = 2 * j + 2;
        poch *= (s + k as f64 - 1.0) * (s + k as f64);
        fact *= ((k + 1) * (k + 2)) as f64;
        npow /= nf * nf;
    }
    sum
}

pub fn zeta_half(t: f64) -> Complex64 {
    zeta_em(Complex64::new(0.5, t))
}

/// ln Gamma(z) for Re z > 0: shift by 12 then Stirling with 8 terms.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    let shift = 12;
    let mut correction = Complex64::new(0.0, 0.0);
    let mut w = z;
    for _ in 0..shift {
        correction += w.ln();
        w += 1.0;
    }
    let coeffs = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360360.0,
        1.0 / 156.0,
        -3617.0 / 122400.0,
    ];
    let mut series = Complex64::new(0.0, 0.0);
    let w2 = w * w;
    let mut p = w;
    for c in coeffs {
        series += c / p;
        p *= w2;
    }
    (w - 0.5) * w.ln() - w + 0.5 * (2.0 * PI).ln() + series - correction
}

/// theta(t) = -(t/2) ln pi + Im ln Gamma(1/4 + i t/2).
pub fn theta_oracle(t: f64) -> f64 {
    -0.5 * t * PI.ln() + ln_gamma(Complex64::new(0.25, 0.5 * t)).im
}

/// Z(t) = Re(e^{i theta} zeta(1/2 + it)) from the oracles above.
pub fn z_oracle(t: f64) -> f64 {
    (Complex64::from_polar(1.0, theta_oracle(t)) * zeta_half(t)).re
}

pub fn bisect(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    let flo = f(lo);
    assert!(flo * f(hi) <= 0.0, "no sign change on [{lo}, {hi}]");
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) == (flo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-14 * hi {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// First Gram point from the theta oracle.
pub fn t0_oracle() -> f64 {
    bisect(17.0, 18.5, theta_oracle)
}

/// First zero on the critical line, from the Z oracle.
pub fn first_zero_oracle() -> f64 {
    bisect(14.0, 14.3, z_oracle)
}

/// P_5 in closed form.
pub fn legendre5(t: f64) -> f64 {
    (63.0 * t.powi(5) - 70.0 * t.powi(3) + 15.0 * t) / 8.0
}

/// Exhaustive scan of x^n + y^n = z^n in u128 arithmetic.
pub fn fermat_counterexamples(max_xyz: u32, max_n: u32) -> Vec<(u32, u32, u32, u32)> {
    let mut found = Vec::new();
    for n in 3..=max_n {
        for x in 1..=max_xyz {
            for y in 1..=max_xyz {
                for z in 1..=max_xyz {
                    let p = |v: u32| (v as u128).pow(n);
                    if p(x) + p(y) == p(z) {
                        found.push((x, y, z, n));
                    }
                }
            }
        }
    }
    found
}

/// Euler's constant to 20 digits, independent of the library constant.
pub const EULER: f64 = 0.577_215_664_901_532_9;
