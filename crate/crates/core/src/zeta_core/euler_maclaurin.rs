//! Euler-Maclaurin evaluation of zeta(1/2 + it) for small heights, where the
//! Riemann-Siegel expansion is not usable.

use num_complex::Complex64;

// B_2, B_4, ..., B_28
const BERNOULLI: [f64; 14] = [
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
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
];

/// zeta(1/2 + it). Accurate to ~1e-13 for |t| up to a few hundred.
pub fn zeta_critical_line(t: f64) -> Complex64 {
    let s = Complex64::new(0.5, t);
    let n = 20 + t.abs().ceil() as u64;

    let mut head = Complex64::new(0.0, 0.0);
    let mut comp = Complex64::new(0.0, 0.0);
    for k in 1..n {
        let term = (-s * (k as f64).ln()).exp();
        // compensated on both components
        let y = term - comp;
        let tsum = head + y;
        comp = (tsum - head) - y;
        head = tsum;
    }

    let nf = n as f64;
    let ln_n = nf.ln();
    let n_pow_s = (-s * ln_n).exp(); // N^{-s}
    let mut total = head + n_pow_s * 0.5 + n_pow_s * nf / (s - 1.0);

    // sum_k B_2k / (2k)! * s (s+1) ... (s+2k-2) * N^{-s-2k+1}
    let mut rising = s; // s (s+1) ... (s + 2k - 2)
    let mut fact = 2.0; // (2k)!
    let mut n_pow = n_pow_s / nf; // N^{-s-2k+1}
    for (k, b) in BERNOULLI.iter().enumerate() {
        let k = k + 1;
        total += rising * n_pow * (*b / fact);
        let kf = k as f64;
        rising = rising * (s + (2.0 * kf - 1.0)) * (s + 2.0 * kf);
        fact *= (2.0 * kf + 1.0) * (2.0 * kf + 2.0);
        n_pow /= nf * nf;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_at_one_half() {
        // zeta(1/2) = -1.4603545088095868
        let z = zeta_critical_line(0.0);
        assert!((z.re + 1.460_354_508_809_586_8).abs() < 1e-13);
        assert!(z.im.abs() < 1e-15);
    }

    #[test]
    fn first_zero() {
        let z = zeta_critical_line(14.134_725_141_734_693);
        assert!(z.norm() < 1e-12, "{z}");
    }
}
