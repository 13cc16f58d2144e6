//! Theodorsen's lift deficiency function `C(k) = F(k) + i G(k)`.
//!
//! Evaluated in double precision from Hankel functions of the second kind,
//! `C(k) = H1(k) / (H1(k) + i H0(k))` with `H_n = J_n - i Y_n`. Ascending
//! series are used below `SERIES_LIMIT`, Hankel's asymptotic expansion above.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const SERIES_LIMIT: f64 = 13.0;

/// Returns `(F(k), G(k))`; `(1, 0)` at `k = 0`.
pub fn theodorsen<T: Scalar>(k: T) -> Result<(T, T)> {
    let k = k.to_f64_lossy();
    let (f, g) = theodorsen_f64(k)?;
    Ok((T::lit(f), T::lit(g)))
}

pub(crate) fn theodorsen_f64(k: f64) -> Result<(f64, f64)> {
    if k.is_nan() || k < 0.0 {
        return Err(Error::Domain(format!(
            "reduced frequency must be >= 0, got {k}"
        )));
    }
    if k == 0.0 {
        return Ok((1.0, 0.0));
    }
    if k.is_infinite() {
        return Ok((0.5, 0.0));
    }
    let [j0, j1, y0, y1] = bessel_01(k);
    // C = (J1 - iY1) / ((J1 + Y0) + i(J0 - Y1))
    let (ar, ai) = (j1, -y1);
    let (br, bi) = (j1 + y0, j0 - y1);
    let den = br * br + bi * bi;
    Ok(((ar * br + ai * bi) / den, (ai * br - ar * bi) / den))
}

/// `[J0, J1, Y0, Y1]` at `x > 0`.
pub(crate) fn bessel_01(x: f64) -> [f64; 4] {
    if x < SERIES_LIMIT {
        bessel_series(x)
    } else {
        bessel_asymptotic(x)
    }
}

fn bessel_series(x: f64) -> [f64; 4] {
    let half = 0.5 * x;
    let y = -half * half;
    let log_term = half.ln() + EULER_GAMMA;

    // t0 = (-x²/4)^m / (m!)², t1 = (x/2) (-x²/4)^m / (m! (m+1)!)
    let mut t0 = 1.0;
    let mut t1 = half;
    let mut harmonic = 0.0; // H_m
    let (mut j0, mut j1) = (t0, t1);
    let mut s0 = 0.0; // Σ H_m t0
    let mut s1 = (2.0 * harmonic + 1.0) * t1; // Σ (H_m + H_{m+1}) t1
    for m in 1..200 {
        let mf = m as f64;
        t0 *= y / (mf * mf);
        t1 *= y / (mf * (mf + 1.0));
        harmonic += 1.0 / mf;
        let next_h = harmonic + 1.0 / (mf + 1.0);
        j0 += t0;
        j1 += t1;
        s0 += harmonic * t0;
        s1 += (harmonic + next_h) * t1;
        if t0.abs().max(t1.abs()) < 1e-18 {
            break;
        }
    }
    let pi = std::f64::consts::PI;
    let y0 = (2.0 / pi) * (log_term * j0 - s0);
    // ψ(m+1) + ψ(m+2) = -2γ + H_m + H_{m+1}
    let y1 =
        -2.0 / (pi * x) + (2.0 / pi) * half.ln() * j1 - (1.0 / pi) * (s1 - 2.0 * EULER_GAMMA * j1);
    [j0, j1, y0, y1]
}

fn bessel_asymptotic(x: f64) -> [f64; 4] {
    let pi = std::f64::consts::PI;
    let amp = (2.0 / (pi * x)).sqrt();
    let (p0, q0) = hankel_pq(0.0, x);
    let (p1, q1) = hankel_pq(1.0, x);
    let c0 = x - 0.25 * pi;
    let c1 = x - 0.75 * pi;
    [
        amp * (p0 * c0.cos() - q0 * c0.sin()),
        amp * (p1 * c1.cos() - q1 * c1.sin()),
        amp * (p0 * c0.sin() + q0 * c0.cos()),
        amp * (p1 * c1.sin() + q1 * c1.cos()),
    ]
}

/// Hankel's P and Q series, truncated at the smallest term.
fn hankel_pq(n: f64, x: f64) -> (f64, f64) {
    let mu = 4.0 * n * n;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..60 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        term *= (mu - odd * odd) / (kf * 8.0 * x);
        if term.abs() >= last || term.abs() < 1e-18 {
            break;
        }
        last = term.abs();
        // a_k / x^k contributes to P (even k, alternating) or Q (odd k)
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
    }
    (p, q)
}
