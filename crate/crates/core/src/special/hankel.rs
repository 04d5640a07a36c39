//! Hankel functions of the first kind.
//!
//! The two lowest ladder orders come from the Neumann series (small `|z|`) or
//! from the continued fraction for `H'/H` closed with the Wronskian
//! `J H' - J' H = 2i/(pi z)`. Higher orders follow by forward recurrence,
//! which is stable for `H^(1)` in the closed upper half-plane.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::bessel::SERIES_RADIUS;
use crate::error::{convergence, Result};
use crate::scaled::ScaledComplex;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const I: Complex64 = Complex64::new(0.0, 1.0);

/// `H'_mu(z) / H_mu(z)` by the Steed/Temme continued fraction
/// `-1/(2z) + i + (i/z) a_1/(b_1 + a_2/(b_2 + ...))`,
/// `a_k = (k - 1/2)^2 - mu^2`, `b_k = 2(z + ik)`.
pub(crate) fn log_derivative_cf(mu: f64, z: Complex64) -> Result<Complex64> {
    const TINY: f64 = 1e-150;
    let a = |k: f64| (k - 0.5) * (k - 0.5) - mu * mu;
    let b = |k: f64| 2.0 * (z + Complex64::new(0.0, k));
    // modified Lentz on the tail b_1 + a_2/(b_2 + ...)
    let mut f = b(1.0);
    let mut c = f;
    let mut d = Complex64::new(0.0, 0.0);
    let mut converged = false;
    for k in 2..=20_000 {
        let kf = k as f64;
        d = b(kf) + a(kf) * d;
        if d.norm() < TINY {
            d = Complex64::new(TINY, 0.0);
        }
        c = b(kf) + a(kf) / c;
        if c.norm() < TINY {
            c = Complex64::new(TINY, 0.0);
        }
        d = d.inv();
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).norm() < 4.0 * f64::EPSILON {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(convergence(format!("Hankel continued fraction at z = {z}")));
    }
    Ok(-1.0 / (2.0 * z) + I + (I / z) * (a(1.0) / f))
}

/// `Y_0(z)` and `Y_1(z)` by their Neumann series, given `J_0(z)`, `J_1(z)`.
fn neumann_y01(z: Complex64, j0: Complex64, j1: Complex64) -> (Complex64, Complex64) {
    let w = -z * z / 4.0;
    let log_half = (z / 2.0).ln();

    // Y_0 = (2/pi)(ln(z/2) + gamma) J_0 - (2/pi) sum_{k>=1} H_k w^k / (k!)^2
    let mut term = Complex64::new(1.0, 0.0);
    let mut harmonic = 0.0;
    let mut acc0 = Complex64::new(0.0, 0.0);
    for k in 1..200 {
        let kf = k as f64;
        term *= w / (kf * kf);
        harmonic += 1.0 / kf;
        let t = term * harmonic;
        acc0 += t;
        if t.norm() < 1e-18 * acc0.norm() {
            break;
        }
    }
    let y0 = (2.0 / PI) * ((log_half + EULER_GAMMA) * j0 - acc0);

    // Y_1 = (2/pi) ln(z/2) J_1 - 2/(pi z)
    //       - (1/pi)(z/2) sum_{k>=0} [psi(k+1) + psi(k+2)] w^k / (k! (k+1)!)
    let mut term = Complex64::new(1.0, 0.0);
    let mut h_k = 0.0;
    let mut acc1 = Complex64::new(0.0, 0.0);
    for k in 0..200 {
        let kf = k as f64;
        if k > 0 {
            term *= w / (kf * (kf + 1.0));
            h_k += 1.0 / kf;
        }
        let h_k1 = h_k + 1.0 / (kf + 1.0);
        let t = term * (h_k + h_k1 - 2.0 * EULER_GAMMA);
        acc1 += t;
        if k > 2 && t.norm() < 1e-18 * acc1.norm() {
            break;
        }
    }
    let y1 = (2.0 / PI) * log_half * j1 - 2.0 / (PI * z) - (z / 2.0) * acc1 / PI;
    (y0, y1)
}

/// Hankel values on the two lowest ladder indices of the order's ladder:
/// `(H_0, H_1)` for integer orders, `(H_{-1/2}, H_{1/2})` for half-integers.
///
/// `jbase` holds `J` on `(0, 1)` resp. `(-1, 0, 1)`. Requires `Im z >= 0`, `z != 0`.
pub(crate) fn base_pair(
    offset: f64,
    z: Complex64,
    jbase: &[ScaledComplex],
) -> Result<(ScaledComplex, ScaledComplex)> {
    let wronskian = ScaledComplex::from(2.0 * I / (PI * z));
    if offset == 0.0 {
        let (j0, j1) = (jbase[0], jbase[1]);
        if z.norm() <= SERIES_RADIUS {
            let (y0, y1) = neumann_y01(z, j0.value(), j1.value());
            let h0 = j0.value() + I * y0;
            let h1 = j1.value() + I * y1;
            return Ok((h0.into(), h1.into()));
        }
        let p = log_derivative_cf(0.0, z)?;
        // J_0' = -J_1
        let h0 = wronskian / (j0 * p + j1);
        let h1 = h0 * (-p);
        Ok((h0, h1))
    } else {
        let (jm, jh) = (jbase[0], jbase[1]);
        let h_half = if z.norm() <= SERIES_RADIUS {
            // Y_{1/2} = -J_{-1/2}
            jh - jm * I
        } else {
            let p = I - 1.0 / (2.0 * z);
            let jp = jm - jh * (1.0 / (2.0 * z));
            wronskian / (jh * p - jp)
        };
        // H_{-1/2} = e^{i pi/2} H_{1/2}
        Ok((h_half * I, h_half))
    }
}

/// Forward recurrence from ladder indices `(k0, k0+1)` up to `k_end`; returns
/// the values at `k_end - 1` and `k_end`.
pub(crate) fn forward(
    offset: f64,
    z: Complex64,
    k0: i64,
    pair: (ScaledComplex, ScaledComplex),
    k_end: i64,
) -> (ScaledComplex, ScaledComplex) {
    if k_end <= k0 + 1 {
        return if k_end == k0 + 1 {
            pair
        } else {
            // k_end == k0: the value below k0 is never requested by callers
            (ScaledComplex::ZERO, pair.0)
        };
    }
    let e = pair.0.exponent().max(pair.1.exponent());
    let mut prev = pair.0.mantissa() * (pair.0.exponent() - e).exp();
    let mut cur = pair.1.mantissa() * (pair.1.exponent() - e).exp();
    let mut log_scale = e;
    let mut k = k0 + 1;
    while k < k_end {
        let next = cur * (2.0 * (k as f64 + offset) / z) - prev;
        prev = cur;
        cur = next;
        k += 1;
        if cur.norm() > 1e200 {
            prev *= 1e-200;
            cur *= 1e-200;
            log_scale += 200.0 * std::f64::consts::LN_10;
        }
    }
    (
        ScaledComplex::new(prev, log_scale),
        ScaledComplex::new(cur, log_scale),
    )
}
