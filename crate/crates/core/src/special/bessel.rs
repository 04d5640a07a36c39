//! Bessel functions of the first kind on a ladder of orders `k + offset`.
//!
//! Small arguments use the power series. Otherwise a Miller backward
//! recurrence is normalized by `exp(-iz) = J_0 + 2 sum (-i)^k J_k` for integer
//! ladders and by the elementary `J_{+-1/2}` for half-integer ladders.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{convergence, Result};
use crate::scaled::ScaledComplex;

/// Radius below which the power series is used directly.
pub(crate) const SERIES_RADIUS: f64 = 2.0;

const RESCALE_AT: f64 = 1e200;
const RESCALE_BY: f64 = 1e-200;

/// `ln Gamma(nu + 1)` for integer or half-odd-integer `nu >= -1/2`.
pub(crate) fn ln_gamma_plus_one(nu: f64) -> f64 {
    if nu.fract() == 0.0 {
        (2..=nu as u64).map(|k| (k as f64).ln()).sum()
    } else {
        let mut acc = 0.5 * PI.ln();
        let mut x = 0.5;
        while x <= nu + 0.25 {
            acc += x.ln();
            x += 1.0;
        }
        acc
    }
}

/// Power series `J_nu(z) = (z/2)^nu / Gamma(nu+1) * sum (-z^2/4)^k / (k! (nu+1)_k)`.
pub(crate) fn series_j(nu: f64, z: Complex64) -> ScaledComplex {
    if z.norm() == 0.0 {
        return if nu == 0.0 {
            ScaledComplex::ONE
        } else {
            ScaledComplex::ZERO
        };
    }
    let w = -z * z / 4.0;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for k in 1..400 {
        let kf = k as f64;
        term *= w / (kf * (nu + kf));
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() {
            break;
        }
    }
    let ln_prefactor = nu * (z / 2.0).ln() - ln_gamma_plus_one(nu);
    ScaledComplex::exp(ln_prefactor) * sum
}

/// Starting index for the backward recurrence: run the recurrence forward
/// from `n0` until the dominant solution has grown by `1e15`.
fn miller_start(n0: i64, offset: f64, z: Complex64) -> Result<i64> {
    let mut prev = Complex64::new(0.0, 0.0);
    let mut cur = Complex64::new(1.0, 0.0);
    let mut n = n0;
    while n < n0 + 20_000 {
        let next = cur * (2.0 * (n as f64 + offset) / z) - prev;
        prev = cur;
        cur = next;
        n += 1;
        if cur.norm() > 1e15 {
            return Ok(n + 4);
        }
    }
    Err(convergence(format!("Miller start index not found for z = {z}")))
}

/// `J_{k+offset}(z)` for each ladder index in `ks` (ascending, `ks[0] >= k_min`).
///
/// Requires `Im z >= 0` and `|z| > SERIES_RADIUS`.
fn miller(offset: f64, z: Complex64, ks: &[i64]) -> Result<Vec<ScaledComplex>> {
    if offset == 0.0 || (ks.contains(&-1) && ks.contains(&0)) {
        return miller_captured(offset, z, ks);
    }
    // the half-integer normalization needs the orders -1/2 and 1/2
    let mut all: Vec<i64> = ks.iter().copied().chain([-1, 0]).collect();
    all.sort_unstable();
    all.dedup();
    let vals = miller_captured(offset, z, &all)?;
    Ok(ks.iter().map(|k| vals[all.binary_search(k).expect("captured")]).collect())
}

fn miller_captured(offset: f64, z: Complex64, ks: &[i64]) -> Result<Vec<ScaledComplex>> {
    debug_assert!(z.im >= 0.0);
    let k_min: i64 = if offset == 0.0 { 0 } else { -1 };
    let k_top = *ks.last().expect("nonempty capture list");
    let n0 = (k_top + 1).max(z.norm().ceil() as i64 + 1);
    let top = miller_start(n0, offset, z)?;

    let mut caps: Vec<(Complex64, f64)> = vec![(Complex64::new(0.0, 0.0), 0.0); ks.len()];
    let mut next = Complex64::new(0.0, 0.0); // f_{n+1}
    let mut cur = Complex64::new(1.0, 0.0); // f_n
    let mut log_scale = 0.0;
    let mut sum = Complex64::new(0.0, 0.0);
    // (-i)^n for the integer normalization sum
    const PHASE: [Complex64; 4] = [
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, -1.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, 1.0),
    ];

    let mut n = top;
    loop {
        if let Ok(pos) = ks.binary_search(&n) {
            caps[pos] = (cur, log_scale);
        }
        if offset == 0.0 {
            let w = if n == 0 { 1.0 } else { 2.0 };
            sum += PHASE[(n.rem_euclid(4)) as usize] * cur * w;
        }
        if n == k_min {
            break;
        }
        let prev = cur * (2.0 * (n as f64 + offset) / z) - next;
        next = cur;
        cur = prev;
        n -= 1;
        if cur.norm() > RESCALE_AT {
            cur *= RESCALE_BY;
            next *= RESCALE_BY;
            sum *= RESCALE_BY;
            log_scale -= RESCALE_BY.ln();
        }
    }

    let norm = if offset == 0.0 {
        ScaledComplex::exp(Complex64::new(0.0, -1.0) * z) / ScaledComplex::new(sum, log_scale)
    } else {
        // J_{1/2} = sqrt(2/(pi z)) sin z, J_{-1/2} = sqrt(2/(pi z)) cos z
        let e_minus = ScaledComplex::exp(Complex64::new(0.0, -1.0) * z);
        let e2 = (Complex64::new(0.0, 2.0) * z).exp();
        let pre = (2.0 / (PI * z)).sqrt();
        let sin_part = (e2 - 1.0) / Complex64::new(0.0, 2.0);
        let cos_part = (e2 + 1.0) / 2.0;
        let pos_half = ks.binary_search(&0).expect("half ladder captures index 0");
        let pos_mhalf = ks.binary_search(&-1).expect("half ladder captures index -1");
        if sin_part.norm() >= cos_part.norm() {
            let (f, s) = caps[pos_half];
            e_minus * (pre * sin_part) / ScaledComplex::new(f, s)
        } else {
            let (f, s) = caps[pos_mhalf];
            e_minus * (pre * cos_part) / ScaledComplex::new(f, s)
        }
    };

    Ok(caps
        .into_iter()
        .map(|(f, s)| ScaledComplex::new(f, s) * norm)
        .collect())
}

/// `J_{k+offset}(z)` for the (ascending) ladder indices `ks`; any `z`.
pub(crate) fn j_ladder(offset: f64, z: Complex64, ks: &[i64]) -> Result<Vec<ScaledComplex>> {
    let z = canonical(z);
    if z.norm() <= SERIES_RADIUS {
        return Ok(ks
            .iter()
            .map(|&k| series_j(k as f64 + offset, z))
            .collect());
    }
    if z.im < 0.0 {
        let vals = miller(offset, z.conj(), ks)?;
        return Ok(vals.into_iter().map(|v| v.conj()).collect());
    }
    miller(offset, z, ks)
}

/// Replaces a negative-zero imaginary part so that principal branches take
/// the upper-side limit on the negative real axis.
pub(crate) fn canonical(z: Complex64) -> Complex64 {
    if z.im == 0.0 {
        Complex64::new(z.re, 0.0)
    } else {
        z
    }
}
