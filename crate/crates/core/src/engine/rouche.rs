//! Rouche rectangles around the model zeros `rho_k`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::contour::{count_zeros_rho_box, z_of_rho, RhoBox};
use super::eval_fm_scaled;
use crate::asymptotics::{model_g, model_zero, seed_indices};
use crate::error::{domain, Error, Result};
use crate::maps::{self, RegionSpec};
use crate::scaled::ScaledComplex;
use crate::special::Order;

/// Boundary samples used by the inequality check.
pub const ROUCHE_SAMPLES: usize = 256;

/// Lowest order for which boxes are built.
pub const ROUCHE_MIN_ORDER: u32 = 20;

/// Rectangle in the `rho`-plane around the model zero `rho_k`: right side on
/// `Re rho = 0`, left side on `Re rho = -alpha ln(nu)/nu`, horizontal sides
/// midway to the neighbouring model zeros.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RoucheBox {
    pub k: i64,
    pub alpha: f64,
    pub nu: u32,
    pub m: i64,
    pub v0: f64,
    /// Counter-clockwise from the lower-left corner.
    pub corners: [Complex64; 4],
}

impl RoucheBox {
    pub fn rect(&self) -> RhoBox {
        RhoBox {
            re_min: self.corners[0].re,
            re_max: self.corners[2].re,
            im_min: self.corners[0].im,
            im_max: self.corners[2].im,
        }
    }
}

/// Outcome of the boundary inequality `|f - g| < |g|`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RoucheCheck {
    /// `min (|g| - |f - g|)` over the samples.
    pub min_margin: f64,
    /// Smallest ratio `|f - g| / |g|` complement, `1 - max |f-g|/|g|`.
    pub min_relative_margin: f64,
    pub holds: bool,
}

/// `(i pi / 2) nu^2 (1 - z^2) e^{2 nu rho(z)} (F_0 - 2m G_0)(nu z)`.
pub fn rouche_f(nu: u32, m: i64, v0: f64, z: Complex64) -> Result<Complex64> {
    let n = f64::from(nu);
    let order = Order::integer(nu);
    let rho = maps::rho(z)?;
    // F_m carries (-1)^{m nu}; remove it to recover F_0 - 2m G_0
    let sign = if (m.rem_euclid(2) * i64::from(nu % 2)) % 2 == 0 { 1.0 } else { -1.0 };
    let core = eval_fm_scaled(m, order, z * n, v0)? * sign;
    let pre = Complex64::new(0.0, PI / 2.0) * n * n * (1.0 - z * z);
    Ok((core * ScaledComplex::exp(2.0 * n * rho) * pre).value())
}

/// Rectangle around `rho_k`; `k` must be interior, `Im rho_k` in
/// `(-pi + 2h, -2h)` with `h = h(0.1)`.
pub fn build_rouche_box(nu: u32, m: i64, v0: f64, k: i64, alpha: f64) -> Result<RoucheBox> {
    build_rouche_box_in(nu, m, v0, k, alpha, &RegionSpec::new(0.1)?)
}

/// As [`build_rouche_box`] with an explicit region.
pub fn build_rouche_box_in(nu: u32, m: i64, v0: f64, k: i64, alpha: f64, spec: &RegionSpec) -> Result<RoucheBox> {
    if nu < ROUCHE_MIN_ORDER {
        return Err(Error::InvalidInput(format!("Rouche boxes need nu >= {ROUCHE_MIN_ORDER}, got {nu}")));
    }
    if m == 0 || !(v0 > 0.0) || !(alpha > 1.0) {
        return Err(Error::InvalidInput(format!("need m != 0, V0 > 0, alpha > 1 (m = {m}, V0 = {v0}, alpha = {alpha})")));
    }
    let n = f64::from(nu);
    let rho_k = model_zero(n, m, v0, k);
    let h = spec.h_eps;
    if !(rho_k.im > -PI + 2.0 * h && rho_k.im < -2.0 * h) {
        return Err(domain(format!("seed {k} is not interior: Im rho_k = {}", rho_k.im)));
    }
    let half = PI / (2.0 * n);
    let left = -alpha * n.ln() / n;
    let (lo, hi) = (rho_k.im - half, rho_k.im + half);
    Ok(RoucheBox {
        k,
        alpha,
        nu,
        m,
        v0,
        corners: [
            Complex64::new(left, lo),
            Complex64::new(0.0, lo),
            Complex64::new(0.0, hi),
            Complex64::new(left, hi),
        ],
    })
}

/// Interior seed indices for `build_rouche_box_in`.
pub fn interior_indices(nu: u32, m: i64, spec: &RegionSpec) -> Vec<i64> {
    seed_indices(f64::from(nu), m, 2.0 * spec.h_eps).collect()
}

/// Samples `|g| - |f - g|` at `ROUCHE_SAMPLES` points of the boundary.
pub fn verify_rouche_box(b: &RoucheBox) -> Result<RoucheCheck> {
    let rect = b.rect();
    let n = f64::from(b.nu);
    let mut min_margin = f64::INFINITY;
    let mut min_rel = f64::INFINITY;
    for i in 0..ROUCHE_SAMPLES {
        let rho = rect.boundary_point(i as f64 / ROUCHE_SAMPLES as f64);
        let z = z_of_rho(rho)?;
        let f = rouche_f(b.nu, b.m, b.v0, z)?;
        let g = model_g(maps::rho(z)?, n, b.m, b.v0);
        let diff = (f - g).norm();
        min_margin = min_margin.min(g.norm() - diff);
        min_rel = min_rel.min(1.0 - diff / g.norm());
    }
    Ok(RoucheCheck {
        min_margin,
        min_relative_margin: min_rel,
        holds: min_margin > 0.0,
    })
}

/// Argument-principle count of zeros of `F_m` inside the box image.
pub fn count_in_rouche_box(b: &RoucheBox) -> Result<i64> {
    count_zeros_rho_box(b.m, Order::integer(b.nu), b.v0, &b.rect())
}
