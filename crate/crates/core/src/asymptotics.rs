//! Leading-order large-`nu` models: uniform asymptotics of `J_nu(nu z)` and
//! `H^(1)_nu(nu z)`, expansions in the perturbed variable
//! `z~ = (z^2 - V0/nu^2)^{1/2}`, the leading forms of `F_0` and `G_0`, and the
//! model function `g(rho) = nu^2 e^{2 nu rho} - i m V0 / 4` with its zeros.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::maps::{self, RegionSpec};
use crate::scaled::ScaledComplex;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// A zero of the model function and its preimage in the `z`-plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticSeed {
    pub k: i64,
    pub rho_k: Complex64,
    pub z_k: Complex64,
    pub nu: f64,
    pub m: i64,
}

/// Seeds that mapped back to the `z`-plane, plus indices that failed.
#[derive(Clone, Debug, PartialEq)]
pub struct SeedSet {
    pub seeds: Vec<AsymptoticSeed>,
    pub failures: Vec<(i64, Error)>,
}

/// Truncated expansions in `1/nu` of quantities built from `z~`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuxExpansion {
    /// `z - V0/(2 nu^2 z)`
    pub z_tilde_1: Complex64,
    /// `rho + V0 sqrt(1-z^2) / (2 nu^2 z^2)`
    pub rho_tilde_1: Complex64,
    /// `1 + V0 sqrt(1-z^2) / (3 nu^2 z^2 rho)`, approximating `zeta(z~)/zeta(z)`
    pub zeta_ratio_1: Complex64,
    /// `1 - V0 / (4 nu^2 (1-z^2))`, approximating `((1-z^2)/(1-z~^2))^{1/4}`
    pub phi_ratio_1: Complex64,
    /// `1 - x + x^2/2` with `x = V0 sqrt(1-z^2)/(2 nu z^2)`, approximating `e^{-nu(rho~ - rho)}`
    pub exp_factor_2: Complex64,
}

fn check_nu(nu: f64, min: f64) -> Result<()> {
    if !(nu >= min) || !nu.is_finite() {
        return Err(domain(format!("order {nu} below the asymptotic range (>= {min})")));
    }
    Ok(())
}

fn check_point(z: Complex64) -> Result<maps::MapImage> {
    maps::map_image(z)
}

/// `(-2i/pi) (1 - V0 sqrt(1-z^2) / (2 nu z^2))`.
pub fn f0_leading(nu: f64, z: Complex64, v0: f64) -> Result<Complex64> {
    check_nu(nu, 4.0)?;
    let m = check_point(z)?;
    Ok(-2.0 * I / PI * (1.0 - v0 * m.sqrt1mz2 / (2.0 * nu * z * z)))
}

/// `(e^{-2 nu rho} / 2 pi) V0 / (2 nu^2 (1 - z^2))`.
pub fn g0_leading(nu: f64, z: Complex64, v0: f64) -> Result<Complex64> {
    check_nu(nu, 4.0)?;
    let m = check_point(z)?;
    let e = ScaledComplex::exp(-2.0 * nu * m.rho);
    let bracket = v0 / (2.0 * nu * nu * (1.0 - z * z));
    Ok((e * (bracket / (2.0 * PI))).value())
}

fn uniform_point(nu: f64, z: Complex64) -> Result<maps::MapImage> {
    check_nu(nu, 8.0)?;
    if (z - 1.0).norm() <= 0.1 || (z + 1.0).norm() <= 0.1 {
        return Err(domain(format!("z = {z} within 0.1 of a turning point")));
    }
    check_point(z)
}

fn quarter(w: Complex64) -> Complex64 {
    (0.25 * w.ln()).exp()
}

/// `phi e^{-nu rho} / (2 sqrt(pi) nu^{1/2} zeta^{1/4})`, leading term of `J_nu(nu z)`.
pub fn uniform_bessel_leading(nu: f64, z: Complex64) -> Result<ScaledComplex> {
    let m = uniform_point(nu, z)?;
    let pre = m.phi / (2.0 * PI.sqrt() * nu.sqrt() * quarter(m.zeta));
    Ok(ScaledComplex::exp(-nu * m.rho) * pre)
}

/// `-i phi e^{nu rho} / (sqrt(pi) nu^{1/2} zeta^{1/4})`, leading term of `H^(1)_nu(nu z)`.
pub fn uniform_hankel_leading(nu: f64, z: Complex64) -> Result<ScaledComplex> {
    let m = uniform_point(nu, z)?;
    let pre = -I * m.phi / (PI.sqrt() * nu.sqrt() * quarter(m.zeta));
    Ok(ScaledComplex::exp(nu * m.rho) * pre)
}

/// `psi zeta^{1/4} e^{-nu rho} / (2 sqrt(pi) nu^{1/2})`, leading term of `J_nu'(nu z)`.
pub fn uniform_bessel_prime_leading(nu: f64, z: Complex64) -> Result<ScaledComplex> {
    let m = uniform_point(nu, z)?;
    let pre = m.psi * quarter(m.zeta) / (2.0 * PI.sqrt() * nu.sqrt());
    Ok(ScaledComplex::exp(-nu * m.rho) * pre)
}

/// `i psi zeta^{1/4} e^{nu rho} / (sqrt(pi) nu^{1/2})`, leading term of `H^(1)_nu'(nu z)`.
pub fn uniform_hankel_prime_leading(nu: f64, z: Complex64) -> Result<ScaledComplex> {
    let m = uniform_point(nu, z)?;
    let pre = I * m.psi * quarter(m.zeta) / (PI.sqrt() * nu.sqrt());
    Ok(ScaledComplex::exp(nu * m.rho) * pre)
}

fn aux_point(z: Complex64) -> Result<maps::MapImage> {
    if z.norm() <= 0.2 {
        return Err(domain(format!("|z| = {} too small for the expansions", z.norm())));
    }
    check_point(z)
}

/// The printed truncations at `(nu, z, V0)`.
pub fn aux_expansions(nu: f64, z: Complex64, v0: f64) -> Result<AuxExpansion> {
    check_nu(nu, 1.0)?;
    let m = aux_point(z)?;
    let s = m.sqrt1mz2;
    let nu2 = nu * nu;
    let x = v0 * s / (2.0 * nu * z * z);
    Ok(AuxExpansion {
        z_tilde_1: z - v0 / (2.0 * nu2 * z),
        rho_tilde_1: m.rho + v0 * s / (2.0 * nu2 * z * z),
        zeta_ratio_1: 1.0 + v0 * s / (3.0 * nu2 * z * z * m.rho),
        phi_ratio_1: 1.0 - v0 / (4.0 * nu2 * (1.0 - z * z)),
        exp_factor_2: 1.0 - x + x * x / 2.0,
    })
}

/// The quantities the truncations approximate, evaluated exactly.
pub fn aux_exact(nu: f64, z: Complex64, v0: f64) -> Result<AuxExpansion> {
    check_nu(nu, 1.0)?;
    let m = aux_point(z)?;
    let zt = z_tilde(nu, z, v0);
    let mt = maps::map_image(zt)?;
    let one = Complex64::new(1.0, 0.0);
    Ok(AuxExpansion {
        z_tilde_1: zt,
        rho_tilde_1: mt.rho,
        zeta_ratio_1: mt.zeta / m.zeta,
        phi_ratio_1: quarter((one - z * z) / (one - zt * zt)),
        exp_factor_2: (-nu * (mt.rho - m.rho)).exp(),
    })
}

/// `z~ = z (1 - V0/(nu^2 z^2))^{1/2}`, principal square root.
pub fn z_tilde(nu: f64, z: Complex64, v0: f64) -> Complex64 {
    z * (1.0 - v0 / (nu * nu * z * z)).sqrt()
}

/// `nu^2 e^{2 nu rho} - i m V0 / 4`.
pub fn model_g(rho: Complex64, nu: f64, m: i64, v0: f64) -> Complex64 {
    nu * nu * (2.0 * nu * rho).exp() - I * (m as f64) * v0 / 4.0
}

/// Zero of the model function with index `k`:
/// `ln(|m| V0/4)/(2 nu) - ln(nu)/nu + i (pi/nu)(k + sgn(m)/4)`.
pub fn model_zero(nu: f64, m: i64, v0: f64, k: i64) -> Complex64 {
    let sg = m.signum() as f64;
    let re = ((m.abs() as f64) * v0 / 4.0).ln() / (2.0 * nu) - nu.ln() / nu;
    Complex64::new(re, PI / nu * (k as f64 + sg / 4.0))
}

/// Indices `k` with `Im rho_k` strictly inside `(-pi + h, -h)`.
pub fn seed_indices(nu: f64, m: i64, h: f64) -> std::ops::RangeInclusive<i64> {
    let sg = m.signum() as f64;
    let lo = ((-PI + h) * nu / PI - sg / 4.0).floor() as i64 + 1;
    let hi = (-h * nu / PI - sg / 4.0).ceil() as i64 - 1;
    lo..=hi
}

/// All model zeros with `Im rho_k` in `(-pi + h(eps), -h(eps))`, mapped back
/// through `rho`. Newton for each preimage starts from the boundary point
/// with the same `Im rho`.
pub fn seeds(nu: f64, m: i64, v0: f64, spec: &RegionSpec) -> Result<SeedSet> {
    check_nu(nu, 4.0)?;
    if m == 0 {
        return Err(Error::InvalidInput("seeds need a sheet m != 0".into()));
    }
    if !(v0 > 0.0) {
        return Err(Error::InvalidInput(format!("seeds need V0 > 0, got {v0}")));
    }
    let mut out = SeedSet {
        seeds: Vec::new(),
        failures: Vec::new(),
    };
    for k in seed_indices(nu, m, spec.h_eps) {
        let rho_k = model_zero(nu, m, v0, k);
        let found = maps::boundary_point_with_im_rho(rho_k.im)
            .and_then(|start| maps::inverse_rho(rho_k, start));
        match found {
            Ok(z_k) => out.seeds.push(AsymptoticSeed {
                k,
                rho_k,
                z_k,
                nu,
                m,
            }),
            Err(e) => out.failures.push((k, e)),
        }
    }
    Ok(out)
}
