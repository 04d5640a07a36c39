//! Self-contained validation suites: each runs a fixed set of numerical checks
//! and reports the measured value against its bound.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::asymptotics;
use crate::counting::log_log_slope;
use crate::engine::{
    self, build_rouche_box_in, count_in_rouche_box, find_channel_zeros, interior_indices, verify_rouche_box, Channel,
    FREE_CONSTANT,
};
use crate::error::{Error, Result};
use crate::maps::{self, RegionSpec};
use crate::special::{self, Order};

/// The available suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Special,
    Maps,
    Asymptotics,
    Rouche,
    Symmetry,
    Freecase,
    Oracle3d,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Special,
        Suite::Maps,
        Suite::Asymptotics,
        Suite::Rouche,
        Suite::Symmetry,
        Suite::Freecase,
        Suite::Oracle3d,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Special => "special",
            Suite::Maps => "maps",
            Suite::Asymptotics => "asymptotics",
            Suite::Rouche => "rouche",
            Suite::Symmetry => "symmetry",
            Suite::Freecase => "freecase",
            Suite::Oracle3d => "oracle3d",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown suite {s:?}")))
    }
}

/// One measured quantity and the interval it must fall in.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    pub passed: bool,
}

impl Check {
    /// `value < upper`.
    pub fn below(name: impl Into<String>, value: f64, upper: f64) -> Self {
        Check {
            name: name.into(),
            value,
            lower: None,
            upper: Some(upper),
            passed: value < upper,
        }
    }

    /// `value > lower`.
    pub fn above(name: impl Into<String>, value: f64, lower: f64) -> Self {
        Check {
            name: name.into(),
            value,
            lower: Some(lower),
            upper: None,
            passed: value > lower,
        }
    }

    /// `lower <= value <= upper`.
    pub fn within(name: impl Into<String>, value: f64, lower: f64, upper: f64) -> Self {
        Check {
            name: name.into(),
            value,
            lower: Some(lower),
            upper: Some(upper),
            passed: (lower..=upper).contains(&value),
        }
    }

    /// `value == expected` for integer counts.
    pub fn equal(name: impl Into<String>, value: f64, expected: f64) -> Self {
        Check {
            name: name.into(),
            value,
            lower: Some(expected),
            upper: Some(expected),
            passed: value == expected,
        }
    }
}

/// Outcome of one suite.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub v0: f64,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    fn new(suite: Suite, v0: f64, checks: Vec<Check>) -> Self {
        SuiteReport {
            suite,
            v0,
            passed: checks.iter().all(|c| c.passed),
            checks,
        }
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Runs `suite`. `v0` is the barrier height for the suites that need one;
/// the free-case suite requires `v0 = 0`.
pub fn run_suite(suite: Suite, v0: f64) -> Result<SuiteReport> {
    if !(v0 >= 0.0) || !v0.is_finite() {
        return Err(Error::InvalidInput(format!("V0 must be finite and >= 0, got {v0}")));
    }
    let checks = match suite {
        Suite::Special => special_checks()?,
        Suite::Maps => map_checks()?,
        Suite::Asymptotics => asymptotic_checks(positive(v0)?)?,
        Suite::Rouche => rouche_checks(positive(v0)?, &[40, 80])?,
        Suite::Symmetry => symmetry_checks(positive(v0)?)?,
        Suite::Freecase => {
            if v0 != 0.0 {
                return Err(Error::InvalidInput(format!("the free-case suite needs V0 = 0, got {v0}")));
            }
            free_checks()?
        }
        Suite::Oracle3d => oracle3d_checks(if v0 > 0.0 { v0 } else { 10.0 })?,
    };
    Ok(SuiteReport::new(suite, v0, checks))
}

fn positive(v0: f64) -> Result<f64> {
    if v0 > 0.0 {
        Ok(v0)
    } else {
        Err(Error::InvalidInput("this suite needs V0 > 0".into()))
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn max_of(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, f64::max)
}

/// Points of the strip `Re z in [1, 200]`, `|Im z| <= 2`.
pub fn strip_points() -> Vec<Complex64> {
    let mut pts = Vec::new();
    for re in [1.0, 1.7, 3.0, 5.5, 10.0, 17.0, 31.0, 55.0, 100.0, 150.0, 200.0] {
        for im in [-2.0, -1.0, -0.25, 0.0, 0.5, 1.5, 2.0] {
            pts.push(c(re, im));
        }
    }
    pts
}

/// `max |z (J' H - J H') + 2i/pi| / (2/pi)` over `nu = 0..=60` and the strip.
pub fn wronskian_deviation() -> Result<f64> {
    let pts = strip_points();
    let target = c(0.0, -2.0 / PI);
    let devs: Vec<f64> = (0..=60u32)
        .into_par_iter()
        .map(|n| -> Result<f64> {
            let mut worst: f64 = 0.0;
            for &z in &pts {
                let v = special::bessel_jh(Order::integer(n), z)?;
                let w = (v.jp * v.h - v.j * v.hp).value() * z;
                worst = worst.max((w - target).norm() / (2.0 / PI));
            }
            Ok(worst)
        })
        .collect::<Result<_>>()?;
    Ok(max_of(devs))
}

fn special_checks() -> Result<Vec<Check>> {
    let mut out = vec![Check::below("wronskian_strip_max_dev", wronskian_deviation()?, 1e-10)];

    let half = Order::half_odd(0);
    let mut worst_j: f64 = 0.0;
    let mut worst_h: f64 = 0.0;
    for &z in &[c(0.3, 0.0), c(1.0, 0.0), c(2.5, 0.7), c(7.0, -1.0), c(20.0, 2.0), c(0.8, 1.5)] {
        let pre = (2.0 / (PI * z)).sqrt();
        let j = special::bessel_j(half, z)?.value();
        let h = special::hankel1(half, z)?.value();
        let jx = pre * z.sin();
        let hx = c(0.0, -1.0) * pre * (c(0.0, 1.0) * z).exp();
        worst_j = worst_j.max((j - jx).norm() / jx.norm());
        worst_h = worst_h.max((h - hx).norm() / hx.norm());
    }
    out.push(Check::below("half_order_j_rel_err", worst_j, 1e-12));
    out.push(Check::below("half_order_h_rel_err", worst_h, 1e-12));

    let mut worst_semigroup: f64 = 0.0;
    for n in [0u32, 1, 4, 7] {
        let o = Order::integer(n);
        let (h, j) = (c(0.3, -1.2), c(-0.7, 0.4));
        let once = special::continue_hankel1(o, 1, h, j)?;
        let j1 = special::continue_bessel(o, 1, j);
        let twice = special::continue_hankel1(o, 1, once, j1)?;
        let direct = special::continue_hankel1(o, 2, h, j)?;
        worst_semigroup = worst_semigroup.max((twice - direct).norm() / direct.norm());
    }
    out.push(Check::below("continuation_semigroup_rel_err", worst_semigroup, 1e-15));

    let mut worst_conj: f64 = 0.0;
    for n in [0u32, 3, 12, 40] {
        for &z in &[c(1.5, 0.8), c(30.0, -1.9), c(0.4, 0.1)] {
            let a = special::bessel_j(Order::integer(n), z.conj())?;
            let b = special::bessel_j(Order::integer(n), z)?.conj();
            worst_conj = worst_conj.max(((a - b) / b).abs());
        }
    }
    out.push(Check::below("conjugation_rel_err", worst_conj, 1e-12));

    let coeffs = special::AiryCoefficients::new(2);
    out.push(Check::below("airy_c1_err", (coeffs.c[1] + 5.0 / 72.0).abs(), 1e-15));
    out.push(Check::below("airy_d1_err", (coeffs.d[1] - 7.0 / 72.0).abs(), 1e-15));
    let w = c(10.0, 0.0);
    let (ai, aip) = special::airy_asymptotic(special::AiryArgument::new(w), 3)?;
    let (ai_x, aip_x) = (special::airy_ai(w)?, special::airy_ai_prime(w)?);
    out.push(Check::below("airy_three_terms_at_10_rel_err", ((ai - ai_x) / ai_x).norm().max(((aip - aip_x) / aip_x).norm()), 1e-6));

    let mut worst_ode: f64 = 0.0;
    let step = 1e-3;
    for &w in &[c(0.5, 0.5), c(-2.0, 1.0), c(3.0, -2.0), c(6.0, 0.0), c(-6.0, 0.3)] {
        let f = |x: Complex64| special::airy_ai(x);
        let second = (f(w + step)? - f(w)? * 2.0 + f(w - step)?) / (step * step);
        let scale = f(w)?.norm().max(special::airy_ai_prime(w)?.norm());
        worst_ode = worst_ode.max((second - w * f(w)?).norm() / scale);
    }
    out.push(Check::below("airy_ode_residual", worst_ode, 1e-5));
    Ok(out)
}

/// Boundary points `k_boundary(t, +1)` for `t` spread over `(0, t0]`.
fn boundary_samples(count: usize) -> Result<Vec<Complex64>> {
    let t0 = maps::t0();
    (1..=count)
        .map(|i| maps::k_boundary(t0 * i as f64 / count as f64, 1))
        .collect()
}

fn map_checks() -> Result<Vec<Check>> {
    let z0 = 0.66274;
    let mut out = vec![
        Check::below("rho_at_i_z0_printed", (maps::rho(c(0.0, z0))? + c(0.0, PI / 2.0)).norm(), 1e-4),
        Check::below("rho_at_one", maps::rho(c(1.0, 0.0))?.norm(), 1e-12),
    ];
    let re = max_of(
        boundary_samples(100)?
            .into_iter()
            .map(|z| maps::rho(z).map(|r| r.re.abs()))
            .collect::<Result<Vec<_>>>()?,
    );
    out.push(Check::below("boundary_max_abs_re_rho", re, 1e-8));
    out.push(Check::below("t0_printed_digits", (maps::t0() - 1.19967864).abs(), 1e-7));
    out.push(Check::below("z0_printed_digits", (maps::z0() - 0.66274).abs(), 1e-4));
    out.push(Check::below("t0_tanh_relation", (maps::t0() * maps::t0().tanh() - 1.0).abs(), 1e-10));

    let mut worst_inv: f64 = 0.0;
    let mut worst_alg: f64 = 0.0;
    for (i, zb) in boundary_samples(40)?.into_iter().enumerate() {
        let offset = c(0.03 * ((i * 7) % 5) as f64 - 0.06, 0.03 * ((i * 3) % 4) as f64 - 0.045);
        let z = zb + offset;
        if z.im <= 0.0 || (z - 1.0).norm() < 0.1 || (z + 1.0).norm() < 0.1 {
            continue;
        }
        let r = maps::rho(z)?;
        let back = maps::inverse_rho(r, zb)?;
        worst_inv = worst_inv.max((back - z).norm());
        let m = maps::map_image(z)?;
        let one = c(1.0, 0.0);
        let a = (m.phi.powu(4) * (one - z * z) - m.zeta * 4.0).norm();
        let b = (m.psi * z * m.phi - 2.0).norm();
        let d = (m.chi * 16.0 * m.zeta - (4.0 - z * z * m.phi.powu(6))).norm();
        let e = (m.zeta.powf(1.5) * (2.0 / 3.0) - m.rho).norm();
        worst_alg = worst_alg.max(a).max(b).max(d).max(e);
    }
    out.push(Check::below("inverse_rho_roundtrip", worst_inv, 1e-10));
    out.push(Check::below("map_image_identities", worst_alg, 1e-10));
    Ok(out)
}

/// Orders of the asymptotic ladder.
pub const ASYMPTOTIC_ORDERS: [f64; 4] = [16.0, 32.0, 64.0, 128.0];

/// Measured error-decay slopes of the leading models and truncations.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AsymptoticSlopes {
    pub f0_leading: f64,
    pub g0_leading: f64,
    pub uniform_bessel: f64,
    pub uniform_hankel: f64,
    pub z_tilde: f64,
    pub rho_tilde: f64,
    pub zeta_ratio: f64,
    pub phi_ratio: f64,
    pub exp_factor: f64,
}

fn slope_of(errors: &[f64]) -> Result<f64> {
    let pts: Vec<(f64, f64)> = ASYMPTOTIC_ORDERS.iter().copied().zip(errors.iter().copied()).collect();
    log_log_slope(&pts)
}

/// Regresses `log(error)` on `log nu` over [`ASYMPTOTIC_ORDERS`] at fixed
/// points of the boundary of the eye region.
pub fn asymptotic_slopes(v0: f64) -> Result<AsymptoticSlopes> {
    let top = c(0.0, maps::z0());
    let side = maps::k_boundary(0.6, 1)?;
    let mut e = vec![Vec::new(); 9];
    for &nu in &ASYMPTOTIC_ORDERS {
        let order = Order::from_f64(nu)?;
        let f0 = engine::eval_f0(order, top * nu, v0)?;
        let f0l = asymptotics::f0_leading(nu, top, v0)?;
        e[0].push((f0 - f0l).norm() / f0l.norm());
        let g0 = engine::eval_g0(order, side * nu, v0)?.value;
        let g0l = asymptotics::g0_leading(nu, side, v0)?;
        e[1].push((g0 - g0l).norm() / g0l.norm());
        let j = special::bessel_j(order, top * nu)?;
        let jl = asymptotics::uniform_bessel_leading(nu, top)?;
        e[2].push(((j - jl) / jl).abs());
        let h = special::hankel1(order, top * nu)?;
        let hl = asymptotics::uniform_hankel_leading(nu, top)?;
        e[3].push(((h - hl) / hl).abs());
        let a = asymptotics::aux_expansions(nu, side, v0)?;
        let x = asymptotics::aux_exact(nu, side, v0)?;
        e[4].push((a.z_tilde_1 - x.z_tilde_1).norm());
        e[5].push((a.rho_tilde_1 - x.rho_tilde_1).norm());
        e[6].push((a.zeta_ratio_1 - x.zeta_ratio_1).norm());
        e[7].push((a.phi_ratio_1 - x.phi_ratio_1).norm());
        e[8].push((a.exp_factor_2 - x.exp_factor_2).norm());
    }
    Ok(AsymptoticSlopes {
        f0_leading: slope_of(&e[0])?,
        g0_leading: slope_of(&e[1])?,
        uniform_bessel: slope_of(&e[2])?,
        uniform_hankel: slope_of(&e[3])?,
        z_tilde: slope_of(&e[4])?,
        rho_tilde: slope_of(&e[5])?,
        zeta_ratio: slope_of(&e[6])?,
        phi_ratio: slope_of(&e[7])?,
        exp_factor: slope_of(&e[8])?,
    })
}

fn asymptotic_checks(v0: f64) -> Result<Vec<Check>> {
    let s = asymptotic_slopes(v0)?;
    let band = |name: &str, value: f64, expected: f64| Check::within(name, value, expected - 0.4, expected + 0.4);
    Ok(vec![
        band("slope_f0_leading", s.f0_leading, -2.0),
        band("slope_g0_leading", s.g0_leading, -1.0),
        band("slope_uniform_bessel", s.uniform_bessel, -1.0),
        band("slope_uniform_hankel", s.uniform_hankel, -1.0),
        band("slope_z_tilde", s.z_tilde, -4.0),
        band("slope_rho_tilde", s.rho_tilde, -4.0),
        band("slope_zeta_ratio", s.zeta_ratio, -4.0),
        band("slope_phi_ratio", s.phi_ratio, -4.0),
        band("slope_exp_factor", s.exp_factor, -3.0),
    ])
}

/// Per-order summary of the boxes around the interior model zeros.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RoucheSummary {
    pub nu: u32,
    pub boxes: usize,
    pub min_margin: f64,
    pub min_relative_margin: f64,
    pub failing_boxes: Vec<i64>,
    /// Seed indices whose box does not contain exactly one zero.
    pub miscounted_boxes: Vec<i64>,
}

/// Builds and checks every interior box for `nu`, `m = 1`, `alpha = 1.5`,
/// `eps = 0.1`.
pub fn rouche_summary(nu: u32, v0: f64) -> Result<RoucheSummary> {
    let spec = RegionSpec::new(0.1)?;
    let ks = interior_indices(nu, 1, &spec);
    let results: Vec<(i64, f64, f64, i64)> = ks
        .into_par_iter()
        .map(|k| -> Result<(i64, f64, f64, i64)> {
            let b = build_rouche_box_in(nu, 1, v0, k, 1.5, &spec)?;
            let chk = verify_rouche_box(&b)?;
            let count = count_in_rouche_box(&b)?;
            Ok((k, chk.min_margin, chk.min_relative_margin, count))
        })
        .collect::<Result<_>>()?;
    Ok(RoucheSummary {
        nu,
        boxes: results.len(),
        min_margin: results.iter().map(|r| r.1).fold(f64::INFINITY, f64::min),
        min_relative_margin: results.iter().map(|r| r.2).fold(f64::INFINITY, f64::min),
        failing_boxes: results.iter().filter(|r| !(r.1 > 0.0)).map(|r| r.0).collect(),
        miscounted_boxes: results.iter().filter(|r| r.3 != 1).map(|r| r.0).collect(),
    })
}

fn rouche_checks(v0: f64, orders: &[u32]) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for &nu in orders {
        let s = rouche_summary(nu, v0)?;
        out.push(Check::above(format!("nu{nu}_interior_boxes"), s.boxes as f64, 0.0));
        out.push(Check::above(format!("nu{nu}_min_margin"), s.min_margin, 0.0));
        out.push(Check::equal(format!("nu{nu}_boxes_without_one_zero"), s.miscounted_boxes.len() as f64, 0.0));
    }
    Ok(out)
}

/// `max |F_{-m}(-conj w)| / (2/pi)` over the zeros `w` of `F_m` at order `nu`.
pub fn symmetry_deviation(nu: u32, m: i64, v0: f64) -> Result<(usize, f64)> {
    let spec = RegionSpec::new(0.1)?;
    let run = find_channel_zeros(Channel::new(nu, 2)?, m, v0, &spec, f64::INFINITY)?;
    let mut worst: f64 = 0.0;
    for z in &run.zeros {
        let mirrored = -z.lambda0.conj();
        let v = engine::eval_fm(-m, Order::integer(nu), mirrored, v0)?;
        worst = worst.max(v.norm() / (2.0 / PI));
    }
    Ok((run.zeros.len(), worst))
}

fn symmetry_checks(v0: f64) -> Result<Vec<Check>> {
    let (count, dev) = symmetry_deviation(20, 1, v0)?;
    Ok(vec![
        Check::above("nu20_zero_count", count as f64, 0.0),
        Check::below("nu20_mirrored_residual", dev, 1e-6),
    ])
}

/// Deterministic points of the upper strip `Re in [1, 200]`, `Im in [0, 2]`.
pub fn free_strip_points(count: usize) -> Vec<Complex64> {
    let golden = 0.618_033_988_749_895;
    (0..count)
        .map(|i| {
            let u = (i as f64 + 0.5) / count as f64;
            let v = ((i as f64 + 1.0) * golden).fract();
            c(1.0 + 199.0 * u, 2.0 * v)
        })
        .collect()
}

/// `max |F_m - (-1)^{m nu} (-2i/pi)| / (2/pi)` for `V0 = 0` over the
/// sheets `m in {1, 2, -1}`, orders `{1, 5, 20}` and `samples` strip points.
pub fn free_case_deviation(samples: usize) -> Result<f64> {
    let pts = free_strip_points(samples);
    let mut worst: f64 = 0.0;
    for m in [1i64, 2, -1] {
        for n in [1u32, 5, 20] {
            let sign = if (m * i64::from(n)).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            for &l in &pts {
                let f = engine::eval_fm(m, Order::integer(n), l, 0.0)?;
                worst = worst.max((f - FREE_CONSTANT * sign).norm() / (2.0 / PI));
            }
        }
    }
    Ok(worst)
}

fn free_checks() -> Result<Vec<Check>> {
    let mut out = vec![Check::below("fm_constant_dev", free_case_deviation(50)?, 1e-9)];
    let pts = free_strip_points(20);
    let mut g0: f64 = 0.0;
    let mut prime: f64 = 0.0;
    for n in [0u32, 3, 20] {
        for &l in &pts {
            g0 = g0.max(engine::eval_g0(Order::integer(n), l, 0.0)?.value.norm());
            prime = prime.max(engine::eval_fm_prime(1, Order::integer(n), l, 0.0)?.norm());
        }
    }
    out.push(Check::below("g0_abs", g0, 1e-12));
    out.push(Check::below("fm_prime_abs", prime, 1e-300));
    let spec = RegionSpec::new(0.1)?;
    let run = find_channel_zeros(Channel::new(20, 2)?, 1, 0.0, &spec, 100.0)?;
    out.push(Check::equal("channel_zero_count", run.zeros.len() as f64, 0.0));
    Ok(out)
}

/// `F_0` at order `1/2` assembled from the elementary closed forms.
pub fn half_order_closed_form(lambda: Complex64, v0: f64) -> Complex64 {
    let i = c(0.0, 1.0);
    let s = engine::sigma(lambda, v0);
    let j = |x: Complex64| (2.0 / (PI * x)).sqrt() * x.sin();
    let jp = |x: Complex64| (2.0 / (PI * x)).sqrt() * (x.cos() - x.sin() / (2.0 * x));
    let h = |x: Complex64| -i * (2.0 / (PI * x)).sqrt() * (i * x).exp();
    let hp = |x: Complex64| -i * (2.0 / (PI * x)).sqrt() * (i * x).exp() * (i - 1.0 / (2.0 * x));
    s * jp(s) * h(lambda) - lambda * j(s) * hp(lambda)
}

/// Points for the order-`1/2` comparison: a lattice over `Re in [-30, 30]`,
/// `Im in [0.1, 3]`, avoiding `lambda^2 = V0`.
pub fn oracle3d_points(count: usize, v0: f64) -> Vec<Complex64> {
    let golden = 0.618_033_988_749_895;
    (0..count)
        .map(|i| {
            let u = (i as f64 + 0.5) / count as f64;
            let v = ((i as f64 + 1.0) * golden).fract();
            c(-30.0 + 60.0 * u, 0.1 + 2.9 * v)
        })
        .filter(|l| (l * l - v0).norm() > 1e-3)
        .collect()
}

/// Worst relative gap between the evaluator path and the closed forms.
pub fn oracle3d_deviation(v0: f64) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for l in oracle3d_points(100, v0) {
        let a = engine::eval_f0(Order::half_odd(0), l, v0)?;
        let b = half_order_closed_form(l, v0);
        worst = worst.max((a - b).norm() / b.norm());
    }
    Ok(worst)
}

fn oracle3d_checks(v0: f64) -> Result<Vec<Check>> {
    Ok(vec![Check::below("half_order_f0_rel_err", oracle3d_deviation(v0)?, 1e-10)])
}
