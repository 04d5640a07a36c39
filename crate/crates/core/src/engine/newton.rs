//! Seeded Newton iteration for the zeros of `F_m` in one channel.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::contour::{count_zeros_rho_box, locate_zeros, LambdaBox, RhoBox};
use super::{eval_fm_with_prime, Channel, ResonanceZero};
use crate::asymptotics::{self, model_zero, seed_indices};
use crate::error::{convergence, Error, Result};
use crate::maps::{self, RegionSpec};
use crate::special::Order;

/// Residual bound `|F_m| < 1e-8 (2/pi)` for an accepted zero.
pub const RESIDUAL_TOLERANCE: f64 = 1e-8 * 2.0 / PI;

/// Lower edge `Im lambda` of the search rectangle used for low channels.
pub const LOW_CHANNEL_IM_FLOOR: f64 = 0.02;

const MAX_ITERATIONS: usize = 50;
const STEP_TOLERANCE: f64 = 1e-11;
const MAX_HALVINGS: usize = 30;

/// Lowest order at which the model seeds are used.
pub const SEEDED_MIN_ORDER: u32 = 4;

/// Result of one Newton run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NewtonOutcome {
    pub lambda: Complex64,
    pub residual: f64,
    pub iterations: usize,
}

/// Damped Newton on `lambda -> F_m(lambda)` from `start`, staying in the
/// upper half-plane.
pub fn newton_refine(m: i64, nu: Order, v0: f64, start: Complex64) -> Result<NewtonOutcome> {
    let mut lambda = start;
    let (mut f, mut df) = eval_fm_with_prime(m, nu, lambda, v0)?;
    for it in 0..MAX_ITERATIONS {
        let r = f.abs();
        if df.is_zero() {
            return Err(convergence(format!("vanishing derivative at {lambda}")));
        }
        let step = (f / df).value();
        let mut t = 1.0;
        let mut accepted = None;
        for _ in 0..MAX_HALVINGS {
            let cand = lambda - step * t;
            if cand.im > 0.0 {
                if let Ok((fc, dfc)) = eval_fm_with_prime(m, nu, cand, v0) {
                    if fc.abs() <= r {
                        accepted = Some((cand, fc, dfc));
                        break;
                    }
                }
            }
            t *= 0.5;
        }
        let Some((cand, fc, dfc)) = accepted else {
            if r < RESIDUAL_TOLERANCE {
                return Ok(NewtonOutcome { lambda, residual: r, iterations: it });
            }
            return Err(convergence(format!("no descent from {lambda}, |F| = {r:e}")));
        };
        let moved = (cand - lambda).norm();
        lambda = cand;
        f = fc;
        df = dfc;
        if moved < STEP_TOLERANCE * (1.0 + lambda.norm()) && f.abs() < RESIDUAL_TOLERANCE {
            return Ok(NewtonOutcome {
                lambda,
                residual: f.abs(),
                iterations: it + 1,
            });
        }
    }
    if f.abs() < RESIDUAL_TOLERANCE {
        return Ok(NewtonOutcome {
            lambda,
            residual: f.abs(),
            iterations: MAX_ITERATIONS,
        });
    }
    Err(convergence(format!(
        "Newton did not settle in {MAX_ITERATIONS} steps from {start}, |F| = {:e}",
        f.abs()
    )))
}

/// Zeros of one channel plus bookkeeping of the search.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelRun {
    pub channel: Channel,
    pub sheet: i64,
    pub zeros: Vec<ResonanceZero>,
    /// Seed index (or `None` for the contour search) with the failure message.
    pub failures: Vec<(Option<i64>, String)>,
    pub seeds_tried: usize,
    /// Zeros located by contour search rather than seeded Newton.
    pub contour_derived: bool,
}

/// `rho`-plane rectangle `Re rho in [-alpha ln(nu)/nu, 0]` spanning all
/// seeds, with horizontal sides half a model spacing beyond the extreme seeds.
pub fn covering_box(nu: f64, m: i64, v0: f64, spec: &RegionSpec, alpha: f64) -> Result<RhoBox> {
    let ks = seed_indices(nu, m, spec.h_eps);
    if ks.is_empty() {
        return Err(Error::InvalidInput(format!("no seeds for nu = {nu}")));
    }
    let lo = model_zero(nu, m, v0, *ks.start()).im - PI / (2.0 * nu);
    let hi = model_zero(nu, m, v0, *ks.end()).im + PI / (2.0 * nu);
    Ok(RhoBox {
        re_min: -alpha * nu.ln() / nu,
        re_max: 0.0,
        im_min: lo,
        im_max: hi,
    })
}

fn rho_image(lambda: Complex64, nu: f64) -> Complex64 {
    maps::rho(lambda / nu).unwrap_or(Complex64::new(f64::NAN, lambda.arg()))
}

/// Seeded search for zeros of `F_m` in one channel with `nu >= 4`.
///
/// Every model zero `rho_k` with `Im rho_k` in `(-pi + h, -h)` seeds a Newton
/// run from `nu z_k`. Converged zeros with `|lambda| <= r_max` are kept;
/// zeros closer than half the local model spacing `pi |dz/drho| / 2` are
/// merged. Fails only when fewer than half of the seeds converge.
pub fn find_channel_zeros(channel: Channel, m: i64, v0: f64, spec: &RegionSpec, r_max: f64) -> Result<ChannelRun> {
    if m == 0 {
        return Err(Error::InvalidInput("zeros are sought on sheets m != 0".into()));
    }
    if channel.nu < SEEDED_MIN_ORDER {
        return Err(Error::InvalidInput(format!(
            "order {} is below the seeded range; use the contour search",
            channel.nu
        )));
    }
    let mut run = ChannelRun {
        channel,
        sheet: m,
        zeros: Vec::new(),
        failures: Vec::new(),
        seeds_tried: 0,
        contour_derived: false,
    };
    if v0 == 0.0 {
        return Ok(run);
    }
    let nu = f64::from(channel.nu);
    let order = channel.order();
    let set = asymptotics::seeds(nu, m, v0, spec)?;
    for (k, e) in &set.failures {
        run.failures.push((Some(*k), e.to_string()));
    }
    run.seeds_tried = set.seeds.len() + set.failures.len();
    let mut found: Vec<(ResonanceZero, f64)> = Vec::new();
    let mut converged = 0usize;
    for seed in &set.seeds {
        match newton_refine(m, order, v0, seed.z_k * nu) {
            Ok(out) => {
                converged += 1;
                if out.lambda.norm() > r_max {
                    continue;
                }
                let z = out.lambda / nu;
                let radius = PI / 2.0 * (z / maps::sqrt1mz2(z)).norm();
                let zero = ResonanceZero::new(out.lambda, m, channel, out.residual, Some(seed.k));
                found.push((zero, radius));
            }
            Err(e) => run.failures.push((Some(seed.k), e.to_string())),
        }
    }
    if run.seeds_tried > 0 && 2 * converged < run.seeds_tried {
        return Err(convergence(format!(
            "only {converged} of {} seeds converged for nu = {nu}, m = {m}",
            run.seeds_tried
        )));
    }
    let mut kept: Vec<(ResonanceZero, f64)> = Vec::new();
    for (z, r) in found {
        if kept
            .iter()
            .any(|(q, rq)| (q.lambda0 - z.lambda0).norm() < r.min(*rq))
        {
            continue;
        }
        kept.push((z, r));
    }
    let mut zeros: Vec<ResonanceZero> = kept.into_iter().map(|(z, _)| z).collect();
    zeros.sort_by(|a, b| {
        let ra = rho_image(a.lambda0, nu).im;
        let rb = rho_image(b.lambda0, nu).im;
        ra.total_cmp(&rb).then(a.seed_k.cmp(&b.seed_k))
    });
    run.zeros = zeros;
    Ok(run)
}

/// Contour-only search: all zeros of `F_m` with `|lambda| <= r_max` and
/// `Im lambda >= LOW_CHANNEL_IM_FLOOR`, located by subdividing the rectangle
/// `[-r_max, r_max] x [floor, r_max]`.
pub fn low_channel_zeros(channel: Channel, m: i64, v0: f64, r_max: f64) -> Result<ChannelRun> {
    let mut run = ChannelRun {
        channel,
        sheet: m,
        zeros: Vec::new(),
        failures: Vec::new(),
        seeds_tried: 0,
        contour_derived: true,
    };
    if v0 == 0.0 {
        return Ok(run);
    }
    let order = channel.order();
    let rect = LambdaBox {
        re_min: -r_max,
        re_max: r_max,
        im_min: LOW_CHANNEL_IM_FLOOR,
        im_max: r_max,
    };
    let located = locate_zeros(m, order, v0, rect)?;
    let mut zeros: Vec<ResonanceZero> = located
        .into_iter()
        .filter(|(l, _)| l.norm() <= r_max)
        .map(|(l, res)| ResonanceZero::new(l, m, channel, res, None))
        .collect();
    zeros.sort_by(|a, b| a.lambda0.norm().total_cmp(&b.lambda0.norm()).then(a.lambda0.arg().total_cmp(&b.lambda0.arg())));
    run.zeros = zeros;
    Ok(run)
}

/// Argument-principle count over the covering box, for cross-checking a
/// seeded run. Returns `(contour count, Newton zeros inside the box)`.
pub fn covering_check(run: &ChannelRun, v0: f64, spec: &RegionSpec, alpha: f64) -> Result<(i64, usize)> {
    let nu = f64::from(run.channel.nu);
    let b = covering_box(nu, run.sheet, v0, spec, alpha)?;
    let count = count_zeros_rho_box(run.sheet, run.channel.order(), v0, &b)?;
    let inside = run
        .zeros
        .iter()
        .filter(|z| b.contains(rho_image(z.lambda0, nu)))
        .count();
    Ok((count, inside))
}
