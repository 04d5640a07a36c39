//! Multi-channel resonance counts `n(r)`, their order of growth, and the
//! log-integral order diagnostic.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::engine::{self, Channel, ChannelRun, StepPotential, SEEDED_MIN_ORDER};
use crate::error::{convergence, Error, Result};
use crate::maps::{self, RegionSpec};
use crate::scaled::ScaledComplex;

/// Minimum number of samples inside the fit window.
pub const MIN_FIT_SAMPLES: usize = 5;

/// Dimension of the degree-`ell` spherical harmonics on `S^{d-1}`:
/// `C(ell+d-1, ell) - C(ell+d-3, ell-2)`.
pub fn harmonic_multiplicity(ell: u32, d: u32) -> u64 {
    fn binom(n: u64, k: u64) -> u128 {
        let k = k.min(n - k);
        (0..k).fold(1u128, |acc, i| acc * u128::from(n - i) / u128::from(i + 1))
    }
    let (l, d) = (u64::from(ell), u64::from(d));
    if d == 2 {
        return if l == 0 { 1 } else { 2 };
    }
    let first = binom(l + d - 1, l);
    let second = if l >= 2 { binom(l + d - 3, l - 2) } else { 0 };
    (first - second) as u64
}

/// Sampled counting function on one sheet with its fitted growth order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountingReport {
    pub potential: StepPotential,
    pub sheet: i64,
    /// `(r, n(r))`, `n` weighted by channel multiplicity.
    pub samples: Vec<(f64, u64)>,
    pub fitted_order: Option<f64>,
    pub fit_window: (f64, f64),
    /// Weighted zeros found from model seeds (orders >= 4).
    pub seed_total: u64,
    /// Weighted zeros found by contour search (orders < 4), if any channel used it.
    pub contour_total: Option<u64>,
    /// Per-channel weighted totals at `r_max`, ascending in order.
    pub per_channel: Vec<(u32, u64)>,
    pub warnings: Vec<String>,
}

/// Options for [`assemble_counting`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CountingOptions {
    /// Smallest grid radius; defaults to `r_max / 3`.
    pub r_min: Option<f64>,
    /// Include channels `nu < 4` through the contour search.
    pub low_channels: bool,
}

impl Default for CountingOptions {
    fn default() -> Self {
        Self {
            r_min: None,
            low_channels: true,
        }
    }
}

/// Geometric grid of `points` radii from `r_min` to `r_max`.
pub fn radius_grid(r_min: f64, r_max: f64, points: usize) -> Vec<f64> {
    if points == 1 {
        return vec![r_max];
    }
    let ratio = (r_max / r_min).ln();
    (0..points)
        .map(|i| {
            if i + 1 == points {
                r_max
            } else {
                r_min * (ratio * i as f64 / (points - 1) as f64).exp()
            }
        })
        .collect()
}

/// Highest order that can contribute a zero with `|lambda| <= r`.
pub fn channel_cutoff(r_max: f64) -> u32 {
    (r_max / maps::z0() + 2.0).floor() as u32
}

/// Runs every channel with `nu <= r_max / z0 + 2` and counts zeros with
/// `|lambda| <= r` on a geometric grid, weighted by multiplicity.
pub fn assemble_counting(
    potential: StepPotential,
    m: i64,
    r_max: f64,
    grid_points: usize,
    spec: &RegionSpec,
    options: CountingOptions,
) -> Result<CountingReport> {
    if m == 0 {
        return Err(Error::InvalidInput("counting needs a sheet m != 0".into()));
    }
    if !(r_max >= 20.0) {
        return Err(Error::InvalidInput(format!("r_max must be >= 20, got {r_max}")));
    }
    if grid_points < 2 {
        return Err(Error::InvalidInput("need at least two grid points".into()));
    }
    let r_min = options.r_min.unwrap_or(r_max / 3.0);
    if !(r_min > 0.0 && r_min < r_max) {
        return Err(Error::InvalidInput(format!("r_min = {r_min} must lie in (0, r_max)")));
    }
    let offset = (potential.d - 2) / 2;
    let top = channel_cutoff(r_max);
    let channels: Vec<Channel> = (0..=top.saturating_sub(offset))
        .map(|ell| Channel::new(ell, potential.d))
        .collect::<Result<_>>()?;
    let runs: Vec<(Channel, Result<ChannelRun>)> = channels
        .par_iter()
        .map(|&ch| {
            let run = if ch.nu >= SEEDED_MIN_ORDER {
                engine::find_channel_zeros(ch, m, potential.v0, spec, r_max)
            } else if options.low_channels {
                engine::low_channel_zeros(ch, m, potential.v0, r_max)
            } else {
                return (ch, Ok(empty_run(ch, m)));
            };
            (ch, run)
        })
        .collect();

    let grid = radius_grid(r_min, r_max, grid_points);
    let mut counts = vec![0u64; grid.len()];
    let mut warnings = Vec::new();
    let mut seed_total = 0u64;
    let mut contour_total: Option<u64> = None;
    let mut per_channel = Vec::new();
    for (ch, run) in runs {
        let run = match run {
            Ok(r) => r,
            Err(e) => {
                warnings.push(format!("channel nu = {}: {e}", ch.nu));
                continue;
            }
        };
        if !run.failures.is_empty() {
            warnings.push(format!("channel nu = {}: {} seeds failed", ch.nu, run.failures.len()));
        }
        let weight = ch.multiplicity;
        for (i, &r) in grid.iter().enumerate() {
            let n = run.zeros.iter().filter(|z| z.lambda0.norm() <= r).count() as u64;
            counts[i] += n * weight;
        }
        let total = run.zeros.len() as u64 * weight;
        if run.contour_derived {
            *contour_total.get_or_insert(0) += total;
        } else {
            seed_total += total;
        }
        per_channel.push((ch.nu, total));
    }
    let samples: Vec<(f64, u64)> = grid.into_iter().zip(counts).collect();
    let mut report = CountingReport {
        potential,
        sheet: m,
        samples,
        fitted_order: None,
        fit_window: fit_window(r_min, r_max),
        seed_total,
        contour_total,
        per_channel,
        warnings,
    };
    match fit_order(&report) {
        Ok(p) => report.fitted_order = Some(p),
        Err(e) => report.warnings.push(format!("order fit: {e}")),
    }
    Ok(report)
}

fn empty_run(channel: Channel, m: i64) -> ChannelRun {
    ChannelRun {
        channel,
        sheet: m,
        zeros: Vec::new(),
        failures: Vec::new(),
        seeds_tried: 0,
        contour_derived: false,
    }
}

/// Upper half of the `log r` range.
pub fn fit_window(r_min: f64, r_max: f64) -> (f64, f64) {
    ((r_min * r_max).sqrt(), r_max)
}

/// Least-squares slope of `log y` against `log x`.
pub fn log_log_slope(points: &[(f64, f64)]) -> Result<f64> {
    if points.len() < 2 {
        return Err(Error::InvalidInput("slope needs at least two points".into()));
    }
    let n = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidInput("degenerate abscissae".into()));
    }
    Ok(sxy / sxx)
}

/// Slope of `log n` against `log r` over the report's fit window.
pub fn fit_order(report: &CountingReport) -> Result<f64> {
    let (lo, hi) = report.fit_window;
    let pts: Vec<(f64, f64)> = report
        .samples
        .iter()
        .filter(|(r, n)| *r >= lo * (1.0 - 1e-12) && *r <= hi * (1.0 + 1e-12) && *n > 0)
        .map(|&(r, n)| (r, n as f64))
        .collect();
    if pts.len() < MIN_FIT_SAMPLES {
        return Err(Error::InvalidInput(format!(
            "{} positive samples in the fit window, need {MIN_FIT_SAMPLES}",
            pts.len()
        )));
    }
    log_log_slope(&pts)
}

/// `true` iff `max n(r)/<r>^d` over all samples is at most ten times its
/// median, i.e. no growth faster than `r^d`.
pub fn vodev_bound_check(report: &CountingReport) -> Result<bool> {
    let d = f64::from(report.potential.d);
    let mut ratios: Vec<f64> = report
        .samples
        .iter()
        .map(|&(r, n)| n as f64 / (1.0 + r * r).powf(d / 2.0))
        .collect();
    if ratios.is_empty() {
        return Err(Error::InvalidInput("no samples to check".into()));
    }
    ratios.sort_by(f64::total_cmp);
    let median = ratios[ratios.len() / 2];
    let max = *ratios.last().expect("non-empty");
    Ok(max <= 10.0 * median)
}

const GAUSS_NODES: [f64; 8] = [
    -0.960_289_856_497_536_2,
    -0.796_666_477_413_626_7,
    -0.525_532_409_916_329,
    -0.183_434_642_495_649_8,
    0.183_434_642_495_649_8,
    0.525_532_409_916_329,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_2,
];
const GAUSS_WEIGHTS: [f64; 8] = [
    0.101_228_536_290_376_26,
    0.222_381_034_453_374_47,
    0.313_706_645_877_887_3,
    0.362_683_783_378_362,
    0.362_683_783_378_362,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_47,
    0.101_228_536_290_376_26,
];

fn gauss<F: Fn(f64) -> Result<f64>>(f: &F, a: f64, b: f64) -> Result<f64> {
    let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
    let mut s = 0.0;
    for (x, w) in GAUSS_NODES.iter().zip(GAUSS_WEIGHTS) {
        s += w * f(c + h * x)?;
    }
    Ok(s * h)
}

fn adaptive<F: Fn(f64) -> Result<f64>>(f: &F, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> Result<f64> {
    let m = 0.5 * (a + b);
    let left = gauss(f, a, m)?;
    let right = gauss(f, m, b)?;
    if (left + right - whole).abs() <= tol {
        return Ok(left + right);
    }
    if depth == 0 {
        return Err(convergence(format!("quadrature did not settle on [{a}, {b}]")));
    }
    Ok(adaptive(f, a, m, left, 0.5 * tol, depth - 1)? + adaptive(f, m, b, right, 0.5 * tol, depth - 1)?)
}

/// `int_0^pi log|h(r e^{i theta})| d theta` by adaptive Gauss-Legendre
/// quadrature on 16 starting panels.
pub fn log_integral<F>(h: &F, r: f64) -> Result<f64>
where
    F: Fn(Complex64) -> Result<ScaledComplex>,
{
    let g = |t: f64| -> Result<f64> { Ok(h(Complex64::from_polar(r, t))?.ln_abs()) };
    let panels = 16;
    let mut total = 0.0;
    let width = std::f64::consts::PI / panels as f64;
    for i in 0..panels {
        let (a, b) = (i as f64 * width, (i + 1) as f64 * width);
        let whole = gauss(&g, a, b)?;
        let scale = whole.abs().max(width);
        total += adaptive(&g, a, b, whole, 1e-8 * scale, 24)?;
    }
    Ok(total)
}

/// Order of growth of `r -> int_0^pi log|h(r e^{i theta})| d theta`, from a
/// log-spaced ladder of `steps` radii in `[R, r_max]` and a regression over
/// its upper half. A constant integral gives order 0.
pub fn log_integral_order<F>(h: F, big_r: f64, r_max: f64, steps: usize) -> Result<f64>
where
    F: Fn(Complex64) -> Result<ScaledComplex> + Sync,
{
    if steps < 4 || !(big_r > 0.0 && r_max > big_r) {
        return Err(Error::InvalidInput(format!("need steps >= 4 and 0 < R < r_max (R = {big_r}, r_max = {r_max})")));
    }
    let ladder = radius_grid(big_r, r_max, steps);
    let values: Vec<(f64, f64)> = ladder
        .par_iter()
        .map(|&r| log_integral(&h, r).map(|v| (r, v)))
        .collect::<Result<_>>()?;
    let tail: Vec<(f64, f64)> = values[steps / 2..].to_vec();
    let first = tail[0].1;
    if tail.iter().all(|(_, v)| (v - first).abs() <= 1e-9 * first.abs().max(1e-300)) {
        return Ok(0.0);
    }
    let pts: Vec<(f64, f64)> = tail.iter().map(|&(r, v)| (r, v.abs())).collect();
    if pts.iter().any(|(_, v)| *v == 0.0) {
        return Err(Error::InvalidInput("log-integral vanishes on the ladder".into()));
    }
    log_log_slope(&pts)
}

/// Growth order of a per-channel zero count `n(r)` over the upper half of a
/// radius ladder.
pub fn zero_count_order(moduli: &[f64], r_min: f64, r_max: f64, steps: usize) -> Result<f64> {
    let ladder = radius_grid(r_min, r_max, steps);
    let pts: Vec<(f64, f64)> = ladder[steps / 2..]
        .iter()
        .map(|&r| (r, moduli.iter().filter(|&&x| x <= r).count() as f64))
        .filter(|(_, n)| *n > 0.0)
        .collect();
    if pts.len() < MIN_FIT_SAMPLES.min(steps / 2) {
        return Err(Error::InvalidInput("too few nonzero counts on the ladder".into()));
    }
    log_log_slope(&pts)
}
