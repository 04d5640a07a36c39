//! Zero counting by the argument principle with adaptive phase tracking.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::newton::newton_refine;
use super::{eval_fm_scaled, RESIDUAL_FLOOR};
use crate::error::{convergence, Error, Result};
use crate::maps;
use crate::scaled::ScaledComplex;
use crate::special::Order;

/// Minimum samples per rectangle edge before adaptive refinement.
pub const BASE_SAMPLES: usize = 64;

const MAX_DEPTH: u32 = 40;
const STEP_LIMIT: f64 = PI / 4.0;

/// Why a winding number could not be computed.
#[derive(Clone, Debug, PartialEq)]
pub enum WindingError {
    /// `|f|` fell below the near-zero floor at this path point.
    NearZero(Complex64),
    /// Phase could not be resolved by refinement near this path point.
    Unresolved(Complex64),
    /// The integrand could not be evaluated.
    Eval(Error),
}

impl fmt::Display for WindingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WindingError::NearZero(p) => write!(f, "function nearly vanishes on the contour at {p}"),
            WindingError::Unresolved(p) => write!(f, "phase not resolved near {p}"),
            WindingError::Eval(e) => write!(f, "{e}"),
        }
    }
}

impl From<WindingError> for Error {
    fn from(e: WindingError) -> Self {
        match e {
            WindingError::Eval(e) => e,
            other => Error::Convergence(other.to_string()),
        }
    }
}

/// Winding number of `f` along the closed path `gamma(s)`, `s in [0, 1]`,
/// `gamma(0) = gamma(1)`. The path is sampled at `samples` equally spaced
/// parameters; each step is bisected until `log f` changes by less than
/// `pi/4` in modulus and phase over both halves and the halves add up to
/// the whole step.
pub fn winding_number<G, F>(gamma: G, samples: usize, floor: f64, f: F) -> std::result::Result<i64, WindingError>
where
    G: Fn(f64) -> Complex64,
    F: Fn(Complex64) -> Result<ScaledComplex>,
{
    let eval = |s: f64| -> std::result::Result<ScaledComplex, WindingError> {
        let p = gamma(s);
        let v = f(p).map_err(WindingError::Eval)?;
        if !(v.abs() >= floor) {
            return Err(WindingError::NearZero(p));
        }
        Ok(v)
    };
    let n = samples.max(8);
    let first = eval(0.0)?;
    let mut prev = first;
    let mut total = 0.0;
    for i in 1..=n {
        let s1 = i as f64 / n as f64;
        let cur = if i == n { first } else { eval(s1)? };
        total += turn(&eval, &gamma, (i - 1) as f64 / n as f64, prev, s1, cur, 0)?;
        prev = cur;
    }
    let w = total / (2.0 * PI);
    let r = w.round();
    if (w - r).abs() > 0.1 {
        return Err(WindingError::Unresolved(gamma(0.0)));
    }
    Ok(r as i64)
}

fn phase(a: ScaledComplex, b: ScaledComplex) -> f64 {
    (b / a).arg()
}

fn turn<E, G>(
    eval: &E,
    gamma: &G,
    s0: f64,
    f0: ScaledComplex,
    s1: f64,
    f1: ScaledComplex,
    depth: u32,
) -> std::result::Result<f64, WindingError>
where
    E: Fn(f64) -> std::result::Result<ScaledComplex, WindingError>,
    G: Fn(f64) -> Complex64,
{
    let sm = 0.5 * (s0 + s1);
    let fm = eval(sm)?;
    let d = phase(f0, f1);
    let d1 = phase(f0, fm);
    let d2 = phase(fm, f1);
    // log f must move little in both modulus and phase, which also guards
    // against whole turns hidden between samples near poles and zeros
    let g1 = (fm.ln_abs() - f0.ln_abs()).abs();
    let g2 = (f1.ln_abs() - fm.ln_abs()).abs();
    if d1.abs() < STEP_LIMIT
        && d2.abs() < STEP_LIMIT
        && g1 < STEP_LIMIT
        && g2 < STEP_LIMIT
        && (d1 + d2 - d).abs() < 1e-9
    {
        return Ok(d1 + d2);
    }
    if depth >= MAX_DEPTH {
        return Err(WindingError::Unresolved(gamma(sm)));
    }
    Ok(turn(eval, gamma, s0, f0, sm, fm, depth + 1)? + turn(eval, gamma, sm, fm, s1, f1, depth + 1)?)
}

/// Axis-aligned rectangle in the `lambda`-plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LambdaBox {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

/// Axis-aligned rectangle in the `rho`-plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RhoBox {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

macro_rules! rectangle_impl {
    ($t:ty) => {
        impl $t {
            pub fn width(&self) -> f64 {
                self.re_max - self.re_min
            }

            pub fn height(&self) -> f64 {
                self.im_max - self.im_min
            }

            pub fn diameter(&self) -> f64 {
                self.width().hypot(self.height())
            }

            pub fn center(&self) -> Complex64 {
                Complex64::new(0.5 * (self.re_min + self.re_max), 0.5 * (self.im_min + self.im_max))
            }

            pub fn contains(&self, p: Complex64) -> bool {
                p.re >= self.re_min && p.re <= self.re_max && p.im >= self.im_min && p.im <= self.im_max
            }

            pub fn translated(&self, by: Complex64) -> Self {
                Self {
                    re_min: self.re_min + by.re,
                    re_max: self.re_max + by.re,
                    im_min: self.im_min + by.im,
                    im_max: self.im_max + by.im,
                }
            }

            /// Counter-clockwise boundary, `s in [0, 1]`, one quarter per side.
            pub fn boundary_point(&self, s: f64) -> Complex64 {
                let q = (4.0 * s).clamp(0.0, 4.0);
                let side = (q.floor() as usize).min(3);
                let t = q - side as f64;
                let lerp = |a: f64, b: f64| a + (b - a) * t;
                match side {
                    0 => Complex64::new(lerp(self.re_min, self.re_max), self.im_min),
                    1 => Complex64::new(self.re_max, lerp(self.im_min, self.im_max)),
                    2 => Complex64::new(lerp(self.re_max, self.re_min), self.im_max),
                    _ => Complex64::new(self.re_min, lerp(self.im_max, self.im_min)),
                }
            }
        }
    };
}

rectangle_impl!(LambdaBox);
rectangle_impl!(RhoBox);

fn lambda_samples(b: &LambdaBox) -> usize {
    let per_side = (8.0 * b.width().max(b.height())).ceil() as usize;
    4 * per_side.max(BASE_SAMPLES)
}

fn count_lambda(m: i64, nu: Order, v0: f64, b: &LambdaBox) -> std::result::Result<i64, WindingError> {
    winding_number(|s| b.boundary_point(s), lambda_samples(b), RESIDUAL_FLOOR, |l| eval_fm_scaled(m, nu, l, v0))
}

/// Number of zeros of `F_m` inside a `lambda`-plane rectangle (`Im >= 0`).
/// If the function nearly vanishes on the boundary the box is shifted by
/// `1e-3` of its diameter and counted once more.
pub fn count_zeros_box(m: i64, nu: Order, v0: f64, b: &LambdaBox) -> Result<i64> {
    match count_lambda(m, nu, v0, b) {
        Ok(n) => Ok(n),
        Err(WindingError::NearZero(_)) => {
            let d = 1e-3 * b.diameter();
            let shifted = b.translated(Complex64::new(d, d));
            count_lambda(m, nu, v0, &shifted).map_err(Error::from)
        }
        Err(e) => Err(e.into()),
    }
}

/// `z` with `rho(z) = target`, continued from the boundary point with the
/// same `Im rho`.
pub fn z_of_rho(target: Complex64) -> Result<Complex64> {
    let start = maps::boundary_point_with_im_rho(target.im)?;
    maps::inverse_rho(target, start)
}

/// Number of zeros of `lambda -> F_m(lambda)` in the image of a `rho`-plane
/// rectangle under `lambda = nu z(rho)`. The map is conformal there, so this
/// is the winding number of `rho -> F_m(nu z(rho))`.
pub fn count_zeros_rho_box(m: i64, nu: Order, v0: f64, b: &RhoBox) -> Result<i64> {
    let n = nu.value();
    let per_side = (8.0 * n * b.width().max(b.height())).ceil() as usize;
    let samples = 4 * per_side.max(BASE_SAMPLES);
    winding_number(
        |s| b.boundary_point(s),
        samples,
        RESIDUAL_FLOOR,
        |rho| eval_fm_scaled(m, nu, z_of_rho(rho)? * n, v0),
    )
    .map_err(Error::from)
}

const MIN_CELL: f64 = 1e-7;

/// All zeros of `F_m` inside a `lambda`-rectangle, by recursive bisection
/// of the rectangle and Newton polishing once a cell holds a single zero.
/// Returns `(lambda, |F_m(lambda)|)` pairs.
pub fn locate_zeros(m: i64, nu: Order, v0: f64, b: LambdaBox) -> Result<Vec<(Complex64, f64)>> {
    let (b, n) = match count_lambda(m, nu, v0, &b) {
        Ok(n) => (b, n),
        Err(WindingError::NearZero(_)) => {
            let d = 1e-3 * b.diameter();
            let shifted = b.translated(Complex64::new(d, d));
            (shifted, count_lambda(m, nu, v0, &shifted)?)
        }
        Err(e) => return Err(e.into()),
    };
    if n < 0 {
        return Err(convergence(format!("negative zero count {n} in {b:?}")));
    }
    let mut out = Vec::new();
    subdivide(m, nu, v0, b, n, &mut out)?;
    out.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));
    Ok(out)
}

fn subdivide(m: i64, nu: Order, v0: f64, b: LambdaBox, n: i64, out: &mut Vec<(Complex64, f64)>) -> Result<()> {
    if n == 0 {
        return Ok(());
    }
    if n == 1 {
        if let Ok(r) = newton_refine(m, nu, v0, b.center()) {
            if b.contains(r.lambda) {
                out.push((r.lambda, r.residual));
                return Ok(());
            }
        }
    }
    if b.diameter() < MIN_CELL {
        let c = b.center();
        let res = eval_fm_scaled(m, nu, c, v0)?.abs();
        for _ in 0..n {
            out.push((c, res));
        }
        return Ok(());
    }
    // split the longer side, nudging the cut off the midpoint if it grazes a zero
    for &frac in &[0.5, 0.5 + 1.0 / 64.0, 0.5 - 1.0 / 48.0, 0.5 + 1.0 / 24.0] {
        let (lo, hi) = if b.width() >= b.height() {
            let x = b.re_min + frac * b.width();
            (LambdaBox { re_max: x, ..b }, LambdaBox { re_min: x, ..b })
        } else {
            let y = b.im_min + frac * b.height();
            (LambdaBox { im_max: y, ..b }, LambdaBox { im_min: y, ..b })
        };
        let n_lo = match count_lambda(m, nu, v0, &lo) {
            Ok(k) => k,
            Err(WindingError::NearZero(_)) => continue,
            Err(e) => return Err(e.into()),
        };
        let n_hi = match count_lambda(m, nu, v0, &hi) {
            Ok(k) => k,
            Err(WindingError::NearZero(_)) => continue,
            Err(e) => return Err(e.into()),
        };
        if n_lo + n_hi != n || n_lo < 0 || n_hi < 0 {
            return Err(convergence(format!(
                "inconsistent counts {n_lo} + {n_hi} != {n} while splitting {b:?}"
            )));
        }
        subdivide(m, nu, v0, lo, n_lo, out)?;
        subdivide(m, nu, v0, hi, n_hi, out)?;
        return Ok(());
    }
    Err(convergence(format!("could not place a cut through {b:?} avoiding zeros")))
}
