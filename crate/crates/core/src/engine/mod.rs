//! Exact characteristic functions of the radial step potential, their zeros
//! on each sheet, and independent checks by contour integration and Rouche
//! rectangles.

mod contour;
mod newton;
mod rouche;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::scaled::ScaledComplex;
use crate::special::{self, Order};

pub use contour::{
    count_zeros_box, count_zeros_rho_box, locate_zeros, winding_number, z_of_rho, LambdaBox, RhoBox,
    WindingError, BASE_SAMPLES,
};
pub use newton::{
    covering_box, covering_check, find_channel_zeros, low_channel_zeros, newton_refine, ChannelRun,
    NewtonOutcome, LOW_CHANNEL_IM_FLOOR, RESIDUAL_TOLERANCE, SEEDED_MIN_ORDER,
};
pub use rouche::{
    build_rouche_box, build_rouche_box_in, count_in_rouche_box, interior_indices, rouche_f, verify_rouche_box,
    RoucheBox, RoucheCheck, ROUCHE_MIN_ORDER, ROUCHE_SAMPLES,
};

/// `-2i/pi`, the value of `F_0` for the free problem.
pub const FREE_CONSTANT: Complex64 = Complex64::new(0.0, -2.0 / PI);

/// `|F_m|` below this on a contour counts as a zero on the contour.
pub const RESIDUAL_FLOOR: f64 = 1e-6 * 2.0 / PI;

/// Cancellation (decimal digits) beyond which `G_0` carries a warning.
pub const G0_LOSS_WARNING_DIGITS: f64 = 6.0;

/// `V(x) = V0` for `|x| < 1` in even dimension `d`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepPotential {
    pub d: u32,
    pub v0: f64,
}

impl StepPotential {
    pub fn new(d: u32, v0: f64) -> Result<Self> {
        if d < 2 || d % 2 != 0 {
            return Err(Error::InvalidInput(format!("dimension must be even and >= 2, got {d}")));
        }
        if !(v0 >= 0.0) || !v0.is_finite() {
            return Err(Error::InvalidInput(format!("barrier height must be >= 0, got {v0}")));
        }
        Ok(Self { d, v0 })
    }

    /// Radius of the barrier support.
    pub fn radius(&self) -> f64 {
        1.0
    }
}

/// One angular-momentum channel of the radial problem.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Channel {
    pub ell: u32,
    pub d: u32,
    pub nu: u32,
    pub multiplicity: u64,
}

impl Channel {
    pub fn new(ell: u32, d: u32) -> Result<Self> {
        if d < 2 || d % 2 != 0 {
            return Err(Error::InvalidInput(format!("dimension must be even and >= 2, got {d}")));
        }
        Ok(Self {
            ell,
            d,
            nu: ell + (d - 2) / 2,
            multiplicity: crate::counting::harmonic_multiplicity(ell, d),
        })
    }

    pub fn order(&self) -> Order {
        Order::integer(self.nu)
    }
}

/// A point of the logarithmic surface: modulus and unreduced argument.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SheetPoint {
    pub modulus: f64,
    pub argument: f64,
}

impl SheetPoint {
    /// The point `lambda0` (with `0 < arg < pi`) carried to sheet `m`.
    pub fn on_sheet(lambda0: Complex64, m: i64) -> Self {
        Self {
            modulus: lambda0.norm(),
            argument: lambda0.arg() + m as f64 * PI,
        }
    }

    pub fn sheet(&self) -> i64 {
        (self.argument / PI).floor() as i64
    }
}

/// A converged zero of `F_m` in physical-sheet coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResonanceZero {
    pub lambda0: Complex64,
    pub sheet: i64,
    pub channel: Channel,
    pub residual: f64,
    pub seed_k: Option<i64>,
    pub lambda_on_sheet: SheetPoint,
}

impl ResonanceZero {
    pub fn new(lambda0: Complex64, sheet: i64, channel: Channel, residual: f64, seed_k: Option<i64>) -> Self {
        Self {
            lambda0,
            sheet,
            channel,
            residual,
            seed_k,
            lambda_on_sheet: SheetPoint::on_sheet(lambda0, sheet),
        }
    }
}

/// `G_0` with its measured cancellation.
#[derive(Clone, Debug, PartialEq)]
pub struct G0Value {
    pub value: Complex64,
    pub loss_digits: f64,
    pub warning: Option<String>,
}

/// `Sigma(lambda) = (lambda^2 - V0)^{1/2}` on the branch with `Im Sigma >= 0`,
/// cut along the real axis outside `[-V0^{1/2}, V0^{1/2}]`.
pub fn sigma(lambda: Complex64, v0: f64) -> Complex64 {
    if lambda.norm() == 0.0 {
        return Complex64::new(0.0, v0.sqrt());
    }
    let s = lambda * (1.0 - v0 / (lambda * lambda)).sqrt();
    if s.im < 0.0 {
        -s
    } else {
        s
    }
}

/// Everything the characteristic functions are assembled from.
struct Parts {
    lambda: Complex64,
    sigma: Complex64,
    nu: f64,
    v0: f64,
    j_s: ScaledComplex,
    jp_s: ScaledComplex,
    b: special::BesselValues,
}

fn parts(nu: Order, lambda: Complex64, v0: f64) -> Result<Parts> {
    if lambda.norm() == 0.0 {
        return Err(domain("lambda = 0 is a branch point"));
    }
    if lambda.im < 0.0 {
        return Err(domain(format!("lambda = {lambda} lies below the real axis")));
    }
    let s = sigma(lambda, v0);
    let (j_s, jp_s) = special::bessel_j_pair(nu, s)?;
    let b = special::bessel_jh(nu, lambda)?;
    Ok(Parts {
        lambda,
        sigma: s,
        nu: nu.value(),
        v0,
        j_s,
        jp_s,
        b,
    })
}

impl Parts {
    /// `Sigma J'(Sigma) X(lambda) - lambda J(Sigma) X'(lambda)` with its two terms.
    fn combine(&self, x: ScaledComplex, xp: ScaledComplex) -> (ScaledComplex, ScaledComplex) {
        let a = self.jp_s.scale(self.sigma) * x;
        let b = self.j_s.scale(self.lambda) * xp;
        (a, b)
    }

    fn f0(&self) -> ScaledComplex {
        let (a, b) = self.combine(self.b.h, self.b.hp);
        a - b
    }

    fn g0_terms(&self) -> (ScaledComplex, ScaledComplex) {
        self.combine(self.b.j, self.b.jp)
    }

    /// `d/dlambda [Sigma J'(Sigma) X - lambda J(Sigma) X']
    ///   = V0 [nu^2 J(Sigma) X / (lambda Sigma^2) - J'(Sigma) X' / Sigma]`.
    fn derivative(&self, x: ScaledComplex, xp: ScaledComplex) -> Result<ScaledComplex> {
        if self.sigma.norm() == 0.0 {
            return Err(domain("Sigma = 0: the derivative is singular at lambda^2 = V0"));
        }
        let s2 = self.sigma * self.sigma;
        let first = (self.j_s * x).scale(Complex64::from(self.nu * self.nu) / (self.lambda * s2));
        let second = (self.jp_s * xp).scale(1.0 / self.sigma);
        Ok((first - second) * self.v0)
    }

    fn sheet_combination(&self, nu: Order, m: i64, f0: ScaledComplex, g0: ScaledComplex) -> Result<ScaledComplex> {
        if m == 0 {
            return Ok(f0);
        }
        let n = nu
            .as_integer()
            .ok_or_else(|| domain(format!("sheet m = {m} needs an integer order, got {nu}")))?;
        let sign = if (m.rem_euclid(2) * i64::from(n % 2)) % 2 == 0 { 1.0 } else { -1.0 };
        Ok((f0 - g0 * (2.0 * m as f64)) * sign)
    }
}

/// `F_0(lambda) = Sigma J_nu'(Sigma) H_nu(lambda) - lambda J_nu(Sigma) H_nu'(lambda)`.
pub fn eval_f0(nu: Order, lambda: Complex64, v0: f64) -> Result<Complex64> {
    Ok(parts(nu, lambda, v0)?.f0().value())
}

/// `G_0(lambda) = Sigma J_nu'(Sigma) J_nu(lambda) - lambda J_nu(Sigma) J_nu'(lambda)`
/// with the number of decimal digits lost to cancellation.
pub fn eval_g0(nu: Order, lambda: Complex64, v0: f64) -> Result<G0Value> {
    let p = parts(nu, lambda, v0)?;
    let (a, b) = p.g0_terms();
    let diff = a - b;
    let loss_digits = if diff.is_zero() {
        if a.is_zero() {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        ((a.ln_abs().max(b.ln_abs()) - diff.ln_abs()) / std::f64::consts::LN_10).max(0.0)
    };
    let warning = (loss_digits > G0_LOSS_WARNING_DIGITS).then(|| {
        format!("G_0 at lambda = {lambda} lost {loss_digits:.1} digits to cancellation")
    });
    Ok(G0Value {
        value: diff.value(),
        loss_digits,
        warning,
    })
}

/// `F_m = (-1)^{m nu} (F_0 - 2m G_0)` in scaled form.
pub fn eval_fm_scaled(m: i64, nu: Order, lambda: Complex64, v0: f64) -> Result<ScaledComplex> {
    let p = parts(nu, lambda, v0)?;
    let (a, b) = p.g0_terms();
    p.sheet_combination(nu, m, p.f0(), a - b)
}

/// `F_m = (-1)^{m nu} (F_0 - 2m G_0)`.
pub fn eval_fm(m: i64, nu: Order, lambda: Complex64, v0: f64) -> Result<Complex64> {
    Ok(eval_fm_scaled(m, nu, lambda, v0)?.value())
}

/// `F_m` and `dF_m/dlambda` together, scaled.
pub fn eval_fm_with_prime(m: i64, nu: Order, lambda: Complex64, v0: f64) -> Result<(ScaledComplex, ScaledComplex)> {
    let p = parts(nu, lambda, v0)?;
    let (a, b) = p.g0_terms();
    let f = p.sheet_combination(nu, m, p.f0(), a - b)?;
    let df0 = p.derivative(p.b.h, p.b.hp)?;
    let dg0 = p.derivative(p.b.j, p.b.jp)?;
    let df = p.sheet_combination(nu, m, df0, dg0)?;
    Ok((f, df))
}

/// `dF_m/dlambda`.
pub fn eval_fm_prime(m: i64, nu: Order, lambda: Complex64, v0: f64) -> Result<Complex64> {
    Ok(eval_fm_with_prime(m, nu, lambda, v0)?.1.value())
}

/// `F_m` assembled directly from Hankel functions continued to
/// `e^{i m pi} lambda`:
/// `Sigma J'(Sigma) H(e^{i m pi} lambda) - e^{i m pi} lambda J(Sigma) H'(e^{i m pi} lambda)`,
/// together with its derivative along the same route.
pub fn eval_fm_continued(m: i64, nu: Order, lambda: Complex64, v0: f64) -> Result<(ScaledComplex, ScaledComplex)> {
    let p = parts(nu, lambda, v0)?;
    let h = special::continue_hankel1(nu, m, p.b.h, p.b.j)?;
    let hp = special::continue_hankel1_prime(nu, m, p.b.hp, p.b.jp)?;
    let turn = if m.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let rotated = p.lambda * turn;
    let a = p.jp_s.scale(p.sigma);
    let f = a * h - p.j_s.scale(rotated) * hp;
    if p.sigma.norm() == 0.0 {
        return Err(domain("Sigma = 0: the derivative is singular at lambda^2 = V0"));
    }
    // d/dlambda [Sigma J'(Sigma)] = -(lambda/Sigma^2)(Sigma^2 - nu^2) J(Sigma)
    let nu2 = p.nu * p.nu;
    let s2 = p.sigma * p.sigma;
    let da = p.j_s.scale(-(p.lambda / s2) * (s2 - nu2));
    // d/dlambda [e^{i m pi} lambda H'(e^{i m pi} lambda)] = -(lambda^2 - nu^2) H / lambda
    let d_rot = h.scale(-(p.lambda * p.lambda - nu2) / p.lambda);
    let d_js = p.jp_s.scale(p.lambda / p.sigma);
    let df = da * h + a * hp * turn - d_js * hp.scale(rotated) - p.j_s * d_rot;
    Ok((f, df))
}

/// Wronskian at `r = 1` of the spherical solutions
/// `(pi/2r)^{(d-2)/2} J_nu(Sigma r)` and `(pi/2r)^{(d-2)/2} H_nu(lambda r)`,
/// with derivatives taken in `r`.
pub fn wronskian_spherical(nu: Order, lambda: Complex64, v0: f64, d: u32) -> Result<Complex64> {
    let p = parts(nu, lambda, v0)?;
    let power = (f64::from(d) - 2.0) / 2.0;
    let c = (PI / 2.0).powf(power);
    // d/dr [(pi/2r)^p X(k r)] at r = 1 is c (k X'(k) - p X(k))
    let phi = p.j_s * c;
    let dphi = (p.jp_s.scale(p.sigma) - p.j_s * power) * c;
    let psi = p.b.h * c;
    let dpsi = (p.b.hp.scale(p.lambda) - p.b.h * power) * c;
    Ok((dphi * psi - phi * dpsi).value())
}

/// `e^{i m pi}` applied to a sheet point's base coordinate.
pub fn sheet_sign(m: i64) -> f64 {
    if m.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}
