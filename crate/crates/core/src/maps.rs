//! The map `rho(z) = log((1 + sqrt(1-z^2))/z) - sqrt(1-z^2)`, `zeta = (3 rho/2)^{2/3}`,
//! the auxiliary functions `phi`, `chi`, `psi`, and the eye-shaped region `K`
//! whose upper boundary is sent onto the segment `(0, -i pi)`.
//!
//! Principal branches throughout. On the upper half-plane `rho` is written as
//! `log(1 + s) - log z - s` with `s = sqrt(1 - z^2)`; `Re(1 + s) > 0`, so the
//! only cut met is that of `log z`, which lies on the negative real axis.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{convergence, domain, Error, Result};

/// Distance to `+-1` below which `rho` refuses to evaluate.
const BRANCH_POINT_GUARD: f64 = 1e-8;
/// Number of vertices of the boundary polyline used for distances.
pub const BOUNDARY_POLYLINE_POINTS: usize = 2048;
/// Below this `t` the boundary height uses its Taylor series.
const SMALL_T: f64 = 0.05;

/// A point together with every map value evaluated there.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MapImage {
    pub z: Complex64,
    pub rho: Complex64,
    pub zeta: Complex64,
    pub phi: Complex64,
    pub chi: Complex64,
    pub psi: Complex64,
    pub sqrt1mz2: Complex64,
}

/// The working region: points of the upper half-plane within `epsilon` of the
/// upper boundary of `K`, away from `+-1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionSpec {
    pub epsilon: f64,
    /// Height of the end segments of `(0, -i pi)` excluded from seeding.
    pub h_eps: f64,
    /// Positive root of `t tanh t = 1`.
    pub t0: f64,
    /// `sqrt(t0^2 - 1)`, the height of `K` on the imaginary axis.
    pub z0: f64,
}

impl RegionSpec {
    pub fn new(epsilon: f64) -> Result<Self> {
        let h_eps = 2.0 * epsilon;
        if !(epsilon > 0.0) || !(h_eps < PI / 4.0) {
            return Err(Error::InvalidInput(format!(
                "epsilon must lie in (0, pi/8), got {epsilon}"
            )));
        }
        let t0 = t0();
        Ok(RegionSpec {
            epsilon,
            h_eps,
            t0,
            z0: (t0 * t0 - 1.0).sqrt(),
        })
    }
}

/// Positive root of `t tanh t = 1`, by bisection to `1e-14`.
pub fn t0() -> f64 {
    static T0: OnceLock<f64> = OnceLock::new();
    *T0.get_or_init(|| {
        let (mut lo, mut hi) = (1.0f64, 1.5f64);
        while hi - lo > 1e-14 {
            let mid = 0.5 * (lo + hi);
            if mid * mid.tanh() < 1.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    })
}

/// `sqrt(t0^2 - 1)`.
pub fn z0() -> f64 {
    let t = t0();
    (t * t - 1.0).sqrt()
}

fn canonical(z: Complex64) -> Complex64 {
    if z.im == 0.0 {
        Complex64::new(z.re, 0.0)
    } else {
        z
    }
}

/// `sqrt(1 - z^2)`, principal branch (right half-plane).
pub fn sqrt1mz2(z: Complex64) -> Complex64 {
    let z = canonical(z);
    let w = Complex64::new(1.0, 0.0) - z * z;
    // keep the upper-side limit on the cut: 1 - z^2 has Im = -2 Re z Im z
    let w = if w.im == 0.0 && w.re < 0.0 {
        Complex64::new(w.re, -0.0 * z.re.signum())
    } else {
        w
    };
    w.sqrt()
}

fn check_rho_domain(z: Complex64) -> Result<()> {
    if !(z.im >= 0.0) || !z.re.is_finite() || !z.im.is_finite() {
        return Err(domain(format!("rho needs Im z >= 0, got {z}")));
    }
    if z.norm() == 0.0 {
        return Err(domain("rho is singular at z = 0"));
    }
    if z.im == 0.0 && z.re > 1.0 {
        return Err(domain(format!("z = {z} lies on the cut (1, inf)")));
    }
    Ok(())
}

/// `rho(z)` on the closed upper half-plane (upper-side limits on the real axis),
/// continuous at the branch points `z = +-1`.
pub fn rho(z: Complex64) -> Result<Complex64> {
    check_rho_domain(z)?;
    let z = canonical(z);
    let s = sqrt1mz2(z);
    Ok((1.0 + s).ln() - z.ln() - s)
}

/// `d rho / dz = -sqrt(1 - z^2) / z`.
pub fn rho_derivative(z: Complex64) -> Complex64 {
    -sqrt1mz2(z) / z
}

fn check_map_domain(z: Complex64) -> Result<()> {
    check_rho_domain(z)?;
    if (z - 1.0).norm() <= BRANCH_POINT_GUARD || (z + 1.0).norm() <= BRANCH_POINT_GUARD {
        return Err(domain(format!("z = {z} is at a branch point")));
    }
    if z.im == 0.0 && !(z.re > 0.0 && z.re < 1.0) {
        return Err(domain(format!(
            "z = {z}: on the real axis only (0, 1) is in the map domain"
        )));
    }
    Ok(())
}

/// `zeta(z) = (3 rho(z) / 2)^{2/3}`, principal power.
pub fn zeta(z: Complex64) -> Result<Complex64> {
    check_map_domain(z)?;
    Ok(zeta_from_rho(rho(z)?))
}

fn zeta_from_rho(r: Complex64) -> Complex64 {
    if r.norm() == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    (1.5 * r).powf(2.0 / 3.0)
}

fn principal_pow(w: Complex64, p: f64) -> Complex64 {
    if w.norm() == 0.0 {
        Complex64::new(0.0, 0.0)
    } else {
        (p * w.ln()).exp()
    }
}

/// All map values at `z`.
pub fn map_image(z: Complex64) -> Result<MapImage> {
    check_map_domain(z)?;
    let z = canonical(z);
    let s = sqrt1mz2(z);
    let rho = (1.0 + s).ln() - z.ln() - s;
    let zeta = zeta_from_rho(rho);
    let one_m_z2 = Complex64::new(1.0, 0.0) - z * z;
    let phi = 2f64.sqrt() * principal_pow(zeta, 0.25) / principal_pow(one_m_z2, 0.25);
    let psi = 2.0 / (z * phi);
    let chi = (4.0 - z * z * phi.powi(6)) / (16.0 * zeta);
    Ok(MapImage {
        z,
        rho,
        zeta,
        phi,
        chi,
        psi,
        sqrt1mz2: s,
    })
}

/// Solves `rho(z) = target` by Newton's method from `seed`.
pub fn inverse_rho(target: Complex64, seed: Complex64) -> Result<Complex64> {
    let mut z = seed;
    for _ in 0..50 {
        let r = rho(z)? - target;
        if r.norm() < 1e-12 {
            return Ok(z);
        }
        let mut step = r / rho_derivative(z);
        // stay in the upper half-plane and away from the origin
        while (z - step).im < 0.0 || (z - step).norm() < 0.5 * z.norm() {
            step *= 0.5;
            if step.norm() < 1e-300 {
                return Err(convergence(format!("inverse_rho stalled at {z}")));
            }
        }
        z -= step;
    }
    let r = rho(z)? - target;
    if r.norm() < 1e-12 {
        Ok(z)
    } else {
        Err(convergence(format!(
            "inverse_rho: no convergence in 50 steps for target {target} (residual {:e})",
            r.norm()
        )))
    }
}

/// Point of the upper boundary of `K`:
/// `z = +-(t coth t - t^2)^{1/2} + i (t^2 - t tanh t)^{1/2}`, `0 <= t <= t0`.
pub fn k_boundary(t: f64, sign: i32) -> Result<Complex64> {
    let t0 = t0();
    if !(0.0..=t0).contains(&t) {
        return Err(domain(format!("t = {t} outside [0, {t0}]")));
    }
    if sign != 1 && sign != -1 {
        return Err(domain(format!("sign must be +1 or -1, got {sign}")));
    }
    let (x2, y2) = if t < SMALL_T {
        let t2 = t * t;
        // t coth t = 1 + t^2/3 - t^4/45 + 2t^6/945 - t^8/4725
        let tcoth = 1.0 + t2 * (1.0 / 3.0 + t2 * (-1.0 / 45.0 + t2 * (2.0 / 945.0 - t2 / 4725.0)));
        // t^2 - t tanh t = t^4/3 - 2t^6/15 + 17t^8/315 - 62t^10/2835 + 1382t^12/155925
        let y2 = t2
            * t2
            * (1.0 / 3.0
                + t2 * (-2.0 / 15.0 + t2 * (17.0 / 315.0 + t2 * (-62.0 / 2835.0 + t2 * 1382.0 / 155925.0))));
        (tcoth - t2, y2)
    } else if t0 - t < 1e-3 {
        // t coth t - t^2 = t (coth t - t) vanishes at t0; expand about t0 in
        // d = t - t0 to avoid the cancellation
        let d = t - t0;
        let cs2 = 1.0 / t0.sinh().powi(2);
        let ct = 1.0 / t0.tanh();
        let f1 = -cs2 - 1.0;
        let f2 = 2.0 * cs2 * ct;
        let f3 = -4.0 * cs2 * ct * ct - 2.0 * cs2 * cs2;
        let f = d * (f1 + d * (f2 / 2.0 + d * f3 / 6.0));
        (t * f, t * t - t * t.tanh())
    } else {
        (t / t.tanh() - t * t, t * t - t * t.tanh())
    };
    Ok(Complex64::new(sign as f64 * x2.max(0.0).sqrt(), y2.max(0.0).sqrt()))
}

/// Boundary point for `u in [0, 2]`, running from `z = 1` (`u = 0`) through
/// `i z0` (`u = 1`) to `z = -1` (`u = 2`). The substitution
/// `t = t0 (1 - (1 - u)^2)` removes the square-root behaviour at the top.
pub fn boundary_by_parameter(u: f64) -> Result<Complex64> {
    if !(0.0..=2.0).contains(&u) {
        return Err(domain(format!("boundary parameter {u} outside [0, 2]")));
    }
    let (v, sign) = if u <= 1.0 { (u, 1) } else { (2.0 - u, -1) };
    let t = (t0() * (1.0 - (1.0 - v) * (1.0 - v))).min(t0());
    k_boundary(t, sign)
}

/// Boundary point whose `rho` image is `i * im_rho`, `im_rho in (-pi, 0)`.
///
/// `Im rho` decreases monotonically from `0` at `z = 1` to `-pi` at `z = -1`.
pub fn boundary_point_with_im_rho(im_rho: f64) -> Result<Complex64> {
    if !(im_rho < 0.0 && im_rho > -PI) {
        return Err(domain(format!("Im rho = {im_rho} outside (-pi, 0)")));
    }
    let im_at = |u: f64| -> Result<f64> {
        let z = boundary_by_parameter(u)?;
        if (z - 1.0).norm() <= 1e-6 {
            return Ok(0.0);
        }
        if (z + 1.0).norm() <= 1e-6 {
            return Ok(-PI);
        }
        Ok(rho(z)?.im)
    };
    let (mut lo, mut hi) = (0.0, 2.0);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if im_at(mid)? > im_rho {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    boundary_by_parameter(0.5 * (lo + hi))
}

/// Dense polyline along the upper boundary of `K`, from `1` to `-1`.
pub fn boundary_polyline() -> &'static [Complex64] {
    static LINE: OnceLock<Vec<Complex64>> = OnceLock::new();
    LINE.get_or_init(|| {
        let n = BOUNDARY_POLYLINE_POINTS;
        (0..n)
            .map(|i| {
                let u = 2.0 * i as f64 / (n - 1) as f64;
                boundary_by_parameter(u).expect("parameter in range")
            })
            .collect()
    })
}

/// Distance from `z` to the boundary polyline.
pub fn distance_to_boundary(z: Complex64) -> f64 {
    boundary_polyline()
        .windows(2)
        .map(|seg| point_segment_distance(z, seg[0], seg[1]))
        .fold(f64::INFINITY, f64::min)
}

fn point_segment_distance(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = ((p - a).re * ab.re + (p - a).im * ab.im) / len2;
    (p - (a + ab * t.clamp(0.0, 1.0))).norm()
}

/// Membership in the working region: `Im z > 0`, within `epsilon` of the
/// boundary, and outside the `epsilon`-disks at `+-1`.
pub fn omega1_contains(z: Complex64, spec: &RegionSpec) -> bool {
    z.im > 0.0
        && (z - 1.0).norm() > spec.epsilon
        && (z + 1.0).norm() > spec.epsilon
        && distance_to_boundary(z) < spec.epsilon
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn t0_and_z0() {
        let t = t0();
        assert!((t * t.tanh() - 1.0).abs() < 1e-10);
        assert!((t - 1.199_678_64).abs() < 1e-7);
        let spec = RegionSpec::new(0.1).unwrap();
        assert!((spec.z0 * spec.z0 - (t * t - 1.0)).abs() < 1e-12);
        assert!((spec.z0 - 0.662_74).abs() < 1e-4);
        assert!(spec.h_eps > 0.0 && spec.h_eps < PI / 4.0);
        assert!(RegionSpec::new(0.5).is_err());
        assert!(RegionSpec::new(0.0).is_err());
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho(c(1.0 - 1e-3, 0.0)).unwrap().im, 0.0);
        assert_eq!(rho(c(1.0, 0.0)).unwrap(), c(0.0, 0.0));
        assert!((rho(c(-1.0, 0.0)).unwrap() - c(0.0, -PI)).norm() < 1e-15);
        assert!(map_image(c(1.0, 0.0)).is_err());
        let r = rho(c(0.0, 0.662_74)).unwrap();
        assert!((r - c(0.0, -PI / 2.0)).norm() < 1e-4);
        let r = rho(c(0.0, z0())).unwrap();
        assert!((r - c(0.0, -PI / 2.0)).norm() < 1e-12);
        assert!(rho(c(0.5, -0.1)).is_err());
        assert!(rho(c(0.0, 0.0)).is_err());
        assert!(rho(c(2.0, 0.0)).is_err());
    }

    #[test]
    fn rho_near_one_vanishes() {
        let r = rho(c(1.0 - 1e-6, 0.0)).unwrap();
        assert!(r.norm() < 1e-8);
    }

    #[test]
    fn boundary_endpoints_and_image() {
        assert_eq!(k_boundary(0.0, 1).unwrap(), c(1.0, 0.0));
        assert_eq!(k_boundary(0.0, -1).unwrap(), c(-1.0, 0.0));
        let top = k_boundary(t0(), 1).unwrap();
        assert!((top - c(0.0, z0())).norm() < 1e-7);
        assert!(k_boundary(1.3, 1).is_err());
        for i in 1..100 {
            let t = t0() * i as f64 / 100.0;
            for sign in [1, -1] {
                let z = k_boundary(t, sign).unwrap();
                let r = rho(z).unwrap();
                assert!(r.re.abs() < 1e-8, "t={t} rho={r}");
                assert!(r.im < 0.0 && r.im > -PI);
                let zeta = zeta(z).unwrap();
                assert!((zeta.arg() + PI / 3.0).abs() < 1e-6, "t={t} zeta={zeta}");
            }
        }
    }

    #[test]
    fn series_branch_of_boundary_is_continuous() {
        let a = k_boundary(SMALL_T * (1.0 - 1e-12), 1).unwrap();
        let b = k_boundary(SMALL_T, 1).unwrap();
        assert!((a - b).norm() < 1e-12);
    }

    #[test]
    fn inverse_examples() {
        let z = inverse_rho(c(0.0, -PI / 2.0), c(0.0, 0.6)).unwrap();
        assert!((z - c(0.0, 0.662_74)).norm() < 1e-4);
        let r05 = rho(c(0.5, 0.0)).unwrap();
        let z = inverse_rho(r05, c(0.4, 0.0)).unwrap();
        assert!((z - c(0.5, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn zeta_on_unit_interval_is_real() {
        for x in [0.1, 0.5, 0.9] {
            let m = map_image(c(x, 0.0)).unwrap();
            assert_eq!(m.zeta.arg(), 0.0);
            assert!(m.phi.im.abs() < 1e-15 && m.phi.re > 0.0);
        }
        assert!(map_image(c(1.5, 0.0)).is_err());
        assert!(map_image(c(-0.5, 0.0)).is_err());
    }

    #[test]
    fn map_invariants_at_a_point() {
        let m = map_image(c(0.3, 0.4)).unwrap();
        check_invariants(&m);
    }

    fn check_invariants(m: &MapImage) {
        let one = Complex64::new(1.0, 0.0);
        let z = m.z;
        let tol = 1e-10;
        let rel = |a: Complex64, b: Complex64| (a - b).norm() / b.norm().max(1e-300);
        assert!(rel((2.0 / 3.0) * m.zeta.powf(1.5), m.rho) < tol, "{m:?}");
        assert!(rel(m.phi.powi(4) * (one - z * z), 4.0 * m.zeta) < tol);
        assert!(rel(m.psi * z * m.phi, Complex64::new(2.0, 0.0)) < tol);
        assert!(rel(m.chi * 16.0 * m.zeta, 4.0 - z * z * m.phi.powi(6)) < tol);
    }

    #[test]
    fn branch_continuity() {
        let mut prev: Option<Complex64> = None;
        for i in 0..400 {
            let u = 2.0 * (i as f64 + 0.5) / 400.0;
            let r = rho(boundary_by_parameter(u).unwrap()).unwrap();
            if let Some(p) = prev {
                assert!((r - p).norm() < 0.1);
            }
            prev = Some(r);
        }
        let mut prev: Option<Complex64> = None;
        for i in 0..=400 {
            let th = PI * (0.001 + 0.998 * i as f64 / 400.0);
            let r = rho(Complex64::from_polar(0.9, th)).unwrap();
            if let Some(p) = prev {
                assert!((r - p).norm() < 0.1, "jump at theta {th}");
            }
            prev = Some(r);
        }
    }

    #[test]
    fn boundary_point_from_im_rho() {
        for &target in &[-0.3, -PI / 2.0, -2.9] {
            let z = boundary_point_with_im_rho(target).unwrap();
            let r = rho(z).unwrap();
            assert!((r.im - target).abs() < 1e-9);
            assert!(r.re.abs() < 1e-8);
        }
    }

    #[test]
    fn region_membership() {
        let spec = RegionSpec::new(0.1).unwrap();
        assert!(omega1_contains(c(0.0, spec.z0), &spec));
        assert!(!omega1_contains(c(1.0, 0.0), &spec));
        assert!(!omega1_contains(c(0.0, -1.0), &spec));
        assert!(!omega1_contains(c(0.0, 2.0), &spec));
    }

    #[test]
    fn derivative_matches_finite_differences() {
        for &z in &[c(0.3, 0.4), c(-0.6, 0.2), c(0.1, 1.3)] {
            let h = 1e-6;
            let fd = (rho(z + h).unwrap() - rho(z - h).unwrap()) / (2.0 * h);
            assert!((fd - rho_derivative(z)).norm() < 1e-8 * fd.norm());
        }
    }

    proptest! {
        #[test]
        fn invariants_everywhere(re in -1.5f64..1.5, im in 0.01f64..1.5) {
            prop_assume!((c(re, im) - 1.0).norm() > 0.05 && (c(re, im) + 1.0).norm() > 0.05);
            let m = map_image(c(re, im)).unwrap();
            check_invariants(&m);
        }

        #[test]
        fn inverse_roundtrip_in_region(u in 0.05f64..1.95, dr in -0.09f64..0.09, di in -0.09f64..0.09) {
            let spec = RegionSpec::new(0.1).unwrap();
            let zb = boundary_by_parameter(u).unwrap();
            let z = zb + c(dr, di);
            prop_assume!(omega1_contains(z, &spec));
            let back = inverse_rho(rho(z).unwrap(), zb).unwrap();
            prop_assert!((back - z).norm() < 1e-10, "{z} -> {back}");
        }
    }
}
