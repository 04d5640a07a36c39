//! Bessel `J`, Hankel `H^(1)`, their derivatives, Airy `Ai`, and the
//! continuation of `J` and `H^(1)` across sheets of the logarithmic surface.

mod airy;
mod bessel;
mod hankel;
mod order;

use std::ops::{Mul, Sub};

use num_complex::Complex64;

pub use airy::{airy_ai, airy_ai_prime, airy_asymptotic, AiryArgument, AiryCoefficients, AIRY_MAX_ABS};
pub use order::{Order, MAX_ORDER};

use crate::error::{domain, Result};
use crate::scaled::ScaledComplex;

/// Largest `|z|` accepted by the evaluators.
pub const MAX_ABS_ARGUMENT: f64 = 1000.0;

/// `J_nu`, `J_nu'`, `H_nu^(1)`, `H_nu^(1)'` at one argument.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BesselValues {
    pub j: ScaledComplex,
    pub jp: ScaledComplex,
    pub h: ScaledComplex,
    pub hp: ScaledComplex,
}

fn check(nu: Order, z: Complex64) -> Result<()> {
    nu.check_envelope()?;
    if !(z.norm() <= MAX_ABS_ARGUMENT) {
        return Err(domain(format!("|z| = {} outside the supported envelope", z.norm())));
    }
    Ok(())
}

fn lowest_index(nu: Order) -> i64 {
    if nu.is_integer() {
        0
    } else {
        -1
    }
}

/// `J` on ladder indices `k-1, k, k+1` (clipped below) plus the base indices
/// the Hankel closure needs. Returns the full ascending index list and values.
fn j_neighbourhood(nu: Order, z: Complex64) -> Result<(Vec<i64>, Vec<ScaledComplex>)> {
    let k = nu.ladder_index();
    let lo = lowest_index(nu);
    let mut ks = vec![lo, lo + 1, k - 1, k, k + 1];
    ks.retain(|&i| i >= lo);
    ks.sort_unstable();
    ks.dedup();
    let vals = bessel::j_ladder(nu.offset(), z, &ks)?;
    Ok((ks, vals))
}

fn pick(ks: &[i64], vals: &[ScaledComplex], k: i64) -> ScaledComplex {
    vals[ks.binary_search(&k).expect("index requested")]
}

fn j_and_prime(nu: Order, ks: &[i64], vals: &[ScaledComplex]) -> (ScaledComplex, ScaledComplex) {
    let k = nu.ladder_index();
    let j = pick(ks, vals, k);
    let jp = if nu.value() == 0.0 {
        -pick(ks, vals, 1)
    } else {
        (pick(ks, vals, k - 1) - pick(ks, vals, k + 1)) * 0.5
    };
    (j, jp)
}

/// `J_nu(z)`.
pub fn bessel_j(nu: Order, z: Complex64) -> Result<ScaledComplex> {
    check(nu, z)?;
    if z.norm() == 0.0 && !nu.is_integer() {
        return Err(domain("J of half-integer order needs z != 0"));
    }
    let vals = bessel::j_ladder(nu.offset(), z, &[nu.ladder_index()])?;
    Ok(vals[0])
}

/// `J_nu'(z)`.
pub fn bessel_j_prime(nu: Order, z: Complex64) -> Result<ScaledComplex> {
    check(nu, z)?;
    if z.norm() == 0.0 && !nu.is_integer() {
        return Err(domain("J' of half-integer order needs z != 0"));
    }
    let (ks, vals) = j_neighbourhood(nu, z)?;
    Ok(j_and_prime(nu, &ks, &vals).1)
}

/// `J_nu(z)` and `J_nu'(z)` from one recurrence pass.
pub fn bessel_j_pair(nu: Order, z: Complex64) -> Result<(ScaledComplex, ScaledComplex)> {
    check(nu, z)?;
    if z.norm() == 0.0 && !nu.is_integer() {
        return Err(domain("J' of half-integer order needs z != 0"));
    }
    let (ks, vals) = j_neighbourhood(nu, z)?;
    Ok(j_and_prime(nu, &ks, &vals))
}

/// `H^(1)_nu(z)`.
pub fn hankel1(nu: Order, z: Complex64) -> Result<ScaledComplex> {
    Ok(bessel_jh(nu, z)?.h)
}

/// `H^(1)_nu'(z)`.
pub fn hankel1_prime(nu: Order, z: Complex64) -> Result<ScaledComplex> {
    Ok(bessel_jh(nu, z)?.hp)
}

/// All four functions at once, sharing one recurrence pass.
pub fn bessel_jh(nu: Order, z: Complex64) -> Result<BesselValues> {
    check(nu, z)?;
    if z.norm() == 0.0 {
        return Err(domain("H^(1) is singular at z = 0"));
    }
    let z = bessel::canonical(z);
    let (ks, vals) = j_neighbourhood(nu, z)?;
    let (j, jp) = j_and_prime(nu, &ks, &vals);
    let (h, hp) = if z.im >= 0.0 {
        hankel_upper(nu, z, &ks, &vals)?
    } else {
        // H^(1)(z) = 2 J(z) - conj(H^(1)(conj z))
        let zc = z.conj();
        let (ksc, valsc) = j_neighbourhood(nu, zc)?;
        let (hc, hpc) = hankel_upper(nu, zc, &ksc, &valsc)?;
        (j * 2.0 - hc.conj(), jp * 2.0 - hpc.conj())
    };
    Ok(BesselValues { j, jp, h, hp })
}

fn hankel_upper(
    nu: Order,
    z: Complex64,
    ks: &[i64],
    vals: &[ScaledComplex],
) -> Result<(ScaledComplex, ScaledComplex)> {
    let lo = lowest_index(nu);
    let base = [pick(ks, vals, lo), pick(ks, vals, lo + 1)];
    let pair = hankel::base_pair(nu.offset(), z, &base)?;
    let k = nu.ladder_index();
    if nu.value() == 0.0 {
        // H_0' = -H_1
        return Ok((pair.0, -pair.1));
    }
    let (hm1, h) = hankel::forward(nu.offset(), z, lo, pair, k);
    // H_nu' = H_{nu-1} - (nu/z) H_nu
    let hp = hm1 - h * (nu.value() / z);
    Ok((h, hp))
}

/// Values that can be carried across sheets: plain or scaled complex numbers.
pub trait SheetValue: Copy + Mul<Complex64, Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {}

impl<T> SheetValue for T where T: Copy + Mul<Complex64, Output = T> + Sub<Output = T> + Mul<f64, Output = T> {}

/// `i^e` computed exactly.
fn i_power(e: i64) -> Complex64 {
    match e.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// `e^{i m pi nu}` for a half-integer order.
fn half_turn_phase(nu: Order, m: i64) -> Complex64 {
    let twice = (2.0 * nu.value()) as i64;
    i_power((m.rem_euclid(4) * twice.rem_euclid(4)).rem_euclid(4))
}

/// `J_nu(z e^{i m pi}) = e^{i m nu pi} J_nu(z)`.
pub fn continue_bessel<T: SheetValue>(nu: Order, m: i64, j_at_z: T) -> T {
    j_at_z * half_turn_phase(nu, m)
}

/// `J_nu'(z e^{i m pi}) = e^{i m (nu+1) pi} J_nu'(z)`, the derivative taken in
/// the rotated variable.
pub fn continue_bessel_prime<T: SheetValue>(nu: Order, m: i64, jp_at_z: T) -> T {
    jp_at_z * (half_turn_phase(nu, m) * sign(m))
}

/// `H_nu(z e^{i m pi}) = (-1)^{m nu} [H_nu(z) - 2m J_nu(z)]`, integer `nu` only.
pub fn continue_hankel1<T: SheetValue>(nu: Order, m: i64, h_at_z: T, j_at_z: T) -> Result<T> {
    let n = integer_order(nu)?;
    Ok((h_at_z - j_at_z * (2.0 * m as f64)) * sign(m * n))
}

/// `H_nu'(z e^{i m pi}) = (-1)^{m (nu+1)} [H_nu'(z) - 2m J_nu'(z)]`, integer `nu` only.
pub fn continue_hankel1_prime<T: SheetValue>(nu: Order, m: i64, hp_at_z: T, jp_at_z: T) -> Result<T> {
    let n = integer_order(nu)?;
    Ok((hp_at_z - jp_at_z * (2.0 * m as f64)) * sign(m * (n + 1)))
}

fn integer_order(nu: Order) -> Result<i64> {
    nu.as_integer()
        .map(i64::from)
        .ok_or_else(|| domain(format!("sheet continuation of H^(1) needs an integer order, got {nu}")))
}

fn sign(e: i64) -> Complex64 {
    if e.rem_euclid(2) == 0 {
        Complex64::new(1.0, 0.0)
    } else {
        Complex64::new(-1.0, 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn trivial_values() {
        assert_eq!(bessel_j(Order::integer(0), c(0.0, 0.0)).unwrap().value(), c(1.0, 0.0));
        let j = bessel_j(Order::half_odd(0), c(PI / 2.0, 0.0)).unwrap().value();
        assert!(rel(j, c(2.0 / PI, 0.0)) < 1e-14);
        let jp = bessel_j_prime(Order::integer(1), c(0.0, 0.0)).unwrap().value();
        assert!((jp - c(0.5, 0.0)).norm() < 1e-15);
        assert!(hankel1(Order::integer(0), c(0.0, 0.0)).is_err());
        assert!(bessel_j(Order::half_odd(0), c(0.0, 0.0)).is_err());
    }

    #[test]
    fn half_order_closed_forms() {
        for &z in &[c(1.0, 0.0), c(3.0, 0.5), c(17.0, -1.5), c(0.3, 0.2), c(60.0, 2.0)] {
            let pre = (2.0 / (PI * z)).sqrt();
            let v = bessel_jh(Order::half_odd(0), z).unwrap();
            assert!(rel(v.j.value(), pre * z.sin()) < 1e-12, "J at {z}");
            let h = -Complex64::i() * pre * (Complex64::i() * z).exp();
            assert!(rel(v.h.value(), h) < 1e-12, "H at {z}");
            let j = bessel_j(Order::half_odd(0), z).unwrap();
            assert!(rel(j.value(), pre * z.sin()) < 1e-12, "direct J at {z}");
            let j32 = bessel_j(Order::half_odd(1), z).unwrap();
            assert!(rel(j32.value(), pre * (z.sin() / z - z.cos())) < 1e-12, "J_3/2 at {z}");
        }
    }

    #[test]
    fn wronskian_spot_checks() {
        for &(n, z) in &[(0, c(1.0, 0.0)), (3, c(2.5, 0.1)), (40, c(30.0, 1.0)), (60, c(5.0, -2.0)), (200, c(150.0, 0.5))] {
            let v = bessel_jh(Order::integer(n), z).unwrap();
            let w = (v.jp * v.h - v.j * v.hp) * z;
            assert!((w.value() - c(0.0, -2.0 / PI)).norm() < 1e-10 * 2.0 / PI, "n={n} z={z}: {:?}", w.value());
        }
    }

    #[test]
    fn envelope_is_enforced() {
        assert!(bessel_j(Order::integer(10), c(1500.0, 0.0)).is_err());
        assert!(Order::from_f64(300.0).is_err());
    }

    #[test]
    fn continuation_phases() {
        let v = c(0.3, -1.2);
        assert_eq!(continue_bessel(Order::integer(2), 1, v), v);
        assert_eq!(continue_bessel(Order::integer(1), 1, v), -v);
        assert_eq!(continue_bessel(Order::half_odd(0), 2, v), -v);
        assert_eq!(continue_bessel_prime(Order::integer(1), 1, v), v);
        let h = c(0.7, 0.1);
        assert_eq!(continue_hankel1(Order::integer(3), 0, h, v).unwrap(), h);
        assert!(continue_hankel1(Order::half_odd(1), 1, h, v).is_err());
    }

    #[test]
    fn continuation_matches_rotated_argument() {
        // J and H at z e^{i pi} where z e^{i pi} still lies in the upper half-plane
        // of the principal determination: take z in the lower half-plane.
        let z = c(2.7, -0.8);
        let zr = -z;
        for n in [0u32, 1, 4] {
            let nu = Order::integer(n);
            let a = bessel_jh(nu, z).unwrap();
            let b = bessel_jh(nu, zr).unwrap();
            let h = continue_hankel1(nu, 1, a.h.value(), a.j.value()).unwrap();
            assert!(rel(h, b.h.value()) < 1e-12, "n={n}");
            let hp = continue_hankel1_prime(nu, 1, a.hp.value(), a.jp.value()).unwrap();
            assert!(rel(hp, b.hp.value()) < 1e-12, "n={n}");
            assert!(rel(continue_bessel(nu, 1, a.j.value()), b.j.value()) < 1e-12);
            assert!(rel(continue_bessel_prime(nu, 1, a.jp.value()), b.jp.value()) < 1e-12);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn conjugation_symmetry(n in 0u32..60, re in 0.1f64..100.0, im in -5.0f64..5.0) {
            let z = c(re, im);
            let a = bessel_j(Order::integer(n), z).unwrap();
            let b = bessel_j(Order::integer(n), z.conj()).unwrap();
            prop_assert!((a.conj() - b).abs() <= 1e-12 * a.abs().max(f64::MIN_POSITIVE));
        }

        #[test]
        fn semigroup_of_continuation(n in 0u32..30, hr in -5.0f64..5.0, hi in -5.0f64..5.0, jr in -5.0f64..5.0, ji in -5.0f64..5.0) {
            let nu = Order::integer(n);
            let (h, j) = (c(hr, hi), c(jr, ji));
            let once = continue_hankel1(nu, 1, h, j).unwrap();
            let twice = continue_hankel1(nu, 1, once, continue_bessel(nu, 1, j)).unwrap();
            let direct = continue_hankel1(nu, 2, h, j).unwrap();
            prop_assert!((twice - direct).norm() <= 4.0 * f64::EPSILON * (h.norm() + 4.0 * j.norm()));
        }

        #[test]
        fn bessel_ode(n in 0u32..40, re in 0.5f64..80.0, im in -3.0f64..3.0) {
            let nu = Order::integer(n);
            let z = c(re, im);
            let jp = |k: u32| bessel_j_prime(Order::integer(k), z).unwrap();
            let f = bessel_j(nu, z).unwrap();
            let fp = jp(n);
            // J_nu'' = (J_{nu-1}' - J_{nu+1}')/2, J_0'' = -J_1'
            let fpp = if n == 0 { -jp(1) } else { (jp(n - 1) - jp(n + 1)) * 0.5 };
            let nuv = nu.value();
            let resid = fpp + fp * (1.0 / z) + f * (1.0 - nuv * nuv / (z * z));
            let scale = f.abs() + fp.abs() + fpp.abs();
            prop_assert!(resid.abs() <= 1e-9 * scale, "resid {} scale {}", resid.abs(), scale);
        }
    }
}
