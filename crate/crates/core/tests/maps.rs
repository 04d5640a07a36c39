//! Conformal map checks against a high-precision evaluation and its invariants.

mod common;

use std::f64::consts::PI;

use common::oracle;
use num_complex::Complex64;
use proptest::prelude::*;
use resonance_core::maps::{self, RegionSpec};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn rho_on_unit_interval_matches_high_precision() {
    for &x in &[0.05, 0.2, 0.5, 0.8, 0.99] {
        let r = maps::rho(c(x, 0.0)).unwrap();
        assert_eq!(r.im, 0.0);
        assert!((r.re - oracle::rho_real(x)).abs() < 1e-14 * r.re.abs().max(1.0), "x = {x}");
    }
    assert!((maps::rho(c(0.5, 0.0)).unwrap().re - 0.450_932_5).abs() < 1e-7);
}

#[test]
fn printed_constants() {
    let spec = RegionSpec::new(0.1).unwrap();
    assert!((spec.t0 - 1.199_678_64).abs() < 1e-7);
    assert!((spec.z0 - 0.662_74).abs() < 1e-4);
    assert!((spec.z0 * spec.z0 - (spec.t0 * spec.t0 - 1.0)).abs() < 1e-12);
    assert!((maps::rho(c(0.0, 0.662_74)).unwrap() + c(0.0, PI / 2.0)).norm() < 1e-4);
}

#[test]
fn boundary_maps_into_the_imaginary_segment() {
    let mut prev: Option<Complex64> = None;
    for i in 1..400 {
        let z = maps::boundary_by_parameter(2.0 * i as f64 / 400.0).unwrap();
        let r = maps::rho(z).unwrap();
        assert!(r.re.abs() < 1e-8, "Re rho = {} at {z}", r.re);
        assert!(r.im < 0.0 && r.im > -PI);
        let zeta = maps::zeta(z).unwrap();
        assert!((zeta.arg() + PI / 3.0).abs() < 1e-6);
        if let Some(p) = prev {
            assert!((r - p).norm() < 0.1);
        }
        prev = Some(r);
    }
}

#[test]
fn region_membership() {
    let spec = RegionSpec::new(0.1).unwrap();
    assert!(maps::omega1_contains(c(0.0, spec.z0), &spec));
    assert!(!maps::omega1_contains(c(1.0, 0.0), &spec));
    assert!(!maps::omega1_contains(c(0.0, -1.0), &spec));
    assert!(!maps::omega1_contains(c(0.0, 2.0), &spec));
}

fn omega_point() -> impl Strategy<Value = Complex64> {
    (0.02f64..1.18, -0.09f64..0.09, -0.09f64..0.09).prop_filter_map("inside the region", |(t, dx, dy)| {
        let spec = RegionSpec::new(0.1).unwrap();
        let zb = maps::k_boundary(t, 1).ok()?;
        let z = zb + c(dx, dy);
        maps::omega1_contains(z, &spec).then_some(z)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn inverse_undoes_rho(z in omega_point()) {
        let r = maps::rho(z).unwrap();
        let seed = maps::boundary_point_with_im_rho(r.im.clamp(-PI + 1e-9, -1e-9)).unwrap();
        let back = maps::inverse_rho(r, seed).unwrap();
        prop_assert!((back - z).norm() < 1e-10, "{z} -> {back}");
    }

    #[test]
    fn map_image_identities(z in omega_point()) {
        let m = maps::map_image(z).unwrap();
        let one = c(1.0, 0.0);
        prop_assert!((m.phi.powu(4) * (one - z * z) - m.zeta * 4.0).norm() < 1e-10);
        prop_assert!((m.psi * z * m.phi - 2.0).norm() < 1e-10);
        prop_assert!((m.chi * 16.0 * m.zeta - (4.0 - z * z * m.phi.powu(6))).norm() < 1e-10);
        prop_assert!((m.zeta.powf(1.5) * (2.0 / 3.0) - m.rho).norm() < 1e-10);
    }
}
