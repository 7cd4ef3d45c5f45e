use std::f64::consts::TAU;

use proptest::prelude::*;
use radext_core::dsl::Params;
use radext_core::mollify::mollify;
use radext_core::PeriodicFunction;

const N: usize = 4096;

fn sup_distance(a: &PeriodicFunction, b: &PeriodicFunction) -> f64 {
    (0..N)
        .map(|j| {
            let t = TAU * j as f64 / N as f64;
            (a.value(t).unwrap() - b.value(t).unwrap()).abs()
        })
        .fold(0.0, f64::max)
}

fn inputs() -> Vec<(PeriodicFunction, f64)> {
    let p = Params::new();
    vec![
        (PeriodicFunction::parse("t + 0.4*abs(sin(t))", &p, TAU).unwrap(), TAU),
        (PeriodicFunction::parse("t + 0.5*sin(t)", &p, TAU).unwrap(), TAU),
        (PeriodicFunction::parse("min(1/abs(sin(t)), 1/abs(cos(t)))", &p, 0.0).unwrap(), 0.0),
        (PeriodicFunction::parse("1 + 0.3*abs(cos(2*t))", &p, 0.0).unwrap(), 0.0),
    ]
}

#[test]
fn lipschitz_constant_does_not_grow() {
    for (phi, _) in inputs() {
        let lip = phi.grid_lipschitz(N).unwrap();
        for w in [0.1, 0.05, 0.025] {
            let m = mollify(&phi, w).unwrap();
            let lm = m.grid_lipschitz(N).unwrap();
            assert!(lm <= lip + 1e-9, "w = {}: {} > {}", w, lm, lip);
        }
    }
}

#[test]
fn period_offset_is_preserved_exactly() {
    for (phi, offset) in inputs() {
        for w in [0.1, 0.05, 0.025] {
            let m = mollify(&phi, w).unwrap();
            assert_eq!(m.period_offset(), offset);
            for t in [0.1, 1.0, 3.0, 5.5] {
                let d = m.value(t + TAU).unwrap() - m.value(t).unwrap();
                assert!((d - offset).abs() <= 1e-12);
            }
        }
    }
}

#[test]
fn sup_distance_shrinks_with_width() {
    for (phi, _) in inputs() {
        let d: Vec<f64> = [0.1, 0.05, 0.025].iter().map(|&w| sup_distance(&mollify(&phi, w).unwrap(), &phi)).collect();
        assert!(d[0] > d[1] && d[1] > d[2], "{:?}", d);
        assert!(d[2] <= 0.3 * d[0]);
    }
}

#[test]
fn mollified_homeomorphism_stays_monotone() {
    let psi = PeriodicFunction::parse("t + 0.9*abs(sin(t))*sin(t)", &Params::new(), TAU).unwrap();
    let m = mollify(&psi, 0.05).unwrap();
    for j in 0..N {
        let t = TAU * j as f64 / N as f64;
        assert!(m.jet(t).unwrap().0.deriv > 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn mollifier_contract(a in -0.6f64..0.6, k in 1u32..4, w in 0.02f64..0.5) {
        let phi = PeriodicFunction::parse(&format!("t + {}*abs(sin({}*t))/{}", a, k, k), &Params::new(), TAU).unwrap();
        let m = mollify(&phi, w).unwrap();
        prop_assert_eq!(m.period_offset(), TAU);
        prop_assert!(m.grid_lipschitz(1024).unwrap() <= phi.grid_lipschitz(N).unwrap() + 1e-9);
        // |φ - φ * k_w| ≤ Lip(φ)·w
        let lip = 1.0 + a.abs();
        prop_assert!(sup_distance(&m, &phi) <= lip * w);
    }
}
