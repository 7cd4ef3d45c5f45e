use std::f64::consts::{FRAC_PI_2, PI, TAU};

use proptest::prelude::*;
use radext_core::bounds::{ellipse_K_closed_form, inverse_bounds, min_K_lower, star_bounds, star_constants};
use radext_core::builtin::builtin;
use radext_core::curves::tangent_profile;
use radext_core::dsl::Params;
use radext_core::lipschitz::{lip_Lambda, max_mu};
use radext_core::sup::GridSpec;
use radext_core::verify::{
    limit_lemma_check, verify_circle, verify_curve, verify_ellipse, Status, VerifyOptions, CHECKS,
};
use radext_core::{BoundaryMap, CircleHomeomorphism, Error, PeriodicFunction};

fn psi(text: &str) -> CircleHomeomorphism {
    CircleHomeomorphism::new(PeriodicFunction::parse(text, &Params::new(), TAU).unwrap()).unwrap()
}

fn failures(r: &radext_core::verify::VerificationReport) -> Vec<String> {
    r.checks.iter().filter(|c| c.status == Status::Fail).map(|c| format!("{:?}", c)).collect()
}

#[test]
fn star_bounds_are_sound() {
    let opts = VerifyOptions::default();
    let sq = builtin("square", &Params::new()).unwrap();
    let mut maps = vec![("square".to_string(), sq.as_boundary_map().unwrap())];
    for a in [0.2, 0.5] {
        maps.push((format!("psi a={}", a), BoundaryMap::circle(psi(&format!("t + {}*sin(t)", a)), 1.0)));
    }
    for (name, map) in &maps {
        let r = radext_core::verify::verify_star(map, opts).unwrap();
        assert!(r.passed(), "{}: {:?}", name, failures(&r));
        for c in [
            "star.upper_lipschitz",
            "star.lower_lipschitz",
            "star.mu_bound",
            "star.psi_lower",
            "star.psi_upper",
            "star.sin_alpha_lower",
        ] {
            assert_eq!(r.check(c).unwrap().status, Status::Pass, "{} {}", name, c);
        }
    }
    let map = &maps[0].1;
    let b = star_bounds(map, opts.spec).unwrap();
    let lam = lip_Lambda(map, opts.spec).unwrap().value;
    assert!((b.big_l - lam).abs() <= 1e-9, "tightness gap {}", b.big_l - lam);
}

#[test]
fn circle_half_sine_bounds() {
    let map = BoundaryMap::circle(psi("t + 0.5*sin(t)"), 1.0);
    let spec = GridSpec::default();
    let b = star_bounds(&map, spec).unwrap();
    assert!((b.big_l - 2.0).abs() <= 1e-12 && (b.k_bound - 1.0 / 3.0).abs() <= 1e-12);
    let mu = max_mu(&map, spec).unwrap().value;
    assert!((mu - 1.0 / 3.0).abs() <= 1e-12);
    let lam = lip_Lambda(&map, spec).unwrap().value;
    assert!((lam - 1.5).abs() <= 1e-9);
    let (lo, hi, _) = inverse_bounds(mu).unwrap();
    assert!((lo - 0.5).abs() <= 1e-12 && (hi - 2.0).abs() <= 1e-12);
}

#[test]
fn identity_collapses_every_bound() {
    let r = verify_circle(&CircleHomeomorphism::identity(), VerifyOptions::default()).unwrap();
    assert!(r.checks.iter().all(|c| c.status == Status::Pass));
    let map = BoundaryMap::circle(CircleHomeomorphism::identity(), 1.0);
    let b = star_bounds(&map, GridSpec::default()).unwrap();
    for (v, want) in [(b.big_l, 1.0), (b.ell, 1.0), (b.k_bound, 0.0), (b.big_k_bound, 1.0), (b.csc_lower, 1.0)] {
        assert!((v - want).abs() <= 1e-15, "{:?}", b);
    }
}

#[test]
fn circle_k_claim_is_flagged() {
    let r = verify_circle(&psi("t + 0.5*sin(t)"), VerifyOptions::default()).unwrap();
    assert!(r.passed());
    let k = r.check("circle.K_qc_eq_sup_psi_prime").unwrap();
    assert_eq!(k.status, Status::Flagged);
    assert!((k.measured[0] - 2.0).abs() <= 1e-9);
    assert_eq!(k.expected.len(), 2);
    assert!((k.expected[0] - 1.5).abs() <= 1e-9 && (k.expected[1] - 2.0).abs() <= 1e-9);
    for c in ["circle.l_eq_sup_psi_prime", "circle.L_eq_sup_psi_prime", "circle.Lambda_eq_sup_psi_prime"] {
        let c = r.check(c).unwrap();
        assert_eq!(c.status, Status::Pass);
        assert!((c.measured[0] - 1.5).abs() <= 1e-6);
    }
}

#[test]
fn ellipse_report_flags_printed_forms() {
    let r = verify_ellipse(2.0, 1.0, VerifyOptions::default()).unwrap();
    assert!(r.passed(), "{:?}", failures(&r));
    let k = r.check("ellipse.K_derived_root").unwrap();
    assert!((k.measured[0] - (41.0 + 3.0 * 73f64.sqrt()) / 32.0).abs() <= 1e-4);
    // K + 1/K = 41/16
    assert!((k.measured[0] + 1.0 / k.measured[0] - 41.0 / 16.0).abs() <= 1e-9);
    let lip = r.check("ellipse.lip_printed_form").unwrap();
    assert_eq!(lip.status, Status::Flagged);
    assert!((lip.measured[0] - 2.151657).abs() <= 1e-4);
    assert!((lip.measured[1] - 500.0 / 108.0).abs() <= 1e-3);
    assert!(r.check("polar.Lambda_gt_L").unwrap().status == Status::Pass);
    // a = b = 2 is a circle, where the printed and derived forms coincide
    let (p, d) = ellipse_K_closed_form(2.0, 2.0).unwrap();
    assert_eq!(p, d);
    let (p, d) = ellipse_K_closed_form(4.0, 2.0).unwrap();
    assert!((p - d).abs() > 1e-2);
    assert_eq!(r.check("ellipse.K_printed_form").unwrap().status, Status::Pass);
    let r = verify_ellipse(4.0, 2.0, VerifyOptions { spec: GridSpec { n: 1024, refine: 1 }, ..Default::default() }).unwrap();
    assert_eq!(r.check("ellipse.K_printed_form").unwrap().status, Status::Flagged);
}

#[test]
fn builtins_verify() {
    let opts = VerifyOptions::default();
    let mut p = Params::new();
    p.insert("s".into(), 3.0);
    for (name, params) in [("circle", Params::new()), ("circle", p), ("square", Params::new()), ("shear", Params::new())] {
        let c = builtin(name, &params).unwrap();
        let r = verify_curve(&c, name, opts).unwrap();
        assert!(r.passed(), "{}: {:?}", name, failures(&r));
        assert!(r.checks.iter().all(|c| CHECKS.contains(&c.name.as_str())));
    }
    let shear = builtin("shear", &Params::new()).unwrap();
    let r = verify_curve(&shear, "shear", opts).unwrap();
    assert!((r.lipschitz.l - 101f64.sqrt() / 10.0).abs() <= 1e-3);
    assert!((r.lipschitz.big_l - FRAC_PI_2).abs() <= 1e-3);
    assert!(r.lipschitz.k_qc.is_none());
}

#[test]
fn square_k_lower_bound_is_csc() {
    let sq = builtin("square", &Params::new()).unwrap();
    let lower = min_K_lower(&sq, GridSpec::default()).unwrap();
    assert!((lower - 2f64.sqrt()).abs() <= 1e-9);
    let tp = tangent_profile(&sq, 4096).unwrap();
    assert!((tp.alpha_gamma - PI / 4.0).abs() <= 1e-9);
}

#[test]
fn limit_lemma_cases() {
    let eps = [1e-2, 1e-3, 1e-4];
    for (p, q, t) in [(1.0, 1.0, FRAC_PI_2), (1.0, 2.0, PI / 6.0), (2.0, 1.0, 2.0)] {
        let r = limit_lemma_check(p, q, t, &eps).unwrap();
        assert!(r.pass, "{:?}", r);
        let oracle = q * q * t.sin().powi(2) / (p * p);
        assert!((r.values[2] - oracle).abs() <= 1e-2 * oracle);
        assert!(r.residuals[0] > r.residuals[1] && r.residuals[1] > r.residuals[2]);
    }
    assert!(matches!(limit_lemma_check(0.0, 1.0, 1.0, &eps), Err(Error::InvalidParams(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn inverse_bounds_bracket_one(k in 0.0f64..0.999) {
        let (lo, hi, s) = inverse_bounds(k).unwrap();
        prop_assert!(lo > 0.0 && lo <= 1.0 && hi >= 1.0);
        prop_assert!((lo * hi - 1.0).abs() <= 1e-12);
        prop_assert_eq!(lo, s);
    }

    #[test]
    fn star_constants_are_consistent(l in 1.0f64..5.0, s in 0.05f64..1.0) {
        let (big_l, k) = star_constants(l, s);
        prop_assert!(big_l >= 1.0 - 1e-12);
        prop_assert!((0.0..1.0).contains(&k));
        let (_, hi, _) = inverse_bounds(k).unwrap();
        // the ψ' range implied by k contains [1/L, L]
        prop_assert!(hi >= l * (1.0 - 1e-9));
    }

    #[test]
    fn circle_psi_bounds_are_sound(a in 0.05f64..0.8) {
        let map = BoundaryMap::circle(psi(&format!("t + {}*sin(t)", a)), 1.0);
        let spec = GridSpec { n: 1024, refine: 1 };
        let b = star_bounds(&map, spec).unwrap();
        let lam = lip_Lambda(&map, spec).unwrap().value;
        let mu = max_mu(&map, spec).unwrap().value;
        prop_assert!(lam <= b.big_l + 1e-9);
        prop_assert!(mu <= b.k_bound + 1e-9);
    }
}
