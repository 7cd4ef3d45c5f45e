//! Explicit bi-Lipschitz and quasiconformality bounds for boundary maps
//! `g = ρ e^{iψ}` of starlike curves.


use crate::curves::{tangent_profile_refined, Boundary, BoundaryMap, Curve};
use crate::error::{Error, Result};
use crate::periodic::Side;
use crate::sup::{extremum, range, GridSpec, Sense};
#[allow(unused_imports)] // unused when num-traits is built with `std`
use num_traits::Float;

/// `ψ'` below this counts as vanishing.
pub const MIN_PSI_PRIME: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct StarBounds {
    /// `L = max{|ψ'|_∞, |1/ψ'|_∞}`.
    #[cfg_attr(feature = "serde", serde(rename = "L_psi"))]
    pub l_psi: f64,
    pub rho_sup: f64,
    /// `min_t |g(t)|`.
    pub dist_origin: f64,
    pub sin_ag: f64,
    /// Upper Lipschitz bound `𝓛`.
    #[cfg_attr(feature = "serde", serde(rename = "bigL"))]
    pub big_l: f64,
    /// Lower Lipschitz bound `ℓ = dist²/(L𝓛)`.
    pub ell: f64,
    pub k_bound: f64,
    #[cfg_attr(feature = "serde", serde(rename = "K_bound"))]
    pub big_k_bound: f64,
    pub csc_lower: f64,
}

/// `(𝓛 / |ρ|_∞, k)` from `L` and `s = sin α_γ`.
pub fn star_constants(l: f64, s: f64) -> (f64, f64) {
    let s2 = s * s;
    let minus = (l * l + s2 * (1.0 - 2.0 * l)).max(0.0);
    let plus = l * l + s2 * (1.0 + 2.0 * l);
    ((minus.sqrt() + plus.sqrt()) / (2.0 * s), (minus / plus).sqrt())
}

/// Bounds for a smooth validated boundary map.
pub fn star_bounds(map: &BoundaryMap, spec: GridSpec) -> Result<StarBounds> {
    let psi = map.psi().psi();
    let psi_kinks: alloc::vec::Vec<f64> = psi.kinks().iter().map(|k| k.t).collect();
    let (lo, hi) = range(&psi_kinks, spec, |t, side| {
        Ok(match side {
            None => psi.jet(t)?.0.deriv,
            Some(s) => psi.jet_side(t, s)?.deriv,
        })
    })?;
    if lo.value < MIN_PSI_PRIME {
        return Err(Error::UnboundedL(lo.value));
    }
    let l = hi.value.max(1.0 / lo.value);
    let rho = map.rho();
    let rho_kinks: alloc::vec::Vec<f64> = rho.kinks().iter().map(|k| k.t).collect();
    let rho_sup = extremum(&rho_kinks, spec, Sense::Max, |t, _| Ok(rho.value(t)?.abs()))?.value;
    let kinks = map.kink_params();
    let dist = extremum(&kinks, spec, Sense::Min, |t, _| Ok(map.point(t)?.norm()))?.value;
    let tp = tangent_profile_refined(map, spec)?;
    let s = tp.alpha_gamma.sin();
    let (scale, k) = star_constants(l, s);
    let big_l = rho_sup * scale;
    Ok(StarBounds {
        l_psi: l,
        rho_sup,
        dist_origin: dist,
        sin_ag: s,
        big_l,
        ell: dist * dist / (l * big_l),
        k_bound: k,
        big_k_bound: (1.0 + k) / (1.0 - k),
        csc_lower: 1.0 / s,
    })
}

/// `((1-k)/(1+k), (1+k)/(1-k), (1-k)/(1+k))`: bi-Lipschitz bounds for `ψ`
/// and the lower bound for `sin α_γ` under `|μ_w| ≤ k`.
pub fn inverse_bounds(k: f64) -> Result<(f64, f64, f64)> {
    if !(0.0..1.0).contains(&k) {
        return Err(Error::InvalidK(k));
    }
    let lo = (1.0 - k) / (1.0 + k);
    Ok((lo, (1.0 + k) / (1.0 - k), lo))
}

/// `csc α_γ`, a lower bound for the dilatation of any quasiconformal
/// extension fixing the radial structure.
#[allow(non_snake_case)]
pub fn min_K_lower(curve: &Curve, spec: GridSpec) -> Result<f64> {
    Ok(1.0 / tangent_profile_refined(curve, spec)?.alpha_gamma.sin())
}

/// Ellipse dilatation `K` for semi-axes `0 < b ≤ a`, as
/// `(printed_form, derived_root)`.
///
/// `derived_root` is the larger root of `K + 1/K = (1 + 6c² + c⁴)/(4c²)`
/// with `c = a/b`. `printed_form` evaluates
/// `(a⁴ + 6a²b² + b⁴ + √(14a² + a⁴ + b⁴)|a² - b²|)/(8a²b²)`
/// literally; it agrees with the root only when `b = 1` or `a = b`.
#[allow(non_snake_case)]
pub fn ellipse_K_closed_form(a: f64, b: f64) -> Result<(f64, f64)> {
    if !(b > 0.0 && b <= a && a.is_finite()) {
        return Err(Error::InvalidAxes { a, b });
    }
    let (a2, b2) = (a * a, b * b);
    let printed = (a2 * a2 + 6.0 * a2 * b2 + b2 * b2 + (14.0 * a2 + a2 * a2 + b2 * b2).sqrt() * (a2 - b2).abs())
        / (8.0 * a2 * b2);
    let c = a / b;
    let c2 = c * c;
    let x = (1.0 + 6.0 * c2 + c2 * c2) / (4.0 * c2);
    let derived = 0.5 * (x + (x * x - 4.0).max(0.0).sqrt());
    Ok((printed, derived))
}

/// The printed ellipse Lipschitz expression: `4(a² + b²)³/(27a²b²)` when
/// `a² ≥ 2b²`, else `a`.
pub fn ellipse_lip_printed(a: f64, b: f64) -> f64 {
    let (a2, b2) = (a * a, b * b);
    if a2 >= 2.0 * b2 {
        4.0 * (a2 + b2).powi(3) / (27.0 * a2 * b2)
    } else {
        a
    }
}

/// `ess inf ψ'` and `ess sup ψ'`.
pub fn psi_prime_range(map: &BoundaryMap, spec: GridSpec) -> Result<(f64, f64)> {
    let psi = map.psi().psi();
    let kinks: alloc::vec::Vec<f64> = psi.kinks().iter().map(|k| k.t).collect();
    let (lo, hi) = range(&kinks, spec, |t, side: Option<Side>| {
        Ok(match side {
            None => psi.jet(t)?.0.deriv,
            Some(s) => psi.jet_side(t, s)?.deriv,
        })
    })?;
    Ok((lo.value, hi.value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::builtin;
    use crate::curves::CircleHomeomorphism;
    use crate::dsl::Params;
    use crate::periodic::PeriodicFunction;
    use core::f64::consts::TAU;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn identity_collapse() {
        let map = builtin("circle", &Params::new()).unwrap().as_boundary_map().unwrap();
        let b = star_bounds(&map, GridSpec::default()).unwrap();
        assert!(close(b.big_l, 1.0, 1e-15) && close(b.k_bound, 0.0, 1e-15) && close(b.ell, 1.0, 1e-15));
    }

    #[test]
    fn square_bounds() {
        let map = builtin("square", &Params::new()).unwrap().as_boundary_map().unwrap();
        let b = star_bounds(&map, GridSpec::default()).unwrap();
        let s5 = 5f64.sqrt();
        assert!(close(b.big_l, (2f64.sqrt() + 10f64.sqrt()) / 2.0, 1e-9));
        assert!(close(b.k_bound, 1.0 / s5, 1e-9));
        assert!(close(b.big_k_bound, (3.0 + s5) / 2.0, 1e-8));
        assert!(close(b.ell, 2.0 / (2f64.sqrt() + 10f64.sqrt()), 1e-9));
        assert!(close(b.csc_lower, 2f64.sqrt(), 1e-9));
    }

    #[test]
    fn circle_with_psi() {
        let psi = PeriodicFunction::parse("t + 0.5*sin(t)", &Params::new(), TAU).unwrap();
        let map = BoundaryMap::circle(CircleHomeomorphism::new(psi).unwrap(), 1.0);
        let b = star_bounds(&map, GridSpec::default()).unwrap();
        assert!(close(b.l_psi, 2.0, 1e-12));
        assert!(close(b.big_l, 2.0, 1e-12) && close(b.k_bound, 1.0 / 3.0, 1e-12));
        assert!(close(b.big_k_bound, 2.0, 1e-12) && close(b.ell, 0.25, 1e-12));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(inverse_bounds(0.0).unwrap(), (1.0, 1.0, 1.0));
        let (a, b, c) = inverse_bounds(1.0 / 3.0).unwrap();
        assert!(close(a, 0.5, 1e-15) && close(b, 2.0, 1e-15) && close(c, 0.5, 1e-15));
        let s5 = 5f64.sqrt();
        let (a, b, _) = inverse_bounds(1.0 / s5).unwrap();
        assert!(close(a, (3.0 - s5) / 2.0, 1e-15) && close(b, (3.0 + s5) / 2.0, 1e-14));
        assert!(matches!(inverse_bounds(1.0), Err(Error::InvalidK(_))));
        assert!(matches!(inverse_bounds(-0.1), Err(Error::InvalidK(_))));
    }

    #[test]
    fn ellipse_forms() {
        assert_eq!(ellipse_K_closed_form(1.0, 1.0).unwrap(), (1.0, 1.0));
        let (p, d) = ellipse_K_closed_form(2.0, 1.0).unwrap();
        let want = (41.0 + 3.0 * 73f64.sqrt()) / 32.0;
        assert!(close(p, want, 1e-14) && close(d, want, 1e-14));
        let (p, d) = ellipse_K_closed_form(2.0, 2.0).unwrap();
        assert!(close(p, d, 1e-15));
        let (p, d) = ellipse_K_closed_form(4.0, 2.0).unwrap();
        assert!((p - d).abs() > 1e-3);
        assert!(close(d, want, 1e-14));
        assert!(matches!(ellipse_K_closed_form(1.0, 2.0), Err(Error::InvalidAxes { .. })));
        assert!(close(ellipse_lip_printed(2.0, 1.0), 500.0 / 108.0, 1e-13));
    }

    #[test]
    fn unbounded_l() {
        let psi = PeriodicFunction::parse("t + sin(t)", &Params::new(), TAU).unwrap();
        let map = BoundaryMap::circle(CircleHomeomorphism::new(psi).unwrap(), 1.0);
        assert!(matches!(star_bounds(&map, GridSpec::default()), Err(Error::UnboundedL(_))));
    }
}
