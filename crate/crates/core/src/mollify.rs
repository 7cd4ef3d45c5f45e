//! Smoothing by convolution with a compactly supported bump.
//!
//! The convolution integral is replaced by composite Gauss–Legendre
//! quadrature, so the result is a finite convex combination of translates
//! `Σ c_k φ(t - y_k)`. Convex combinations of translates keep the period
//! offset exactly and never increase the Lipschitz constant, and a
//! nondecreasing `φ` stays nondecreasing.

use alloc::vec::Vec;
use core::f64::consts::PI;


use crate::error::{Error, Result};
use crate::periodic::PeriodicFunction;
#[allow(unused_imports)] // unused when num-traits is built with `std`
use num_traits::Float;

/// Quadrature panels on each half of the support.
pub const PANELS_PER_SIDE: usize = 8;
/// Gauss–Legendre points per panel.
pub const POINTS_PER_PANEL: usize = 8;

/// The unnormalized bump `exp(-1/(1 - (y/w)^2))` on `(-w, w)`.
pub fn bump(y: f64, width: f64) -> f64 {
    let u = y / width;
    if u.abs() >= 1.0 {
        0.0
    } else {
        (-1.0 / (1.0 - u * u)).exp()
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// Quadrature nodes `(y_k, c_k)` of the normalized bump of half-width
/// `width`: symmetric (`y` and `-y` share a weight), positive, summing to 1.
pub fn bump_nodes(width: f64) -> Result<Vec<(f64, f64)>> {
    if !(width > 0.0 && width < PI) {
        return Err(Error::InvalidWidth(width));
    }
    let gl = gauss_legendre(POINTS_PER_PANEL);
    let panel = width / PANELS_PER_SIDE as f64;
    let mut half = Vec::with_capacity(PANELS_PER_SIDE * POINTS_PER_PANEL);
    for p in 0..PANELS_PER_SIDE {
        let centre = (p as f64 + 0.5) * panel;
        for &(x, w) in &gl {
            let y = centre + 0.5 * panel * x;
            half.push((y, 0.5 * panel * w * bump(y, width)));
        }
    }
    let total: f64 = 2.0 * half.iter().map(|n| n.1).sum::<f64>();
    let mut nodes = Vec::with_capacity(2 * half.len());
    for &(y, c) in &half {
        nodes.push((y, c / total));
        nodes.push((-y, c / total));
    }
    Ok(nodes)
}

/// `φ * k_w` for `0 < w < π`.
pub fn mollify(phi: &PeriodicFunction, width: f64) -> Result<PeriodicFunction> {
    Ok(PeriodicFunction::mollified(phi, bump_nodes(width)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::Params;
    use core::f64::consts::TAU;

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let gl = gauss_legendre(8);
        let s: f64 = gl.iter().map(|(x, w)| w * x.powi(14)).sum();
        assert!((s - 2.0 / 15.0).abs() < 1e-14);
        assert!((gl.iter().map(|n| n.1).sum::<f64>() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn nodes_are_a_symmetric_probability() {
        let nodes = bump_nodes(0.3).unwrap();
        assert_eq!(nodes.len(), 2 * PANELS_PER_SIDE * POINTS_PER_PANEL);
        assert!(nodes.iter().all(|&(y, c)| c > 0.0 && y.abs() < 0.3));
        assert!((nodes.iter().map(|n| n.1).sum::<f64>() - 1.0).abs() < 1e-14);
        assert!(nodes.iter().map(|n| n.0 * n.1).sum::<f64>().abs() < 1e-16);
    }

    #[test]
    fn width_is_checked() {
        for w in [0.0, -1.0, PI, 4.0, f64::NAN] {
            assert!(matches!(bump_nodes(w), Err(Error::InvalidWidth(_))));
        }
    }

    #[test]
    fn identity_is_fixed() {
        let id = mollify(&PeriodicFunction::identity(), 0.5).unwrap();
        for k in 0..50 {
            let t = TAU * k as f64 / 50.0;
            assert!((id.value(t).unwrap() - t).abs() < 1e-13);
        }
        assert_eq!(id.period_offset(), TAU);
    }

    #[test]
    fn kinked_psi_is_smoothed() {
        let psi = PeriodicFunction::parse("t + 0.4*abs(sin(t))", &Params::new(), TAU).unwrap();
        assert!(!psi.kinks().is_empty());
        let m = mollify(&psi, 0.2).unwrap();
        assert!(m.kinks().is_empty());
        let (l, r) = (m.jet(PI - 1e-9).unwrap().0.deriv, m.jet(PI + 1e-9).unwrap().0.deriv);
        assert!((l - r).abs() < 1e-6);
        // Lip(psi) = 1.4
        assert!(m.grid_lipschitz(4096).unwrap() <= 1.4 + 1e-12);
    }
}
