//! The radial extension `w(re^{it}) = r f(t)` and its differential.
//!
//! Off the origin `w` is differentiable wherever `f` is, with
//!
//! ```text
//! |w_z| = ½|f(t) - i f'(t)|,   |w_z̄| = ½|f(t) + i f'(t)|,
//! ```
//!
//! so all pointwise data depend on the angle `t` only.

use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_complex::Complex64;

use crate::curves::{tangent_angle, Boundary, BoundaryJet, BoundaryMap};
use crate::error::{Error, Result};
use crate::periodic::Side;
#[allow(unused_imports)] // unused when num-traits is built with `std`
use num_traits::Float;

/// Pointwise differential data of the radial extension at angle `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DifferentialData {
    pub t: f64,
    pub abs_wz: f64,
    pub abs_wzbar: f64,
    /// `|∇w| = |w_z| + |w_z̄|`.
    pub op_norm: f64,
    /// `l(∇w) = ||w_z| - |w_z̄||`.
    pub min_norm: f64,
    pub jacobian: f64,
    /// `D_w = (|w_z| + |w_z̄|)/(|w_z| - |w_z̄|)`.
    pub dilatation: f64,
    pub mu_abs: f64,
    pub kappa: f64,
}

/// `(|w_z|, |w_z̄|)` from a boundary jet.
pub fn wirtinger(j: &BoundaryJet) -> (f64, f64) {
    let i = Complex64::i();
    (0.5 * (j.f - i * j.df).norm(), 0.5 * (j.f + i * j.df).norm())
}

/// Assemble [`DifferentialData`]; fails unless `|w_z| > |w_z̄|`.
pub fn from_wirtinger(t: f64, abs_wz: f64, abs_wzbar: f64) -> Result<DifferentialData> {
    if !(abs_wz > abs_wzbar) {
        return Err(Error::DegenerateDifferential { t, abs_wz, abs_wzbar });
    }
    let mu = abs_wzbar / abs_wz;
    Ok(DifferentialData {
        t,
        abs_wz,
        abs_wzbar,
        op_norm: abs_wz + abs_wzbar,
        min_norm: abs_wz - abs_wzbar,
        jacobian: abs_wz * abs_wz - abs_wzbar * abs_wzbar,
        dilatation: (abs_wz + abs_wzbar) / (abs_wz - abs_wzbar),
        mu_abs: mu,
        kappa: mu * mu,
    })
}

/// Differential data at angle `t`, left limit at kinks.
pub fn differential_data<B: Boundary + ?Sized>(map: &B, t: f64) -> Result<DifferentialData> {
    let (a, b) = wirtinger(&map.jet(t)?);
    from_wirtinger(t, a, b)
}

pub fn differential_data_side<B: Boundary + ?Sized>(map: &B, t: f64, side: Side) -> Result<DifferentialData> {
    let (a, b) = wirtinger(&map.jet_side(t, side)?);
    from_wirtinger(t, a, b)
}

/// Differential data at a point `z ≠ 0` of the disk. Only `arg z` matters.
pub fn differential_data_at<B: Boundary + ?Sized>(map: &B, z: Complex64) -> Result<DifferentialData> {
    check_disk(z)?;
    differential_data(map, crate::periodic::wrap(z.arg()).0)
}

fn check_disk(z: Complex64) -> Result<f64> {
    let r = z.norm();
    if !(r <= 1.0 + 1e-12) {
        return Err(Error::OutsideDomain(r));
    }
    Ok(r)
}

/// `w(z) = |z| f(arg z)`; `w(0) = 0`.
pub fn radial_map<B: Boundary + ?Sized>(map: &B, z: Complex64) -> Result<Complex64> {
    let r = check_disk(z)?;
    if r == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok(map.point(crate::periodic::wrap(z.arg()).0)? * r)
}

/// `κ(t)` from `ψ'` and `sin² α_t`:
/// `(ψ'² + (1 - 2ψ') sin²α) / (ψ'² + (1 + 2ψ') sin²α)`.
pub fn kappa_from_angle(psi_prime: f64, sin2_alpha: f64) -> f64 {
    let p2 = psi_prime * psi_prime;
    (p2 + (1.0 - 2.0 * psi_prime) * sin2_alpha) / (p2 + (1.0 + 2.0 * psi_prime) * sin2_alpha)
}

/// `|κ(t) - κ_angle(t)|` for a boundary map, where `α_t` is the tangent
/// angle of the image curve at `g(t)`.
pub fn kappa_residual(map: &BoundaryMap, t: f64) -> Result<f64> {
    let j = map.jet(t)?;
    let d = differential_data(map, t)?;
    let [_, _, _, dpsi] = map.components(t, None)?;
    let s = tangent_angle(&j).sin();
    Ok((d.kappa - kappa_from_angle(dpsi, s * s)).abs())
}

/// `|4J - 4ρ²ψ'|` at `t`.
pub fn jacobian_identity_check(map: &BoundaryMap, t: f64) -> Result<f64> {
    let (a, b) = wirtinger(&map.jet(t)?);
    let [rho, _, _, dpsi] = map.components(t, None)?;
    Ok((4.0 * (a * a - b * b) - 4.0 * rho * rho * dpsi).abs())
}

/// Wirtinger moduli reconstructed from central differences of
/// [`radial_map`] with step `h` at `z` (with `|z| + h ≤ 1`).
pub fn numeric_wirtinger<B: Boundary + ?Sized>(map: &B, z: Complex64, h: f64) -> Result<(f64, f64)> {
    let dx = (radial_map(map, z + h)? - radial_map(map, z - h)?) / (2.0 * h);
    let ih = Complex64::new(0.0, h);
    let dy = (radial_map(map, z + ih)? - radial_map(map, z - ih)?) / (2.0 * h);
    let i = Complex64::i();
    Ok((0.5 * (dx - i * dy).norm(), 0.5 * (dx + i * dy).norm()))
}

/// One row of [`field_grid`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldPoint {
    pub r: f64,
    pub t: f64,
    pub w: Complex64,
    pub data: DifferentialData,
}

/// Rows at `r_i = i/radial_n` (`i = 1..=radial_n`), `t_j = 2πj/angular_n`,
/// `r` outer and `t` inner.
pub fn field_grid<B: Boundary + ?Sized>(map: &B, radial_n: usize, angular_n: usize) -> Result<Vec<FieldPoint>> {
    if radial_n < 1 {
        return Err(Error::GridTooSmall(radial_n, 1));
    }
    if angular_n < 8 {
        return Err(Error::GridTooSmall(angular_n, 8));
    }
    let mut column = Vec::with_capacity(angular_n);
    for j in 0..angular_n {
        let t = TAU * j as f64 / angular_n as f64;
        let jet = map.jet(t)?;
        let (a, b) = wirtinger(&jet);
        let data = from_wirtinger(t, a, b).map_err(|_| Error::DegenerateGridPoint { i: 1, j, t, abs_wz: a, abs_wzbar: b })?;
        column.push((jet.f, data));
    }
    let mut rows = Vec::with_capacity(radial_n * angular_n);
    for i in 1..=radial_n {
        let r = i as f64 / radial_n as f64;
        for &(f, data) in &column {
            rows.push(FieldPoint { r, t: data.t, w: f * r, data });
        }
    }
    Ok(rows)
}
