//! Lipschitz constants of boundary maps and of their radial extensions.
//!
//! `l` is measured against the parameter distance `d₁ = |t - s|`, `L`
//! against the chordal distance `d₂ = |e^{it} - e^{is}|`, and `Λ` is the
//! Lipschitz constant of `w` on the closed disk. Each has an ess-sup
//! formula and a brute-force pairwise oracle.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_complex::Complex64;

use crate::curves::{Boundary, Curve, PolarCurve};
use crate::error::{Error, Result};
use crate::extension::{from_wirtinger, radial_map, wirtinger};
use crate::periodic::Side;
use crate::sup::{extremum, Extremum, GridSpec, Sense};
#[allow(unused_imports)] // unused when num-traits is built with `std`
use num_traits::Float;

/// Largest grid accepted by the boundary pair oracles.
pub const PAIRWISE_MAX_N: usize = 4096;
/// Angular resolution cap of the disk oracle.
pub const DISK_ANGULAR_MAX: usize = 256;
/// Number of radii of the disk oracle.
pub const DISK_RADII: usize = 8;
/// Pairs closer than this are ignored by the inf oracles.
pub const MIN_PAIR_DISTANCE: f64 = 1e-9;

/// `(d₁, d₂) = (|t - s|, 2|sin((t - s)/2)|)`.
pub fn distances(t: f64, s: f64) -> (f64, f64) {
    let d = t - s;
    (d.abs(), 2.0 * (0.5 * d).sin().abs())
}

fn jet_q<B: Boundary + ?Sized>(map: &B, t: f64, side: Option<Side>) -> Result<crate::curves::BoundaryJet> {
    match side {
        None => map.jet(t),
        Some(s) => map.jet_side(t, s),
    }
}

/// `ess sup |f'|`.
pub fn lip_l<B: Boundary + ?Sized>(map: &B, spec: GridSpec) -> Result<Extremum> {
    extremum(&map.kink_params(), spec, Sense::Max, |t, side| Ok(jet_q(map, t, side)?.df.norm()))
}

/// `max √(r² + r'²)` for a polar curve.
pub fn lip_l_polar_curve(curve: &PolarCurve, spec: GridSpec) -> Result<Extremum> {
    let kinks: Vec<f64> = curve.r().kinks().iter().map(|k| k.t).collect();
    extremum(&kinks, spec, Sense::Max, |t, side| {
        let (r, dr) = curve.radius_jet(t, side)?;
        Ok(r.hypot(dr))
    })
}

/// Closed-form chordal constant `max √(r² + r'²)`; requires `ψ = id`.
#[allow(non_snake_case)]
pub fn lip_L_polar(curve: &Curve, spec: GridSpec) -> Result<Extremum> {
    let polar = curve.as_polar().ok_or(Error::NotPolar)?;
    lip_l_polar_curve(&polar, spec)
}

/// `ess sup ½(|f - if'| + |f + if'|)`.
#[allow(non_snake_case)]
pub fn lip_Lambda<B: Boundary + ?Sized>(map: &B, spec: GridSpec) -> Result<Extremum> {
    extremum(&map.kink_params(), spec, Sense::Max, |t, side| {
        let (a, b) = wirtinger(&jet_q(map, t, side)?);
        Ok(a + b)
    })
}

/// `ess sup D_w`; fails on orientation-reversing points.
pub fn max_dilatation<B: Boundary + ?Sized>(map: &B, spec: GridSpec) -> Result<Extremum> {
    extremum(&map.kink_params(), spec, Sense::Max, |t, side| {
        let (a, b) = wirtinger(&jet_q(map, t, side)?);
        Ok(from_wirtinger(t, a, b)?.dilatation)
    })
}

/// `ess sup |μ_w|`.
pub fn max_mu<B: Boundary + ?Sized>(map: &B, spec: GridSpec) -> Result<Extremum> {
    extremum(&map.kink_params(), spec, Sense::Max, |t, side| {
        let (a, b) = wirtinger(&jet_q(map, t, side)?);
        Ok(from_wirtinger(t, a, b)?.mu_abs)
    })
}

/// `ess inf l(∇w) = ess inf ||w_z| - |w_z̄||`.
pub fn min_norm_inf<B: Boundary + ?Sized>(map: &B, spec: GridSpec) -> Result<Extremum> {
    extremum(&map.kink_params(), spec, Sense::Min, |t, side| {
        let (a, b) = wirtinger(&jet_q(map, t, side)?);
        Ok((a - b).abs())
    })
}

/// Which pair distance the oracle uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum DistanceKind {
    /// `|t - s|` on `[0, 2π)`.
    D1,
    /// `|e^{it} - e^{is}|`.
    D2,
    /// `|z₁ - z₂|` for points of the closed disk, ratio `|w(z₁) - w(z₂)|/|z₁ - z₂|`.
    Disk,
}

/// Two points `r_s e^{is}`, `r_t e^{it}`; radii are 1 for boundary pairs.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PairPoint {
    pub s: f64,
    pub t: f64,
    pub r_s: f64,
    pub r_t: f64,
}

impl PairPoint {
    fn boundary(s: f64, t: f64) -> Self {
        PairPoint { s, t, r_s: 1.0, r_t: 1.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PairwiseResult {
    pub kind: DistanceKind,
    pub sup: f64,
    pub inf: f64,
    pub sup_at: PairPoint,
    pub inf_at: PairPoint,
    /// Ratios on the uniform grid before local refinement.
    pub grid_sup: f64,
    pub grid_inf: f64,
    pub grid_n: usize,
    pub passes: usize,
}

fn pair_distance(kind: DistanceKind, s: f64, t: f64) -> f64 {
    let (d1, d2) = distances(t, s);
    match kind {
        DistanceKind::D1 => d1,
        _ => d2,
    }
}

/// Exhaustive pairwise sup and inf of the distance ratio.
///
/// For `D1`/`D2` all pairs of an `n`-grid are compared (`n ≤ 4096`), then
/// the argmax and argmin pairs are refined by zooming: `refine` passes at
/// least, stopping once the value moves by less than 1e-7 relative. The
/// `Disk` kind samples `min(n, 256)` angles at radii `k/8` plus the origin
/// and is not refined.
pub fn pairwise_sup<B: Boundary + ?Sized>(map: &B, kind: DistanceKind, spec: GridSpec) -> Result<PairwiseResult> {
    let n = spec.n;
    if n < 2 {
        return Err(Error::GridTooSmall(n, 2));
    }
    if kind == DistanceKind::Disk {
        return disk_pairs(map, n.min(DISK_ANGULAR_MAX));
    }
    if n > PAIRWISE_MAX_N {
        return Err(Error::GridTooLarge(n, PAIRWISE_MAX_N));
    }
    let h = TAU / n as f64;
    let pts = (0..n).map(|j| map.point(j as f64 * h)).collect::<Result<Vec<_>>>()?;
    let dist: Vec<f64> = (0..n).map(|k| pair_distance(kind, 0.0, k as f64 * h)).collect();
    let (mut sup, mut inf) = (f64::NEG_INFINITY, f64::INFINITY);
    let (mut sup_ij, mut inf_ij) = ((0, 1), (0, 1));
    for i in 0..n {
        let pi = pts[i];
        for j in i + 1..n {
            let d = dist[j - i];
            if d < MIN_PAIR_DISTANCE {
                continue;
            }
            let ratio = (pts[j] - pi).norm() / d;
            if ratio > sup {
                sup = ratio;
                sup_ij = (i, j);
            }
            if ratio < inf {
                inf = ratio;
                inf_ij = (i, j);
            }
        }
    }
    let grid_sup = sup;
    let grid_inf = inf;
    let at = |(i, j): (usize, usize)| (i as f64 * h, j as f64 * h);
    let (sup, sup_at, p1) = refine_pair(map, kind, at(sup_ij), sup, h, spec.refine, Sense::Max)?;
    let (inf, inf_at, p2) = refine_pair(map, kind, at(inf_ij), inf, h, spec.refine, Sense::Min)?;
    Ok(PairwiseResult {
        kind,
        sup,
        inf,
        sup_at: PairPoint::boundary(sup_at.0, sup_at.1),
        inf_at: PairPoint::boundary(inf_at.0, inf_at.1),
        grid_sup,
        grid_inf,
        grid_n: n,
        passes: p1.max(p2),
    })
}

const PAIR_MAX_PASSES: usize = 30;

fn refine_pair<B: Boundary + ?Sized>(
    map: &B,
    kind: DistanceKind,
    start: (f64, f64),
    value: f64,
    h: f64,
    refine: usize,
    sense: Sense,
) -> Result<(f64, (f64, f64), usize)> {
    let better = |a: f64, b: f64| match sense {
        Sense::Max => a > b,
        Sense::Min => a < b,
    };
    let clamp = |x: f64| match kind {
        DistanceKind::D1 => x.clamp(0.0, TAU),
        _ => x,
    };
    let (mut best, mut at) = (value, start);
    let mut width = h;
    let mut passes = 0;
    while passes < PAIR_MAX_PASSES && width > 1e-13 {
        let before = best;
        let ss: Vec<f64> = (-4..=4).map(|k| clamp(at.0 + width * k as f64 / 4.0)).collect();
        let ts: Vec<f64> = (-4..=4).map(|k| clamp(at.1 + width * k as f64 / 4.0)).collect();
        let fs = ss.iter().map(|&s| map.point(s)).collect::<Result<Vec<_>>>()?;
        let ft = ts.iter().map(|&t| map.point(t)).collect::<Result<Vec<_>>>()?;
        let centre = at;
        for (a, &s) in ss.iter().enumerate() {
            for (b, &t) in ts.iter().enumerate() {
                let d = pair_distance(kind, s, t);
                if d < MIN_PAIR_DISTANCE {
                    continue;
                }
                let ratio = (ft[b] - fs[a]).norm() / d;
                if better(ratio, best) {
                    best = ratio;
                    at = (s, t);
                }
            }
        }
        passes += 1;
        // keep zooming on the same pair while it still improves at this scale
        if at == centre {
            width /= 4.0;
        }
        let settled = (best - before).abs() <= crate::sup::REFINE_RTOL * best.abs();
        if passes >= refine && settled {
            break;
        }
    }
    Ok((best, at, passes))
}

fn disk_pairs<B: Boundary + ?Sized>(map: &B, m: usize) -> Result<PairwiseResult> {
    let mut zs: Vec<(Complex64, Complex64, f64, f64)> = vec![(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), 0.0, 0.0)];
    for j in 0..m {
        let t = TAU * j as f64 / m as f64;
        let e = Complex64::from_polar(1.0, t);
        for k in 1..=DISK_RADII {
            let r = k as f64 / DISK_RADII as f64;
            let z = e * r;
            zs.push((z, radial_map(map, z)?, t, r));
        }
    }
    let (mut sup, mut inf) = (f64::NEG_INFINITY, f64::INFINITY);
    let (mut sup_at, mut inf_at) = (PairPoint::default(), PairPoint::default());
    for a in 0..zs.len() {
        let (za, wa, ta, ra) = zs[a];
        for &(zb, wb, tb, rb) in &zs[a + 1..] {
            let d = (zb - za).norm();
            if d < MIN_PAIR_DISTANCE {
                continue;
            }
            let ratio = (wb - wa).norm() / d;
            if ratio > sup {
                sup = ratio;
                sup_at = PairPoint { s: ta, t: tb, r_s: ra, r_t: rb };
            }
            if ratio < inf {
                inf = ratio;
                inf_at = PairPoint { s: ta, t: tb, r_s: ra, r_t: rb };
            }
        }
    }
    Ok(PairwiseResult {
        kind: DistanceKind::Disk,
        sup,
        inf,
        sup_at,
        inf_at,
        grid_sup: sup,
        grid_inf: inf,
        grid_n: m,
        passes: 0,
    })
}

/// How `l`, `L` and `Λ` were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Method {
    Derivative,
    Pairwise,
}

/// Parameters attaining each constant. Single-point constants repeat the
/// parameter in both slots.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Attained {
    pub l: PairPoint,
    #[cfg_attr(feature = "serde", serde(rename = "L"))]
    pub big_l: PairPoint,
    #[cfg_attr(feature = "serde", serde(rename = "Lambda"))]
    pub lambda: PairPoint,
    #[cfg_attr(feature = "serde", serde(rename = "K_qc"))]
    pub k_qc: Option<PairPoint>,
    pub lower_l: PairPoint,
    pub lower_w: PairPoint,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LipschitzReport {
    pub l: f64,
    #[cfg_attr(feature = "serde", serde(rename = "L"))]
    pub big_l: f64,
    #[cfg_attr(feature = "serde", serde(rename = "Lambda"))]
    pub lambda: f64,
    /// `None` when the extension reverses orientation somewhere.
    #[cfg_attr(feature = "serde", serde(rename = "K_qc"))]
    pub k_qc: Option<f64>,
    /// Pairwise inf of `|f(t) - f(s)|/d₂(t, s)`.
    pub lower_l: f64,
    /// Pairwise inf of `|w(z₁) - w(z₂)|/|z₁ - z₂|` on the disk oracle grid.
    pub lower_w: f64,
    pub method: Method,
    pub grid_n: usize,
    pub attained_at: Attained,
}

fn single(e: &Extremum) -> PairPoint {
    PairPoint::boundary(e.t, e.t)
}

/// All constants of a validated curve.
///
/// With [`Method::Derivative`], `l`, `Λ` and `𝒦` are ess-sups of the
/// derivative formulas and `L` is the closed form for polar curves or the
/// refined chordal pair oracle otherwise. With [`Method::Pairwise`], `l`
/// and `L` come from the boundary pair oracles and `Λ` from the disk oracle.
/// Lower constants are always pairwise.
pub fn lipschitz_report(curve: &Curve, spec: GridSpec, method: Method) -> Result<LipschitzReport> {
    let pair_spec = GridSpec { n: spec.n.min(PAIRWISE_MAX_N), refine: spec.refine };
    let d2 = pairwise_sup(curve, DistanceKind::D2, pair_spec)?;
    let disk = pairwise_sup(curve, DistanceKind::Disk, pair_spec)?;
    let (l, l_at, big_l, big_l_at, lambda, lambda_at) = match method {
        Method::Derivative => {
            let l = lip_l(curve, spec)?;
            let (big_l, big_l_at) = match lip_L_polar(curve, spec) {
                Ok(e) => (e.value, single(&e)),
                Err(Error::NotPolar) => (d2.sup, d2.sup_at),
                Err(e) => return Err(e),
            };
            let lam = lip_Lambda(curve, spec)?;
            (l.value, single(&l), big_l, big_l_at, lam.value, single(&lam))
        }
        Method::Pairwise => {
            let d1 = pairwise_sup(curve, DistanceKind::D1, pair_spec)?;
            (d1.sup, d1.sup_at, d2.sup, d2.sup_at, disk.sup, disk.sup_at)
        }
    };
    let (k_qc, k_at) = match max_dilatation(curve, spec) {
        Ok(e) => (Some(e.value), Some(single(&e))),
        Err(Error::DegenerateDifferential { .. }) => (None, None),
        Err(e) => return Err(e),
    };
    Ok(LipschitzReport {
        l,
        big_l,
        lambda,
        k_qc,
        lower_l: d2.inf,
        lower_w: disk.inf,
        method,
        grid_n: spec.n,
        attained_at: Attained {
            l: l_at,
            big_l: big_l_at,
            lambda: lambda_at,
            k_qc: k_at,
            lower_l: d2.inf_at,
            lower_w: disk.inf_at,
        },
    })
}
