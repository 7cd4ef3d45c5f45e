//! Starlike curves and their parametrizations.
//!
//! Three representations share the [`Boundary`] interface, which yields the
//! boundary function `f(t) = F(e^{it})` and its a.e. derivative:
//!
//! * [`PolarCurve`]: `f(t) = r(t) e^{it}`;
//! * [`BoundaryMap`]: `g(t) = ρ(t) e^{iψ(t)}` with `ψ` a circle homeomorphism;
//! * [`CartesianCurve`]: `f(t) = x(t) + i y(t)`, for parametrizations that
//!   are not naturally written in polar form.

use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};
use core::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::periodic::{invert_monotone, PeriodicFunction, Side};
use crate::sup::{extremum, GridSpec, Sense};
#[allow(unused_imports)] // unused when num-traits is built with `std`
use num_traits::Float;

/// Tolerance for positivity, periodicity and monotonicity validation.
pub const VALIDATION_TOL: f64 = 1e-9;

/// Boundary value `f(t)` and derivative `f'(t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryJet {
    pub f: Complex64,
    pub df: Complex64,
    /// Set when `t` is a kink and `df` is a one-sided limit.
    pub flagged: bool,
}

/// A parametrization `f: [0, 2π) → ℂ` of a closed curve.
pub trait Boundary {
    /// `f(t)` and `f'(t)`, with the left-limit convention at kinks.
    fn jet(&self, t: f64) -> Result<BoundaryJet>;

    fn jet_side(&self, t: f64, side: Side) -> Result<BoundaryJet>;

    /// Parameters in `[0, 2π)` where `f'` may jump.
    fn kink_params(&self) -> Vec<f64>;

    fn point(&self, t: f64) -> Result<Complex64> {
        Ok(self.jet(t)?.f)
    }
}

fn merged_kinks(a: &PeriodicFunction, b: &PeriodicFunction) -> Vec<f64> {
    let mut ts: Vec<f64> = a.kinks().iter().chain(b.kinks()).map(|k| k.t).collect();
    ts.sort_by(f64::total_cmp);
    ts.dedup_by(|x, y| (*x - *y).abs() <= 1e-12);
    ts
}

/// `f(t) = r(t) e^{it}` with `r > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarCurve {
    r: PeriodicFunction,
}

impl PolarCurve {
    pub fn new(r: PeriodicFunction) -> Result<Self> {
        if r.period_offset() != 0.0 {
            return Err(Error::InvalidParams("polar radius must be periodic (offset 0)".into()));
        }
        Ok(PolarCurve { r })
    }

    pub fn r(&self) -> &PeriodicFunction {
        &self.r
    }

    /// The point `r(t) e^{it}`.
    pub fn evaluate(&self, t: f64) -> Result<Complex64> {
        Ok(Complex64::from_polar(self.r.value(t)?, t))
    }

    /// `f'(t) = (r'(t) + i r(t)) e^{it}` and whether `t` is a kink.
    pub fn velocity(&self, t: f64) -> Result<(Complex64, bool)> {
        let j = self.jet(t)?;
        Ok((j.df, j.flagged))
    }

    /// `(r, r')` at `t`, left limit at kinks.
    pub fn radius_jet(&self, t: f64, side: Option<Side>) -> Result<(f64, f64)> {
        let j = match side {
            None => self.r.jet(t)?.0,
            Some(s) => self.r.jet_side(t, s)?,
        };
        Ok((j.value, j.deriv))
    }
}

impl Boundary for PolarCurve {
    fn jet(&self, t: f64) -> Result<BoundaryJet> {
        let (j, flagged) = self.r.jet(t)?;
        let e = Complex64::from_polar(1.0, t);
        Ok(BoundaryJet { f: e * j.value, df: Complex64::new(j.deriv, j.value) * e, flagged })
    }

    fn jet_side(&self, t: f64, side: Side) -> Result<BoundaryJet> {
        let j = self.r.jet_side(t, side)?;
        let e = Complex64::from_polar(1.0, t);
        let flagged = !self.r.kinks().is_empty() && self.r.jet(t)?.1;
        Ok(BoundaryJet { f: e * j.value, df: Complex64::new(j.deriv, j.value) * e, flagged })
    }

    fn kink_params(&self) -> Vec<f64> {
        self.r.kinks().iter().map(|k| k.t).collect()
    }
}

/// A nondecreasing `ψ` with `ψ(t + 2π) = ψ(t) + 2π`.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleHomeomorphism {
    psi: PeriodicFunction,
}

impl CircleHomeomorphism {
    pub fn new(psi: PeriodicFunction) -> Result<Self> {
        if psi.period_offset() != TAU {
            return Err(Error::InvalidParams("psi must satisfy psi(t + 2pi) = psi(t) + 2pi".into()));
        }
        Ok(CircleHomeomorphism { psi })
    }

    pub fn identity() -> Self {
        CircleHomeomorphism { psi: PeriodicFunction::identity() }
    }

    pub fn psi(&self) -> &PeriodicFunction {
        &self.psi
    }

    /// True when `ψ(t) = t` up to 1e-12 on a 1024-grid (or syntactically).
    pub fn is_identity(&self) -> bool {
        if let Some(crate::dsl::Expr::Var) = self.psi.expr() {
            return true;
        }
        (0..1024).all(|j| {
            let t = TAU * j as f64 / 1024.0;
            matches!(self.psi.jet(t), Ok((jt, _)) if (jt.value - t).abs() <= 1e-12 && (jt.deriv - 1.0).abs() <= 1e-12)
        })
    }
}

/// `g(t) = ρ(t) e^{iψ(t)}`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryMap {
    rho: PeriodicFunction,
    psi: CircleHomeomorphism,
}

impl BoundaryMap {
    pub fn new(rho: PeriodicFunction, psi: CircleHomeomorphism) -> Result<Self> {
        if rho.period_offset() != 0.0 {
            return Err(Error::InvalidParams("rho must be periodic (offset 0)".into()));
        }
        Ok(BoundaryMap { rho, psi })
    }

    /// The polar parametrization itself, `ψ = id`.
    pub fn from_polar(curve: &PolarCurve) -> Self {
        BoundaryMap { rho: curve.r.clone(), psi: CircleHomeomorphism::identity() }
    }

    /// Reparametrize a polar curve: `ρ = r ∘ ψ`, so `g(t) = f(ψ(t))`.
    pub fn reparametrize(curve: &PolarCurve, psi: CircleHomeomorphism) -> Result<Self> {
        if psi.is_identity() {
            return Ok(BoundaryMap { rho: curve.r.clone(), psi });
        }
        let rho = curve.r.compose(&psi.psi)?;
        Ok(BoundaryMap { rho, psi })
    }

    /// The map `e^{it} ↦ s e^{iψ(t)}` onto the circle of radius `s`.
    pub fn circle(psi: CircleHomeomorphism, s: f64) -> Self {
        BoundaryMap { rho: PeriodicFunction::constant(s), psi }
    }

    pub fn rho(&self) -> &PeriodicFunction {
        &self.rho
    }

    pub fn psi(&self) -> &CircleHomeomorphism {
        &self.psi
    }

    /// `(ρ, ρ', ψ, ψ')` at `t`.
    pub fn components(&self, t: f64, side: Option<Side>) -> Result<[f64; 4]> {
        let (r, p) = match side {
            None => (self.rho.jet(t)?.0, self.psi.psi.jet(t)?.0),
            Some(s) => (self.rho.jet_side(t, s)?, self.psi.psi.jet_side(t, s)?),
        };
        Ok([r.value, r.deriv, p.value, p.deriv])
    }

    /// The polar radius `r = ρ ∘ ψ⁻¹` of the image curve, resampled on an
    /// `n`-grid and interpolated by a periodic cubic spline.
    pub fn induced_polar(&self, n: usize) -> Result<PolarCurve> {
        let start = self.psi.psi.value(0.0)?;
        let samples = (0..n)
            .map(|j| {
                let s = TAU * j as f64 / n as f64;
                let target = if s >= start { s } else { s + TAU };
                let u = invert_monotone(&self.psi.psi, target)?;
                self.rho.value(u)
            })
            .collect::<Result<Vec<_>>>()?;
        PolarCurve::new(PeriodicFunction::sampled(&samples, 0.0)?)
    }
}

impl Boundary for BoundaryMap {
    fn jet(&self, t: f64) -> Result<BoundaryJet> {
        let (r, fr) = self.rho.jet(t)?;
        let (p, fp) = self.psi.psi.jet(t)?;
        Ok(map_jet(r.value, r.deriv, p.value, p.deriv, fr || fp))
    }

    fn jet_side(&self, t: f64, side: Side) -> Result<BoundaryJet> {
        let r = self.rho.jet_side(t, side)?;
        let p = self.psi.psi.jet_side(t, side)?;
        let flagged = self.rho.jet(t)?.1 || self.psi.psi.jet(t)?.1;
        Ok(map_jet(r.value, r.deriv, p.value, p.deriv, flagged))
    }

    fn kink_params(&self) -> Vec<f64> {
        merged_kinks(&self.rho, &self.psi.psi)
    }
}

fn map_jet(rho: f64, drho: f64, psi: f64, dpsi: f64, flagged: bool) -> BoundaryJet {
    let e = Complex64::from_polar(1.0, psi);
    BoundaryJet { f: e * rho, df: Complex64::new(drho, rho * dpsi) * e, flagged }
}

/// `f(t) = x(t) + i y(t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CartesianCurve {
    x: PeriodicFunction,
    y: PeriodicFunction,
}

impl CartesianCurve {
    pub fn new(x: PeriodicFunction, y: PeriodicFunction) -> Result<Self> {
        if x.period_offset() != 0.0 || y.period_offset() != 0.0 {
            return Err(Error::InvalidParams("coordinates must be periodic (offset 0)".into()));
        }
        Ok(CartesianCurve { x, y })
    }

    pub fn x(&self) -> &PeriodicFunction {
        &self.x
    }

    pub fn y(&self) -> &PeriodicFunction {
        &self.y
    }
}

impl Boundary for CartesianCurve {
    fn jet(&self, t: f64) -> Result<BoundaryJet> {
        let (x, fx) = self.x.jet(t)?;
        let (y, fy) = self.y.jet(t)?;
        Ok(BoundaryJet {
            f: Complex64::new(x.value, y.value),
            df: Complex64::new(x.deriv, y.deriv),
            flagged: fx || fy,
        })
    }

    fn jet_side(&self, t: f64, side: Side) -> Result<BoundaryJet> {
        let x = self.x.jet_side(t, side)?;
        let y = self.y.jet_side(t, side)?;
        let flagged = self.x.jet(t)?.1 || self.y.jet(t)?.1;
        Ok(BoundaryJet { f: Complex64::new(x.value, y.value), df: Complex64::new(x.deriv, y.deriv), flagged })
    }

    fn kink_params(&self) -> Vec<f64> {
        merged_kinks(&self.x, &self.y)
    }
}

/// Any supported parametrization.
#[derive(Debug, Clone, PartialEq)]
pub enum Curve {
    Polar(PolarCurve),
    Map(BoundaryMap),
    Cartesian(CartesianCurve),
}

impl Curve {
    pub fn kind(&self) -> &'static str {
        match self {
            Curve::Polar(_) => "polar",
            Curve::Map(_) => "map",
            Curve::Cartesian(_) => "cartesian",
        }
    }

    /// The polar curve when `ψ` is the identity.
    pub fn as_polar(&self) -> Option<PolarCurve> {
        match self {
            Curve::Polar(p) => Some(p.clone()),
            Curve::Map(m) if m.psi.is_identity() => Some(PolarCurve { r: m.rho.clone() }),
            _ => None,
        }
    }

    /// `ρ e^{iψ}` form; polar curves get `ψ = id`. Cartesian curves have none.
    pub fn as_boundary_map(&self) -> Option<BoundaryMap> {
        match self {
            Curve::Polar(p) => Some(BoundaryMap::from_polar(p)),
            Curve::Map(m) => Some(m.clone()),
            Curve::Cartesian(_) => None,
        }
    }

    /// Radius `s` when the image is the circle `s𝕋` (relative variation of
    /// the radius below 1e-9 on a 4096-grid).
    pub fn circle_radius(&self) -> Result<Option<f64>> {
        let radius = match self {
            Curve::Polar(p) => &p.r,
            Curve::Map(m) => &m.rho,
            Curve::Cartesian(_) => return Ok(None),
        };
        let n = 4096;
        let vals = (0..n).map(|j| radius.value(TAU * j as f64 / n as f64)).collect::<Result<Vec<_>>>()?;
        let lo = vals.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Ok(((hi - lo) <= 1e-9 * hi.abs() && lo > 0.0).then_some(0.5 * (lo + hi)))
    }
}

impl Boundary for Curve {
    fn jet(&self, t: f64) -> Result<BoundaryJet> {
        match self {
            Curve::Polar(c) => c.jet(t),
            Curve::Map(c) => c.jet(t),
            Curve::Cartesian(c) => c.jet(t),
        }
    }

    fn jet_side(&self, t: f64, side: Side) -> Result<BoundaryJet> {
        match self {
            Curve::Polar(c) => c.jet_side(t, side),
            Curve::Map(c) => c.jet_side(t, side),
            Curve::Cartesian(c) => c.jet_side(t, side),
        }
    }

    fn kink_params(&self) -> Vec<f64> {
        match self {
            Curve::Polar(c) => c.kink_params(),
            Curve::Map(c) => c.kink_params(),
            Curve::Cartesian(c) => c.kink_params(),
        }
    }
}

/// Angle between the position vector and the oriented tangent, in `(0, π)`
/// for positively oriented starlike curves: `cot α = Re(f̄ f') / Im(f̄ f')`.
pub fn tangent_angle(j: &BoundaryJet) -> f64 {
    let c = j.f.conj() * j.df;
    c.im.atan2(c.re)
}

/// `cot α = r'/r` for polar curves; `ρ'/(ρψ')` for boundary maps.
pub fn tangent_cot(j: &BoundaryJet) -> f64 {
    let c = j.f.conj() * j.df;
    c.re / c.im
}

/// Tangent angles sampled on a uniform grid, and their extremes.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TangentProfile {
    pub t: Vec<f64>,
    pub alpha: Vec<f64>,
    /// `cot α_t`; equals `r'/r` for polar curves.
    pub chi: Vec<f64>,
    pub alpha1: f64,
    pub alpha2: f64,
    pub alpha_gamma: f64,
    pub alpha1_at: f64,
    pub alpha2_at: f64,
}

/// Tangent profile of any parametrization. `α` depends only on the image
/// point, so a reparametrization has the same `α₁`, `α₂` and `α_γ`.
pub fn tangent_profile<B: Boundary + ?Sized>(curve: &B, grid_n: usize) -> Result<TangentProfile> {
    tangent_profile_refined(curve, GridSpec { n: grid_n, refine: 1 })
}

pub fn tangent_profile_refined<B: Boundary + ?Sized>(curve: &B, spec: GridSpec) -> Result<TangentProfile> {
    if spec.n < 64 {
        return Err(Error::GridTooSmall(spec.n, 64));
    }
    let n = spec.n;
    let mut t = Vec::with_capacity(n);
    let mut alpha = Vec::with_capacity(n);
    let mut chi = Vec::with_capacity(n);
    for j in 0..n {
        let tj = TAU * j as f64 / n as f64;
        let jet = curve.jet(tj)?;
        let radius = jet.f.norm();
        if radius <= 0.0 {
            return Err(Error::DegenerateCurve { t: tj, r: radius });
        }
        t.push(tj);
        alpha.push(tangent_angle(&jet));
        chi.push(tangent_cot(&jet));
    }
    let kinks = curve.kink_params();
    let q = |tt: f64, side: Option<Side>| -> Result<f64> {
        let j = match side {
            None => curve.jet(tt)?,
            Some(s) => curve.jet_side(tt, s)?,
        };
        Ok(tangent_angle(&j))
    };
    let lo = extremum(&kinks, spec, Sense::Min, q)?;
    let hi = extremum(&kinks, spec, Sense::Max, q)?;
    Ok(TangentProfile {
        t,
        alpha,
        chi,
        alpha1: lo.value,
        alpha2: hi.value,
        alpha_gamma: lo.value.min(PI - hi.value),
        alpha1_at: lo.t,
        alpha2_at: hi.t,
    })
}

/// Result of [`validate_starlike`].
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Diagnostics {
    pub passed: bool,
    /// Minimum of `r`, `ρ` or `|f|` over the refined grid.
    pub min_radius: f64,
    pub min_radius_at: f64,
    /// Largest `|φ(2π) - φ(0) - b|` among the defining functions.
    pub periodicity_defect: f64,
    /// Largest decrease of `ψ` (or of the unwrapped argument) between grid points.
    pub monotonicity_defect: Option<f64>,
    /// `ψ(0)`, required to lie in `[0, 2π)`.
    pub psi_start: Option<f64>,
    /// +1 counterclockwise, -1 clockwise.
    pub orientation: i8,
    pub messages: Vec<String>,
}

impl Diagnostics {
    pub fn require(self) -> Result<()> {
        if self.passed {
            Ok(())
        } else {
            Err(Error::Validation(self))
        }
    }
}

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.messages.is_empty() {
            write!(f, "ok (min radius {})", self.min_radius)
        } else {
            f.write_str(&self.messages.join("; "))
        }
    }
}

const VALIDATION_N: usize = 16384;

/// Starlikeness and consistency checks. Never fails: evaluation errors are
/// reported as a failed diagnostic.
pub fn validate_starlike(curve: &Curve) -> Diagnostics {
    match validate_inner(curve) {
        Ok(d) => d,
        Err(e) => Diagnostics {
            passed: false,
            min_radius: f64::NAN,
            min_radius_at: f64::NAN,
            periodicity_defect: f64::NAN,
            monotonicity_defect: None,
            psi_start: None,
            orientation: 0,
            messages: alloc::vec![alloc::format!("evaluation failed: {}", e)],
        },
    }
}

fn validate_inner(curve: &Curve) -> Result<Diagnostics> {
    let spec = GridSpec { n: VALIDATION_N, refine: 1 };
    let kinks = curve.kink_params();
    let min = extremum(&kinks, spec, Sense::Min, |t, _| Ok(curve.point(t)?.norm()))?;
    let min_signed = match curve {
        Curve::Polar(p) => p.r.value(min.t)?,
        Curve::Map(m) => m.rho.value(min.t)?,
        Curve::Cartesian(_) => min.value,
    };
    let mut messages = Vec::new();
    let mut d = Diagnostics {
        passed: true,
        min_radius: min_signed,
        min_radius_at: min.t,
        periodicity_defect: 0.0,
        monotonicity_defect: None,
        psi_start: None,
        orientation: 1,
        messages: Vec::new(),
    };
    // raw grid scan catches sign changes the refinement could step over
    let h = TAU / VALIDATION_N as f64;
    for j in 0..VALIDATION_N {
        let t = j as f64 * h;
        let r = match curve {
            Curve::Polar(p) => p.r.value(t)?,
            Curve::Map(m) => m.rho.value(t)?,
            Curve::Cartesian(c) => curve_point_norm(c, t)?,
        };
        if r < d.min_radius {
            d.min_radius = r;
            d.min_radius_at = t;
        }
    }
    if d.min_radius <= 0.0 {
        messages.push(alloc::format!("radius {} <= 0 at t = {}", d.min_radius, d.min_radius_at));
    }
    match curve {
        Curve::Polar(p) => {
            d.periodicity_defect = p.r.periodicity_defect()?;
        }
        Curve::Map(m) => {
            d.periodicity_defect = m.rho.periodicity_defect()?.max(m.psi.psi.periodicity_defect()?);
            let start = m.psi.psi.value(0.0)?;
            d.psi_start = Some(start);
            if !(0.0..TAU).contains(&start) {
                messages.push(alloc::format!("psi(0) = {} is outside [0, 2pi)", start));
            }
            let mut worst: f64 = 0.0;
            let mut prev = start;
            for j in 1..=VALIDATION_N {
                let v = m.psi.psi.value(j as f64 * h)?;
                worst = worst.max(prev - v);
                prev = v;
            }
            d.monotonicity_defect = Some(worst);
            if worst >= VALIDATION_TOL {
                messages.push(alloc::format!("psi decreases by {} between grid points", worst));
            }
        }
        Curve::Cartesian(c) => {
            d.periodicity_defect = c.x.periodicity_defect()?.max(c.y.periodicity_defect()?);
            let pts = (0..=VALIDATION_N).map(|j| curve.point(j as f64 * h)).collect::<Result<Vec<_>>>()?;
            let steps: Vec<f64> = pts.windows(2).map(|w| (w[1] / w[0]).arg()).collect();
            let total: f64 = steps.iter().sum();
            d.orientation = if total >= 0.0 { 1 } else { -1 };
            let sgn = d.orientation as f64;
            let worst = steps.iter().map(|s| -sgn * s).fold(0.0, f64::max);
            d.monotonicity_defect = Some(worst);
            if (total.abs() - TAU).abs() > 1e-6 {
                messages.push(alloc::format!("curve winds {} times around the origin", total / TAU));
            }
            if worst >= VALIDATION_TOL {
                messages.push(alloc::format!("argument is not monotone (defect {})", worst));
            }
        }
    }
    if d.periodicity_defect >= VALIDATION_TOL {
        messages.push(alloc::format!("periodicity defect {}", d.periodicity_defect));
    }
    d.passed = messages.is_empty();
    d.messages = messages;
    Ok(d)
}

fn curve_point_norm(c: &CartesianCurve, t: f64) -> Result<f64> {
    Ok(Complex64::new(c.x.value(t)?, c.y.value(t)?).norm())
}

/// Reject curves that fail [`validate_starlike`].
pub fn ensure_valid(curve: &Curve) -> Result<()> {
    validate_starlike(curve).require()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::builtin;
    use crate::dsl::Params;
    use core::f64::consts::{FRAC_PI_2, FRAC_PI_4, SQRT_2};

    fn params(pairs: &[(&str, f64)]) -> Params {
        pairs.iter().map(|(k, v)| (String::from(*k), *v)).collect()
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn evaluate_examples() {
        let circle = builtin("circle", &params(&[("s", 1.0)])).unwrap();
        assert!(close(circle.point(FRAC_PI_2).unwrap(), Complex64::new(0.0, 1.0), 1e-15));
        let square = builtin("square", &Params::new()).unwrap();
        assert!(close(square.point(FRAC_PI_4).unwrap(), Complex64::new(1.0, 1.0), 1e-15));
        let ellipse = builtin("ellipse", &params(&[("a", 2.0), ("b", 1.0)])).unwrap();
        assert!(close(ellipse.point(0.0).unwrap(), Complex64::new(2.0, 0.0), 1e-15));
    }

    #[test]
    fn velocity_examples() {
        let circle = match builtin("circle", &Params::new()).unwrap() {
            Curve::Polar(p) => p,
            _ => unreachable!(),
        };
        let (v, flagged) = circle.velocity(0.0).unwrap();
        assert!(close(v, Complex64::new(0.0, 1.0), 1e-15) && !flagged);

        let square = builtin("square", &Params::new()).unwrap().as_polar().unwrap();
        let (v, flagged) = square.velocity(FRAC_PI_4).unwrap();
        let want = Complex64::new(SQRT_2, SQRT_2) * Complex64::from_polar(1.0, FRAC_PI_4);
        assert!(flagged);
        assert!(close(v, want, 1e-12));
        assert!((v.norm() - 2.0).abs() < 1e-12);

        let shear = builtin("shear", &Params::new()).unwrap();
        let j = shear.jet_side(0.0, Side::Right).unwrap();
        assert!(close(j.df, Complex64::new(1.0, 0.1), 1e-15));
        assert!((j.df.norm() - 101f64.sqrt() / 10.0).abs() < 1e-15);
    }

    #[test]
    fn tangent_profiles() {
        let circle = builtin("circle", &Params::new()).unwrap();
        let tp = tangent_profile(&circle, 256).unwrap();
        assert!(tp.alpha.iter().all(|a| (a - FRAC_PI_2).abs() < 1e-15));
        assert!((tp.alpha_gamma - FRAC_PI_2).abs() < 1e-15);

        let square = builtin("square", &Params::new()).unwrap();
        let tp = tangent_profile(&square, 4096).unwrap();
        assert!((tp.alpha_gamma - FRAC_PI_4).abs() < 1e-9, "{}", tp.alpha_gamma);

        // cot α = r'/r reconstructs from (sin α, cos α) on smooth points
        let ellipse = builtin("ellipse", &params(&[("a", 2.0), ("b", 1.0)])).unwrap();
        let tp = tangent_profile(&ellipse, 1024).unwrap();
        let p = ellipse.as_polar().unwrap();
        for (t, a) in tp.t.iter().zip(&tp.alpha) {
            let (r, dr) = p.radius_jet(*t, None).unwrap();
            let n = (r * r + dr * dr).sqrt();
            assert!((a.cos() - dr / n).abs() < 1e-12 && (a.sin() - r / n).abs() < 1e-12);
            assert!((a.cos() / a.sin() - dr / r).abs() < 1e-9);
        }
        assert!(matches!(tangent_profile(&ellipse, 32), Err(Error::GridTooSmall(32, 64))));
    }

    #[test]
    fn validation_examples() {
        let d = validate_starlike(&builtin("circle", &Params::new()).unwrap());
        assert!(d.passed && (d.min_radius - 1.0).abs() < 1e-15);
        let d = validate_starlike(&builtin("square", &Params::new()).unwrap());
        assert!(d.passed && (d.min_radius - 1.0).abs() < 1e-12, "{:?}", d);
        let bad = PolarCurve::new(PeriodicFunction::parse("1 + 1.2*cos(t)", &Params::new(), 0.0).unwrap()).unwrap();
        let d = validate_starlike(&Curve::Polar(bad));
        assert!(!d.passed);
        assert!((d.min_radius + 0.2).abs() < 1e-12 && (d.min_radius_at - PI).abs() < 1e-6);
        let shear = validate_starlike(&builtin("shear", &Params::new()).unwrap());
        assert!(shear.passed, "{:?}", shear);
        assert_eq!(shear.orientation, -1);
    }

    #[test]
    fn decreasing_psi_rejected() {
        let psi = PeriodicFunction::parse("t + 2*sin(t)", &Params::new(), TAU).unwrap();
        let map = BoundaryMap::circle(CircleHomeomorphism::new(psi).unwrap(), 1.0);
        let d = validate_starlike(&Curve::Map(map));
        assert!(!d.passed, "{:?}", d);
        assert!(d.monotonicity_defect.unwrap() > 1e-5, "{:?}", d);
    }
}
