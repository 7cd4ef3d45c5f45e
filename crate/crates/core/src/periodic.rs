//! Scalar functions on the line with `φ(t + 2π) = φ(t) + b`.
//!
//! Derivatives are a.e. derivatives. At kinks (points where the one-sided
//! derivatives differ) [`PeriodicFunction::jet`] returns the left limit and
//! flags the point; [`PeriodicFunction::jet_side`] gives either side.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::f64::consts::TAU;


use crate::dsl::{Expr, Params};
use crate::error::{Error, EvalError, Result};
pub use crate::interp::Jet;
use crate::interp::Interpolant;
#[allow(unused_imports)] // unused when num-traits is built with `std`
use num_traits::Float;

/// Grid used to locate kinks of expression-backed functions.
pub const KINK_SCAN_N: usize = 4096;

/// Smallest number of samples accepted by the sampled constructors.
pub const MIN_SAMPLES: usize = 16;

/// Which one-sided limit to take.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Side {
    Left,
    Right,
}

/// A point in `[0, 2π)` where the derivative jumps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kink {
    pub t: f64,
    pub left: f64,
    pub right: f64,
}

#[derive(Debug, Clone, PartialEq)]
enum Source {
    Expr { value: Expr, deriv: Expr },
    Sampled(Interpolant),
    /// `outer(inner(t))` with `inner` a circle homeomorphism.
    Composed { outer: Box<PeriodicFunction>, inner: Box<PeriodicFunction> },
    /// Discrete convolution `Σ c_k φ(t - y_k)` with positive weights summing to one.
    Mollified { inner: Box<PeriodicFunction>, nodes: Vec<(f64, f64)> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicFunction {
    source: Source,
    period_offset: f64,
    kinks: Vec<Kink>,
}

/// Reduce `t` to `[0, 2π)`, returning the reduced value and the number of
/// whole periods removed.
pub fn wrap(t: f64) -> (f64, f64) {
    let k = (t / TAU).floor();
    let mut tw = t - k * TAU;
    let mut k = k;
    if tw >= TAU {
        tw -= TAU;
        k += 1.0;
    }
    if tw < 0.0 {
        tw = 0.0;
    }
    (tw, k)
}

fn kink_tol(t: f64) -> f64 {
    1e-12 * t.abs().max(1.0)
}

impl PeriodicFunction {
    /// Build from an expression; every parameter must be bound in `params`.
    pub fn from_expr(expr: &Expr, params: &Params, period_offset: f64) -> Result<Self> {
        if let Some(missing) = expr.params().into_iter().find(|p| !params.contains_key(p)) {
            return Err(EvalError::UnboundParameter(missing).into());
        }
        let value = expr.bind(&|name| params.get(name).copied()).fold();
        let deriv = value.diff();
        let mut f = PeriodicFunction { source: Source::Expr { value, deriv }, period_offset, kinks: Vec::new() };
        f.kinks = f.scan_expr_kinks()?;
        Ok(f)
    }

    pub fn parse(text: &str, params: &Params, period_offset: f64) -> Result<Self> {
        let e = crate::dsl::parse(text)?;
        Self::from_expr(&e, params, period_offset)
    }

    pub fn constant(c: f64) -> Self {
        PeriodicFunction {
            source: Source::Expr { value: Expr::Num(c), deriv: Expr::Num(0.0) },
            period_offset: 0.0,
            kinks: Vec::new(),
        }
    }

    /// `ψ(t) = t`.
    pub fn identity() -> Self {
        PeriodicFunction {
            source: Source::Expr { value: Expr::Var, deriv: Expr::Num(1.0) },
            period_offset: TAU,
            kinks: Vec::new(),
        }
    }

    /// Uniform samples at `t_j = 2πj/n`, interpolated by a periodic cubic spline.
    pub fn sampled(samples: &[f64], period_offset: f64) -> Result<Self> {
        check_samples(samples)?;
        Ok(PeriodicFunction {
            source: Source::Sampled(Interpolant::spline(samples, period_offset)),
            period_offset,
            kinks: Vec::new(),
        })
    }

    /// Uniform samples interpolated by a monotonicity-preserving cubic.
    pub fn sampled_monotone(samples: &[f64], period_offset: f64) -> Result<Self> {
        check_samples(samples)?;
        Ok(PeriodicFunction {
            source: Source::Sampled(Interpolant::monotone(samples, period_offset)),
            period_offset,
            kinks: Vec::new(),
        })
    }

    /// `self ∘ inner`, where `inner` has period offset 2π and is nondecreasing.
    pub fn compose(&self, inner: &PeriodicFunction) -> Result<Self> {
        if inner.period_offset != TAU {
            return Err(Error::InvalidParams("composition needs an inner circle homeomorphism".into()));
        }
        let mut f = PeriodicFunction {
            source: Source::Composed { outer: Box::new(self.clone()), inner: Box::new(inner.clone()) },
            period_offset: self.period_offset,
            kinks: Vec::new(),
        };
        let mut kinks = Vec::new();
        for k in &inner.kinks {
            let v = inner.value(k.t)?;
            let left = self.jet_side(v, Side::Left)?.deriv * k.left;
            let right = self.jet_side(v, Side::Right)?.deriv * k.right;
            kinks.push(Kink { t: k.t, left, right });
        }
        let start = inner.value(0.0)?;
        for k in &self.kinks {
            let target = if k.t >= start { k.t } else { k.t + TAU };
            let t = invert_monotone(inner, target)?;
            if kinks.iter().any(|q: &Kink| (q.t - t).abs() <= kink_tol(t)) {
                continue;
            }
            let left = k.left * inner.jet_side(t, Side::Left)?.deriv;
            let right = k.right * inner.jet_side(t, Side::Right)?.deriv;
            kinks.push(Kink { t, left, right });
        }
        kinks.sort_by(|a, b| a.t.total_cmp(&b.t));
        f.kinks = kinks;
        Ok(f)
    }

    pub(crate) fn mollified(inner: &PeriodicFunction, nodes: Vec<(f64, f64)>) -> Self {
        PeriodicFunction {
            period_offset: inner.period_offset,
            source: Source::Mollified { inner: Box::new(inner.clone()), nodes },
            kinks: Vec::new(),
        }
    }

    pub fn period_offset(&self) -> f64 {
        self.period_offset
    }

    pub fn kinks(&self) -> &[Kink] {
        &self.kinks
    }

    /// The folded expression behind an expression-backed function.
    pub fn expr(&self) -> Option<&Expr> {
        match &self.source {
            Source::Expr { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn derivative_expr(&self) -> Option<&Expr> {
        match &self.source {
            Source::Expr { deriv, .. } => Some(deriv),
            _ => None,
        }
    }

    pub fn is_sampled(&self) -> bool {
        matches!(self.source, Source::Sampled(_))
    }

    /// Evaluate the underlying representation on `[0, 2π]` without wrapping.
    fn raw_jet(&self, t: f64) -> Result<Jet> {
        match &self.source {
            Source::Expr { value, deriv } => {
                let p = Params::new();
                Ok(Jet { value: value.eval(t, &p)?, deriv: deriv.eval(t, &p)? })
            }
            Source::Sampled(interp) => {
                let (tw, k) = wrap(t);
                let j = interp.jet(tw);
                Ok(Jet { value: j.value + k * self.period_offset, deriv: j.deriv })
            }
            Source::Composed { outer, inner } => {
                let i = inner.jet(t)?.0;
                let o = outer.jet(i.value)?.0;
                Ok(Jet { value: o.value, deriv: o.deriv * i.deriv })
            }
            Source::Mollified { inner, nodes } => {
                let mut value = 0.0;
                let mut deriv = 0.0;
                for &(y, c) in nodes {
                    let j = inner.jet(t - y)?.0;
                    value += c * j.value;
                    deriv += c * j.deriv;
                }
                Ok(Jet { value, deriv })
            }
        }
    }

    fn kink_near(&self, tw: f64) -> Option<&Kink> {
        self.kinks.iter().find(|k| {
            (k.t - tw).abs() <= kink_tol(tw) || (k.t == 0.0 && TAU - tw <= kink_tol(TAU))
        })
    }

    pub fn value(&self, t: f64) -> Result<f64> {
        let (tw, k) = wrap(t);
        Ok(self.raw_jet(tw)?.value + k * self.period_offset)
    }

    /// Value and a.e. derivative; at a kink the derivative is the left limit
    /// and the flag is set.
    pub fn jet(&self, t: f64) -> Result<(Jet, bool)> {
        let (tw, k) = wrap(t);
        let mut j = self.raw_jet(tw)?;
        j.value += k * self.period_offset;
        match self.kink_near(tw) {
            Some(kink) => {
                j.deriv = kink.left;
                Ok((j, true))
            }
            None => Ok((j, false)),
        }
    }

    pub fn jet_side(&self, t: f64, side: Side) -> Result<Jet> {
        let (tw, k) = wrap(t);
        let mut j = self.raw_jet(tw)?;
        j.value += k * self.period_offset;
        if let Some(kink) = self.kink_near(tw) {
            j.deriv = match side {
                Side::Left => kink.left,
                Side::Right => kink.right,
            };
        }
        Ok(j)
    }

    /// `|φ(2π) - φ(0) - b|` measured on the underlying representation.
    pub fn periodicity_defect(&self) -> Result<f64> {
        let end = match &self.source {
            Source::Expr { value, .. } => value.eval(TAU, &Params::new())?,
            _ => self.raw_jet(TAU - TAU * f64::EPSILON)?.value,
        };
        let start = self.raw_jet(0.0)?.value;
        Ok((end - start - self.period_offset).abs())
    }

    /// Largest finite-difference slope on the uniform `n`-grid.
    pub fn grid_lipschitz(&self, n: usize) -> Result<f64> {
        let h = TAU / n as f64;
        let vals = (0..=n).map(|j| self.value(j as f64 * h)).collect::<Result<Vec<_>>>()?;
        Ok(vals.windows(2).map(|w| (w[1] - w[0]).abs() / h).fold(0.0, f64::max))
    }

    fn scan_expr_kinks(&self) -> Result<Vec<Kink>> {
        let (value, deriv) = match &self.source {
            Source::Expr { value, deriv } => (value, deriv),
            _ => return Ok(Vec::new()),
        };
        let p = Params::new();
        let mut kinks = Vec::new();
        if value.has_branches() || deriv.has_branches() {
            let signature = |t: f64| -> Result<Vec<bool>> {
                let mut tr = Vec::new();
                value.eval_traced(t, &p, &mut tr)?;
                deriv.eval_traced(t, &p, &mut tr)?;
                Ok(tr)
            };
            let h = TAU / KINK_SCAN_N as f64;
            let mut prev = signature(0.0)?;
            for j in 0..KINK_SCAN_N {
                let (a, b) = (j as f64 * h, (j + 1) as f64 * h);
                let next = signature(b)?;
                if next != prev {
                    let (mut lo, mut hi) = (a, b);
                    for _ in 0..200 {
                        let mid = 0.5 * (lo + hi);
                        if mid <= lo || mid >= hi {
                            break;
                        }
                        if signature(mid)? == prev {
                            lo = mid;
                        } else {
                            hi = mid;
                        }
                    }
                    let left = deriv.eval(lo, &p)?;
                    let right = deriv.eval(hi, &p)?;
                    let t = 0.5 * (lo + hi);
                    if t < TAU - kink_tol(TAU) && jumps(left, right) {
                        kinks.push(Kink { t, left, right });
                    }
                }
                prev = next;
            }
        }
        // Wraparound at t = 0 for expressions that are not smooth across it.
        let left = deriv.eval(TAU - TAU * f64::EPSILON, &p)?;
        let right = deriv.eval(0.0, &p)?;
        if jumps(left, right) {
            kinks.insert(0, Kink { t: 0.0, left, right });
        }
        Ok(kinks)
    }
}

fn jumps(left: f64, right: f64) -> bool {
    (left - right).abs() > 1e-9 * left.abs().max(right.abs()).max(1.0)
}

fn check_samples(samples: &[f64]) -> Result<()> {
    if samples.len() < MIN_SAMPLES {
        return Err(Error::InvalidSamples(alloc::format!(
            "need at least {} samples, got {}",
            MIN_SAMPLES,
            samples.len()
        )));
    }
    if samples.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidSamples("non-finite sample".into()));
    }
    Ok(())
}

/// Solve `f(t) = target` for a nondecreasing `f` on `[0, 2π]` by bisection.
pub(crate) fn invert_monotone(f: &PeriodicFunction, target: f64) -> Result<f64> {
    let (mut lo, mut hi) = (0.0, TAU);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f.value(mid)? < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
