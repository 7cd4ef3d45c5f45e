//! Essential suprema and infima of piecewise-smooth periodic quantities.
//!
//! A quantity `q(t)` is sampled on a uniform grid, together with both
//! one-sided limits at every kink, and the best sample is then refined
//! locally by repeated zooming.

use core::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::periodic::Side;

/// Uniform grid size and minimum number of local refinement passes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    pub n: usize,
    pub refine: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { n: crate::DEFAULT_GRID_N, refine: 1 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Max,
    Min,
}

impl Sense {
    fn better(self, a: f64, b: f64) -> bool {
        match self {
            Sense::Max => a > b,
            Sense::Min => a < b,
        }
    }
}

/// Best value found, where, and how many refinement passes were run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    pub value: f64,
    pub t: f64,
    /// Set when the value is a one-sided limit at a kink.
    pub side: Option<Side>,
    pub passes: usize,
}

/// Relative change below which refinement stops.
pub const REFINE_RTOL: f64 = 1e-7;
const MAX_PASSES: usize = 40;

/// Extremum of `q` over `[0, 2π)`. `q(t, None)` is the value with the
/// left-limit convention at kinks, `q(t, Some(side))` a one-sided limit.
pub fn extremum<F>(kinks: &[f64], spec: GridSpec, sense: Sense, mut q: F) -> Result<Extremum>
where
    F: FnMut(f64, Option<Side>) -> Result<f64>,
{
    if spec.n < 2 {
        return Err(Error::GridTooSmall(spec.n, 2));
    }
    let h = TAU / spec.n as f64;
    let mut best = Extremum { value: f64::NAN, t: 0.0, side: None, passes: 0 };
    let take = |best: &mut Extremum, v: f64, t: f64, side: Option<Side>| {
        if best.value.is_nan() || sense.better(v, best.value) {
            *best = Extremum { value: v, t, side, passes: 0 };
        }
    };
    for j in 0..spec.n {
        let t = j as f64 * h;
        let v = q(t, None)?;
        take(&mut best, v, t, None);
    }
    for &k in kinks {
        for side in [Side::Left, Side::Right] {
            let v = q(k, Some(side))?;
            take(&mut best, v, k, Some(side));
        }
    }

    let mut width = h;
    let mut passes = 0;
    loop {
        let before = best.value;
        let centre = best.t;
        for i in -4i32..=4 {
            if i == 0 {
                continue;
            }
            let t = centre + width * i as f64 / 4.0;
            let v = q(crate::periodic::wrap(t).0, None)?;
            if sense.better(v, best.value) {
                best = Extremum { value: v, t: crate::periodic::wrap(t).0, side: None, passes: 0 };
            }
        }
        passes += 1;
        width /= 4.0;
        let change = (best.value - before).abs();
        let settled = change <= REFINE_RTOL * best.value.abs().max(f64::MIN_POSITIVE);
        if (passes >= spec.refine && settled) || passes >= MAX_PASSES || width < 1e-14 {
            break;
        }
    }
    best.passes = passes;
    Ok(best)
}

/// `(inf, sup)` of `q`, both refined.
pub fn range<F>(kinks: &[f64], spec: GridSpec, mut q: F) -> Result<(Extremum, Extremum)>
where
    F: FnMut(f64, Option<Side>) -> Result<f64>,
{
    let lo = extremum(kinks, spec, Sense::Min, &mut q)?;
    let hi = extremum(kinks, spec, Sense::Max, &mut q)?;
    Ok((lo, hi))
}
