//! Interpolants for uniformly sampled 2π-periodic data.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::TAU;
#[allow(unused_imports)] // unused when num-traits is built with `std`
use num_traits::Float;


/// Value and derivative at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub value: f64,
    pub deriv: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Interpolant {
    /// C² periodic cubic spline through `y_j - slope * t_j`.
    Spline { y: Vec<f64>, m: Vec<f64>, slope: f64 },
    /// C¹ monotone Hermite cubic (harmonic-mean tangents) with
    /// `y_{j+n} = y_j + offset`.
    Monotone { y: Vec<f64>, tangents: Vec<f64>, offset: f64 },
}

fn solve_cyclic(rhs: &[f64]) -> Vec<f64> {
    // Solves M_{j-1} + 4 M_j + M_{j+1} = rhs_j with periodic wraparound
    // (Sherman–Morrison on the Thomas algorithm).
    let n = rhs.len();
    let (a, b, c) = (1.0, 4.0, 1.0);
    let (alpha, beta) = (c, a);
    let gamma = -b;
    let mut diag = vec![b; n];
    diag[0] = b - gamma;
    diag[n - 1] = b - alpha * beta / gamma;
    let thomas = |d: &[f64], r: &[f64]| -> Vec<f64> {
        let mut cp = vec![0.0; n];
        let mut dp = vec![0.0; n];
        cp[0] = c / d[0];
        dp[0] = r[0] / d[0];
        for i in 1..n {
            let den = d[i] - a * cp[i - 1];
            cp[i] = c / den;
            dp[i] = (r[i] - a * dp[i - 1]) / den;
        }
        let mut x = vec![0.0; n];
        x[n - 1] = dp[n - 1];
        for i in (0..n - 1).rev() {
            x[i] = dp[i] - cp[i] * x[i + 1];
        }
        x
    };
    let x = thomas(&diag, rhs);
    let mut u = vec![0.0; n];
    u[0] = gamma;
    u[n - 1] = alpha;
    let z = thomas(&diag, &u);
    let fact = (x[0] + beta * x[n - 1] / gamma) / (1.0 + z[0] + beta * z[n - 1] / gamma);
    x.iter().zip(&z).map(|(xi, zi)| xi - fact * zi).collect()
}

impl Interpolant {
    pub(crate) fn spline(samples: &[f64], offset: f64) -> Self {
        let n = samples.len();
        let h = TAU / n as f64;
        let slope = offset / TAU;
        let y: Vec<f64> = samples.iter().enumerate().map(|(j, v)| v - slope * h * j as f64).collect();
        let rhs: Vec<f64> = (0..n)
            .map(|j| 6.0 * (y[(j + 1) % n] - 2.0 * y[j] + y[(j + n - 1) % n]) / (h * h))
            .collect();
        Interpolant::Spline { m: solve_cyclic(&rhs), y, slope }
    }

    pub(crate) fn monotone(samples: &[f64], offset: f64) -> Self {
        let n = samples.len();
        let h = TAU / n as f64;
        let at = |j: isize| -> f64 {
            let k = j.rem_euclid(n as isize) as usize;
            let wraps = (j - k as isize) / n as isize;
            samples[k] + wraps as f64 * offset
        };
        let tangents = (0..n as isize)
            .map(|j| {
                let d0 = (at(j) - at(j - 1)) / h;
                let d1 = (at(j + 1) - at(j)) / h;
                if d0 * d1 <= 0.0 {
                    0.0
                } else {
                    2.0 * d0 * d1 / (d0 + d1)
                }
            })
            .collect();
        Interpolant::Monotone { y: samples.to_vec(), tangents, offset }
    }

    /// Evaluate at `t` in `[0, 2π)`.
    pub(crate) fn jet(&self, t: f64) -> Jet {
        match self {
            Interpolant::Spline { y, m, slope } => {
                let n = y.len();
                let h = TAU / n as f64;
                let (j, s) = locate(t, h, n);
                let (y0, y1) = (y[j], y[(j + 1) % n]);
                let (m0, m1) = (m[j], m[(j + 1) % n]);
                let r = h - s;
                let value = m0 * r * r * r / (6.0 * h)
                    + m1 * s * s * s / (6.0 * h)
                    + (y0 - m0 * h * h / 6.0) * r / h
                    + (y1 - m1 * h * h / 6.0) * s / h;
                let deriv = -m0 * r * r / (2.0 * h) + m1 * s * s / (2.0 * h) + (y1 - y0) / h
                    - (m1 - m0) * h / 6.0;
                Jet { value: value + slope * t, deriv: deriv + slope }
            }
            Interpolant::Monotone { y, tangents, offset } => {
                let n = y.len();
                let h = TAU / n as f64;
                let (j, s) = locate(t, h, n);
                let y0 = y[j];
                let y1 = if j + 1 == n { y[0] + offset } else { y[j + 1] };
                let (m0, m1) = (tangents[j], tangents[(j + 1) % n]);
                let u = s / h;
                let (u2, u3) = (u * u, u * u * u);
                let value = (2.0 * u3 - 3.0 * u2 + 1.0) * y0
                    + (u3 - 2.0 * u2 + u) * h * m0
                    + (-2.0 * u3 + 3.0 * u2) * y1
                    + (u3 - u2) * h * m1;
                let deriv = ((6.0 * u2 - 6.0 * u) * y0
                    + (3.0 * u2 - 4.0 * u + 1.0) * h * m0
                    + (-6.0 * u2 + 6.0 * u) * y1
                    + (3.0 * u2 - 2.0 * u) * h * m1)
                    / h;
                Jet { value, deriv }
            }
        }
    }
}

fn locate(t: f64, h: f64, n: usize) -> (usize, f64) {
    let j = ((t / h).floor() as usize).min(n - 1);
    (j, t - j as f64 * h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spline_reproduces_trig() {
        let n = 256;
        let s: Vec<f64> = (0..n).map(|j| (TAU * j as f64 / n as f64).sin()).collect();
        let sp = Interpolant::spline(&s, 0.0);
        for k in 0..1000 {
            let t = TAU * k as f64 / 1000.0 * 0.9999;
            let j = sp.jet(t);
            assert!((j.value - t.sin()).abs() < 1e-8);
            assert!((j.deriv - t.cos()).abs() < 1e-5);
        }
    }

    #[test]
    fn spline_with_offset() {
        let n = 128;
        let s: Vec<f64> = (0..n).map(|j| {
            let t = TAU * j as f64 / n as f64;
            t + 0.3 * t.sin()
        }).collect();
        let sp = Interpolant::spline(&s, TAU);
        let t = 1.234;
        let j = sp.jet(t);
        assert!((j.value - (t + 0.3 * t.sin())).abs() < 1e-7);
        assert!((j.deriv - (1.0 + 0.3 * t.cos())).abs() < 1e-4);
    }

    #[test]
    fn monotone_stays_monotone() {
        // staircase-like data
        let n = 32;
        let s: Vec<f64> = (0..n)
            .map(|j| {
                let t = TAU * j as f64 / n as f64;
                if t < core::f64::consts::PI { 2.0 * t } else { TAU }
            })
            .collect();
        let mi = Interpolant::monotone(&s, TAU);
        let mut prev = f64::NEG_INFINITY;
        for k in 0..4000 {
            let t = TAU * k as f64 / 4000.0;
            let j = mi.jet(t);
            assert!(j.value >= prev - 1e-12);
            assert!(j.deriv >= -1e-12);
            prev = j.value;
        }
    }
}
