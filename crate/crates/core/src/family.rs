//! Seeded random families of test curves and expressions.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
#[allow(unused_imports)] // unused when num-traits is built with `std`
use num_traits::Float;

use crate::builtin::builtin;
use crate::curves::Curve;
use crate::dsl::{Expr, Func, Params};
use crate::error::Result;

/// Smallest radius accepted for a random trigonometric polynomial.
pub const MIN_RADIUS: f64 = 0.2;

/// A random positive trigonometric polynomial
/// `1 + Σ_{k≤d} a_k cos kt + b_k sin kt`, `1 ≤ d ≤ 4`, `|a_k|, |b_k| ≤ 0.25/k`.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomTrigpoly {
    pub params: Params,
    pub curve: Curve,
}

impl RandomTrigpoly {
    pub fn label(&self) -> String {
        let parts: Vec<String> = self.params.iter().map(|(k, v)| format!("{}={}", k, v)).collect();
        format!("trigpoly({})", parts.join(","))
    }
}

/// `count` curves from `seed`; draws with `min r ≤ 0.2` are rejected.
pub fn trigpoly_family(seed: u64, count: usize) -> Result<Vec<RandomTrigpoly>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let degree = rng.random_range(1..=4u32);
        let mut params = Params::new();
        params.insert("c0".into(), 1.0);
        for k in 1..=degree {
            let c = 0.25 / k as f64;
            params.insert(format!("a{}", k), rng.random_range(-c..=c));
            params.insert(format!("b{}", k), rng.random_range(-c..=c));
        }
        let curve = builtin("trigpoly", &params)?;
        let r = curve.as_polar().expect("trigpoly is polar");
        let n = 1024;
        let mut min = f64::INFINITY;
        for j in 0..n {
            min = min.min(r.r().value(core::f64::consts::TAU * j as f64 / n as f64)?);
        }
        if min > MIN_RADIUS {
            out.push(RandomTrigpoly { params, curve });
        }
    }
    Ok(out)
}

fn leaf(rng: &mut ChaCha8Rng) -> Expr {
    if rng.random_bool(0.6) {
        Expr::Var
    } else {
        Expr::Num((rng.random_range(0.5..2.0f64) * 100.0).round() / 100.0)
    }
}

fn smooth(rng: &mut ChaCha8Rng, depth: u32) -> Expr {
    if depth == 0 {
        return leaf(rng);
    }
    let sub = |rng: &mut ChaCha8Rng| Box::new(smooth(rng, depth - 1));
    let call = |f: Func, e: Expr| Expr::Call(f, alloc::vec![e]);
    let trig = |rng: &mut ChaCha8Rng| {
        let f = if rng.random_bool(0.5) { Func::Sin } else { Func::Cos };
        Expr::Call(f, alloc::vec![smooth(rng, depth - 1)])
    };
    match rng.random_range(0..10u32) {
        0 => Expr::Add(sub(rng), sub(rng)),
        1 => Expr::Sub(sub(rng), sub(rng)),
        2 => Expr::Mul(sub(rng), Box::new(trig(rng))),
        // denominators stay in [1, 3]
        3 => Expr::Div(sub(rng), Box::new(Expr::Add(Box::new(Expr::Num(2.0)), Box::new(trig(rng))))),
        4 => Expr::Pow(Box::new(trig(rng)), Box::new(Expr::Num(rng.random_range(2..=3u32) as f64))),
        5 | 6 => trig(rng),
        7 => call(Func::Exp, trig(rng)),
        8 => call(Func::Log, Expr::Add(Box::new(Expr::Num(2.0)), Box::new(trig(rng)))),
        _ => call(
            Func::Sqrt,
            Expr::Add(Box::new(Expr::Num(1.0)), Box::new(Expr::Pow(sub(rng), Box::new(Expr::Num(2.0))))),
        ),
    }
}

/// `count` random expressions in `t` built from `+ - * /`, integer powers,
/// `sin`, `cos`, `exp`, `log` and `sqrt`, with arguments kept inside the
/// domains (no `abs`, `min`, `max`, `sign`). Depth is at most 4. Products
/// and powers always involve a `sin`/`cos` factor, so values and
/// frequencies stay moderate on `[0, 2π]`.
pub fn random_smooth_exprs(seed: u64, count: usize) -> Vec<Expr> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let depth = rng.random_range(1..=4u32);
            smooth(&mut rng, depth)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let a = trigpoly_family(7, 5).unwrap();
        let b = trigpoly_family(7, 5).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, trigpoly_family(8, 5).unwrap());
        assert!(a.iter().all(|c| c.params.len() >= 3));
    }

    #[test]
    fn smooth_exprs_are_smooth() {
        let es = random_smooth_exprs(1, 50);
        assert_eq!(es, random_smooth_exprs(1, 50));
        for e in &es {
            assert!(!e.has_branches());
            assert!(e.eval(0.3, &Params::new()).is_ok(), "{}", e);
        }
    }
}
