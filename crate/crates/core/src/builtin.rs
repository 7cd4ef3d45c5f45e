//! Named example curves.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::curves::{CartesianCurve, Curve, PolarCurve};
use crate::dsl::Params;
use crate::error::{Error, Result};
use crate::periodic::PeriodicFunction;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuiltinInfo {
    pub name: &'static str,
    pub params: &'static str,
    pub description: &'static str,
}

pub const BUILTINS: &[BuiltinInfo] = &[
    BuiltinInfo { name: "circle", params: "s=1", description: "r(t) = s" },
    BuiltinInfo {
        name: "ellipse",
        params: "a=2 b=1 (0 < b <= a)",
        description: "r(t) = (cos^2 t / a^2 + sin^2 t / b^2)^(-1/2)",
    },
    BuiltinInfo { name: "square", params: "", description: "boundary of [-1,1]^2, r(t) = min(1/|sin t|, 1/|cos t|)" },
    BuiltinInfo {
        name: "trigpoly",
        params: "c0=1 a1 b1 a2 b2 ...",
        description: "r(t) = c0 + sum a_k cos(kt) + b_k sin(kt), min r > 0",
    },
    BuiltinInfo {
        name: "shear",
        params: "",
        description: "f(t) = -1 + min(2pi - t, t) + i sin(t)/10 (cartesian, clockwise)",
    },
];

pub const ELLIPSE_EXPR: &str = "(cos(t)^2/a^2 + sin(t)^2/b^2)^(-1/2)";
pub const SQUARE_EXPR: &str = "min(1/abs(sin(t)), 1/abs(cos(t)))";
pub const SHEAR_X_EXPR: &str = "-1 + min(2*pi - t, t)";
pub const SHEAR_Y_EXPR: &str = "sin(t)/10";

fn take(params: &Params, allowed: &[&str], name: &str) -> Result<()> {
    if let Some(k) = params.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(Error::InvalidParams(format!("`{}` does not take parameter `{}`", name, k)));
    }
    Ok(())
}

fn get(params: &Params, key: &str, default: f64) -> Result<f64> {
    let v = params.get(key).copied().unwrap_or(default);
    if !v.is_finite() {
        return Err(Error::InvalidParams(format!("{} = {} is not finite", key, v)));
    }
    Ok(v)
}

/// Polar radius expression of a trigonometric polynomial with coefficients
/// `c0`, `a1`, `b1`, ... taken from `params`.
pub fn trigpoly_expr(params: &Params) -> Result<String> {
    let mut terms: Vec<String> = Vec::new();
    terms.push(format!("{:?}", get(params, "c0", 1.0)?));
    for (k, v) in params {
        if k == "c0" {
            continue;
        }
        let (kind, deg) = k.split_at(1);
        let deg: u32 = match (kind, deg.parse()) {
            ("a" | "b", Ok(d)) if d >= 1 && !deg.starts_with('0') && !deg.starts_with('+') => d,
            _ => return Err(Error::InvalidParams(format!("trigpoly parameter `{}` is not c0, a<k> or b<k>", k))),
        };
        if !v.is_finite() {
            return Err(Error::InvalidParams(format!("{} = {} is not finite", k, v)));
        }
        let f = if kind == "a" { "cos" } else { "sin" };
        terms.push(format!("({:?})*{}({}*t)", v, f, deg));
    }
    Ok(terms.join(" + "))
}

/// Build a builtin curve. Unknown names give [`Error::UnknownCurve`].
pub fn builtin(name: &str, params: &Params) -> Result<Curve> {
    let no_params = Params::new();
    let curve = match name {
        "circle" => {
            take(params, &["s"], name)?;
            let s = get(params, "s", 1.0)?;
            if s <= 0.0 {
                return Err(Error::InvalidParams(format!("circle radius s = {} must be positive", s)));
            }
            Curve::Polar(PolarCurve::new(PeriodicFunction::constant(s))?)
        }
        "ellipse" => {
            take(params, &["a", "b"], name)?;
            let (a, b) = (get(params, "a", 2.0)?, get(params, "b", 1.0)?);
            if !(0.0 < b && b <= a) {
                return Err(Error::InvalidAxes { a, b });
            }
            let mut p = Params::new();
            p.insert("a".to_string(), a);
            p.insert("b".to_string(), b);
            Curve::Polar(PolarCurve::new(PeriodicFunction::parse(ELLIPSE_EXPR, &p, 0.0)?)?)
        }
        "square" => {
            take(params, &[], name)?;
            Curve::Polar(PolarCurve::new(PeriodicFunction::parse(SQUARE_EXPR, &no_params, 0.0)?)?)
        }
        "trigpoly" => {
            let text = trigpoly_expr(params)?;
            let r = PeriodicFunction::parse(&text, &no_params, 0.0)?;
            let n = crate::DEFAULT_GRID_N;
            let mut min = f64::INFINITY;
            for j in 0..n {
                min = min.min(r.value(core::f64::consts::TAU * j as f64 / n as f64)?);
            }
            if min <= 0.0 {
                return Err(Error::InvalidParams(format!("trigpoly radius reaches {} <= 0", min)));
            }
            Curve::Polar(PolarCurve::new(r)?)
        }
        "shear" => {
            take(params, &[], name)?;
            Curve::Cartesian(CartesianCurve::new(
                PeriodicFunction::parse(SHEAR_X_EXPR, &no_params, 0.0)?,
                PeriodicFunction::parse(SHEAR_Y_EXPR, &no_params, 0.0)?,
            )?)
        }
        other => return Err(Error::UnknownCurve(other.to_string())),
    };
    Ok(curve)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(pairs: &[(&str, f64)]) -> Params {
        pairs.iter().map(|(k, v)| (String::from(*k), *v)).collect()
    }

    #[test]
    fn all_builtins_construct() {
        for info in BUILTINS {
            builtin(info.name, &Params::new()).unwrap();
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(builtin("hexagon", &Params::new()), Err(Error::UnknownCurve(_))));
        assert!(matches!(builtin("ellipse", &p(&[("a", 1.0), ("b", 2.0)])), Err(Error::InvalidAxes { .. })));
        assert!(matches!(builtin("circle", &p(&[("s", -1.0)])), Err(Error::InvalidParams(_))));
        assert!(matches!(builtin("square", &p(&[("s", 1.0)])), Err(Error::InvalidParams(_))));
        assert!(matches!(builtin("trigpoly", &p(&[("a1", 1.5)])), Err(Error::InvalidParams(_))));
        assert!(matches!(builtin("trigpoly", &p(&[("q3", 0.1)])), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn trigpoly_values() {
        let c = builtin("trigpoly", &p(&[("c0", 1.0), ("a3", 0.3)])).unwrap();
        let r = c.as_polar().unwrap();
        let v = r.r().value(0.4).unwrap();
        assert!((v - (1.0 + 0.3 * (1.2f64).cos())).abs() < 1e-15);
    }
}
