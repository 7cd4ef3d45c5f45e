use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::path::PathBuf;

use radext_core::builtin::{builtin, ELLIPSE_EXPR};
use radext_core::dsl::{parse, Params};
use radext_core::family::trigpoly_family;
use radext_core::sup::GridSpec;
use radext_core::verify::{Tolerances, VerifyOptions};
use radext_core::{BoundaryMap, CircleHomeomorphism, Curve, PeriodicFunction, PolarCurve};
use serde::{Deserialize, Serialize};

use crate::args::{CurveArgs, Format, RunArgs};
use crate::error::{CliError, Result};

/// Largest `radial_n · angular_n` accepted by `grid`.
pub const MAX_GRID_POINTS: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq)]
pub enum CurveSpec {
    Builtin { name: String, params: Params, psi: Option<String> },
    Dsl { r: String, psi: Option<String>, params: Params },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub curve: CurveSpec,
    pub grid_n: usize,
    pub refine: usize,
    pub tol: Tolerances,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
}

impl RunConfig {
    pub fn from_args(args: &RunArgs) -> Result<Self> {
        let mut tol = Tolerances::default();
        if let Some(t) = args.numeric.tol {
            tol.pairwise = t;
        }
        Ok(RunConfig {
            curve: curve_spec(&args.curve)?,
            grid_n: args.numeric.grid_n as usize,
            refine: args.numeric.refine,
            tol,
            out: args.output.out.clone(),
            format: args.output.format,
        })
    }

    pub fn spec(&self) -> GridSpec {
        GridSpec { n: self.grid_n, refine: self.refine }
    }

    pub fn verify_options(&self) -> VerifyOptions {
        VerifyOptions { spec: self.spec(), tol: self.tol }
    }
}

fn params_of(pairs: &[(String, f64)]) -> Result<Params> {
    let mut p = Params::new();
    for (k, v) in pairs {
        if p.insert(k.clone(), *v).is_some() {
            return Err(CliError::Usage(format!("parameter `{}` given twice", k)));
        }
    }
    Ok(p)
}

fn curve_spec(a: &CurveArgs) -> Result<CurveSpec> {
    let mut params = params_of(&a.params)?;
    if let Some(seed) = a.seed {
        if a.builtin.as_deref() != Some("trigpoly") || !params.is_empty() {
            return Err(CliError::Usage(String::from("--seed applies only to --builtin trigpoly without --param")));
        }
        params = trigpoly_family(seed, 1)?.remove(0).params;
    }
    match (&a.builtin, &a.r) {
        (Some(name), None) => Ok(CurveSpec::Builtin { name: name.clone(), params, psi: a.psi.clone() }),
        (None, Some(r)) => Ok(CurveSpec::Dsl { r: r.clone(), psi: a.psi.clone(), params }),
        (None, None) => Err(CliError::Usage(String::from("one of --builtin or --r is required"))),
        (Some(_), Some(_)) => Err(CliError::Usage(String::from("--builtin and --r are mutually exclusive"))),
    }
}

/// Description of the analyzed curve as it appears in reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveInfo {
    pub id: String,
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub builtin: Option<String>,
    pub params: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub r: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub psi: Option<String>,
}

/// A constructed curve plus what the reports need to know about it.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub curve: Curve,
    pub info: CurveInfo,
    /// Semi-axes when the radius is the ellipse formula.
    pub ellipse: Option<(f64, f64)>,
}

fn with_psi(curve: Curve, psi: &Option<String>, params: &Params) -> Result<Curve> {
    let Some(text) = psi else { return Ok(curve) };
    let polar = curve.as_polar().ok_or_else(|| CliError::Usage(String::from("--psi needs a polar curve")))?;
    let psi = CircleHomeomorphism::new(PeriodicFunction::parse(text, params, TAU)?)?;
    Ok(Curve::Map(BoundaryMap::reparametrize(&polar, psi)?))
}

fn ellipse_axes(r: &str, params: &Params) -> Option<(f64, f64)> {
    let e = parse(r).ok()?;
    if e != parse(ELLIPSE_EXPR).ok()? {
        return None;
    }
    let (a, b) = (*params.get("a")?, *params.get("b")?);
    (0.0 < b && b <= a).then_some((a, b))
}

fn label(name: &str, params: &Params) -> String {
    if params.is_empty() {
        return name.to_string();
    }
    let kv: Vec<String> = params.iter().map(|(k, v)| format!("{}={}", k, v)).collect();
    format!("{}({})", name, kv.join(", "))
}

pub fn resolve(spec: &CurveSpec) -> Result<Resolved> {
    let (curve, mut info, ellipse) = match spec {
        CurveSpec::Builtin { name, params, psi } => {
            let c = with_psi(builtin(name, params)?, psi, &Params::new())?;
            let ellipse = match (name.as_str(), psi) {
                ("ellipse", None) => Some((params.get("a").copied().unwrap_or(2.0), params.get("b").copied().unwrap_or(1.0))),
                _ => None,
            };
            let mut id = label(name, params);
            if let Some(p) = psi {
                id = format!("{} with psi(t) = {}", id, p);
            }
            let info = CurveInfo {
                id,
                kind: String::new(),
                builtin: Some(name.clone()),
                params: params.clone(),
                r: None,
                psi: psi.clone(),
            };
            (c, info, ellipse)
        }
        CurveSpec::Dsl { r, psi, params } => {
            let polar = PolarCurve::new(PeriodicFunction::parse(r, params, 0.0)?)?;
            let c = with_psi(Curve::Polar(polar), psi, params)?;
            let ellipse = if psi.is_none() { ellipse_axes(r, params) } else { None };
            let mut id = format!("r(t) = {}", r);
            if let Some(p) = psi {
                id = format!("{}, psi(t) = {}", id, p);
            }
            let info =
                CurveInfo { id, kind: String::new(), builtin: None, params: params.clone(), r: Some(r.clone()), psi: psi.clone() };
            (c, info, ellipse)
        }
    };
    info.kind = curve.kind().to_string();
    Ok(Resolved { curve, info, ellipse })
}
