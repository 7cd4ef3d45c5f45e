use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::curves::Diagnostics;

/// Errors from [`crate::dsl::parse`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: found {found}, expected one of {expected:?}")]
    Syntax { offset: usize, expected: Vec<String>, found: String },
    #[error("unknown function `{name}` at byte {offset}")]
    UnknownFunction { name: String, offset: usize },
    #[error("function `{name}` at byte {offset} takes {expected} argument(s), got {found}")]
    ArityMismatch { name: String, expected: usize, found: usize, offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. }
            | ParseError::UnknownFunction { offset, .. }
            | ParseError::ArityMismatch { offset, .. } => *offset,
        }
    }
}

/// Errors from expression evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("domain error ({op}) at t = {t}")]
    Domain { t: f64, op: &'static str },
    #[error("parameter `{0}` is not bound")]
    UnboundParameter(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("unknown curve `{0}`")]
    UnknownCurve(String),
    #[error("invalid curve parameters: {0}")]
    InvalidParams(String),
    #[error("invalid samples: {0}")]
    InvalidSamples(String),
    #[error("degenerate curve: r = {r} <= 0 at t = {t}")]
    DegenerateCurve { t: f64, r: f64 },
    #[error("curve failed starlikeness validation: {0}")]
    Validation(Diagnostics),
    #[error("mollifier width {0} must lie in (0, pi)")]
    InvalidWidth(f64),
    #[error("degenerate differential at t = {t}: |w_z| = {abs_wz} <= |w_zbar| = {abs_wzbar}")]
    DegenerateDifferential { t: f64, abs_wz: f64, abs_wzbar: f64 },
    #[error("degenerate differential at grid point ({i}, {j}), t = {t}: |w_z| = {abs_wz} <= |w_zbar| = {abs_wzbar}")]
    DegenerateGridPoint { i: usize, j: usize, t: f64, abs_wz: f64, abs_wzbar: f64 },
    #[error("point {0} lies outside the closed unit disk")]
    OutsideDomain(f64),
    #[error("the closed-form chordal constant needs a polar parametrization")]
    NotPolar,
    #[error("pairwise grid of {0} points exceeds the cap of {1}")]
    GridTooLarge(usize, usize),
    #[error("grid size {0} is below the minimum {1}")]
    GridTooSmall(usize, usize),
    #[error("psi' is not bounded away from zero (inf psi' = {0})")]
    UnboundedL(f64),
    #[error("dilatation bound k = {0} must lie in [0, 1)")]
    InvalidK(f64),
    #[error("ellipse axes need 0 < b <= a (got a = {a}, b = {b})")]
    InvalidAxes { a: f64, b: f64 },
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
