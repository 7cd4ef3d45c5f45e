use std::path::PathBuf;

use radext_core::{Error as CoreError, EvalError};
use serde_json::{json, Value};
use thiserror::Error;

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    Usage = 1,
    Validation = 2,
    Degenerate = 3,
    Numerical = 4,
}

impl Exit {
    pub fn code(self) -> u8 {
        self as u8
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("cannot write {}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("verification failed: {}", .0.join(", "))]
    ChecksFailed(Vec<String>),
}

impl CliError {
    pub fn exit(&self) -> Exit {
        match self {
            CliError::Usage(_) => Exit::Usage,
            CliError::Io { .. } | CliError::ChecksFailed(_) => Exit::Numerical,
            CliError::Core(e) => match e {
                CoreError::Parse(_)
                | CoreError::UnknownCurve(_)
                | CoreError::InvalidParams(_)
                | CoreError::InvalidAxes { .. }
                | CoreError::InvalidWidth(_)
                | CoreError::GridTooLarge(..)
                | CoreError::GridTooSmall(..)
                | CoreError::NotPolar
                | CoreError::Eval(EvalError::UnboundParameter(_)) => Exit::Usage,
                CoreError::Validation(_) | CoreError::DegenerateCurve { .. } | CoreError::InvalidSamples(_) => {
                    Exit::Validation
                }
                CoreError::DegenerateDifferential { .. }
                | CoreError::DegenerateGridPoint { .. }
                | CoreError::UnboundedL(_) => Exit::Degenerate,
                CoreError::Eval(EvalError::Domain { .. }) | CoreError::OutsideDomain(_) | CoreError::InvalidK(_) => {
                    Exit::Numerical
                }
            },
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io { .. } => "io",
            CliError::ChecksFailed(_) => "verification",
            CliError::Core(e) => match e {
                CoreError::Parse(_) => "parse",
                CoreError::Eval(_) => "eval",
                CoreError::UnknownCurve(_) => "unknown_curve",
                CoreError::InvalidParams(_) | CoreError::InvalidAxes { .. } => "invalid_params",
                CoreError::InvalidSamples(_) => "invalid_samples",
                CoreError::DegenerateCurve { .. } => "degenerate_curve",
                CoreError::Validation(_) => "validation",
                CoreError::InvalidWidth(_) => "invalid_width",
                CoreError::DegenerateDifferential { .. } | CoreError::DegenerateGridPoint { .. } => {
                    "degenerate_differential"
                }
                CoreError::OutsideDomain(_) => "outside_domain",
                CoreError::NotPolar => "not_polar",
                CoreError::GridTooLarge(..) | CoreError::GridTooSmall(..) => "grid_size",
                CoreError::UnboundedL(_) => "unbounded_l",
                CoreError::InvalidK(_) => "invalid_k",
            },
        }
    }

    fn details(&self) -> Value {
        match self {
            CliError::Core(CoreError::Parse(p)) => json!({ "offset": p.offset() }),
            CliError::Core(CoreError::Eval(EvalError::Domain { t, op })) => json!({ "t": t, "op": op }),
            CliError::Core(CoreError::Validation(d)) => serde_json::to_value(d).unwrap_or(Value::Null),
            CliError::Core(CoreError::DegenerateCurve { t, r }) => json!({ "t": t, "r": r }),
            CliError::Core(CoreError::DegenerateDifferential { t, abs_wz, abs_wzbar }) => {
                json!({ "t": t, "abs_wz": abs_wz, "abs_wzbar": abs_wzbar })
            }
            CliError::Core(CoreError::DegenerateGridPoint { i, j, t, abs_wz, abs_wzbar }) => {
                json!({ "i": i, "j": j, "t": t, "abs_wz": abs_wz, "abs_wzbar": abs_wzbar })
            }
            CliError::ChecksFailed(names) => json!({ "checks": names }),
            _ => Value::Null,
        }
    }

    /// `{"error": {"kind", "exit_code", "message", "details"}}` on one line.
    pub fn to_json(&self) -> String {
        let v = json!({
            "error": {
                "kind": self.kind(),
                "exit_code": self.exit().code(),
                "message": self.to_string(),
                "details": self.details(),
            }
        });
        v.to_string()
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
