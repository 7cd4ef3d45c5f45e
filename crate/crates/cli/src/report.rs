use radext_core::bounds::StarBounds;
use radext_core::extension::FieldPoint;
use radext_core::lipschitz::Attained;
use radext_core::verify::VerificationReport;
use serde::{Deserialize, Serialize};

use crate::config::CurveInfo;

pub const FLAG_ELLIPSE_K_CHECK: &str = "eqK-radicand-discrepancy-check";
pub const FLAG_ELLIPSE_K_MISMATCH: &str = "eqK-printed-root-mismatch";
pub const FLAG_ELLIPSE_LIP_SQUARED: &str = "lip-printed-equals-square";
pub const FLAG_CIRCLE_K: &str = "K_qc-differs-from-sup-psi-prime";
pub const FLAG_DEGENERATE: &str = "degenerate-differential";
pub const FLAG_STAR_UNBOUNDED: &str = "star-bounds-unbounded";
pub const FLAG_CLOCKWISE: &str = "clockwise";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub curve: CurveInfo,
    pub l: f64,
    #[serde(rename = "L")]
    pub big_l: f64,
    #[serde(rename = "Lambda")]
    pub lambda: f64,
    #[serde(rename = "K_qc")]
    pub k_qc: Option<f64>,
    pub alpha_gamma: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub star_bounds: Option<StarBounds>,
    pub flags: Vec<String>,
    pub lower_l: f64,
    pub lower_w: f64,
    pub grid_n: usize,
    pub refine: usize,
    pub attained_at: Attained,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyOutput {
    pub curve: CurveInfo,
    pub passed: bool,
    pub report: VerificationReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParseCheck {
    pub input: String,
    pub normalized: String,
    pub derivative: String,
    pub params: Vec<String>,
    pub has_branches: bool,
    pub depends_on_t: bool,
}

pub const GRID_HEADER: &str = "r,t,x,y,abs_wz,abs_wzbar,op_norm,jacobian,dilatation,mu_abs";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridRow {
    pub r: f64,
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub abs_wz: f64,
    pub abs_wzbar: f64,
    pub op_norm: f64,
    pub jacobian: f64,
    pub dilatation: f64,
    pub mu_abs: f64,
}

impl From<&FieldPoint> for GridRow {
    fn from(p: &FieldPoint) -> Self {
        let d = &p.data;
        GridRow {
            r: p.r,
            t: p.t,
            x: p.w.re,
            y: p.w.im,
            abs_wz: d.abs_wz,
            abs_wzbar: d.abs_wzbar,
            op_norm: d.op_norm,
            jacobian: d.jacobian,
            dilatation: d.dilatation,
            mu_abs: d.mu_abs,
        }
    }
}

impl GridRow {
    pub fn values(&self) -> [f64; 10] {
        [
            self.r,
            self.t,
            self.x,
            self.y,
            self.abs_wz,
            self.abs_wzbar,
            self.op_norm,
            self.jacobian,
            self.dilatation,
            self.mu_abs,
        ]
    }

    /// Seventeen significant digits per value.
    pub fn csv(&self) -> String {
        let cells: Vec<String> = self.values().iter().map(|v| format!("{:.16e}", v)).collect();
        cells.join(",")
    }
}

pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
