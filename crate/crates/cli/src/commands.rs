use std::io::Write;

use radext_core::bounds::{ellipse_K_closed_form, ellipse_lip_printed, psi_prime_range, star_bounds};
use radext_core::builtin::BUILTINS;
use radext_core::curves::{ensure_valid, tangent_profile_refined, validate_starlike};
use radext_core::dsl::parse;
use radext_core::extension::field_grid;
use radext_core::lipschitz::{lipschitz_report, max_dilatation, Method};
use radext_core::verify::{verify_curve, verify_ellipse, Status};
use radext_core::{Curve, Error as CoreError};
use serde::Serialize;

use crate::args::Format;
use crate::config::{resolve, RunConfig, MAX_GRID_POINTS};
use crate::error::{CliError, Result};
use crate::output::{emit, Sink};
use crate::report::*;

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("reports contain only finite numbers")
}

fn json_only(cfg: &RunConfig, verb: &str) -> Result<()> {
    match cfg.format {
        None | Some(Format::Json) => Ok(()),
        Some(Format::Csv) => Err(CliError::Usage(format!("{} writes JSON only; use `grid` for CSV", verb))),
    }
}

/// Build the analysis report. A degenerate differential still produces a
/// report (with `K_qc` null) together with the error to exit with.
pub fn analyze(cfg: &RunConfig) -> Result<(AnalyzeReport, Option<CliError>)> {
    let res = resolve(&cfg.curve)?;
    let curve = &res.curve;
    let diag = validate_starlike(curve);
    let clockwise = diag.orientation < 0;
    diag.require()?;
    let spec = cfg.spec();
    let lip = lipschitz_report(curve, spec, Method::Derivative)?;
    let alpha_gamma = tangent_profile_refined(curve, spec)?.alpha_gamma;
    let mut flags = Vec::new();
    let mut notes = Vec::new();
    let mut deferred = None;
    if lip.k_qc.is_none() {
        flags.push(FLAG_DEGENERATE.to_string());
        if let Err(e) = max_dilatation(curve, spec) {
            deferred = Some(CliError::Core(e));
        }
    }
    if clockwise {
        flags.push(FLAG_CLOCKWISE.to_string());
    }
    let star = match curve.as_boundary_map() {
        Some(map) => match star_bounds(&map, spec) {
            Ok(b) => Some(b),
            Err(CoreError::UnboundedL(inf)) => {
                flags.push(FLAG_STAR_UNBOUNDED.to_string());
                notes.push(format!("inf psi' = {}; the explicit bounds are not finite", inf));
                None
            }
            Err(e) => return Err(e.into()),
        },
        None => None,
    };
    if let Some((a, b)) = res.ellipse {
        flags.push(FLAG_ELLIPSE_K_CHECK.to_string());
        let (printed, derived) = ellipse_K_closed_form(a, b)?;
        notes.push(format!("ellipse K: printed radicand form {}, root of K + 1/K {}", printed, derived));
        if !rel_close(printed, derived, 1e-12) {
            flags.push(FLAG_ELLIPSE_K_MISMATCH.to_string());
        }
        let printed_lip = ellipse_lip_printed(a, b);
        if !rel_close(printed_lip, lip.l, 1e-6) && rel_close(printed_lip, lip.l * lip.l, 1e-6) {
            flags.push(FLAG_ELLIPSE_LIP_SQUARED.to_string());
            notes.push(format!("printed Lip expression {} equals Lip^2 = {}", printed_lip, lip.l * lip.l));
        }
    }
    if let (Some(map), Some(k)) = (curve.as_boundary_map(), lip.k_qc) {
        if curve.circle_radius()?.is_some_and(|s| (s - 1.0).abs() <= 1e-12) && !map.psi().is_identity() {
            let (_, sup_d) = psi_prime_range(&map, spec)?;
            if !rel_close(k, sup_d, cfg.tol.closed_form) {
                flags.push(FLAG_CIRCLE_K.to_string());
                notes.push(format!("K_qc = {} while sup psi' = {}", k, sup_d));
            }
        }
    }
    let report = AnalyzeReport {
        curve: res.info,
        l: lip.l,
        big_l: lip.big_l,
        lambda: lip.lambda,
        k_qc: lip.k_qc,
        alpha_gamma,
        star_bounds: star,
        flags,
        lower_l: lip.lower_l,
        lower_w: lip.lower_w,
        grid_n: cfg.grid_n,
        refine: cfg.refine,
        attained_at: lip.attained_at,
        notes,
    };
    Ok((report, deferred))
}

pub fn cmd_analyze(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<()> {
    json_only(cfg, "analyze")?;
    let (report, deferred) = analyze(cfg)?;
    emit(cfg.out.as_deref(), stdout, &json(&report))?;
    deferred.map_or(Ok(()), Err)
}

pub fn verify(cfg: &RunConfig) -> Result<VerifyOutput> {
    let res = resolve(&cfg.curve)?;
    let opts = cfg.verify_options();
    let mut report = match res.ellipse {
        Some((a, b)) => {
            let mut r = verify_ellipse(a, b, opts)?;
            r.merge(verify_curve(&res.curve, &res.info.id, opts)?);
            r
        }
        None => verify_curve(&res.curve, &res.info.id, opts)?,
    };
    report.curve_id = res.info.id.clone();
    Ok(VerifyOutput { curve: res.info, passed: report.passed(), report })
}

pub fn cmd_verify(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<()> {
    json_only(cfg, "verify")?;
    let out = verify(cfg)?;
    emit(cfg.out.as_deref(), stdout, &json(&out))?;
    if out.passed {
        return Ok(());
    }
    let failed = out.report.checks.iter().filter(|c| c.status == Status::Fail).map(|c| c.name.clone()).collect();
    Err(CliError::ChecksFailed(failed))
}

pub fn grid_rows(curve: &Curve, radial_n: usize, angular_n: usize) -> Result<Vec<GridRow>> {
    match radial_n.checked_mul(angular_n) {
        Some(n) if n <= MAX_GRID_POINTS => {}
        _ => {
            return Err(CliError::Usage(format!(
                "radial_n * angular_n = {} * {} exceeds {}",
                radial_n, angular_n, MAX_GRID_POINTS
            )))
        }
    }
    ensure_valid(curve)?;
    Ok(field_grid(curve, radial_n, angular_n)?.iter().map(GridRow::from).collect())
}

pub fn cmd_grid(cfg: &RunConfig, radial_n: usize, angular_n: usize, stdout: &mut dyn Write) -> Result<()> {
    let res = resolve(&cfg.curve)?;
    let rows = grid_rows(&res.curve, radial_n, angular_n)?;
    let mut sink = Sink::open(cfg.out.as_deref(), stdout)?;
    let written = (|| -> std::io::Result<()> {
        let w = sink.writer();
        match cfg.format.unwrap_or(Format::Csv) {
            Format::Csv => {
                writeln!(w, "{}", GRID_HEADER)?;
                for row in &rows {
                    writeln!(w, "{}", row.csv())?;
                }
            }
            Format::Json => {
                writeln!(w, "[")?;
                for (k, row) in rows.iter().enumerate() {
                    let sep = if k + 1 < rows.len() { "," } else { "" };
                    writeln!(w, "  {}{}", serde_json::to_string(row).map_err(std::io::Error::other)?, sep)?;
                }
                writeln!(w, "]")?;
            }
        }
        Ok(())
    })();
    if let Err(e) = written {
        let err = sink.io_error(e);
        sink.abort();
        return Err(err);
    }
    sink.commit()
}

pub fn cmd_curves_list(format: Option<Format>, stdout: &mut dyn Write) -> Result<()> {
    let text = match format {
        None => {
            let width = BUILTINS.iter().map(|b| b.name.len()).max().unwrap_or(0);
            let lines: Vec<String> = BUILTINS
                .iter()
                .map(|b| format!("{:width$}  {}  [{}]", b.name, b.description, b.params, width = width))
                .collect();
            lines.join("\n")
        }
        Some(Format::Json) => {
            let v: Vec<_> = BUILTINS
                .iter()
                .map(|b| serde_json::json!({ "name": b.name, "params": b.params, "description": b.description }))
                .collect();
            json(&v)
        }
        Some(Format::Csv) => {
            let mut lines = vec![String::from("name,params,description")];
            for b in BUILTINS {
                lines.push(format!("{},{},{}", csv_field(b.name), csv_field(b.params), csv_field(b.description)));
            }
            lines.join("\n")
        }
    };
    emit(None, stdout, &text)
}

pub fn parse_check(expr: &str) -> Result<ParseCheck> {
    let e = parse(expr).map_err(CoreError::from)?;
    Ok(ParseCheck {
        input: expr.to_string(),
        normalized: e.to_string(),
        derivative: e.diff().to_string(),
        params: e.params().into_iter().collect(),
        has_branches: e.has_branches(),
        depends_on_t: e.depends_on_t(),
    })
}

pub fn cmd_parse_check(expr: &str, stdout: &mut dyn Write) -> Result<()> {
    emit(None, stdout, &json(&parse_check(expr)?))
}
