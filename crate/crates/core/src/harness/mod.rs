//! Presets, configuration, and the commands behind the `boxproj` binary.
//!
//! Every command returns a [`CommandOutput`]: a body (CSV or a key/value
//! report), summary key/value pairs, and an overall pass flag.

pub mod checks;
pub mod config;
pub mod presets;

use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use num_rational::Rational64;

use crate::asymptotics::{
    directional_norms_pth, lhs_sweep, rhs_constant, rhs_constant_p2, SweepOptions,
};
use crate::bernoulli::{l_beta_expansion, l_beta_series};
use crate::box_spline::{lattice_box, BoxSpline, DerivativeRoute};
use crate::error::{Error, Result};
use crate::lattice::{c_coefficient, DirectionSet, MultiIndex};
use crate::projection::{default_padding, SplineSpaceModel};

pub use config::ExperimentConfig;

/// Result of one command.
#[derive(Debug, Clone, PartialEq)]
pub struct CommandOutput {
    pub body: String,
    pub summary: Vec<(String, String)>,
    pub success: bool,
}

impl CommandOutput {
    pub fn summary_text(&self) -> String {
        self.summary.iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
    }
}

/// 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// `p/q`, or `p` for integers.
pub fn fmt_rational(r: &Rational64) -> String {
    r.to_string()
}

/// Writes `contents` to `path` through a sibling temporary file and a rename.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path
        .file_name()
        .ok_or_else(|| Error::Config(format!("output path {} has no file name", path.display())))?;
    let tmp = dir.join(format!(".{}.tmp{}", name.to_string_lossy(), std::process::id()));
    std::fs::write(&tmp, contents).map_err(|e| Error::Config(format!("cannot write {}: {e}", tmp.display())))?;
    std::fs::rename(&tmp, path).map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display())))
}

fn kv(summary: &mut Vec<(String, String)>, key: impl Into<String>, value: impl ToString) {
    summary.push((key.into(), value.to_string()));
}

/// Combinatorial report: `d`, `n`, `ϱ_V`, unimodularity, `Λ` and the `C(β,U)` table.
pub fn cmd_analyze(cfg: &ExperimentConfig) -> Result<CommandOutput> {
    let set = cfg.direction_set()?;
    let mut out = String::new();
    let vectors: Vec<String> = set.vectors().iter().map(|v| v.to_string()).collect();
    writeln!(out, "set = {}", cfg.set_label()).unwrap();
    writeln!(out, "d = {}", set.dim()).unwrap();
    writeln!(out, "n = {}", set.len()).unwrap();
    writeln!(out, "vectors = [{}]", vectors.join(", ")).unwrap();
    writeln!(out, "rho = {}", set.rho()).unwrap();
    writeln!(out, "unimodular = {}", set.is_unimodular()).unwrap();
    set.require_unimodular()?;
    let classes = set.lambda_set()?;
    writeln!(out, "lambda_count = {}", classes.len()).unwrap();
    for (i, c) in classes.iter().enumerate() {
        let members: Vec<String> = c.member_vectors(&set).iter().map(|v| v.to_string()).collect();
        let dens: Vec<String> = c.denominators.iter().map(|q| q.to_string()).collect();
        writeln!(out, "class[{i}].members = [{}]", members.join(", ")).unwrap();
        writeln!(out, "class[{i}].alpha = {}", c.alpha).unwrap();
        writeln!(out, "class[{i}].denominators = [{}]", dens.join(", ")).unwrap();
        writeln!(out, "class[{i}].scale = {}", fmt_rational(&c.scale())).unwrap();
    }
    let k = set.rho() as u32 + 1;
    let header: Vec<String> = (0..classes.len()).map(|i| format!("U{i}")).collect();
    writeln!(out, "c_table.columns = beta, {}", header.join(", ")).unwrap();
    for beta in MultiIndex::all_of_order(set.dim(), k) {
        let row: Vec<String> = classes
            .iter()
            .map(|c| c_coefficient(&beta, &c.member_vectors(&set)).map(|r| fmt_rational(&r)))
            .collect::<Result<_>>()?;
        writeln!(out, "c_table[{beta}] = {}", row.join(", ")).unwrap();
    }
    Ok(CommandOutput {
        body: out,
        summary: vec![
            ("rho".into(), set.rho().to_string()),
            ("lambda_count".into(), classes.len().to_string()),
        ],
        success: true,
    })
}

/// Sample points `(j + θ)/grid`, `θ = 1/2` in one dimension and `(1/3, 2/3)` in two.
pub fn sample_grid(d: usize, grid: usize) -> Vec<Vec<f64>> {
    let theta: Vec<f64> = match d {
        1 => vec![0.5],
        _ => (0..d).map(|j| (j as f64 + 1.0) / (d as f64 + 1.0)).collect(),
    };
    let hi = vec![grid as i64 - 1; d];
    lattice_box(&vec![0; d], &hi)
        .into_iter()
        .map(|p| p.iter().zip(&theta).map(|(&j, t)| (j as f64 + t) / grid as f64).collect())
        .collect()
}

/// `L_β` on a grid by the closed-form expansion and by the lattice series.
pub fn cmd_lbeta(cfg: &ExperimentConfig) -> Result<CommandOutput> {
    let set = cfg.direction_set()?;
    set.require_unimodular()?;
    let d = set.dim();
    let radius = cfg.series_radius.unwrap_or(if d == 1 { 2000 } else { 200 });
    let grid = cfg.grid.unwrap_or(17);
    let xs = sample_grid(d, grid);
    let betas = match cfg.beta(d)? {
        Some(b) => vec![b],
        None => MultiIndex::all_of_order(d, set.rho() as u32 + 1),
    };
    let mut out = String::new();
    let xcols: Vec<String> = (1..=d).map(|j| format!("x{j}")).collect();
    let multi = betas.len() > 1;
    if multi {
        write!(out, "beta,").unwrap();
    }
    writeln!(out, "{},closed_form,series_{radius},abs_diff", xcols.join(",")).unwrap();
    let mut worst: f64 = 0.0;
    for beta in &betas {
        let expansion = l_beta_expansion(&set, beta)?;
        let series = l_beta_series(&set, beta, &xs, radius, DerivativeRoute::Factored)?;
        for (x, s) in xs.iter().zip(&series) {
            let closed = expansion.evaluate(x);
            let diff = (closed - s.re).abs();
            worst = worst.max(diff);
            if multi {
                write!(out, "\"{beta}\",").unwrap();
            }
            let xs: Vec<String> = x.iter().map(|v| fmt_f64(*v)).collect();
            writeln!(out, "{},{},{},{}", xs.join(","), fmt_f64(closed), fmt_f64(s.re), fmt_f64(diff)).unwrap();
        }
    }
    let mut summary = Vec::new();
    kv(&mut summary, "series_radius", radius);
    kv(&mut summary, "max_abs_diff", fmt_f64(worst));
    Ok(CommandOutput {
        body: out,
        summary,
        success: true,
    })
}

/// Projects the configured function at one scale; body is the coefficient field.
pub fn cmd_project(cfg: &ExperimentConfig) -> Result<CommandOutput> {
    let set = cfg.direction_set()?;
    let d = set.dim();
    let f = cfg.test_function(d)?;
    let p = cfg.p()?;
    let h = cfg.h.unwrap_or(0.25);
    let padding = cfg.padding.unwrap_or_else(|| default_padding(&set));
    let spline = Arc::new(BoxSpline::new(set.clone()));
    let model = SplineSpaceModel::build(spline, h, f.as_ref(), padding)?;
    let c = model.project(f.as_ref())?;
    let domain = model.support_domain(f.as_ref())?;
    let e = model.error_norm(f.as_ref(), &c, p, &domain)?;
    let ortho = model.residual_orthogonality(f.as_ref(), &c);
    let fnorm = model.l2_norm(f.as_ref());

    let mut out = String::new();
    let cols: Vec<String> = (1..=d).map(|j| format!("alpha{j}")).collect();
    writeln!(out, "{},coefficient", cols.join(",")).unwrap();
    for (alpha, v) in model.window.points().zip(&c.values) {
        let a: Vec<String> = alpha.iter().map(|x| x.to_string()).collect();
        writeln!(out, "{},{}", a.join(","), fmt_f64(*v)).unwrap();
    }
    let mut summary = Vec::new();
    kv(&mut summary, "function", f.describe());
    kv(&mut summary, "h", fmt_f64(h));
    kv(&mut summary, "unknowns", model.window.len());
    kv(&mut summary, "bandwidth", model.bandwidth());
    kv(&mut summary, "relative_residual", fmt_f64(c.relative_residual));
    kv(&mut summary, "orthogonality_residual", fmt_f64(ortho));
    kv(&mut summary, "f_l2_norm", fmt_f64(fnorm));
    kv(&mut summary, "p", fmt_f64(p));
    kv(&mut summary, "error_norm", fmt_f64(e.norm));
    kv(&mut summary, "error_pth_power", fmt_f64(e.pth_power));
    Ok(CommandOutput {
        body: out,
        summary,
        success: c.relative_residual <= 1e-12,
    })
}

/// The right-side constant of the asymptotic formula.
pub fn cmd_constant(cfg: &ExperimentConfig) -> Result<CommandOutput> {
    let set = cfg.direction_set()?;
    let f = cfg.test_function(set.dim())?;
    let p = cfg.p()?;
    let outer = cfg.outer_rule();
    let generic = rhs_constant(f.as_ref(), &set, p, outer)?;
    let norms = directional_norms_pth(f.as_ref(), &set, p, outer)?;
    let mut out = String::new();
    writeln!(out, "function = {}", f.describe()).unwrap();
    writeln!(out, "p = {}", fmt_f64(p)).unwrap();
    for (i, n) in norms.iter().enumerate() {
        writeln!(out, "class[{i}].directional_norm_pth = {}", fmt_f64(*n)).unwrap();
    }
    writeln!(out, "rhs_constant = {}", fmt_f64(generic)).unwrap();
    writeln!(out, "rhs_root = {}", fmt_f64(generic.powf(1.0 / p))).unwrap();
    let mut summary = vec![("rhs_constant".to_string(), fmt_f64(generic))];
    if p == 2.0 {
        let closed = rhs_constant_p2(f.as_ref(), &set, outer)?;
        writeln!(out, "rhs_constant_p2 = {}", fmt_f64(closed)).unwrap();
        kv(&mut summary, "rhs_constant_p2", fmt_f64(closed));
        kv(&mut summary, "route_rel_diff", fmt_f64((generic - closed).abs() / closed.abs().max(f64::MIN_POSITIVE)));
    }
    Ok(CommandOutput {
        body: out,
        summary,
        success: true,
    })
}

/// The convergence sweep; body columns `h, lhs_ratio, fitted_rate, rhs, rel_err`.
pub fn cmd_converge(cfg: &ExperimentConfig) -> Result<CommandOutput> {
    let set = cfg.direction_set()?;
    let d = set.dim();
    let f = cfg.test_function(d)?;
    let p = cfg.p()?;
    let ladder = cfg.ladder(d)?;
    let outer = cfg.outer_rule();
    let rhs = if p == 2.0 {
        rhs_constant_p2(f.as_ref(), &set, outer)?
    } else {
        rhs_constant(f.as_ref(), &set, p, outer)?
    };
    let options = SweepOptions {
        padding: cfg.padding,
        outer,
    };
    let report = lhs_sweep(f.as_ref(), &set, p, &ladder, rhs, &options)?;
    let mut out = String::from("h,lhs_ratio,fitted_rate,rhs,rel_err\n");
    for (i, pt) in report.points.iter().enumerate() {
        let lo = i.saturating_sub(2);
        let rate = if i == 0 {
            f64::NAN
        } else {
            let lx: Vec<f64> = report.points[lo..=i].iter().map(|q| q.h.ln()).collect();
            let ly: Vec<f64> = report.points[lo..=i].iter().map(|q| q.norm.ln()).collect();
            crate::asymptotics::least_squares_slope(&lx, &ly)
        };
        writeln!(
            out,
            "{},{},{},{},{}",
            fmt_f64(pt.h),
            fmt_f64(pt.ratio),
            fmt_f64(rate),
            fmt_f64(rhs),
            fmt_f64((pt.ratio - rhs).abs() / rhs.abs())
        )
        .unwrap();
    }
    let expected = report.order as f64;
    let rate_ok = (report.fitted_rate - expected).abs() <= cfg.tolerances.rate;
    let err_ok = report.relative_error <= cfg.tolerances.rel_err;
    let mut summary = Vec::new();
    kv(&mut summary, "function", f.describe());
    kv(&mut summary, "p", fmt_f64(p));
    kv(&mut summary, "expected_rate", report.order);
    kv(&mut summary, "fitted_rate", fmt_f64(report.fitted_rate));
    kv(&mut summary, "ratio_order", fmt_f64(report.ratio_order));
    kv(&mut summary, "extrapolated", fmt_f64(report.extrapolated));
    kv(&mut summary, "rhs", fmt_f64(rhs));
    kv(&mut summary, "rel_err", fmt_f64(report.relative_error));
    kv(&mut summary, "monotone_tail", report.monotone_tail());
    kv(&mut summary, "status", if rate_ok && err_ok { "pass" } else { "fail" });
    Ok(CommandOutput {
        body: out,
        summary,
        success: rate_ok && err_ok,
    })
}

/// Runs every invariant; body columns `check,status,measured,threshold`.
pub fn cmd_check(cfg: &ExperimentConfig) -> Result<CommandOutput> {
    let results = checks::run_all(cfg);
    let mut out = String::from("check,status,measured,threshold\n");
    let mut failed = 0;
    for r in &results {
        if !r.passed {
            failed += 1;
        }
        writeln!(
            out,
            "{},{},{},{}",
            r.name,
            if r.passed { "pass" } else { "fail" },
            fmt_f64(r.measured),
            fmt_f64(r.threshold)
        )
        .unwrap();
    }
    let mut summary = Vec::new();
    kv(&mut summary, "checks", results.len());
    kv(&mut summary, "failed", failed);
    Ok(CommandOutput {
        body: out,
        summary,
        success: failed == 0,
    })
}

/// Dispatches by command name.
pub fn run_command(name: &str, cfg: &ExperimentConfig) -> Result<CommandOutput> {
    match name {
        "analyze" => cmd_analyze(cfg),
        "lbeta" => cmd_lbeta(cfg),
        "project" => cmd_project(cfg),
        "constant" => cmd_constant(cfg),
        "converge" => cmd_converge(cfg),
        "check" => cmd_check(cfg),
        other => Err(Error::Config(format!("unknown command {other:?}"))),
    }
}

/// Direction set used when a command has nothing configured.
pub fn default_set() -> DirectionSet {
    presets::preset("courant").expect("courant preset is valid")
}
