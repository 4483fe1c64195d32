//! The invariant suite behind `boxproj check`.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::asymptotics::{
    bernoulli_spline_norm_pth, bernoulli_spline_norm_pth_direct, dyadic_ladder, lhs_sweep,
    norm_equivalence_constants, rhs_constant, rhs_constant_p2, rhs_separated, sweep_point, OuterRule,
    PointwiseIdentity, SweepOptions,
};
use crate::bernoulli::{
    bernoulli_l2_norm_sq, bernoulli_periodic, bernoulli_splines, l_beta_expansion, l_beta_series,
};
use crate::box_spline::{dbeta_bhat, integral_identity_check, lattice_box, BoxSpline, DerivativeRoute};
use crate::error::{Error, Result};
use crate::functions::{derivative_self_test, Dilated, FnFunction, Function, Separable, TestFunction};
use crate::lattice::{DirectionSet, LatticeVector, MultiIndex};
use crate::projection::{
    gram_kernel, gram_spectrum_check, gram_value_doubled, monomial_projection_error, monomial_projection_errors, NodeTable,
    SplineSpaceModel, QUADRATURE_ORDER,
};
use crate::quadrature::{gauss_legendre, CellRule};

use super::config::ExperimentConfig;
use super::presets::preset;

/// One invariant: the measured quantity must not exceed the threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub measured: f64,
    pub threshold: f64,
    pub passed: bool,
}

impl CheckResult {
    fn at_most(name: &str, measured: f64, threshold: f64) -> Self {
        Self {
            name: name.into(),
            measured,
            threshold,
            passed: measured <= threshold,
        }
    }

    fn boolean(name: &str, ok: bool) -> Self {
        Self {
            name: name.into(),
            measured: if ok { 0.0 } else { 1.0 },
            threshold: 0.0,
            passed: ok,
        }
    }

    fn failed(name: &str, err: &Error) -> Self {
        eprintln!("{name}: {err}");
        Self {
            name: name.into(),
            measured: f64::NAN,
            threshold: f64::NAN,
            passed: false,
        }
    }
}

/// Presets exercised by the suite.
pub const CHECK_PRESETS: &[&str] = &["haar", "bspline(2)", "bspline(3)", "tensor(1,1)", "tensor(2,2)", "courant", "courant2"];

fn presets() -> Result<Vec<(&'static str, DirectionSet)>> {
    CHECK_PRESETS.iter().map(|n| preset(n).map(|s| (*n, s))).collect()
}

/// Largest `|D^β B̂_V(α)|` discrepancy between the two routes, `|β| ≤ ϱ+1`, `0 < |α|_∞ ≤ radius`.
pub fn derivative_route_gap(set: &DirectionSet, radius: i64) -> Result<f64> {
    let d = set.dim();
    let mut worst: f64 = 0.0;
    let betas: Vec<MultiIndex> = (0..=set.rho() as u32 + 1).flat_map(|k| MultiIndex::all_of_order(d, k)).collect();
    for alpha in lattice_box(&vec![-radius; d], &vec![radius; d]) {
        let alpha = LatticeVector(alpha);
        if alpha.is_zero() {
            continue;
        }
        for beta in &betas {
            let a = dbeta_bhat(set, beta, &alpha, DerivativeRoute::Leibniz)?;
            let b = dbeta_bhat(set, beta, &alpha, DerivativeRoute::Factored)?;
            worst = worst.max((a - b).norm());
        }
    }
    Ok(worst)
}

/// Largest gap between the quadrature Gram kernel and `B_{V∪(−V)}` at lattice points.
pub fn gram_route_gap(set: &DirectionSet) -> Result<f64> {
    let table = NodeTable::new(&BoxSpline::new(set.clone()), QUADRATURE_ORDER)?;
    let kernel = gram_kernel(&table);
    let (lo, hi) = set.zonotope_bounds();
    let span: Vec<i64> = lo.iter().zip(&hi).map(|(l, h)| h - l).collect();
    let neg: Vec<i64> = span.iter().map(|s| -s).collect();
    let mut worst: f64 = 0.0;
    for g in lattice_box(&neg, &span) {
        let a = kernel.get(&g).copied().unwrap_or(0.0);
        let b = gram_value_doubled(set, &LatticeVector(g))?;
        worst = worst.max((a - b).abs());
    }
    Ok(worst)
}

/// Largest `|closed form − lattice series|` of `L_β` over the sample grid, all `|β| = ϱ+1`.
pub fn l_beta_route_gap(set: &DirectionSet, xs: &[Vec<f64>], radius: usize) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for beta in MultiIndex::all_of_order(set.dim(), set.rho() as u32 + 1) {
        let e = l_beta_expansion(set, &beta)?;
        let s = l_beta_series(set, &beta, xs, radius, DerivativeRoute::Factored)?;
        for (x, v) in xs.iter().zip(&s) {
            worst = worst.max((e.evaluate(x) - v.re).abs()).max(v.im.abs());
        }
    }
    Ok(worst)
}

/// `max |∫₀¹|B^k|² − closed form|` over quadrature and the truncated Parseval sum.
pub fn parseval_gap(k: u32) -> f64 {
    let exact = match k {
        1 => 1.0 / 12.0,
        2 => 1.0 / 720.0,
        _ => bernoulli_l2_norm_sq(k),
    };
    let (x, w) = gauss_legendre(20);
    let quad: f64 = x.iter().zip(&w).map(|(t, wi)| wi * bernoulli_periodic(k, *t).powi(2)).sum();
    // Σ_{n≠0} (2πn)^{−2k}, summed small-to-large with the tail by Euler–Maclaurin
    let terms = 100_000usize;
    let mut series = 0.0;
    for n in (1..=terms).rev() {
        series += 2.0 / (2.0 * PI * n as f64).powi(2 * k as i32);
    }
    let m = terms as f64 + 0.5;
    series += 2.0 / ((2.0 * PI).powi(2 * k as i32) * (2 * k - 1) as f64 * m.powi(2 * k as i32 - 1));
    [bernoulli_l2_norm_sq(k), quad, series]
        .iter()
        .map(|v| (v - exact).abs())
        .fold(0.0, f64::max)
}

/// Largest pairwise unit-cell inner product of distinct Bernoulli splines.
pub fn bernoulli_orthogonality_gap(set: &DirectionSet) -> Result<f64> {
    let terms = bernoulli_splines(set)?;
    let normals: Vec<LatticeVector> = terms.iter().map(|t| t.class.alpha.clone()).collect();
    let rule = CellRule::split(set.dim(), &normals, 12)?;
    let mut worst: f64 = 0.0;
    for i in 0..terms.len() {
        for j in i + 1..terms.len() {
            worst = worst.max(rule.integrate(|x| terms[i].evaluate(x) * terms[j].evaluate(x)).abs());
        }
    }
    Ok(worst)
}

/// Largest gap between direct and factored `‖B(V,U)‖_p^p` for `p ∈ {1, 2, 3}`.
pub fn norm_factorization_gap(set: &DirectionSet) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for term in bernoulli_splines(set)? {
        for p in [1.0, 2.0, 3.0] {
            let direct = bernoulli_spline_norm_pth_direct(set, &term, p)?;
            worst = worst.max((direct - bernoulli_spline_norm_pth(&term, p)).abs());
        }
    }
    Ok(worst)
}

/// Probe points near the origin, off every cut line.
pub fn interior_probes(d: usize) -> Vec<Vec<f64>> {
    let offsets = [0.0, 0.37, 0.71];
    lattice_box(&vec![-1; d], &vec![1; d])
        .into_iter()
        .flat_map(|cell| {
            offsets.iter().map(move |o| {
                cell.iter()
                    .enumerate()
                    .map(|(j, &c)| c as f64 + 0.13 + o + 0.05 * j as f64)
                    .collect()
            })
        })
        .collect()
}

/// Largest reproduction error of the monomials `|β| ≤ ϱ_V` at interior probes.
pub fn polynomial_reproduction_gap(set: &DirectionSet, radius: i64) -> Result<f64> {
    let probes = interior_probes(set.dim());
    let betas: Vec<MultiIndex> = (0..=set.rho() as u32)
        .flat_map(|k| MultiIndex::all_of_order(set.dim(), k))
        .collect();
    let errors = monomial_projection_errors(set, &betas, radius, &probes)?;
    Ok(errors.iter().flatten().fold(0.0, |m, v| m.max(v.abs())))
}

/// Largest `|P(x) − x − (1/2 − {x})|` for the Haar projection of `f(x) = x`.
pub fn haar_oracle_gap() -> Result<f64> {
    let haar = preset("haar")?;
    let probes: Vec<Vec<f64>> = (0..40).map(|j| vec![-2.0 + 0.1 * j as f64 + 0.0123]).collect();
    let e = monomial_projection_error(&haar, &MultiIndex::new([1]), 12, &probes)?;
    Ok(e.iter()
        .zip(&probes)
        .map(|(v, x)| (v - bernoulli_periodic(1, x[0])).abs())
        .fold(0.0, f64::max))
}

/// Residual orthogonality relative to `‖f‖₂`, optionally after perturbing `a(±e₁)`.
pub fn orthogonality_ratio(set: &DirectionSet, h: f64, perturb: Option<f64>) -> Result<f64> {
    let f = Separable::gaussian(set.dim(), 1.0);
    let spline = Arc::new(BoxSpline::new(set.clone()));
    let model = SplineSpaceModel::build(spline, h, &f, 3)?;
    let mut e1 = vec![0i64; set.dim()];
    e1[0] = 1;
    let c = model.project_with(&f, perturb.map(|delta| (e1.as_slice(), delta)))?;
    Ok(model.residual_orthogonality(&f, &c) / model.l2_norm(&f))
}

/// Relative coefficient change when `P_h f` is projected again.
pub fn idempotence_gap(set: &DirectionSet, h: f64) -> Result<f64> {
    let f = Separable::gaussian(set.dim(), 1.0);
    let spline = Arc::new(BoxSpline::new(set.clone()));
    let model = SplineSpaceModel::build(spline, h, &f, 3)?;
    let c = model.project(&f)?;
    let (m2, c2) = (model.clone(), c.clone());
    let ph = FnFunction::new(set.dim(), move |x: &[f64]| m2.evaluate(&c2, x), f.support(), "P_h f");
    let again = model.project(&ph)?;
    let scale = c.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    Ok(again.max_difference(&c) / scale)
}

/// `max |c(f, h) − c(f(h·), 1)|` on the shared window.
pub fn scaling_gap(set: &DirectionSet, h: f64) -> Result<f64> {
    let f: Arc<dyn TestFunction> = Arc::new(Separable::gaussian(set.dim(), 1.0));
    let spline = Arc::new(BoxSpline::new(set.clone()));
    let fine = SplineSpaceModel::build(spline.clone(), h, f.as_ref(), 4)?;
    let unit_f = Dilated::new(f.clone(), 1.0 / h);
    let unit = SplineSpaceModel::build(spline, 1.0, &unit_f, 4)?;
    if fine.window != unit.window {
        return Err(Error::InvalidArgument("scaled windows differ".into()));
    }
    Ok(fine.project(f.as_ref())?.max_difference(&unit.project(&unit_f)?))
}

/// Largest `|∫ f B_V − ∫_{[0,1]^n} f(Vu) du|` over three test functions.
pub fn integral_identity_gap(set: &DirectionSet) -> Result<f64> {
    let spline = BoxSpline::new(set.clone());
    let d = set.dim();
    let functions: Vec<Box<dyn Function>> = vec![
        Box::new(Separable::gaussian(d, 1.0)),
        Box::new(Separable::bump(d, 4.0)),
        Box::new(FnFunction::new(
            d,
            |x: &[f64]| (x.iter().sum::<f64>()).cos() * (1.0 + x[0] * x[0]),
            None,
            "trig",
        )),
    ];
    let mut worst: f64 = 0.0;
    for f in &functions {
        let (l, r) = integral_identity_check(&spline, f.as_ref())?;
        worst = worst.max((l - r).abs());
    }
    Ok(worst)
}

/// Relative shift of the error norm when the padding doubles.
pub fn padding_stability(set: &DirectionSet, h: f64) -> Result<f64> {
    let f = Separable::gaussian(set.dim(), 1.0);
    let spline = Arc::new(BoxSpline::new(set.clone()));
    let base = crate::projection::default_padding(set);
    let a = sweep_point(&spline, &f, 2.0, h, base)?;
    let b = sweep_point(&spline, &f, 2.0, h, 2 * base)?;
    Ok((a.norm - b.norm).abs() / b.norm)
}

fn record(out: &mut Vec<CheckResult>, name: &str, threshold: f64, value: Result<f64>) {
    out.push(match value {
        Ok(v) => CheckResult::at_most(name, v, threshold),
        Err(e) => CheckResult::failed(name, &e),
    });
}

fn flag(out: &mut Vec<CheckResult>, name: &str, ok: Result<bool>) {
    out.push(match ok {
        Ok(b) => CheckResult::boolean(name, b),
        Err(e) => CheckResult::failed(name, &e),
    });
}

/// Runs the whole suite.
pub fn run_all(cfg: &ExperimentConfig) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let sets = match presets() {
        Ok(s) => s,
        Err(e) => return vec![CheckResult::failed("presets", &e)],
    };
    let get = |name: &str| sets.iter().find(|(n, _)| *n == name).map(|(_, s)| s.clone()).unwrap();
    let courant = get("courant");

    flag(&mut out, "courant_structure", Ok(courant.rho() == 1 && courant.is_unimodular() && courant.lambda_set().map(|l| l.len()).unwrap_or(0) == 3));
    flag(&mut out, "courant2_rho", Ok(get("courant2").rho() == 3));
    flag(
        &mut out,
        "non_unimodular_rejected",
        preset("zp").map(|zp| matches!(l_beta_expansion(&zp, &MultiIndex::new([1, 1])), Err(Error::NotUnimodular { .. }))),
    );

    record(&mut out, "parseval_b1", 1e-10, Ok(parseval_gap(1)));
    record(&mut out, "parseval_b2", 1e-10, Ok(parseval_gap(2)));

    for (name, set) in &sets {
        record(&mut out, &format!("dbeta_routes[{name}]"), 1e-12, derivative_route_gap(set, 3));
    }
    for (name, set) in &sets {
        record(&mut out, &format!("gram_routes[{name}]"), 1e-8, gram_route_gap(set));
    }
    for (name, set) in &sets {
        record(
            &mut out,
            &format!("gram_spd[{name}]"),
            1e-8,
            gram_spectrum_check(set, if set.dim() == 1 { 12 } else { 6 }, 64).map(|(ev, sym)| (sym - ev).max(0.0)),
        );
    }

    record(&mut out, "haar_oracle", 1e-8, haar_oracle_gap());
    record(
        &mut out,
        "l_beta_routes[courant]",
        1e-6,
        l_beta_route_gap(&courant, &super::sample_grid(2, 17), 2000),
    );
    record(
        &mut out,
        "l_beta_routes[bspline(2)]",
        1e-6,
        l_beta_route_gap(&get("bspline(2)"), &super::sample_grid(1, 17), 2000),
    );

    record(&mut out, "bernoulli_orthogonality[courant]", 1e-10, bernoulli_orthogonality_gap(&courant));
    record(&mut out, "norm_factorization[courant]", 1e-8, norm_factorization_gap(&courant));

    let perturb = cfg.check.perturb_gram;
    record(&mut out, "residual_orthogonality[courant]", 1e-10, orthogonality_ratio(&courant, 0.5, perturb));
    record(&mut out, "idempotence[courant]", 1e-10, idempotence_gap(&courant, 0.5));
    record(&mut out, "scaling_law[bspline(2)]", 1e-10, scaling_gap(&get("bspline(2)"), 0.125));
    record(&mut out, "padding_stability[bspline(2)]", 1e-8, padding_stability(&get("bspline(2)"), 0.125));

    for name in ["bspline(2)", "bspline(3)", "tensor(1,1)", "courant"] {
        record(
            &mut out,
            &format!("polynomial_reproduction[{name}]"),
            1e-8,
            polynomial_reproduction_gap(&get(name), 40),
        );
    }

    let g1 = Separable::gaussian(1, 1.0);
    let g2 = Separable::gaussian(2, 1.0);
    for (name, set) in &sets {
        let f: &dyn TestFunction = if set.dim() == 1 { &g1 } else { &g2 };
        record(
            &mut out,
            &format!("pointwise_identity[{name}]"),
            1e-9,
            PointwiseIdentity::new(set).and_then(|id| id.max_deviation(f, 100, 2024)),
        );
    }
    let outer = OuterRule { cells: 16, order: 8 };
    for (name, set) in &sets {
        let f: &dyn TestFunction = if set.dim() == 1 { &g1 } else { &g2 };
        record(
            &mut out,
            &format!("rhs_routes_p2[{name}]"),
            1e-6,
            rhs_constant(f, set, 2.0, outer)
                .and_then(|a| rhs_constant_p2(f, set, outer).map(|b| (a - b).abs() / b)),
        );
    }
    for p in [1.0, 3.0] {
        record(
            &mut out,
            &format!("norm_equivalence_p{p}[courant]"),
            0.0,
            norm_equivalence_constants(&courant, p, 4).and_then(|(c1, c2)| {
                let rhs = rhs_constant(&g2, &courant, p, outer)?;
                let sep = rhs_separated(&g2, &courant, p, outer)?;
                Ok((c1 * sep - rhs).max(rhs - c2 * sep).max(0.0))
            }),
        );
    }

    for (name, set) in &sets {
        if set.len() <= 4 {
            record(&mut out, &format!("integral_identity[{name}]"), 1e-6, integral_identity_gap(set));
        }
    }
    let probes: Vec<Vec<f64>> = vec![vec![0.1, -0.3], vec![0.45, 0.2], vec![-0.8, 0.6]];
    record(
        &mut out,
        "derivative_self_test[gaussian]",
        1e-7,
        Ok(derivative_self_test(&g2, &probes, 3)),
    );
    let bump = Separable::bump(2, 1.5);
    record(
        &mut out,
        "derivative_self_test[bump]",
        1e-7,
        Ok(derivative_self_test(&bump, &probes, 3)),
    );

    let hat = get("bspline(2)");
    let sweep = rhs_constant_p2(&g1, &hat, OuterRule::default()).and_then(|rhs| {
        lhs_sweep(&g1, &hat, 2.0, &dyadic_ladder(2, 6), rhs, &SweepOptions::default())
    });
    match sweep {
        Ok(r) => {
            out.push(CheckResult::at_most("convergence_rate[bspline(2)]", (r.fitted_rate - 2.0).abs(), cfg.tolerances.rate));
            out.push(CheckResult::at_most("convergence_limit[bspline(2)]", r.relative_error, cfg.tolerances.rel_err));
            out.push(CheckResult::boolean("convergence_monotone[bspline(2)]", r.monotone_tail()));
        }
        Err(e) => out.push(CheckResult::failed("convergence[bspline(2)]", &e)),
    }
    out
}
