//! Both sides of the asymptotic error formula
//!
//! `lim_{h→0} ‖f − P_h f‖_p^p / h^{p(ϱ+1)} = ∫_{R^d} ∫_{[0,1]^d} |Σ_{U∈Λ} D_U f(t) B(V,U)(x)|^p dx dt`.
//!
//! The right side is computed by an outer tensor rule over `f`'s effective
//! support and an inner cut-adapted rule on the unit cell. The left side is a
//! sweep over a ladder of scales using [`crate::projection`].

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand::rngs::StdRng;
use rayon::prelude::*;

use crate::bernoulli::{
    bernoulli_l2_norm_sq, bernoulli_lp_norm_p, bernoulli_splines, l_beta_expansion, BernoulliSplineTerm,
};
use crate::box_spline::{lattice_box, BoxSpline};
use crate::error::{Error, Result};
use crate::functions::TestFunction;
use crate::lattice::{expand_linear_product, DirectionSet, HyperplaneClass, MultiIndex};
use crate::projection::{default_padding, SplineSpaceModel};
use crate::quadrature::{tensor_rule, CellRule, Node};

/// Outer (over `t`) quadrature: cells per axis and Gauss points per cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OuterRule {
    pub cells: usize,
    pub order: usize,
}

impl Default for OuterRule {
    fn default() -> Self {
        Self { cells: 24, order: 10 }
    }
}

/// Gauss points per axis on each piece of the unit cell (inner `x` integral).
pub const INNER_ORDER: usize = 16;

/// How `D_U f` is assembled from partial derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DirectionalRoute {
    /// `Σ_{|β|=#U} C(β,U) D^β f / β!`
    Expanded,
    /// `Σ_{i_1…i_k} v_1[i_1]⋯v_k[i_k] ∂_{i_1}⋯∂_{i_k} f`
    Nested,
}

/// `D_U f(t) = ∏_{v∈U} D_v f(t)`.
pub fn directional_derivative(
    f: &dyn TestFunction,
    set: &DirectionSet,
    class: &HyperplaneClass,
    t: &[f64],
    route: DirectionalRoute,
) -> f64 {
    let vectors = class.member_vectors(set);
    let d = set.dim();
    match route {
        DirectionalRoute::Expanded => expand_linear_product(&vectors, d)
            .iter()
            .map(|(beta, &c)| c as f64 * f.derivative(beta, t))
            .sum(),
        DirectionalRoute::Nested => {
            let k = vectors.len();
            let mut sum = 0.0;
            for flat in 0..d.pow(k as u32) {
                let mut idx = flat;
                let mut weight = 1.0;
                let mut beta = vec![0u32; d];
                for v in &vectors {
                    let i = idx % d;
                    idx /= d;
                    weight *= v.coords()[i] as f64;
                    beta[i] += 1;
                }
                if weight != 0.0 {
                    sum += weight * f.derivative(&MultiIndex(beta), t);
                }
            }
            sum
        }
    }
}

/// `D_U` for every class, in the form `Σ_β coeff·D^β`.
struct DirectionalOperators {
    ops: Vec<Vec<(MultiIndex, f64)>>,
}

impl DirectionalOperators {
    fn new(set: &DirectionSet, classes: &[HyperplaneClass]) -> Self {
        let ops = classes
            .iter()
            .map(|c| {
                expand_linear_product(&c.member_vectors(set), set.dim())
                    .into_iter()
                    .map(|(b, c)| (b, c as f64))
                    .collect()
            })
            .collect();
        Self { ops }
    }

    fn apply(&self, f: &dyn TestFunction, t: &[f64]) -> Vec<f64> {
        self.ops
            .iter()
            .map(|op| op.iter().map(|(b, c)| c * f.derivative(b, t)).sum())
            .collect()
    }
}

fn outer_nodes(f: &dyn TestFunction, outer: OuterRule) -> Result<Vec<Node>> {
    let (lo, hi) = f
        .support()
        .ok_or_else(|| Error::InvalidArgument(format!("{} has no bounded effective support", f.describe())))?;
    Ok(tensor_rule(&lo, &hi, outer.cells, outer.order))
}

fn unimodular_terms(set: &DirectionSet) -> Result<(Vec<HyperplaneClass>, Vec<BernoulliSplineTerm>)> {
    set.require_unimodular()?;
    let classes = set.lambda_set()?;
    let terms = bernoulli_splines(set)?;
    Ok((classes, terms))
}

/// Unit-cell rule split along `α_U·x ∈ Z` for every class, plus optional extra offsets.
fn inner_rule(set: &DirectionSet, terms: &[BernoulliSplineTerm], extra: &[f64]) -> Result<CellRule> {
    let mut offsets = vec![0.0];
    offsets.extend_from_slice(extra);
    let cuts: Vec<_> = terms.iter().map(|t| (t.class.alpha.clone(), offsets.clone())).collect();
    CellRule::split_with_offsets(set.dim(), &cuts, INNER_ORDER)
}

/// `∫_{R^d} ∫_{[0,1]^d} |Σ_U D_U f(t) B(V,U)(x)|^p dx dt` by direct quadrature.
pub fn rhs_constant(f: &dyn TestFunction, set: &DirectionSet, p: f64, outer: OuterRule) -> Result<f64> {
    check_p(p)?;
    let (classes, terms) = unimodular_terms(set)?;
    let rule = inner_rule(set, &terms, &[])?;
    let values: Vec<Vec<f64>> = rule
        .nodes
        .iter()
        .map(|n| terms.iter().map(|t| t.evaluate(&n.point)).collect())
        .collect();
    let ops = DirectionalOperators::new(set, &classes);
    let nodes = outer_nodes(f, outer)?;
    let parts: Vec<f64> = nodes
        .par_iter()
        .map(|node| {
            let du = ops.apply(f, &node.point);
            if du.iter().all(|&v| v == 0.0) {
                return 0.0;
            }
            let inner: f64 = rule
                .nodes
                .iter()
                .zip(&values)
                .map(|(n, b)| {
                    let s: f64 = du.iter().zip(b).map(|(a, b)| a * b).sum();
                    n.weight * s.abs().powf(p)
                })
                .sum();
            node.weight * inner
        })
        .collect();
    Ok(parts.iter().sum())
}

/// `‖g‖_p^p` over the outer rule.
fn outer_lp_pth(nodes: &[Node], p: f64, g: impl Fn(&[f64]) -> Vec<f64> + Sync, count: usize) -> Vec<f64> {
    let parts: Vec<Vec<f64>> = nodes
        .par_iter()
        .map(|n| g(&n.point).into_iter().map(|v| n.weight * v.abs().powf(p)).collect())
        .collect();
    let mut out = vec![0.0; count];
    for part in parts {
        for (o, v) in out.iter_mut().zip(part) {
            *o += v;
        }
    }
    out
}

/// `‖D_U f‖_p^p` for every class in `Λ`.
pub fn directional_norms_pth(f: &dyn TestFunction, set: &DirectionSet, p: f64, outer: OuterRule) -> Result<Vec<f64>> {
    check_p(p)?;
    let (classes, _) = unimodular_terms(set)?;
    let ops = DirectionalOperators::new(set, &classes);
    let nodes = outer_nodes(f, outer)?;
    Ok(outer_lp_pth(&nodes, p, |t| ops.apply(f, t), classes.len()))
}

/// The `p = 2` right side `Σ_U ‖D_U f‖₂² ∫₀¹|B^{ϱ+1}|² ∏_{v∈U}(α_U·v)^{−2}`.
pub fn rhs_constant_p2(f: &dyn TestFunction, set: &DirectionSet, outer: OuterRule) -> Result<f64> {
    let (_, terms) = unimodular_terms(set)?;
    let norms = directional_norms_pth(f, set, 2.0, outer)?;
    let k = set.rho() as u32 + 1;
    let factor = bernoulli_l2_norm_sq(k);
    Ok(terms
        .iter()
        .zip(&norms)
        .map(|(t, n)| n * factor * t.scale_f64().powi(2))
        .sum())
}

/// `‖B(V,U)‖_p^p` on the unit cell via the one-dimensional factorization.
pub fn bernoulli_spline_norm_pth(term: &BernoulliSplineTerm, p: f64) -> f64 {
    bernoulli_lp_norm_p(term.degree, p) * term.scale_f64().abs().powf(p)
}

/// `‖B(V,U)‖_p^p` on the unit cell by direct quadrature, split at the zeros of `B^k(α_U·x)`.
pub fn bernoulli_spline_norm_pth_direct(set: &DirectionSet, term: &BernoulliSplineTerm, p: f64) -> Result<f64> {
    let zeros = crate::bernoulli::bernoulli_zeros(term.degree);
    let rule = inner_rule(set, std::slice::from_ref(term), &zeros)?;
    Ok(rule.integrate(|x| term.evaluate(x).abs().powf(p)))
}

/// `Σ_U ‖D_U f‖_p^p ‖B(V,U)‖_p^p`, the separated comparison quantity.
pub fn rhs_separated(f: &dyn TestFunction, set: &DirectionSet, p: f64, outer: OuterRule) -> Result<f64> {
    let (_, terms) = unimodular_terms(set)?;
    let norms = directional_norms_pth(f, set, p, outer)?;
    Ok(terms
        .iter()
        .zip(&norms)
        .map(|(t, n)| n * bernoulli_spline_norm_pth(t, p))
        .sum())
}

/// Sampled bounds `c₁ ≤ ‖Σ c_U B_U‖_p^p / Σ|c_U|^p ‖B_U‖_p^p ≤ c₂` over the
/// nonzero integer vectors `c` with `|c|_∞ ≤ radius`.
pub fn norm_equivalence_constants(set: &DirectionSet, p: f64, radius: i64) -> Result<(f64, f64)> {
    check_p(p)?;
    let (_, terms) = unimodular_terms(set)?;
    let rule = inner_rule(set, &terms, &[])?;
    let values: Vec<Vec<f64>> = rule
        .nodes
        .iter()
        .map(|n| terms.iter().map(|t| t.evaluate(&n.point)).collect())
        .collect();
    let norms: Vec<f64> = terms.iter().map(|t| bernoulli_spline_norm_pth(t, p)).collect();
    let m = terms.len();
    let coeffs = lattice_box(&vec![-radius; m], &vec![radius; m]);
    let ratios: Vec<f64> = coeffs
        .par_iter()
        .filter(|c| c.iter().any(|&v| v != 0))
        .map(|c| {
            let num: f64 = rule
                .nodes
                .iter()
                .zip(&values)
                .map(|(n, b)| {
                    let s: f64 = c.iter().zip(b).map(|(&ci, bi)| ci as f64 * bi).sum();
                    n.weight * s.abs().powf(p)
                })
                .sum();
            let den: f64 = c.iter().zip(&norms).map(|(&ci, n)| (ci as f64).abs().powf(p) * n).sum();
            num / den
        })
        .collect();
    let lo = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = ratios.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    Ok((lo, hi))
}

/// Both sides of the pointwise identity
/// `Σ_{|β|=ϱ+1} L_β(x) D^β f(t)/β! = Σ_{U∈Λ} D_U f(t) B(V,U)(x)`.
pub struct PointwiseIdentity {
    expansions: Vec<(MultiIndex, crate::bernoulli::ErrorFunctionExpansion)>,
    ops: DirectionalOperators,
    terms: Vec<BernoulliSplineTerm>,
}

impl PointwiseIdentity {
    pub fn new(set: &DirectionSet) -> Result<Self> {
        let (classes, terms) = unimodular_terms(set)?;
        let k = set.rho() as u32 + 1;
        let expansions = MultiIndex::all_of_order(set.dim(), k)
            .into_iter()
            .map(|b| l_beta_expansion(set, &b).map(|e| (b, e)))
            .collect::<Result<_>>()?;
        Ok(Self {
            expansions,
            ops: DirectionalOperators::new(set, &classes),
            terms,
        })
    }

    pub fn sides(&self, f: &dyn TestFunction, t: &[f64], x: &[f64]) -> (f64, f64) {
        let lhs = self
            .expansions
            .iter()
            .map(|(b, e)| e.evaluate(x) * f.derivative(b, t) / b.factorial() as f64)
            .sum();
        let du = self.ops.apply(f, t);
        let rhs = du.iter().zip(&self.terms).map(|(a, term)| a * term.evaluate(x)).sum();
        (lhs, rhs)
    }

    /// Largest `|lhs − rhs|` over `count` seeded random pairs, `t` in `f`'s
    /// support and `x` in the unit cell off the cut lines.
    pub fn max_deviation(&self, f: &dyn TestFunction, count: usize, seed: u64) -> Result<f64> {
        let (lo, hi) = f
            .support()
            .ok_or_else(|| Error::InvalidArgument(format!("{} has no bounded effective support", f.describe())))?;
        let mut rng = StdRng::seed_from_u64(seed);
        let mut worst: f64 = 0.0;
        let mut done = 0;
        while done < count {
            let t: Vec<f64> = lo.iter().zip(&hi).map(|(a, b)| rng.gen_range(*a..*b)).collect();
            let x: Vec<f64> = (0..lo.len()).map(|_| rng.gen_range(0.0..1.0)).collect();
            let on_cut = self.terms.iter().any(|term| {
                let s = term.class.alpha.dot_f64(&x);
                (s - s.round()).abs() < 1e-9
            });
            if on_cut {
                continue;
            }
            let (l, r) = self.sides(f, &t, &x);
            worst = worst.max((l - r).abs());
            done += 1;
        }
        Ok(worst)
    }
}

/// One scale of a convergence sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub h: f64,
    pub norm: f64,
    pub pth_power: f64,
    /// `‖f − P_h f‖_p^p / h^{p(ϱ+1)}`
    pub ratio: f64,
    pub unknowns: usize,
}

/// The left side of the asymptotic formula along a ladder of scales, with its
/// comparison against the right side.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub p: f64,
    pub order: u32,
    pub points: Vec<SweepPoint>,
    /// Log–log least-squares slope of the error norm over the last three scales.
    pub fitted_rate: f64,
    /// Observed convergence order of the ratio used for extrapolation.
    pub ratio_order: f64,
    pub extrapolated: f64,
    pub rhs: f64,
    pub relative_error: f64,
}

impl ConvergenceReport {
    /// `|ratio − limit|` strictly decreasing over the last three scales.
    pub fn monotone_tail(&self) -> bool {
        let n = self.points.len();
        if n < 3 {
            return false;
        }
        let gaps: Vec<f64> = self.points[n - 3..]
            .iter()
            .map(|pt| (pt.ratio - self.extrapolated).abs())
            .collect();
        gaps[1] < gaps[0] && gaps[2] < gaps[1]
    }
}

/// Least-squares slope of `y` against `x`.
pub fn least_squares_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

/// Extrapolates `r(h) → r(0)` from the last three ladder values.
///
/// The correction order is estimated from successive differences when the
/// ladder is geometric and the estimate lies in `[0.5, 4]`; otherwise a
/// first-order correction is assumed. Returns `(limit, order)`.
pub fn richardson(hs: &[f64], ratios: &[f64]) -> (f64, f64) {
    let n = ratios.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    if n == 1 {
        return (ratios[0], f64::NAN);
    }
    let q = hs[n - 2] / hs[n - 1];
    let mut order = 1.0;
    if n >= 3 {
        let q0 = hs[n - 3] / hs[n - 2];
        let (d1, d2) = (ratios[n - 2] - ratios[n - 3], ratios[n - 1] - ratios[n - 2]);
        if (q0 - q).abs() < 1e-12 * q && d1 != 0.0 && d2 != 0.0 && d1 * d2 > 0.0 {
            let observed = (d1 / d2).ln() / q.ln();
            if (0.5..=4.0).contains(&observed) {
                order = observed;
            }
        }
    }
    let factor = q.powf(order);
    let limit = ratios[n - 1] + (ratios[n - 1] - ratios[n - 2]) / (factor - 1.0);
    (limit, order)
}

/// Options for [`lhs_sweep`].
#[derive(Debug, Clone, PartialEq)]
pub struct SweepOptions {
    pub padding: Option<i64>,
    pub outer: OuterRule,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            padding: None,
            outer: OuterRule::default(),
        }
    }
}

/// `‖f − P_h f‖_p` on `f`'s effective support at one scale.
pub fn sweep_point(spline: &Arc<BoxSpline>, f: &dyn TestFunction, p: f64, h: f64, padding: i64) -> Result<SweepPoint> {
    let model = SplineSpaceModel::build(spline.clone(), h, f, padding)?;
    let c = model.project(f)?;
    let domain = model.support_domain(f)?;
    let e = model.error_norm(f, &c, p, &domain)?;
    let order = spline.set().rho() as f64 + 1.0;
    Ok(SweepPoint {
        h,
        norm: e.norm,
        pth_power: e.pth_power,
        ratio: e.pth_power / h.powf(p * order),
        unknowns: model.window.len(),
    })
}

/// Runs the ladder (sorted to decreasing `h`) and compares with `rhs`.
pub fn lhs_sweep(
    f: &dyn TestFunction,
    set: &DirectionSet,
    p: f64,
    ladder: &[f64],
    rhs: f64,
    options: &SweepOptions,
) -> Result<ConvergenceReport> {
    check_p(p)?;
    set.require_unimodular()?;
    if ladder.is_empty() {
        return Err(Error::InvalidArgument("empty h ladder".into()));
    }
    let mut hs = ladder.to_vec();
    hs.sort_by(|a, b| b.total_cmp(a));
    if hs.windows(2).any(|w| w[0] <= w[1]) {
        return Err(Error::InvalidArgument("h ladder must be strictly decreasing".into()));
    }
    let spline = Arc::new(BoxSpline::new(set.clone()));
    let padding = options.padding.unwrap_or_else(|| default_padding(set));
    let points: Vec<SweepPoint> = hs
        .iter()
        .map(|&h| sweep_point(&spline, f, p, h, padding))
        .collect::<Result<_>>()?;
    let n = points.len();
    let tail = &points[n.saturating_sub(3)..];
    let fitted_rate = if tail.len() >= 2 {
        let lx: Vec<f64> = tail.iter().map(|pt| pt.h.ln()).collect();
        let ly: Vec<f64> = tail.iter().map(|pt| pt.norm.ln()).collect();
        least_squares_slope(&lx, &ly)
    } else {
        f64::NAN
    };
    let ratios: Vec<f64> = points.iter().map(|pt| pt.ratio).collect();
    let (extrapolated, ratio_order) = richardson(&hs, &ratios);
    let relative_error = if rhs != 0.0 {
        (extrapolated - rhs).abs() / rhs.abs()
    } else {
        extrapolated.abs()
    };
    Ok(ConvergenceReport {
        p,
        order: set.rho() as u32 + 1,
        points,
        fitted_rate,
        ratio_order,
        extrapolated,
        rhs,
        relative_error,
    })
}

/// Geometric ladder `2^{−first}, …, 2^{−last}`.
pub fn dyadic_ladder(first: u32, last: u32) -> Vec<f64> {
    (first..=last).map(|j| 0.5f64.powi(j as i32)).collect()
}

fn check_p(p: f64) -> Result<()> {
    if p >= 1.0 && p.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("p = {p} must satisfy 1 ≤ p < ∞")))
    }
}

/// `C(β,U)/β!` for every `|β| = ϱ+1` and class, as floating point (for reports).
pub fn directional_coefficients(set: &DirectionSet) -> Result<Vec<BTreeMap<MultiIndex, f64>>> {
    let (classes, _) = unimodular_terms(set)?;
    Ok(classes
        .iter()
        .map(|c| {
            expand_linear_product(&c.member_vectors(set), set.dim())
                .into_iter()
                .map(|(b, v)| (b, v.to_f64().unwrap_or(f64::NAN)))
                .collect()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::Separable;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn set(rows: &[&[i64]]) -> DirectionSet {
        DirectionSet::from_rows(rows).unwrap()
    }

    #[test]
    fn directional_derivative_examples() {
        let g1 = Separable::gaussian(1, 1.0);
        let hat = set(&[&[1], &[1]]);
        let class = &hat.lambda_set().unwrap()[0];
        for &t in &[-0.7, 0.0, 0.4, 1.3] {
            let second = g1.derivative(&MultiIndex::new([2]), &[t]);
            for route in [DirectionalRoute::Expanded, DirectionalRoute::Nested] {
                assert_abs_diff_eq!(directional_derivative(&g1, &hat, class, &[t], route), second, epsilon = 1e-13);
            }
        }

        let g2 = Separable::gaussian(2, 1.0);
        let tensor = set(&[&[1, 0], &[1, 0], &[0, 1], &[0, 1]]);
        let classes = tensor.lambda_set().unwrap();
        let both = set(&[&[1, 0], &[0, 1], &[1, 1]]);
        let courant_classes = both.lambda_set().unwrap();
        // U = {e1, e2}
        let mixed = &courant_classes[0];
        let t = [0.3, -0.6];
        let expected = 4.0 * PI * PI * t[0] * t[1] * (-PI * (t[0] * t[0] + t[1] * t[1])).exp();
        assert_abs_diff_eq!(
            directional_derivative(&g2, &both, mixed, &t, DirectionalRoute::Expanded),
            expected,
            epsilon = 1e-12
        );
        for s in [&tensor, &both] {
            for c in s.lambda_set().unwrap() {
                for t in [[0.1, 0.2], [-0.9, 0.45], [1.2, -1.1]] {
                    let a = directional_derivative(&g2, s, &c, &t, DirectionalRoute::Expanded);
                    let b = directional_derivative(&g2, s, &c, &t, DirectionalRoute::Nested);
                    assert!((a - b).abs() <= 1e-10 * (1.0 + a.abs()));
                }
            }
        }
        assert_eq!(classes.len(), 2);
    }

    #[test]
    fn hat_constant_is_second_derivative_norm() {
        let g = Separable::gaussian(1, 1.0);
        let hat = set(&[&[1], &[1]]);
        let outer = OuterRule::default();
        let p2 = rhs_constant_p2(&g, &hat, outer).unwrap();
        let nodes = outer_nodes(&g, outer).unwrap();
        let f2: f64 = nodes
            .iter()
            .map(|n| n.weight * g.derivative(&MultiIndex::new([2]), &n.point).powi(2))
            .sum();
        // ∫ (f'')² = 3π²/√2 for exp(−πx²)
        let exact = 3.0 * PI * PI / 2f64.sqrt();
        assert_abs_diff_eq!(f2, exact, epsilon = 1e-10 * exact);
        assert_abs_diff_eq!(p2, exact / 720.0, epsilon = 1e-10 * exact);
        let generic = rhs_constant(&g, &hat, 2.0, outer).unwrap();
        assert!((generic - p2).abs() <= 1e-6 * p2);
    }

    #[test]
    fn p2_routes_agree_in_two_dimensions() {
        let g = Separable::gaussian(2, 1.0);
        for s in [
            set(&[&[1, 0], &[0, 1]]),
            set(&[&[1, 0], &[0, 1], &[1, 1]]),
            set(&[&[1, 0], &[1, 0], &[0, 1], &[0, 1], &[1, 1], &[1, 1]]),
        ] {
            let outer = OuterRule { cells: 12, order: 8 };
            let a = rhs_constant(&g, &s, 2.0, outer).unwrap();
            let b = rhs_constant_p2(&g, &s, outer).unwrap();
            assert!((a - b).abs() <= 1e-6 * b, "{a} vs {b}");
        }
    }

    #[test]
    fn tensor_constant_closed_form() {
        // ‖∂_j f‖₂² = π/2 for exp(−π|x|²) in 2-D
        let g = Separable::gaussian(2, 1.0);
        let c = rhs_constant_p2(&g, &set(&[&[1, 0], &[0, 1]]), OuterRule::default()).unwrap();
        assert_abs_diff_eq!(c, 2.0 * (PI / 2.0) / 12.0, epsilon = 1e-10);
    }

    struct Zero;

    impl crate::functions::Function for Zero {
        fn dim(&self) -> usize {
            1
        }
        fn value(&self, _: &[f64]) -> f64 {
            0.0
        }
        fn support(&self) -> Option<(Vec<f64>, Vec<f64>)> {
            Some((vec![-1.0], vec![1.0]))
        }
        fn describe(&self) -> String {
            "zero".into()
        }
    }

    impl TestFunction for Zero {
        fn derivative(&self, _: &MultiIndex, _: &[f64]) -> f64 {
            0.0
        }
    }

    #[test]
    fn zero_function_has_zero_constant() {
        let hat = set(&[&[1], &[1]]);
        assert_eq!(rhs_constant(&Zero, &hat, 2.0, OuterRule::default()).unwrap(), 0.0);
        assert_eq!(rhs_constant_p2(&Zero, &hat, OuterRule::default()).unwrap(), 0.0);
        assert!(rhs_constant(&Zero, &hat, 0.5, OuterRule::default()).is_err());
    }

    #[test]
    fn norm_factorization() {
        let courant = set(&[&[1, 0], &[0, 1], &[1, 1]]);
        for term in bernoulli_splines(&courant).unwrap() {
            for p in [1.0, 2.0, 3.0] {
                let direct = bernoulli_spline_norm_pth_direct(&courant, &term, p).unwrap();
                let factored = bernoulli_spline_norm_pth(&term, p);
                assert!((direct - factored).abs() < 1e-8, "{p}: {direct} vs {factored}");
            }
        }
    }

    #[test]
    fn pointwise_identity() {
        let g = Separable::gaussian(2, 1.0);
        for s in [set(&[&[1, 0], &[0, 1], &[1, 1]]), set(&[&[1, 0], &[1, 0], &[0, 1]])] {
            let id = PointwiseIdentity::new(&s).unwrap();
            assert!(id.max_deviation(&g, 100, 7).unwrap() < 1e-9);
        }
    }

    #[test]
    fn norm_equivalence_bounds_for_other_p() {
        let g = Separable::gaussian(2, 1.0);
        let courant = set(&[&[1, 0], &[0, 1], &[1, 1]]);
        let outer = OuterRule { cells: 12, order: 8 };
        for p in [1.0, 3.0] {
            let (c1, c2) = norm_equivalence_constants(&courant, p, 4).unwrap();
            assert!(c1 > 0.0 && c1 <= c2);
            let rhs = rhs_constant(&g, &courant, p, outer).unwrap();
            let sep = rhs_separated(&g, &courant, p, outer).unwrap();
            assert!(c1 * sep <= rhs && rhs <= c2 * sep, "p={p}: {c1} {c2} {rhs} {sep}");
        }
        let (c1, c2) = norm_equivalence_constants(&courant, 2.0, 3).unwrap();
        assert_abs_diff_eq!(c1, 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(c2, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn richardson_recovers_limits() {
        let hs = dyadic_ladder(2, 5);
        let first: Vec<f64> = hs.iter().map(|h| 3.0 + 0.7 * h).collect();
        let (l, q) = richardson(&hs, &first);
        assert_abs_diff_eq!(l, 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(q, 1.0, epsilon = 1e-9);
        let second: Vec<f64> = hs.iter().map(|h| 3.0 - 2.0 * h * h).collect();
        let (l, q) = richardson(&hs, &second);
        assert_abs_diff_eq!(l, 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(q, 2.0, epsilon = 1e-9);
        assert_abs_diff_eq!(least_squares_slope(&[0.0, 1.0, 2.0], &[1.0, 3.0, 5.0]), 2.0, epsilon = 1e-15);
    }

    #[test]
    fn sweep_on_hat_functions() {
        let g = Separable::gaussian(1, 1.0);
        let hat = set(&[&[1], &[1]]);
        let rhs = rhs_constant_p2(&g, &hat, OuterRule::default()).unwrap();
        let report = lhs_sweep(&g, &hat, 2.0, &dyadic_ladder(2, 5), rhs, &SweepOptions::default()).unwrap();
        assert!((report.fitted_rate - 2.0).abs() < 0.05, "{report:?}");
        assert!(report.relative_error < 0.05, "{report:?}");
        assert!(lhs_sweep(&g, &hat, 2.0, &[], rhs, &SweepOptions::default()).is_err());
    }
}
