//! The L² orthogonal projection onto `S(hV) = span{B_V(·/h − α)}` on a finite
//! window of shifts.
//!
//! Every integral here runs over unit cells of the (scaled) lattice, split along
//! the cut hyperplanes of `B_V`, so spline factors are polynomial on each piece.
//! The values of `B_V` at the nodes of that rule, for every support cell, are
//! tabulated once and reused by the Gram kernel, the load vector, projection
//! values on the mesh and error norms.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::box_spline::{lattice_box, BoxSpline};
use crate::error::{Error, Result};
use crate::functions::{FnFunction, Function};
use crate::lattice::{DirectionSet, LatticeVector, MultiIndex};
use crate::linalg::{symmetric_eigenvalues, BandedCholesky, BandedSpd};
use crate::quadrature::CellRule;

/// Gauss–Legendre points per axis on each piece of a unit cell.
pub const QUADRATURE_ORDER: usize = 10;

/// Largest number of coefficients a window may hold.
pub const MAX_WINDOW: usize = 400_000;

/// `B_V` tabulated at the nodes of a cut-adapted unit-cell rule, for every support cell.
#[derive(Debug, Clone)]
pub struct NodeTable {
    pub rule: CellRule,
    pub cells: Vec<Vec<i64>>,
    // values[c * rule.len() + k] = B_V(cells[c] + node_k)
    values: Vec<f64>,
    cell_lo: Vec<i64>,
    cell_hi: Vec<i64>,
}

impl NodeTable {
    pub fn new(spline: &BoxSpline, order: usize) -> Result<Self> {
        let rule = spline.cell_rule(order)?;
        let cells = spline.support_cells();
        let (lo, hi) = spline.set().zonotope_bounds();
        let values: Vec<f64> = cells
            .par_iter()
            .flat_map_iter(|cell| {
                rule.nodes.iter().map(move |node| {
                    let x: Vec<f64> = node.point.iter().zip(cell).map(|(z, &m)| z + m as f64).collect();
                    spline.evaluate(&x)
                })
            })
            .collect();
        Ok(Self {
            cell_hi: hi.iter().map(|h| h - 1).collect(),
            cell_lo: lo,
            rule,
            cells,
            values,
        })
    }

    pub fn nodes_per_cell(&self) -> usize {
        self.rule.len()
    }

    /// Position of support cell `m` in [`NodeTable::cells`], if it is one.
    pub fn cell_index(&self, m: &[i64]) -> Option<usize> {
        let mut idx = 0usize;
        let mut stride = 1usize;
        for ((&c, &lo), &hi) in m.iter().zip(&self.cell_lo).zip(&self.cell_hi) {
            if c < lo || c > hi {
                return None;
            }
            idx += (c - lo) as usize * stride;
            stride *= (hi - lo + 1) as usize;
        }
        Some(idx)
    }

    /// `B_V` at the nodes of support cell number `c`.
    pub fn cell_values(&self, c: usize) -> &[f64] {
        let n = self.nodes_per_cell();
        &self.values[c * n..(c + 1) * n]
    }
}

/// Autocorrelation `a(γ) = ∫ B_V(x) B_V(x − γ) dx` for all `γ` with `a(γ) ≠ 0`.
pub fn gram_kernel(table: &NodeTable) -> BTreeMap<Vec<i64>, f64> {
    let d = table.cell_lo.len();
    let span: Vec<i64> = table.cell_lo.iter().zip(&table.cell_hi).map(|(l, h)| h - l).collect();
    let neg: Vec<i64> = span.iter().map(|s| -s).collect();
    let mut kernel = BTreeMap::new();
    let weights: Vec<f64> = table.rule.nodes.iter().map(|n| n.weight).collect();
    for gamma in lattice_box(&neg, &span) {
        let mut sum = 0.0;
        for (c, cell) in table.cells.iter().enumerate() {
            let shifted: Vec<i64> = cell.iter().zip(&gamma).map(|(m, g)| m - g).collect();
            let Some(c2) = table.cell_index(&shifted) else {
                continue;
            };
            let (a, b) = (table.cell_values(c), table.cell_values(c2));
            sum += (0..weights.len()).map(|k| weights[k] * a[k] * b[k]).sum::<f64>();
        }
        if sum.abs() > 1e-15 {
            kernel.insert(gamma, sum);
        }
    }
    debug_assert!(kernel.keys().all(|g| g.len() == d));
    kernel
}

/// `a(γ)` by quadrature.
pub fn gram_value(set: &DirectionSet, gamma: &LatticeVector) -> Result<f64> {
    let table = NodeTable::new(&BoxSpline::new(set.clone()), QUADRATURE_ORDER)?;
    Ok(gram_kernel(&table).get(gamma.coords()).copied().unwrap_or(0.0))
}

/// `a(γ) = B_{V∪(−V)}(γ)`.
pub fn gram_value_doubled(set: &DirectionSet, gamma: &LatticeVector) -> Result<f64> {
    let doubled = BoxSpline::new(set.symmetrized()?);
    Ok(doubled.evaluate(&gamma.to_f64()))
}

/// Inclusive box of lattice indices, first axis fastest in the flat ordering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
}

impl Window {
    pub fn new(lo: Vec<i64>, hi: Vec<i64>) -> Result<Self> {
        if lo.len() != hi.len() || lo.iter().zip(&hi).any(|(a, b)| a > b) {
            return Err(Error::InvalidArgument(format!("empty window {lo:?}..={hi:?}")));
        }
        Ok(Self { lo, hi })
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn extent(&self) -> Vec<usize> {
        self.lo.iter().zip(&self.hi).map(|(l, h)| (h - l + 1) as usize).collect()
    }

    pub fn len(&self) -> usize {
        self.extent().iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, alpha: &[i64]) -> bool {
        alpha.iter().zip(&self.lo).zip(&self.hi).all(|((a, l), h)| a >= l && a <= h)
    }

    pub fn flat(&self, alpha: &[i64]) -> Option<usize> {
        if !self.contains(alpha) {
            return None;
        }
        let mut idx = 0;
        let mut stride = 1;
        for ((a, l), e) in alpha.iter().zip(&self.lo).zip(self.extent()) {
            idx += (a - l) as usize * stride;
            stride *= e;
        }
        Some(idx)
    }

    pub fn point(&self, mut flat: usize) -> Vec<i64> {
        self.lo
            .iter()
            .zip(self.extent())
            .map(|(l, e)| {
                let c = l + (flat % e) as i64;
                flat /= e;
                c
            })
            .collect()
    }

    pub fn points(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        (0..self.len()).map(|i| self.point(i))
    }

    /// Offset in the flat ordering produced by a lattice shift `γ`.
    pub fn flat_offset(&self, gamma: &[i64]) -> i64 {
        let mut off = 0;
        let mut stride = 1i64;
        for (g, e) in gamma.iter().zip(self.extent()) {
            off += g * stride;
            stride *= e as i64;
        }
        off
    }
}

/// A finite section of `S(hV)`: the box spline, the scale, the window of
/// shifts and the Gram kernel.
#[derive(Debug, Clone)]
pub struct SplineSpaceModel {
    pub spline: Arc<BoxSpline>,
    pub h: f64,
    pub window: Window,
    pub gram: BTreeMap<Vec<i64>, f64>,
    pub table: Arc<NodeTable>,
}

/// Default padding in cells: three times the widest extent of the support.
pub fn default_padding(set: &DirectionSet) -> i64 {
    let (lo, hi) = set.zonotope_bounds();
    3 * lo.iter().zip(&hi).map(|(l, h)| h - l).max().unwrap_or(1)
}

impl SplineSpaceModel {
    /// Model for an explicit window.
    pub fn with_window(spline: Arc<BoxSpline>, h: f64, window: Window) -> Result<Self> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::InvalidArgument(format!("scale h = {h} must be positive")));
        }
        if window.dim() != spline.dim() {
            return Err(Error::DimensionMismatch {
                index: 0,
                expected: spline.dim(),
                found: window.dim(),
            });
        }
        if window.len() > MAX_WINDOW {
            return Err(Error::TooLarge {
                what: "projection window",
                size: window.len(),
                max: MAX_WINDOW,
            });
        }
        let table = Arc::new(NodeTable::new(&spline, QUADRATURE_ORDER)?);
        let gram = gram_kernel(&table);
        Ok(Self {
            spline,
            h,
            window,
            gram,
            table,
        })
    }

    /// Window of every `α` whose scaled support meets `region` inflated by `padding` cells.
    pub fn covering(spline: Arc<BoxSpline>, h: f64, region: (&[f64], &[f64]), padding: i64) -> Result<Self> {
        let (zlo, zhi) = spline.set().zonotope_bounds();
        let (rlo, rhi) = region;
        if rlo.len() != spline.dim() || rhi.len() != spline.dim() {
            return Err(Error::DimensionMismatch {
                index: 0,
                expected: spline.dim(),
                found: rlo.len(),
            });
        }
        let lo: Vec<i64> = rlo
            .iter()
            .zip(&zhi)
            .map(|(r, z)| (r / h).floor() as i64 - padding - z + 1)
            .collect();
        let hi: Vec<i64> = rhi
            .iter()
            .zip(&zlo)
            .map(|(r, z)| (r / h).ceil() as i64 + padding - z - 1)
            .collect();
        Self::with_window(spline, h, Window::new(lo, hi)?)
    }

    /// Model covering `f`'s effective support.
    pub fn build(spline: Arc<BoxSpline>, h: f64, f: &dyn Function, padding: i64) -> Result<Self> {
        spline.set().require_unimodular()?;
        let (lo, hi) = f
            .support()
            .ok_or_else(|| Error::InvalidArgument(format!("{} has no bounded effective support", f.describe())))?;
        Self::covering(spline, h, (&lo, &hi), padding)
    }

    pub fn dim(&self) -> usize {
        self.window.dim()
    }

    /// Flat-order bandwidth of the windowed Gram matrix.
    pub fn bandwidth(&self) -> usize {
        self.gram
            .keys()
            .map(|g| self.window.flat_offset(g).unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
            .min(self.window.len().saturating_sub(1))
    }

    /// The windowed Gram matrix, optionally with `a(±γ)` shifted by `delta`.
    pub fn gram_matrix(&self, perturb: Option<(&[i64], f64)>) -> BandedSpd {
        let n = self.window.len();
        let mut a = BandedSpd::zeros(n, self.bandwidth());
        let entries: Vec<(Vec<i64>, f64)> = self
            .gram
            .iter()
            .filter(|(g, _)| self.window.flat_offset(g) >= 0)
            .map(|(g, v)| {
                let mut v = *v;
                if let Some((pg, delta)) = perturb {
                    let neg: Vec<i64> = pg.iter().map(|c| -c).collect();
                    if g.as_slice() == pg || g == &neg {
                        v += delta;
                    }
                }
                (g.clone(), v)
            })
            .collect();
        for (i, alpha) in self.window.points().enumerate() {
            for (g, v) in &entries {
                let beta: Vec<i64> = alpha.iter().zip(g).map(|(a, g)| a - g).collect();
                if let Some(j) = self.window.flat(&beta) {
                    a.set(i, j, *v);
                }
            }
        }
        a
    }

    /// Dense windowed Gram matrix (small windows only).
    pub fn dense_gram(&self) -> Vec<Vec<f64>> {
        let n = self.window.len();
        let mut m = vec![vec![0.0; n]; n];
        for (i, alpha) in self.window.points().enumerate() {
            for (j, beta) in self.window.points().enumerate() {
                let g: Vec<i64> = alpha.iter().zip(&beta).map(|(a, b)| a - b).collect();
                m[i][j] = self.gram.get(&g).copied().unwrap_or(0.0);
            }
        }
        m
    }

    /// `Σ_γ a(γ) cos(2πγ·ω)`.
    pub fn gram_symbol(&self, omega: &[f64]) -> f64 {
        self.gram
            .iter()
            .map(|(g, v)| {
                let phase: f64 = g.iter().zip(omega).map(|(&gi, w)| gi as f64 * w).sum();
                v * (2.0 * std::f64::consts::PI * phase).cos()
            })
            .sum()
    }

    /// `∫ f(h(y + α)) B_V(y) dy` for every window index.
    pub fn load_vector(&self, f: &dyn Function) -> Vec<f64> {
        let table = &self.table;
        let h = self.h;
        (0..self.window.len())
            .into_par_iter()
            .map(|i| {
                let alpha = self.window.point(i);
                let mut sum = 0.0;
                let mut x = vec![0.0; alpha.len()];
                for (c, cell) in table.cells.iter().enumerate() {
                    let vals = table.cell_values(c);
                    for (node, &b) in table.rule.nodes.iter().zip(vals) {
                        if b == 0.0 {
                            continue;
                        }
                        for (j, xj) in x.iter_mut().enumerate() {
                            *xj = h * (node.point[j] + (cell[j] + alpha[j]) as f64);
                        }
                        sum += node.weight * b * f.value(&x);
                    }
                }
                sum
            })
            .collect()
    }

    /// Coefficients of `P_h f` on the window.
    pub fn project(&self, f: &dyn Function) -> Result<CoefficientField> {
        self.project_with(f, None)
    }

    /// [`SplineSpaceModel::project`] with an optional Gram perturbation, used to
    /// confirm the orthogonality check detects a wrong system.
    pub fn project_with(&self, f: &dyn Function, perturb: Option<(&[i64], f64)>) -> Result<CoefficientField> {
        let rhs = self.load_vector(f);
        self.solve(&rhs, perturb)
    }

    /// Projects several functions through one factorization.
    pub fn project_many(&self, fs: &[&dyn Function]) -> Result<Vec<CoefficientField>> {
        let a = self.gram_matrix(None);
        let chol = a.clone().cholesky()?;
        Ok(fs
            .iter()
            .map(|f| self.field(&a, &chol, &self.load_vector(*f)))
            .collect())
    }

    fn solve(&self, rhs: &[f64], perturb: Option<(&[i64], f64)>) -> Result<CoefficientField> {
        let a = self.gram_matrix(perturb);
        let chol: BandedCholesky = a.clone().cholesky()?;
        Ok(self.field(&a, &chol, rhs))
    }

    fn field(&self, a: &BandedSpd, chol: &BandedCholesky, rhs: &[f64]) -> CoefficientField {
        let values = chol.solve(rhs);
        let r = a.matvec(&values);
        let rnorm = r.iter().zip(rhs).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt();
        let bnorm = rhs.iter().map(|y| y * y).sum::<f64>().sqrt();
        CoefficientField {
            window: self.window.clone(),
            values,
            relative_residual: if bnorm > 0.0 { rnorm / bnorm } else { rnorm },
        }
    }

    /// `P_h f(x) = Σ_α c_α B_V(x/h − α)`.
    pub fn evaluate(&self, c: &CoefficientField, x: &[f64]) -> f64 {
        let (zlo, zhi) = self.spline.set().zonotope_bounds();
        let y: Vec<f64> = x.iter().map(|xi| xi / self.h).collect();
        let lo: Vec<i64> = y.iter().zip(&zhi).map(|(yi, z)| (yi - *z as f64).floor() as i64).collect();
        let hi: Vec<i64> = y.iter().zip(&zlo).map(|(yi, z)| (yi - *z as f64).ceil() as i64).collect();
        let mut sum = 0.0;
        for alpha in lattice_box(&lo, &hi) {
            let Some(i) = c.window.flat(&alpha) else {
                continue;
            };
            if c.values[i] == 0.0 {
                continue;
            }
            let z: Vec<f64> = y.iter().zip(&alpha).map(|(yi, &a)| yi - a as f64).collect();
            sum += c.values[i] * self.spline.evaluate(&z);
        }
        sum
    }

    /// `P_h f` at the rule nodes of mesh cell `k`, i.e. at `h(k + z)`.
    /// `None` when some contributing coefficient lies outside the window.
    pub fn mesh_cell_values(&self, c: &CoefficientField, k: &[i64]) -> Option<Vec<f64>> {
        let table = &self.table;
        let mut out = vec![0.0; table.nodes_per_cell()];
        for (ci, m) in table.cells.iter().enumerate() {
            let alpha: Vec<i64> = k.iter().zip(m).map(|(a, b)| a - b).collect();
            let coeff = c.values[c.window.flat(&alpha)?];
            if coeff == 0.0 {
                continue;
            }
            for (o, b) in out.iter_mut().zip(table.cell_values(ci)) {
                *o += coeff * b;
            }
        }
        Some(out)
    }

    /// Mesh cells `k` (cells `h(k + [0,1]^d)`) covering the box `[lo, hi]`.
    pub fn mesh_cells(&self, lo: &[f64], hi: &[f64]) -> Window {
        Window {
            lo: lo.iter().map(|l| (l / self.h).floor() as i64).collect(),
            hi: hi.iter().map(|u| (u / self.h).ceil() as i64 - 1).collect(),
        }
    }

    /// `(∫_D |f − P_h f|^p)^{1/p}` and its `p`-th power, over the mesh cells `domain`.
    pub fn error_norm(&self, f: &dyn Function, c: &CoefficientField, p: f64, domain: &Window) -> Result<ErrorNorm> {
        if !(p >= 1.0 && p.is_finite()) {
            return Err(Error::InvalidArgument(format!("p = {p} must satisfy 1 ≤ p < ∞")));
        }
        let h = self.h;
        let d = self.dim();
        let volume = h.powi(d as i32);
        let per_cell: Vec<Option<f64>> = (0..domain.len())
            .into_par_iter()
            .map(|i| {
                let k = domain.point(i);
                let ph = self.mesh_cell_values(c, &k)?;
                let mut x = vec![0.0; d];
                let mut s = 0.0;
                for (node, v) in self.table.rule.nodes.iter().zip(&ph) {
                    for (j, xj) in x.iter_mut().enumerate() {
                        *xj = h * (k[j] as f64 + node.point[j]);
                    }
                    s += node.weight * (f.value(&x) - v).abs().powf(p);
                }
                Some(s * volume)
            })
            .collect();
        let mut total = 0.0;
        for v in per_cell {
            total += v.ok_or_else(|| {
                Error::InvalidArgument("error-norm domain reaches outside the coefficient window".into())
            })?;
        }
        Ok(ErrorNorm {
            norm: total.powf(1.0 / p),
            pth_power: total,
        })
    }

    /// Mesh cells over `f`'s effective support.
    pub fn support_domain(&self, f: &dyn Function) -> Result<Window> {
        let (lo, hi) = f
            .support()
            .ok_or_else(|| Error::InvalidArgument(format!("{} has no bounded effective support", f.describe())))?;
        Ok(self.mesh_cells(&lo, &hi))
    }

    /// `max_α |∫(f − P_h f) B_V(·/h − α)|`, evaluated from point values of
    /// `f` and `P_h f` only (independent of the Gram kernel).
    pub fn residual_orthogonality(&self, f: &dyn Function, c: &CoefficientField) -> f64 {
        let table = &self.table;
        let h = self.h;
        let d = self.dim();
        let volume = h.powi(d as i32);
        (0..self.window.len())
            .into_par_iter()
            .map(|i| {
                let alpha = self.window.point(i);
                let mut sum = 0.0;
                let mut x = vec![0.0; d];
                for (ci, m) in table.cells.iter().enumerate() {
                    let k: Vec<i64> = m.iter().zip(&alpha).map(|(a, b)| a + b).collect();
                    let ph = self.mesh_cell_values_truncated(c, &k);
                    for ((node, &b), v) in table.rule.nodes.iter().zip(table.cell_values(ci)).zip(&ph) {
                        if b == 0.0 {
                            continue;
                        }
                        for (j, xj) in x.iter_mut().enumerate() {
                            *xj = h * (k[j] as f64 + node.point[j]);
                        }
                        sum += node.weight * b * (f.value(&x) - v);
                    }
                }
                (sum * volume).abs()
            })
            .reduce(|| 0.0, f64::max)
    }

    // coefficients outside the window count as zero
    fn mesh_cell_values_truncated(&self, c: &CoefficientField, k: &[i64]) -> Vec<f64> {
        let table = &self.table;
        let mut out = vec![0.0; table.nodes_per_cell()];
        for (ci, m) in table.cells.iter().enumerate() {
            let alpha: Vec<i64> = k.iter().zip(m).map(|(a, b)| a - b).collect();
            let Some(j) = c.window.flat(&alpha) else {
                continue;
            };
            let coeff = c.values[j];
            if coeff == 0.0 {
                continue;
            }
            for (o, b) in out.iter_mut().zip(table.cell_values(ci)) {
                *o += coeff * b;
            }
        }
        out
    }

    /// `‖f‖₂` over the window's covered region, by the same mesh quadrature.
    pub fn l2_norm(&self, f: &dyn Function) -> f64 {
        let h = self.h;
        let d = self.dim();
        let volume = h.powi(d as i32);
        let (zlo, zhi) = self.spline.set().zonotope_bounds();
        let cells = Window {
            lo: self.window.lo.iter().zip(&zlo).map(|(a, z)| a + z).collect(),
            hi: self.window.hi.iter().zip(&zhi).map(|(a, z)| a + z - 1).collect(),
        };
        let parts: Vec<f64> = (0..cells.len())
            .into_par_iter()
            .map(|i| {
                let k = cells.point(i);
                let mut x = vec![0.0; d];
                self.table
                    .rule
                    .nodes
                    .iter()
                    .map(|node| {
                        for (j, xj) in x.iter_mut().enumerate() {
                            *xj = h * (k[j] as f64 + node.point[j]);
                        }
                        node.weight * f.value(&x).powi(2)
                    })
                    .sum::<f64>()
                    * volume
            })
            .collect();
        parts.iter().sum::<f64>().sqrt()
    }
}

/// `P(x^β)(x) − x^β` at each probe, for every `β`, projecting at scale 1 onto
/// the shifts in `[−radius, radius]^d`. Probes should sit far from the window edge.
pub fn monomial_projection_errors(
    set: &DirectionSet,
    betas: &[MultiIndex],
    radius: i64,
    probes: &[Vec<f64>],
) -> Result<Vec<Vec<f64>>> {
    let d = set.dim();
    let spline = Arc::new(BoxSpline::new(set.clone()));
    let window = Window::new(vec![-radius; d], vec![radius; d])?;
    let model = SplineSpaceModel::with_window(spline, 1.0, window)?;
    let fs: Vec<FnFunction<_>> = betas
        .iter()
        .map(|b| {
            let b2 = b.clone();
            FnFunction::new(d, move |x: &[f64]| b2.monomial(x), None, format!("x^{b}"))
        })
        .collect();
    let refs: Vec<&dyn Function> = fs.iter().map(|f| f as &dyn Function).collect();
    let fields = model.project_many(&refs)?;
    Ok(betas
        .iter()
        .zip(&fields)
        .map(|(b, c)| probes.iter().map(|x| model.evaluate(c, x) - b.monomial(x)).collect())
        .collect())
}

/// [`monomial_projection_errors`] for a single `β`.
pub fn monomial_projection_error(
    set: &DirectionSet,
    beta: &MultiIndex,
    radius: i64,
    probes: &[Vec<f64>],
) -> Result<Vec<f64>> {
    Ok(monomial_projection_errors(set, std::slice::from_ref(beta), radius, probes)?.remove(0))
}

/// Coefficients `c_α` of `P_h f = Σ c_α B_V(·/h − α)` on a window.
#[derive(Debug, Clone)]
pub struct CoefficientField {
    pub window: Window,
    pub values: Vec<f64>,
    /// `‖A c − b‖ / ‖b‖` of the solved system.
    pub relative_residual: f64,
}

impl CoefficientField {
    pub fn get(&self, alpha: &[i64]) -> f64 {
        self.window.flat(alpha).map(|i| self.values[i]).unwrap_or(0.0)
    }

    /// `max |c − other|` over the common window positions (by index).
    pub fn max_difference(&self, other: &CoefficientField) -> f64 {
        self.window
            .points()
            .filter(|a| other.window.contains(a))
            .map(|a| (self.get(&a) - other.get(&a)).abs())
            .fold(0.0, f64::max)
    }
}

/// An `L^p` error norm together with its `p`-th power.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorNorm {
    pub norm: f64,
    pub pth_power: f64,
}

/// Smallest eigenvalue of the Gram matrix on a small window, and a lower
/// envelope of its symbol sampled on a `samples^d` frequency grid.
pub fn gram_spectrum_check(set: &DirectionSet, window_side: i64, samples: usize) -> Result<(f64, f64)> {
    let d = set.dim();
    let spline = Arc::new(BoxSpline::new(set.clone()));
    let window = Window::new(vec![0; d], vec![window_side - 1; d])?;
    let model = SplineSpaceModel::with_window(spline, 1.0, window)?;
    let ev = symmetric_eigenvalues(&model.dense_gram());
    let grid = Window::new(vec![0; d], vec![samples as i64 - 1; d])?;
    let symbol_min = grid
        .points()
        .map(|p| {
            let omega: Vec<f64> = p.iter().map(|&q| q as f64 / samples as f64).collect();
            model.gram_symbol(&omega)
        })
        .fold(f64::INFINITY, f64::min);
    Ok((ev[0], symbol_min))
}
