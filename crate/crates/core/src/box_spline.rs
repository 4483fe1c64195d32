//! The box spline `B_V`: Fourier transform, lattice-point derivatives of the
//! transform, and pointwise evaluation.

use std::collections::HashMap;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::functions::Function;
use crate::lattice::{c_coefficient, DirectionSet, LatticeVector, MultiIndex};
use crate::linalg::{det_dense, rank_dense, solve_dense};
use crate::quadrature::{gauss_legendre, CellRule};

/// Largest derivative order of `g` supported.
pub const MAX_G_DERIVATIVE: u32 = 12;

/// Extra steps of the downward moment recurrence.
const BACKWARD_EXTRA: usize = 60;

/// `g(t) = (1 − e^{−2πit}) / (2πit)`, the transform of the unit segment.
pub fn g(t: f64) -> Complex64 {
    moment(0, t)
}

/// `m_k(t) = ∫₀¹ u^k e^{−2πiut} du`.
fn moment(k: usize, t: f64) -> Complex64 {
    let a = Complex64::new(0.0, -2.0 * PI * t);
    let ea = a.exp();
    if a.norm() >= (k as f64).max(1.0) {
        // upward recurrence is stable once |a| ≥ k
        let mut m = (ea - 1.0) / a;
        for j in 1..=k {
            m = ea / a - m * (j as f64) / a;
        }
        m
    } else {
        // downward recurrence from a Taylor-series start
        let top = k + BACKWARD_EXTRA;
        let mut m = moment_series(top, a);
        for j in (k + 1..=top).rev() {
            m = (ea - a * m) / j as f64;
        }
        m
    }
}

/// `Σ_j a^j / (j! (k + j + 1))`
fn moment_series(k: usize, a: Complex64) -> Complex64 {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(1.0 / (k as f64 + 1.0), 0.0);
    for j in 1..200 {
        term *= a / j as f64;
        let add = term / (k + j + 1) as f64;
        sum += add;
        if add.norm() < 1e-18 * sum.norm() {
            break;
        }
    }
    sum
}

/// `g^{(k)}(t) = (−2πi)^k m_k(t)`.
pub fn g_derivative(k: u32, t: f64) -> Result<Complex64> {
    if k > MAX_G_DERIVATIVE {
        return Err(Error::OrderTooHigh {
            order: k,
            max: MAX_G_DERIVATIVE,
        });
    }
    let factor = Complex64::new(0.0, -2.0 * PI).powu(k);
    Ok(factor * moment(k as usize, t))
}

/// `B̂_V(ξ) = ∏_{v∈V} g(ξ·v)`.
pub fn fourier_transform(set: &DirectionSet, xi: &[f64]) -> Complex64 {
    set.vectors()
        .iter()
        .map(|v| g(v.dot_f64(xi)))
        .product()
}

/// How `D^β B̂_V(α)` is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivativeRoute {
    /// Product rule over all factors `g(x·v)`.
    Leibniz,
    /// Closed form through `C(β, U_α)` and `∏ 1/(v·α)`; valid for `|β| ≤ ϱ_V + 1`.
    Factored,
}

/// `D^β B̂_V(α)` at a nonzero lattice point.
pub fn dbeta_bhat(
    set: &DirectionSet,
    beta: &MultiIndex,
    alpha: &LatticeVector,
    route: DerivativeRoute,
) -> Result<Complex64> {
    match route {
        DerivativeRoute::Leibniz => dbeta_bhat_leibniz(set, beta, alpha),
        DerivativeRoute::Factored => dbeta_bhat_factored(set, beta, alpha),
    }
}

fn check_beta(set: &DirectionSet, beta: &MultiIndex) -> Result<()> {
    if beta.dim() != set.dim() {
        return Err(Error::DimensionMismatch {
            index: 0,
            expected: set.dim(),
            found: beta.dim(),
        });
    }
    Ok(())
}

/// `D^β B̂_V(α)` by distributing `β` over the factors with the product rule.
pub fn dbeta_bhat_leibniz(
    set: &DirectionSet,
    beta: &MultiIndex,
    alpha: &LatticeVector,
) -> Result<Complex64> {
    check_beta(set, beta)?;
    if alpha.is_zero() {
        return Err(Error::ZeroFrequency);
    }
    if beta.order() > MAX_G_DERIVATIVE {
        return Err(Error::OrderTooHigh {
            order: beta.order(),
            max: MAX_G_DERIVATIVE,
        });
    }
    let d = set.dim();
    // flat mixed-radix table over γ ≤ β
    let radix: Vec<usize> = beta.exponents().iter().map(|&b| b as usize + 1).collect();
    let size: usize = radix.iter().product();
    let unflatten = |mut idx: usize| -> Vec<u32> {
        let mut g = vec![0u32; d];
        for j in 0..d {
            g[j] = (idx % radix[j]) as u32;
            idx /= radix[j];
        }
        g
    };
    let flatten = |g: &[u32]| -> usize {
        let mut idx = 0;
        for j in (0..d).rev() {
            idx = idx * radix[j] + g[j] as usize;
        }
        idx
    };
    let gammas: Vec<Vec<u32>> = (0..size).map(unflatten).collect();
    let binom = |n: u32, k: u32| -> f64 {
        (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
    };

    let mut table = vec![Complex64::new(0.0, 0.0); size];
    table[0] = Complex64::new(1.0, 0.0);
    for v in set.vectors() {
        let t = v.dot(alpha) as f64;
        let derivs: Vec<Complex64> = (0..=beta.order())
            .map(|k| g_derivative(k, t))
            .collect::<Result<_>>()?;
        // D^δ g(x·v) = g^{(|δ|)}(α·v) v^δ
        let factor: Vec<Complex64> = gammas
            .iter()
            .map(|delta| {
                let order: u32 = delta.iter().sum();
                let mono: f64 = delta
                    .iter()
                    .zip(v.coords())
                    .map(|(&e, &c)| (c as f64).powi(e as i32))
                    .product();
                derivs[order as usize] * mono
            })
            .collect();
        let mut next = vec![Complex64::new(0.0, 0.0); size];
        for (gi, gamma) in gammas.iter().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for (di, delta) in gammas.iter().enumerate() {
                if !delta.iter().zip(gamma).all(|(a, b)| a <= b) {
                    continue;
                }
                let rest: Vec<u32> = gamma.iter().zip(delta).map(|(a, b)| a - b).collect();
                let c: f64 = gamma
                    .iter()
                    .zip(delta)
                    .map(|(&n, &k)| binom(n, k))
                    .product();
                acc += factor[di] * table[flatten(&rest)] * c;
            }
            next[gi] = acc;
        }
        table = next;
    }
    Ok(table[size - 1])
}

/// `D^β B̂_V(α)` from the vanishing pattern of `g` at nonzero integers:
/// zero unless `|β| = #U_α`, otherwise `C(β, U_α) ∏_{v∈U_α} 1/(v·α)`.
pub fn dbeta_bhat_factored(
    set: &DirectionSet,
    beta: &MultiIndex,
    alpha: &LatticeVector,
) -> Result<Complex64> {
    check_beta(set, beta)?;
    let order = beta.order() as usize;
    if order > set.rho() + 1 {
        return Err(Error::InvalidArgument(format!(
            "factored route needs |β| ≤ ϱ_V + 1 = {}, got {order}",
            set.rho() + 1
        )));
    }
    let u = set.u_alpha(alpha)?;
    if order < u.len() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let vectors: Vec<&LatticeVector> = u.iter().map(|&i| &set.vectors()[i]).collect();
    let c = c_coefficient(beta, &vectors)?;
    let denom: f64 = vectors.iter().map(|v| v.dot(alpha) as f64).product();
    Ok(Complex64::new(
        *c.numer() as f64 / *c.denom() as f64 / denom,
        0.0,
    ))
}

/// Box spline with real direction vectors, evaluated by the de Boor–Höllig
/// recurrence. Directions whose removal breaks the span (coloops) are split off
/// as a unit-segment factor, reducing the dimension.
#[derive(Debug, Clone)]
struct RealBoxSpline {
    dim: usize,
    dirs: Vec<Vec<f64>>,
    // indexed by subset bitmask
    masks: Vec<Option<MaskInfo>>,
}

#[derive(Debug, Clone)]
enum MaskInfo {
    /// `#mask = dim`: half-open parallelepiped indicator.
    Base { matrix: Vec<Vec<f64>>, inv_det: f64 },
    /// Representation of `x` on the first spanning `dim`-subset.
    Recurse { basis: Vec<usize>, matrix: Vec<Vec<f64>> },
    /// A coloop `dir` splits off; the remainder lives in `dim − 1` coordinates.
    Coloop {
        frame: Vec<Vec<f64>>,
        inv_det: f64,
        sub: Box<RealBoxSpline>,
    },
}

fn transpose(cols: &[&Vec<f64>]) -> Vec<Vec<f64>> {
    let m = cols[0].len();
    (0..m).map(|r| cols.iter().map(|c| c[r]).collect()).collect()
}

const RANK_TOL: f64 = 1e-9;

impl RealBoxSpline {
    fn new(dirs: Vec<Vec<f64>>) -> Self {
        let n = dirs.len();
        let dim = dirs[0].len();
        let mut masks = vec![None; 1 << n];
        for (mask, slot) in masks.iter_mut().enumerate() {
            let members: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            if members.len() < dim {
                continue;
            }
            let rows: Vec<&[f64]> = members.iter().map(|&i| dirs[i].as_slice()).collect();
            if rank_dense(&rows, RANK_TOL) < dim {
                continue;
            }
            *slot = Some(Self::mask_info(&dirs, dim, &members));
        }
        Self { dim, dirs, masks }
    }

    fn mask_info(dirs: &[Vec<f64>], dim: usize, members: &[usize]) -> MaskInfo {
        if members.len() == dim {
            let cols: Vec<&Vec<f64>> = members.iter().map(|&i| &dirs[i]).collect();
            let matrix = transpose(&cols);
            let inv_det = 1.0 / det_dense(&matrix).abs();
            return MaskInfo::Base { matrix, inv_det };
        }
        for &c in members {
            let rest: Vec<usize> = members.iter().copied().filter(|&i| i != c).collect();
            let rows: Vec<&[f64]> = rest.iter().map(|&i| dirs[i].as_slice()).collect();
            if rank_dense(&rows, RANK_TOL) == dim {
                continue;
            }
            // basis of the hyperplane spanned by the rest, then the coloop
            let mut basis: Vec<usize> = Vec::new();
            for &i in &rest {
                basis.push(i);
                let rows: Vec<&[f64]> = basis.iter().map(|&j| dirs[j].as_slice()).collect();
                if rank_dense(&rows, RANK_TOL) < basis.len() {
                    basis.pop();
                }
                if basis.len() + 1 == dim {
                    break;
                }
            }
            let mut cols: Vec<&Vec<f64>> = basis.iter().map(|&i| &dirs[i]).collect();
            cols.push(&dirs[c]);
            let frame = transpose(&cols);
            let inv_det = 1.0 / det_dense(&frame).abs();
            let sub_dirs: Vec<Vec<f64>> = rest
                .iter()
                .map(|&i| {
                    let z = solve_dense(&frame, &dirs[i]).expect("frame is a basis");
                    z[..dim - 1].to_vec()
                })
                .collect();
            return MaskInfo::Coloop {
                frame,
                inv_det,
                sub: Box::new(RealBoxSpline::new(sub_dirs)),
            };
        }
        let mut basis: Vec<usize> = Vec::new();
        for &i in members {
            basis.push(i);
            let rows: Vec<&[f64]> = basis.iter().map(|&j| dirs[j].as_slice()).collect();
            if rank_dense(&rows, RANK_TOL) < basis.len() {
                basis.pop();
            }
            if basis.len() == dim {
                break;
            }
        }
        let cols: Vec<&Vec<f64>> = basis.iter().map(|&i| &dirs[i]).collect();
        let matrix = transpose(&cols);
        MaskInfo::Recurse { basis, matrix }
    }

    fn evaluate(&self, x: &[f64]) -> f64 {
        let full = (1u32 << self.dirs.len()) - 1;
        let mut memo = HashMap::new();
        self.eval(full, 0, x, &mut memo)
    }

    fn outside_bounds(&self, mask: u32, x: &[f64]) -> bool {
        (0..self.dim).any(|j| {
            let (mut lo, mut hi) = (0.0, 0.0);
            for (i, d) in self.dirs.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    if d[j] < 0.0 {
                        lo += d[j];
                    } else {
                        hi += d[j];
                    }
                }
            }
            x[j] < lo - 1e-12 || x[j] > hi + 1e-12
        })
    }

    fn eval(&self, mask: u32, shift: u32, x0: &[f64], memo: &mut HashMap<(u32, u32), f64>) -> f64 {
        if let Some(&v) = memo.get(&(mask, shift)) {
            return v;
        }
        let mut x = x0.to_vec();
        for (i, d) in self.dirs.iter().enumerate() {
            if shift & (1 << i) != 0 {
                for (xj, dj) in x.iter_mut().zip(d) {
                    *xj -= dj;
                }
            }
        }
        let value = if self.outside_bounds(mask, &x) {
            0.0
        } else {
            match self.masks[mask as usize].as_ref() {
                None => 0.0,
                Some(MaskInfo::Base { matrix, inv_det }) => match solve_dense(matrix, &x) {
                    Some(t) if t.iter().all(|&ti| (0.0..1.0).contains(&ti)) => *inv_det,
                    _ => 0.0,
                },
                Some(MaskInfo::Coloop {
                    frame,
                    inv_det,
                    sub,
                }) => {
                    let z = solve_dense(frame, &x).expect("frame is a basis");
                    let b = z[self.dim - 1];
                    if (0.0..1.0).contains(&b) {
                        sub.evaluate(&z[..self.dim - 1]) * inv_det
                    } else {
                        0.0
                    }
                }
                Some(MaskInfo::Recurse { basis, matrix }) => {
                    let coeffs = solve_dense(matrix, &x).expect("basis spans");
                    let count = mask.count_ones() as usize;
                    let mut sum = 0.0;
                    for i in 0..self.dirs.len() {
                        if mask & (1 << i) == 0 {
                            continue;
                        }
                        let t = basis
                            .iter()
                            .position(|&b| b == i)
                            .map(|p| coeffs[p])
                            .unwrap_or(0.0);
                        let rest = mask & !(1 << i);
                        if t != 0.0 {
                            sum += t * self.eval(rest, shift, x0, memo);
                        }
                        if t != 1.0 {
                            sum += (1.0 - t) * self.eval(rest, shift | (1 << i), x0, memo);
                        }
                    }
                    sum / (count - self.dim) as f64
                }
            }
        };
        memo.insert((mask, shift), value);
        value
    }
}

/// Default on-cut perturbation size.
pub const CUT_EPSILON: f64 = 1e-9;

/// Pointwise evaluator for `B_V`.
#[derive(Debug, Clone)]
pub struct BoxSpline {
    set: DirectionSet,
    inner: RealBoxSpline,
    cut_normals: Vec<LatticeVector>,
    epsilon: f64,
    perturbation: Vec<f64>,
}

impl BoxSpline {
    pub fn new(set: DirectionSet) -> Self {
        let dirs = set.vectors().iter().map(|v| v.to_f64()).collect();
        let cut_normals = set.cut_normals();
        let perturbation = (0..set.dim()).map(|j| PI.powi(-(j as i32))).collect();
        Self {
            inner: RealBoxSpline::new(dirs),
            set,
            cut_normals,
            epsilon: CUT_EPSILON,
            perturbation,
        }
    }

    pub fn set(&self) -> &DirectionSet {
        &self.set
    }

    pub fn dim(&self) -> usize {
        self.set.dim()
    }

    /// Primitive normals of the hyperplanes across which `B_V` changes polynomial piece.
    pub fn cut_normals(&self) -> &[LatticeVector] {
        &self.cut_normals
    }

    /// True when `x` lies (to rounding) on a lattice translate of a cut hyperplane.
    pub fn on_cut(&self, x: &[f64]) -> bool {
        self.cut_normals.iter().any(|n| {
            let s = n.dot_f64(x);
            (s - s.round()).abs() <= 1e-12 * (1.0 + s.abs())
        })
    }

    /// `B_V(x)`; points on cut hyperplanes are moved by `ε·(1, 1/π, 1/π², …)` first.
    pub fn evaluate(&self, x: &[f64]) -> f64 {
        if self.on_cut(x) {
            let y: Vec<f64> = x
                .iter()
                .zip(&self.perturbation)
                .map(|(xi, w)| xi + self.epsilon * w)
                .collect();
            self.inner.evaluate(&y)
        } else {
            self.inner.evaluate(x)
        }
    }

    /// Piecewise cell rule adapted to this box spline's cut hyperplanes.
    pub fn cell_rule(&self, order: usize) -> Result<CellRule> {
        CellRule::split(self.dim(), &self.cut_normals, order)
    }

    /// Unit cells `m + [0,1]^d` meeting the support.
    pub fn support_cells(&self) -> Vec<Vec<i64>> {
        let (lo, hi) = self.set.zonotope_bounds();
        lattice_box(&lo, &hi.iter().map(|h| h - 1).collect::<Vec<_>>())
    }
}

/// All integer points of the box `[lo, hi]` (inclusive), first axis fastest.
pub fn lattice_box(lo: &[i64], hi: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::with_capacity(lo.len())];
    for (&a, &b) in lo.iter().zip(hi) {
        out = (a..=b)
            .flat_map(|c| {
                out.iter().map(move |p| {
                    let mut p = p.clone();
                    p.push(c);
                    p
                })
            })
            .collect();
    }
    // reorder so the first axis varies fastest
    out.sort_by(|p, q| p.iter().rev().cmp(q.iter().rev()));
    out
}

/// Largest `#V` for the `[0,1]^n` tensor quadrature.
pub const MAX_TENSOR_DIRECTIONS: usize = 5;

/// Both sides of `∫ f B_V = ∫_{[0,1]^n} f(Vu) du`: the left by piecewise quadrature
/// over the support cells, the right by tensor Gauss–Legendre on the cube.
pub fn integral_identity_check(spline: &BoxSpline, f: &dyn Function) -> Result<(f64, f64)> {
    let set = spline.set();
    if set.len() > MAX_TENSOR_DIRECTIONS {
        return Err(Error::TooLarge {
            what: "directions for cube quadrature",
            size: set.len(),
            max: MAX_TENSOR_DIRECTIONS,
        });
    }
    let rule = spline.cell_rule(12)?;
    let mut lhs = 0.0;
    for cell in spline.support_cells() {
        for node in &rule.nodes {
            let x: Vec<f64> = node.point.iter().zip(&cell).map(|(z, &m)| z + m as f64).collect();
            let b = spline.evaluate(&x);
            if b != 0.0 {
                lhs += node.weight * b * f.value(&x);
            }
        }
    }

    let (u, w) = gauss_legendre(16);
    let n = set.len();
    let d = set.dim();
    let dirs: Vec<Vec<f64>> = set.vectors().iter().map(|v| v.to_f64()).collect();
    let total = u.len().pow(n as u32);
    let mut rhs = 0.0;
    let mut x = vec![0.0; d];
    for flat in 0..total {
        let mut idx = flat;
        let mut weight = 1.0;
        x.iter_mut().for_each(|xi| *xi = 0.0);
        for dir in &dirs {
            let k = idx % u.len();
            idx /= u.len();
            weight *= w[k];
            for (xi, vi) in x.iter_mut().zip(dir) {
                *xi += u[k] * vi;
            }
        }
        rhs += weight * f.value(&x);
    }
    Ok((lhs, rhs))
}
