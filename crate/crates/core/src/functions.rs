//! Smooth test functions with closed-form partial derivatives.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::lattice::MultiIndex;

/// Highest derivative order any test function supplies.
pub const MAX_DERIVATIVE: usize = 12;

/// `|f| < 1e-14` beyond this many scale units from a Gaussian's center.
pub fn gaussian_cutoff() -> f64 {
    (14.0 * std::f64::consts::LN_10 / PI).sqrt()
}

/// A function that can be projected: point values plus an effective support.
pub trait Function: Send + Sync {
    fn dim(&self) -> usize;

    fn value(&self, x: &[f64]) -> f64;

    /// Box outside which the function is negligible (`< 1e-14`); `None` if unbounded.
    fn support(&self) -> Option<(Vec<f64>, Vec<f64>)>;

    fn describe(&self) -> String;
}

/// A function with exact partial derivatives `D^β f`.
pub trait TestFunction: Function {
    fn derivative(&self, beta: &MultiIndex, x: &[f64]) -> f64;
}

/// One-dimensional factor of a separable function.
#[derive(Debug, Clone, PartialEq)]
pub enum Profile {
    /// `exp(−π (x − center)² / scale²)`
    Gaussian { scale: f64, center: f64 },
    /// `exp(−1 / (1 − s²))` with `s = (x − center)/radius`, zero for `|s| ≥ 1`
    Bump { radius: f64, center: f64 },
    /// `x^exponent`
    Power { exponent: u32 },
}

#[derive(Debug, Clone)]
struct Factor {
    profile: Profile,
    // derivative polynomials p_k, coefficients in ascending powers
    polys: Vec<Vec<f64>>,
}

fn poly_eval(p: &[f64], x: f64) -> f64 {
    p.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

fn poly_derivative(p: &[f64]) -> Vec<f64> {
    p.iter().enumerate().skip(1).map(|(i, &c)| i as f64 * c).collect()
}

fn poly_add(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len().max(b.len())];
    for (i, &c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, &c) in b.iter().enumerate() {
        out[i] += c;
    }
    out
}

fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

impl Factor {
    fn new(profile: Profile) -> Self {
        let mut polys = vec![vec![1.0]];
        match profile {
            Profile::Gaussian { scale, .. } => {
                // φ' = −2c y φ  ⇒  p_{k+1} = p_k' − 2c y p_k
                let c = PI / (scale * scale);
                for k in 0..MAX_DERIVATIVE {
                    let next = poly_add(&poly_derivative(&polys[k]), &poly_mul(&[0.0, -2.0 * c], &polys[k]));
                    polys.push(next);
                }
            }
            Profile::Bump { .. } => {
                // φ^{(k)} = p_k(s) q^{−2k} φ, q = 1 − s²
                let q = [1.0, 0.0, -1.0];
                let q2 = poly_mul(&q, &q);
                for k in 0..MAX_DERIVATIVE {
                    let p = &polys[k];
                    let a = poly_mul(&poly_derivative(p), &q2);
                    let sq = poly_mul(&[0.0, 4.0 * k as f64], &q);
                    let b = poly_mul(&poly_add(&sq, &[0.0, -2.0]), p);
                    polys.push(poly_add(&a, &b));
                }
            }
            Profile::Power { .. } => {}
        }
        Self { profile, polys }
    }

    fn derivative(&self, k: usize, x: f64) -> f64 {
        match self.profile {
            Profile::Gaussian { scale, center } => {
                let y = x - center;
                poly_eval(&self.polys[k], y) * (-PI * y * y / (scale * scale)).exp()
            }
            Profile::Bump { radius, center } => {
                let s = (x - center) / radius;
                if s.abs() >= 1.0 {
                    return 0.0;
                }
                let q = 1.0 - s * s;
                let phi = (-1.0 / q).exp();
                poly_eval(&self.polys[k], s) * phi / q.powi(2 * k as i32) / radius.powi(k as i32)
            }
            Profile::Power { exponent } => {
                let k = k as u32;
                if k > exponent {
                    return 0.0;
                }
                let falling: f64 = (exponent - k + 1..=exponent).map(|j| j as f64).product();
                falling * x.powi((exponent - k) as i32)
            }
        }
    }

    fn support(&self) -> Option<(f64, f64)> {
        match self.profile {
            Profile::Gaussian { scale, center } => {
                let r = scale * gaussian_cutoff();
                Some((center - r, center + r))
            }
            Profile::Bump { radius, center } => Some((center - radius, center + radius)),
            Profile::Power { .. } => None,
        }
    }
}

/// `f(x) = ∏_j φ_j(x_j)`.
#[derive(Debug, Clone)]
pub struct Separable {
    factors: Vec<Factor>,
    label: String,
}

impl Separable {
    pub fn new(profiles: Vec<Profile>, label: impl Into<String>) -> Self {
        Self {
            factors: profiles.into_iter().map(Factor::new).collect(),
            label: label.into(),
        }
    }

    /// `exp(−π|x|²/s²)` on `R^d`.
    pub fn gaussian(d: usize, scale: f64) -> Self {
        Self::new(
            vec![Profile::Gaussian { scale, center: 0.0 }; d],
            format!("gaussian(scale={scale})"),
        )
    }

    /// Product of one-dimensional bumps of the given radius, centered at 0.
    pub fn bump(d: usize, radius: f64) -> Self {
        Self::new(
            vec![Profile::Bump { radius, center: 0.0 }; d],
            format!("bump(radius={radius})"),
        )
    }

    /// The monomial `x^β`.
    pub fn monomial(beta: &MultiIndex) -> Self {
        Self::new(
            beta.exponents()
                .iter()
                .map(|&exponent| Profile::Power { exponent })
                .collect(),
            format!("monomial{beta}"),
        )
    }

    pub fn profiles(&self) -> impl Iterator<Item = &Profile> {
        self.factors.iter().map(|f| &f.profile)
    }
}

impl Function for Separable {
    fn dim(&self) -> usize {
        self.factors.len()
    }

    fn value(&self, x: &[f64]) -> f64 {
        self.factors
            .iter()
            .zip(x)
            .map(|(f, &xi)| f.derivative(0, xi))
            .product()
    }

    fn support(&self) -> Option<(Vec<f64>, Vec<f64>)> {
        let mut lo = Vec::with_capacity(self.factors.len());
        let mut hi = Vec::with_capacity(self.factors.len());
        for f in &self.factors {
            let (a, b) = f.support()?;
            lo.push(a);
            hi.push(b);
        }
        Some((lo, hi))
    }

    fn describe(&self) -> String {
        self.label.clone()
    }
}

impl TestFunction for Separable {
    fn derivative(&self, beta: &MultiIndex, x: &[f64]) -> f64 {
        assert!(
            beta.exponents().iter().all(|&b| b as usize <= MAX_DERIVATIVE),
            "derivative order above {MAX_DERIVATIVE}"
        );
        self.factors
            .iter()
            .zip(beta.exponents())
            .zip(x)
            .map(|((f, &b), &xi)| f.derivative(b as usize, xi))
            .product()
    }
}

/// `x ↦ f(x / h)`, i.e. `σ_h f`.
#[derive(Clone)]
pub struct Dilated {
    inner: Arc<dyn TestFunction>,
    h: f64,
}

impl Dilated {
    pub fn new(inner: Arc<dyn TestFunction>, h: f64) -> Self {
        assert!(h > 0.0, "dilation factor must be positive");
        Self { inner, h }
    }
}

impl Function for Dilated {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn value(&self, x: &[f64]) -> f64 {
        let y: Vec<f64> = x.iter().map(|xi| xi / self.h).collect();
        self.inner.value(&y)
    }

    fn support(&self) -> Option<(Vec<f64>, Vec<f64>)> {
        let (lo, hi) = self.inner.support()?;
        Some((
            lo.iter().map(|a| a * self.h).collect(),
            hi.iter().map(|b| b * self.h).collect(),
        ))
    }

    fn describe(&self) -> String {
        format!("dilate({}, h={})", self.inner.describe(), self.h)
    }
}

impl TestFunction for Dilated {
    fn derivative(&self, beta: &MultiIndex, x: &[f64]) -> f64 {
        let y: Vec<f64> = x.iter().map(|xi| xi / self.h).collect();
        self.inner.derivative(beta, &y) / self.h.powi(beta.order() as i32)
    }
}

/// Any closure with a declared support, for inputs without derivatives.
pub struct FnFunction<F> {
    dim: usize,
    f: F,
    support: Option<(Vec<f64>, Vec<f64>)>,
    label: String,
}

impl<F: Fn(&[f64]) -> f64 + Send + Sync> FnFunction<F> {
    pub fn new(dim: usize, f: F, support: Option<(Vec<f64>, Vec<f64>)>, label: impl Into<String>) -> Self {
        Self {
            dim,
            f,
            support,
            label: label.into(),
        }
    }
}

impl<F: Fn(&[f64]) -> f64 + Send + Sync> Function for FnFunction<F> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn value(&self, x: &[f64]) -> f64 {
        (self.f)(x)
    }

    fn support(&self) -> Option<(Vec<f64>, Vec<f64>)> {
        self.support.clone()
    }

    fn describe(&self) -> String {
        self.label.clone()
    }
}

/// Largest deviation between supplied first/second derivatives and
/// Richardson-extrapolated central differences, over the given points.
pub fn derivative_self_test(f: &dyn TestFunction, points: &[Vec<f64>], max_order: u32) -> f64 {
    let d = f.dim();
    let mut worst: f64 = 0.0;
    for beta in (1..=max_order).flat_map(|k| MultiIndex::all_of_order(d, k)) {
        // differentiate the (|β|−1)-order derivative along one axis
        let axis = beta.exponents().iter().position(|&b| b > 0).unwrap();
        let mut lower = beta.clone();
        lower.0[axis] -= 1;
        for x in points {
            let central = |h: f64| {
                let mut xp = x.clone();
                let mut xm = x.clone();
                xp[axis] += h;
                xm[axis] -= h;
                (f.derivative(&lower, &xp) - f.derivative(&lower, &xm)) / (2.0 * h)
            };
            let h = 1e-3;
            let estimate = (4.0 * central(h / 2.0) - central(h)) / 3.0;
            let exact = f.derivative(&beta, x);
            worst = worst.max((estimate - exact).abs() / (1.0 + exact.abs()));
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn gaussian_closed_forms() {
        let g = Separable::gaussian(2, 1.0);
        let x = [0.3, -0.7];
        let r2 = x[0] * x[0] + x[1] * x[1];
        let e = (-PI * r2).exp();
        assert_abs_diff_eq!(g.value(&x), e, epsilon = 1e-15);
        // ∂²/∂x1∂x2 = 4π² x1 x2 e
        assert_abs_diff_eq!(
            g.derivative(&MultiIndex::new([1, 1]), &x),
            4.0 * PI * PI * x[0] * x[1] * e,
            epsilon = 1e-13
        );
        // ∂²/∂x1² = (4π²x1² − 2π) e
        assert_abs_diff_eq!(
            g.derivative(&MultiIndex::new([2, 0]), &x),
            (4.0 * PI * PI * x[0] * x[0] - 2.0 * PI) * e,
            epsilon = 1e-13
        );
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let points: Vec<Vec<f64>> = vec![vec![0.1, 0.2], vec![-0.45, 0.6], vec![0.8, -0.3]];
        let funcs: Vec<Box<dyn TestFunction>> = vec![
            Box::new(Separable::gaussian(2, 1.0)),
            Box::new(Separable::gaussian(2, 1.7)),
            Box::new(Separable::bump(2, 1.5)),
            Box::new(Separable::monomial(&MultiIndex::new([3, 2]))),
        ];
        for f in &funcs {
            let err = derivative_self_test(f.as_ref(), &points, 5);
            assert!(err < 1e-7, "{}: {err}", f.describe());
        }
    }

    #[test]
    fn bump_vanishes_outside_support() {
        let b = Separable::bump(1, 2.0);
        assert_eq!(b.value(&[2.0]), 0.0);
        assert_eq!(b.value(&[-3.0]), 0.0);
        assert_abs_diff_eq!(b.value(&[0.0]), (-1.0f64).exp(), epsilon = 1e-15);
        assert_eq!(b.derivative(&MultiIndex::new([3]), &[2.5]), 0.0);
    }

    #[test]
    fn dilation_chain_rule() {
        let g: Arc<dyn TestFunction> = Arc::new(Separable::gaussian(1, 1.0));
        let d = Dilated::new(g.clone(), 0.25);
        let x = [0.1];
        assert_abs_diff_eq!(d.value(&x), g.value(&[0.4]), epsilon = 1e-15);
        assert_abs_diff_eq!(
            d.derivative(&MultiIndex::new([2]), &x),
            16.0 * g.derivative(&MultiIndex::new([2]), &[0.4]),
            epsilon = 1e-12
        );
        let (lo, hi) = d.support().unwrap();
        assert_abs_diff_eq!(hi[0], 0.25 * gaussian_cutoff(), epsilon = 1e-15);
        assert_abs_diff_eq!(lo[0], -hi[0], epsilon = 1e-15);
    }

    #[test]
    fn gaussian_support_threshold() {
        let g = Separable::gaussian(1, 1.3);
        let (_, hi) = g.support().unwrap();
        assert!(g.value(&hi) <= 1.0001e-14);
        assert!(g.value(&[hi[0] * 0.99]) > 1e-14);
    }
}
