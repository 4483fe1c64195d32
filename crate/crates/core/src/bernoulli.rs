//! Periodic Bernoulli polynomials, Bernoulli splines `B(V,U)`, and the
//! projection-error functions `L_β`.
//!
//! `B^k(t) = Σ_{n≠0} e^{2πint} / (2πin)^k` is realized in closed form as
//! `−b_k({t}) / k!`, with `b_k` the classical Bernoulli polynomial. In
//! particular `B¹(t) = 1/2 − {t}` on `(0, 1)` and `B¹` is taken to be 0 at the
//! integers, where its Fourier series converges to 0.
//!
//! `L_β` has two independent evaluations: the finite expansion
//! `Σ_{U∈Λ} C(β,U) B(V,U)` ([`l_beta_expansion`]) and the lattice Fourier
//! series with coefficients `D^β B̂_V(α)` ([`l_beta_series`]).

use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::box_spline::{dbeta_bhat, DerivativeRoute};
use crate::error::{Error, Result};
use crate::lattice::{c_coefficient, factorial, DirectionSet, HyperplaneClass, LatticeVector, MultiIndex};
use crate::quadrature::gauss_legendre;

/// Bernoulli numbers `B_0 … B_n` with `B_1 = −1/2`.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational64> {
    let mut b = vec![Rational64::from_integer(1)];
    for m in 1..=n {
        // Σ_{j=0}^{m} C(m+1, j) B_j = 0
        let mut binom = 1i64;
        let mut sum = Rational64::zero();
        for (j, bj) in b.iter().enumerate() {
            sum += *bj * binom;
            binom = binom * (m as i64 + 1 - j as i64) / (j as i64 + 1);
        }
        b.push(-sum / (m as i64 + 1));
    }
    b
}

/// Coefficients of `b_k(t)` in ascending powers of `t`.
pub fn bernoulli_polynomial(k: usize) -> Vec<Rational64> {
    let b = bernoulli_numbers(k);
    let mut coeffs = vec![Rational64::zero(); k + 1];
    let mut binom = 1i64;
    for (j, bj) in b.iter().enumerate() {
        coeffs[k - j] = *bj * binom;
        binom = binom * (k as i64 - j as i64) / (j as i64 + 1);
    }
    coeffs
}

fn to_f64(r: &Rational64) -> f64 {
    r.to_f64().expect("rational fits in f64")
}

/// `B^k(t) = −b_k({t}) / k!`, with `B¹ = 0` at integers.
pub fn bernoulli_periodic(k: u32, t: f64) -> f64 {
    assert!(k >= 1, "periodic Bernoulli functions start at k = 1");
    let frac = t - t.floor();
    if k == 1 && frac == 0.0 {
        return 0.0;
    }
    let coeffs = bernoulli_polynomial(k as usize);
    let value = coeffs.iter().rev().fold(0.0, |acc, c| acc * frac + to_f64(c));
    -value / factorial(k) as f64
}

/// Partial sum `Σ_{0<|n|≤N} e^{2πint} / (2πin)^k` of the defining series.
pub fn bernoulli_series(k: u32, t: f64, terms: usize) -> f64 {
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 1..=terms as i64 {
        for m in [n, -n] {
            let z = Complex64::new(0.0, 2.0 * PI * m as f64);
            sum += (z * t).exp() / z.powu(k);
        }
    }
    sum.re
}

/// `∫₀¹ |B^k|² = |B_{2k}| / (2k)!`, exact.
pub fn bernoulli_l2_norm_sq(k: u32) -> f64 {
    let b = bernoulli_numbers(2 * k as usize);
    let num = to_f64(&b[2 * k as usize].abs());
    num / (1..=2 * k).map(|j| j as f64).product::<f64>()
}

/// Zeros of `B^k` inside `(0, 1)`.
pub fn bernoulli_zeros(k: u32) -> Vec<f64> {
    let coeffs: Vec<f64> = bernoulli_polynomial(k as usize).iter().map(to_f64).collect();
    let p = |t: f64| coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c);
    let samples = 4096;
    let mut zeros = Vec::new();
    let mut prev_t = 1e-12;
    let mut prev = p(prev_t);
    for i in 1..=samples {
        let t = if i == samples { 1.0 - 1e-12 } else { i as f64 / samples as f64 };
        let cur = p(t);
        if cur == 0.0 {
            zeros.push(t);
        } else if prev * cur < 0.0 {
            let (mut a, mut b) = (prev_t, t);
            for _ in 0..200 {
                let m = 0.5 * (a + b);
                if p(a) * p(m) <= 0.0 {
                    b = m;
                } else {
                    a = m;
                }
            }
            zeros.push(0.5 * (a + b));
        }
        prev_t = t;
        prev = cur;
    }
    zeros
}

/// `∫₀¹ |B^k(t)|^p dt`, by Gauss rules on the sign-constant pieces.
pub fn bernoulli_lp_norm_p(k: u32, p: f64) -> f64 {
    let mut breaks = vec![0.0];
    breaks.extend(bernoulli_zeros(k));
    breaks.push(1.0);
    let (x, w) = gauss_legendre(24);
    breaks
        .windows(2)
        .map(|ab| {
            let (a, b) = (ab[0], ab[1]);
            x.iter()
                .zip(&w)
                .map(|(&xi, &wi)| wi * (b - a) * bernoulli_periodic(k, a + xi * (b - a)).abs().powf(p))
                .sum::<f64>()
        })
        .sum()
}

/// `B(V,U)(x) = B^k(α_U·x) ∏_{v∈U} 1/(α_U·v)` with `k = #U`.
#[derive(Debug, Clone, PartialEq)]
pub struct BernoulliSplineTerm {
    pub class: HyperplaneClass,
    pub degree: u32,
    pub scale: Rational64,
}

impl BernoulliSplineTerm {
    pub fn new(class: HyperplaneClass) -> Self {
        Self {
            degree: class.members.len() as u32,
            scale: class.scale(),
            class,
        }
    }

    pub fn scale_f64(&self) -> f64 {
        to_f64(&self.scale)
    }

    pub fn evaluate(&self, x: &[f64]) -> f64 {
        bernoulli_periodic(self.degree, self.class.alpha.dot_f64(x)) * self.scale_f64()
    }

    /// Symmetric partial sum of the lattice Fourier series over `α = kα_U`, `0 < |k| ≤ N`.
    pub fn series(&self, x: &[f64], terms: usize) -> Complex64 {
        let t = self.class.alpha.dot_f64(x);
        let mut sum = Complex64::new(0.0, 0.0);
        for n in 1..=terms as i64 {
            for k in [n, -n] {
                let denom: Complex64 = self
                    .class
                    .denominators
                    .iter()
                    .map(|&q| Complex64::new(0.0, 2.0 * PI * (k * q) as f64))
                    .product();
                sum += Complex64::new(0.0, 2.0 * PI * k as f64 * t).exp() / denom;
            }
        }
        sum
    }

    /// The same spline with `α_U` replaced by `−α_U`.
    pub fn negated(&self) -> Self {
        let mut class = self.class.clone();
        class.alpha = class.alpha.neg();
        class.denominators.iter_mut().for_each(|q| *q = -*q);
        Self::new(class)
    }
}

/// Evaluates `B(V,U)` for the class `U`.
pub fn bvu_evaluate(term: &BernoulliSplineTerm, x: &[f64]) -> f64 {
    term.evaluate(x)
}

/// Partial sum of the defining lattice series of `B(V,U)`.
pub fn bvu_series(term: &BernoulliSplineTerm, x: &[f64], terms: usize) -> Complex64 {
    term.series(x, terms)
}

/// The Bernoulli splines of every class in `Λ`.
pub fn bernoulli_splines(set: &DirectionSet) -> Result<Vec<BernoulliSplineTerm>> {
    Ok(set
        .lambda_set()?
        .into_iter()
        .map(BernoulliSplineTerm::new)
        .collect())
}

/// `L_β = Σ_{U∈Λ} C(β,U) B(V,U)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorFunctionExpansion {
    pub beta: MultiIndex,
    pub terms: Vec<(BernoulliSplineTerm, Rational64)>,
}

impl ErrorFunctionExpansion {
    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_zero())
    }

    pub fn evaluate(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(t, c)| to_f64(c) * t.evaluate(x))
            .sum()
    }
}

/// Closed-form expansion of `L_β` for a unimodular set and `|β| ≤ ϱ_V + 1`.
/// Empty when `|β| ≤ ϱ_V`.
pub fn l_beta_expansion(set: &DirectionSet, beta: &MultiIndex) -> Result<ErrorFunctionExpansion> {
    set.require_unimodular()?;
    check_order(set, beta)?;
    if (beta.order() as usize) <= set.rho() {
        return Ok(ErrorFunctionExpansion {
            beta: beta.clone(),
            terms: Vec::new(),
        });
    }
    let mut terms = Vec::new();
    for class in set.lambda_set()? {
        let vectors = class.member_vectors(set);
        let c = c_coefficient(beta, &vectors)?;
        terms.push((BernoulliSplineTerm::new(class), c));
    }
    Ok(ErrorFunctionExpansion {
        beta: beta.clone(),
        terms,
    })
}

fn check_order(set: &DirectionSet, beta: &MultiIndex) -> Result<()> {
    if beta.dim() != set.dim() {
        return Err(Error::DimensionMismatch {
            index: 0,
            expected: set.dim(),
            found: beta.dim(),
        });
    }
    if beta.order() as usize > set.rho() + 1 {
        return Err(Error::InvalidArgument(format!(
            "|β| = {} exceeds ϱ_V + 1 = {}",
            beta.order(),
            set.rho() + 1
        )));
    }
    Ok(())
}

/// `(1/2πi)^{|β|} Σ_{0<|α|_∞≤N} D^β B̂_V(α) e^{2πiα·x}` at every point of `xs`.
pub fn l_beta_series(
    set: &DirectionSet,
    beta: &MultiIndex,
    xs: &[Vec<f64>],
    radius: usize,
    route: DerivativeRoute,
) -> Result<Vec<Complex64>> {
    set.require_unimodular()?;
    check_order(set, beta)?;
    let d = set.dim();
    let order = beta.order() as usize;
    let n = radius as i64;
    let side = (2 * n + 1) as usize;
    let total = side.pow(d as u32);
    let mut sums = vec![Complex64::new(0.0, 0.0); xs.len()];
    let mut alpha = LatticeVector(vec![0; d]);
    for flat in 0..total {
        let mut idx = flat;
        for a in alpha.0.iter_mut() {
            *a = (idx % side) as i64 - n;
            idx /= side;
        }
        if alpha.is_zero() {
            continue;
        }
        if route == DerivativeRoute::Factored {
            // more non-orthogonal directions than derivatives: the coefficient vanishes
            let nonorthogonal = set.vectors().iter().filter(|v| v.dot(&alpha) != 0).count();
            if nonorthogonal > order {
                continue;
            }
        }
        let coeff = dbeta_bhat(set, beta, &alpha, route)?;
        if coeff.norm() == 0.0 {
            continue;
        }
        for (s, x) in sums.iter_mut().zip(xs) {
            let phase = 2.0 * PI * alpha.dot_f64(x);
            *s += coeff * Complex64::new(phase.cos(), phase.sin());
        }
    }
    let prefactor = Complex64::new(0.0, 1.0 / (2.0 * PI)).powu(order as u32);
    // (1/(2πi))^k = (−i/(2π))^k
    let prefactor = prefactor.conj();
    Ok(sums.into_iter().map(|s| s * prefactor).collect())
}

/// Tail bound for the `B(V,U)` series at radius `N`:
/// `Σ_{|k|>N} |k|^{−deg} ∏|α_U·v|^{−1} ≤ 2/((deg−1) N^{deg−1}) · |scale| / (2π)^deg`.
pub fn series_tail_bound(term: &BernoulliSplineTerm, terms: usize) -> f64 {
    let k = term.degree as f64;
    if term.degree < 2 {
        return f64::INFINITY;
    }
    2.0 / ((k - 1.0) * (terms as f64).powf(k - 1.0)) * term.scale_f64().abs() / (2.0 * PI).powf(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::CellRule;
    use approx::assert_abs_diff_eq;

    fn set(rows: &[&[i64]]) -> DirectionSet {
        DirectionSet::from_rows(rows).unwrap()
    }

    #[test]
    fn bernoulli_numbers_known_values() {
        let b = bernoulli_numbers(8);
        assert_eq!(b[1], Rational64::new(-1, 2));
        assert_eq!(b[2], Rational64::new(1, 6));
        assert_eq!(b[3], Rational64::zero());
        assert_eq!(b[4], Rational64::new(-1, 30));
        assert_eq!(b[8], Rational64::new(-1, 30));
        assert_eq!(
            bernoulli_polynomial(2),
            vec![Rational64::new(1, 6), Rational64::from_integer(-1), Rational64::from_integer(1)]
        );
    }

    #[test]
    fn periodic_values() {
        assert_eq!(bernoulli_periodic(1, 0.0), 0.0);
        assert_eq!(bernoulli_periodic(1, 3.0), 0.0);
        assert_abs_diff_eq!(bernoulli_periodic(1, 0.25), 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(bernoulli_periodic(1, -0.75), 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(bernoulli_periodic(3, 0.0), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(bernoulli_periodic(2, 0.0), -1.0 / 12.0, epsilon = 1e-15);
    }

    #[test]
    fn series_converges_to_closed_form() {
        // B¹: slowly, pointwise
        let s = bernoulli_series(1, 0.25, 100_000);
        assert_abs_diff_eq!(s, 0.25, epsilon = 1e-5);
        assert_abs_diff_eq!(bernoulli_series(1, 0.0, 1000), 0.0, epsilon = 1e-15);
        for k in 2..=5 {
            for &t in &[0.0, 0.1, 0.37, 0.5, 0.93] {
                let s = bernoulli_series(k, t, 20_000);
                let tail = 2.0 / ((k as f64 - 1.0) * 20_000f64.powi(k as i32 - 1)) / (2.0 * PI).powi(k as i32);
                assert!((s - bernoulli_periodic(k, t)).abs() <= tail + 1e-14, "k={k} t={t}");
            }
        }
    }

    #[test]
    fn l2_norms_from_zeta_values() {
        assert_abs_diff_eq!(bernoulli_l2_norm_sq(1), 1.0 / 12.0, epsilon = 1e-17);
        assert_abs_diff_eq!(bernoulli_l2_norm_sq(2), 1.0 / 720.0, epsilon = 1e-18);
        for k in 1..=5 {
            assert_abs_diff_eq!(bernoulli_lp_norm_p(k, 2.0), bernoulli_l2_norm_sq(k), epsilon = 1e-15);
        }
        // Parseval: Σ 2/(2πn)^{2k}
        let parseval: f64 = (1..200_000).map(|n| 2.0 / (2.0 * PI * n as f64).powi(4)).sum();
        assert_abs_diff_eq!(parseval, 1.0 / 720.0, epsilon = 1e-15);
    }

    #[test]
    fn zeros_of_b2() {
        let z = bernoulli_zeros(2);
        assert_eq!(z.len(), 2);
        assert_abs_diff_eq!(z[0], 0.5 - 0.5 / 3f64.sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(z[1], 0.5 + 0.5 / 3f64.sqrt(), epsilon = 1e-12);
        assert_eq!(bernoulli_zeros(3).len(), 1);
    }

    #[test]
    fn bvu_examples() {
        let tensor = set(&[&[1, 0], &[0, 1]]);
        let splines = bernoulli_splines(&tensor).unwrap();
        assert_abs_diff_eq!(splines[0].evaluate(&[0.25, 0.9]), 0.25, epsilon = 1e-15);

        let courant = set(&[&[1, 0], &[0, 1], &[1, 1]]);
        let splines = bernoulli_splines(&courant).unwrap();
        let first = &splines[0];
        assert_eq!(first.class.members, vec![0, 1]);
        assert_abs_diff_eq!(first.evaluate(&[0.5, 0.5]), 1.0 / 12.0, epsilon = 1e-15);
        for t in &splines {
            let x = [0.31, 0.77];
            assert_abs_diff_eq!(t.evaluate(&x), t.evaluate(&[x[0] + 2.0, x[1] - 3.0]), epsilon = 1e-13);
        }

        let hat = set(&[&[1], &[1]]);
        let term = &bernoulli_splines(&hat).unwrap()[0];
        let s = term.series(&[0.0], 5000);
        assert!((s.re + 1.0 / 12.0).abs() <= series_tail_bound(term, 5000));
    }

    #[test]
    fn series_imaginary_parts_cancel() {
        let courant = set(&[&[1, 0], &[0, 1], &[1, 1]]);
        for term in bernoulli_splines(&courant).unwrap() {
            let s = term.series(&[0.123, 0.456], 500);
            assert!(s.im.abs() < 1e-12);
            assert!((s.re - term.evaluate(&[0.123, 0.456])).abs() <= series_tail_bound(&term, 500));
        }
    }

    #[test]
    fn sign_normalization_is_immaterial() {
        let sets = [
            set(&[&[1, 0], &[0, 1], &[1, 1]]),
            set(&[&[1], &[1], &[1]]),
            set(&[&[1, 0], &[1, 0], &[0, 1], &[0, 1], &[1, 1], &[1, 1]]),
        ];
        for s in &sets {
            for term in bernoulli_splines(s).unwrap() {
                let neg = term.negated();
                for x in [[0.13, 0.71], [0.5, 0.25], [0.9, 0.05]] {
                    let x = &x[..s.dim()];
                    assert_abs_diff_eq!(term.evaluate(x), neg.evaluate(x), epsilon = 1e-14);
                }
            }
        }
    }

    #[test]
    fn bernoulli_splines_are_orthogonal() {
        let courant = set(&[&[1, 0], &[0, 1], &[1, 1]]);
        let splines = bernoulli_splines(&courant).unwrap();
        let normals: Vec<_> = splines.iter().map(|t| t.class.alpha.clone()).collect();
        let rule = CellRule::split(2, &normals, 8).unwrap();
        for i in 0..splines.len() {
            for j in i + 1..splines.len() {
                let ip = rule.integrate(|x| splines[i].evaluate(x) * splines[j].evaluate(x));
                assert!(ip.abs() <= 1e-10, "{i},{j}: {ip}");
            }
        }
    }

    #[test]
    fn l_beta_expansion_examples() {
        let haar = set(&[&[1]]);
        let e = l_beta_expansion(&haar, &MultiIndex::new([1])).unwrap();
        assert_eq!(e.terms.len(), 1);
        assert_eq!(e.terms[0].1, Rational64::from_integer(1));
        assert_abs_diff_eq!(e.evaluate(&[0.3]), 0.2, epsilon = 1e-15);

        let tensor = set(&[&[1, 0], &[0, 1]]);
        let e = l_beta_expansion(&tensor, &MultiIndex::new([1, 0])).unwrap();
        let coeffs: Vec<_> = e.terms.iter().map(|(_, c)| *c).collect();
        assert_eq!(coeffs, vec![Rational64::from_integer(1), Rational64::zero()]);
        assert_abs_diff_eq!(e.evaluate(&[0.1, 0.7]), 0.4, epsilon = 1e-15);
        assert!(l_beta_expansion(&tensor, &MultiIndex::new([0, 0])).unwrap().terms.is_empty());

        let courant = set(&[&[1, 0], &[0, 1], &[1, 1]]);
        let e = l_beta_expansion(&courant, &MultiIndex::new([1, 1])).unwrap();
        assert!(e.terms.iter().all(|(_, c)| *c == Rational64::from_integer(1)));

        assert!(l_beta_expansion(&courant, &MultiIndex::new([2, 1])).is_err());
        let zp = set(&[&[1, 0], &[0, 1], &[1, 1], &[1, -1]]);
        assert!(matches!(
            l_beta_expansion(&zp, &MultiIndex::new([1, 1])),
            Err(Error::NotUnimodular { .. })
        ));
    }

    #[test]
    fn series_route_matches_expansion_small_radius() {
        let courant = set(&[&[1, 0], &[0, 1], &[1, 1]]);
        let xs = vec![vec![0.2, 0.7], vec![0.61, 0.13]];
        for beta in MultiIndex::all_of_order(2, 2) {
            let exp = l_beta_expansion(&courant, &beta).unwrap();
            for route in [DerivativeRoute::Leibniz, DerivativeRoute::Factored] {
                let s = l_beta_series(&courant, &beta, &xs, 60, route).unwrap();
                for (x, v) in xs.iter().zip(&s) {
                    assert!((v.re - exp.evaluate(x)).abs() < 2e-3, "{beta} {route:?}");
                    assert!(v.im.abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn series_vanishes_below_order() {
        let b3 = set(&[&[1], &[1], &[1]]);
        let xs = vec![vec![0.3], vec![0.8]];
        for k in 0..=2 {
            let s = l_beta_series(&b3, &MultiIndex::new([k]), &xs, 50, DerivativeRoute::Factored).unwrap();
            assert!(s.iter().all(|v| v.norm() == 0.0));
        }
        let s = l_beta_series(&b3, &MultiIndex::new([1]), &xs, 50, DerivativeRoute::Leibniz).unwrap();
        assert!(s.iter().all(|v| v.norm() < 1e-10));
    }

    #[test]
    fn haar_series_at_discontinuity() {
        let haar = set(&[&[1]]);
        let s = l_beta_series(&haar, &MultiIndex::new([1]), &[vec![0.0]], 1000, DerivativeRoute::Factored).unwrap();
        assert!(s[0].norm() < 1e-12);
    }
}
