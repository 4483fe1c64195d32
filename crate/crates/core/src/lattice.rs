//! Integer-lattice combinatorics of box-spline direction sets.
//!
//! Everything here is exact: ranks and determinants use integer elimination
//! over `i128`, and the polynomial coefficients `C(β, U)` are rationals.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_rational::Rational64;

use crate::error::{Error, Result};

/// Largest direction set accepted; every subset enumeration is exhaustive.
pub const MAX_DIRECTIONS: usize = 16;

/// A point of `Z^d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector(pub Vec<i64>);

impl LatticeVector {
    pub fn new(coords: impl Into<Vec<i64>>) -> Self {
        Self(coords.into())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn dot(&self, other: &LatticeVector) -> i64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn dot_f64(&self, x: &[f64]) -> f64 {
        self.0.iter().zip(x).map(|(&a, b)| a as f64 * b).sum()
    }

    pub fn neg(&self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|c| -c).collect())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(|&c| c as f64).collect()
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A multi-index `β ∈ N^d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: impl Into<Vec<u32>>) -> Self {
        Self(exponents.into())
    }

    pub fn zero(d: usize) -> Self {
        Self(vec![0; d])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// `|β|`
    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `β!`
    pub fn factorial(&self) -> i64 {
        self.0.iter().map(|&b| factorial(b)).product()
    }

    /// `x^β`
    pub fn monomial(&self, x: &[f64]) -> f64 {
        self.0
            .iter()
            .zip(x)
            .map(|(&b, &xi)| xi.powi(b as i32))
            .product()
    }

    /// Componentwise `self ≤ other`.
    pub fn le(&self, other: &MultiIndex) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// All multi-indices of dimension `d` with `|β| = order`, in lexicographically
    /// decreasing order of the first coordinate.
    pub fn all_of_order(d: usize, order: u32) -> Vec<MultiIndex> {
        fn rec(d: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if prefix.len() + 1 == d {
                prefix.push(left);
                out.push(MultiIndex(prefix.clone()));
                prefix.pop();
                return;
            }
            for b in (0..=left).rev() {
                prefix.push(b);
                rec(d, left - b, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if d == 0 {
            return out;
        }
        rec(d, order, &mut Vec::with_capacity(d), &mut out);
        out
    }

    /// All multi-indices `γ ≤ self`.
    pub fn lower_set(&self) -> Vec<MultiIndex> {
        let mut out = vec![MultiIndex(Vec::with_capacity(self.dim()))];
        for &b in &self.0 {
            out = out
                .into_iter()
                .flat_map(|g| {
                    (0..=b).map(move |c| {
                        let mut g = g.clone();
                        g.0.push(c);
                        g
                    })
                })
                .collect();
        }
        out
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

pub(crate) fn factorial(n: u32) -> i64 {
    (1..=n as i64).product()
}

/// Rank of an integer matrix given by rows; rows are kept primitive during elimination.
pub fn integer_rank(rows: &[&[i64]]) -> usize {
    let Some(first) = rows.first() else {
        return 0;
    };
    let cols = first.len();
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let pivot_row = m[rank].clone();
        for row in m.iter_mut().skip(rank + 1) {
            let factor = row[col];
            if factor == 0 {
                continue;
            }
            for (x, &p) in row.iter_mut().zip(&pivot_row) {
                *x = pivot_row[col] * *x - factor * p;
            }
            let g = row.iter().fold(0i128, |g, &x| g.gcd(&x));
            if g > 1 {
                row.iter_mut().for_each(|x| *x /= g);
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Determinant of a square integer matrix by Bareiss elimination.
pub fn integer_det(rows: &[&[i64]]) -> i128 {
    let n = rows.len();
    if n == 0 {
        return 1;
    }
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&r| m[r][k] != 0) else {
                return 0;
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// True iff the rational rank of `subset` equals `d`.
pub fn spans_full(subset: &[LatticeVector], d: usize) -> Result<bool> {
    for (index, v) in subset.iter().enumerate() {
        if v.dim() != d {
            return Err(Error::DimensionMismatch {
                index,
                expected: d,
                found: v.dim(),
            });
        }
    }
    let rows: Vec<&[i64]> = subset.iter().map(|v| v.coords()).collect();
    Ok(integer_rank(&rows) == d)
}

/// All `k`-element index subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// An element `U` of `Λ`: `ϱ_V + 1` directions whose removal leaves a hyperplane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperplaneClass {
    /// Indices into the direction set.
    pub members: Vec<usize>,
    /// Primitive normal of `span(V \ U)`, first nonzero coordinate positive.
    pub alpha: LatticeVector,
    /// `α_U · v` for each member `v`, in member order.
    pub denominators: Vec<i64>,
}

impl HyperplaneClass {
    /// `∏_{v∈U} 1/(α_U·v)`
    pub fn scale(&self) -> Rational64 {
        self.denominators
            .iter()
            .fold(Rational64::from_integer(1), |acc, &q| acc / q)
    }

    pub fn member_vectors<'a>(&self, set: &'a DirectionSet) -> Vec<&'a LatticeVector> {
        self.members.iter().map(|&i| &set.vectors[i]).collect()
    }
}

/// An admissible multiset of nonzero integer directions spanning `R^d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectionSet {
    vectors: Vec<LatticeVector>,
    dim: usize,
    rho: usize,
    unimodular: bool,
}

impl DirectionSet {
    pub fn new(vectors: Vec<LatticeVector>) -> Result<Self> {
        let dim = vectors.first().map(|v| v.dim()).unwrap_or(0);
        if vectors.len() > MAX_DIRECTIONS {
            return Err(Error::TooManyDirections {
                found: vectors.len(),
                max: MAX_DIRECTIONS,
            });
        }
        if let Some(index) = vectors.iter().position(|v| v.is_zero()) {
            return Err(Error::ZeroDirection(index));
        }
        if dim == 0 || !spans_full(&vectors, dim)? {
            return Err(Error::NotSpanning(dim));
        }
        let mut set = Self {
            vectors,
            dim,
            rho: 0,
            unimodular: false,
        };
        set.rho = set.compute_rho();
        set.unimodular = set.compute_unimodular().is_ok();
        Ok(set)
    }

    pub fn from_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::new(rows.iter().map(|r| LatticeVector::new(r.to_vec())).collect())
    }

    pub fn vectors(&self) -> &[LatticeVector] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `ϱ_V`: the largest `r` such that deleting any `r` directions still spans.
    pub fn rho(&self) -> usize {
        self.rho
    }

    pub fn is_unimodular(&self) -> bool {
        self.unimodular
    }

    /// Fails with [`Error::NotUnimodular`] carrying an offending determinant.
    pub fn require_unimodular(&self) -> Result<()> {
        self.compute_unimodular()
    }

    fn subset_spans(&self, keep: impl Iterator<Item = usize>) -> bool {
        let rows: Vec<&[i64]> = keep.map(|i| self.vectors[i].coords()).collect();
        integer_rank(&rows) == self.dim
    }

    fn compute_rho(&self) -> usize {
        let n = self.len();
        let mut rho = 0;
        for r in 1..=n - self.dim {
            let all_span = combinations(n, r).iter().all(|del| {
                self.subset_spans((0..n).filter(|i| !del.contains(i)))
            });
            if !all_span {
                break;
            }
            rho = r;
        }
        rho
    }

    fn compute_unimodular(&self) -> Result<()> {
        for w in combinations(self.len(), self.dim) {
            let rows: Vec<&[i64]> = w.iter().map(|&i| self.vectors[i].coords()).collect();
            let det = integer_det(&rows);
            if det.abs() > 1 {
                return Err(Error::NotUnimodular { d: self.dim, det });
            }
        }
        Ok(())
    }

    /// Componentwise bounds of the zonotope `V·[0,1]^n`.
    pub fn zonotope_bounds(&self) -> (Vec<i64>, Vec<i64>) {
        let mut lo = vec![0; self.dim];
        let mut hi = vec![0; self.dim];
        for v in &self.vectors {
            for (j, &c) in v.coords().iter().enumerate() {
                if c < 0 {
                    lo[j] += c;
                } else {
                    hi[j] += c;
                }
            }
        }
        (lo, hi)
    }

    /// The multiset union `V ∪ (−V)`; its box spline is the autocorrelation of `B_V`.
    pub fn symmetrized(&self) -> Result<DirectionSet> {
        let mut vectors = self.vectors.clone();
        vectors.extend(self.vectors.iter().map(|v| v.neg()));
        DirectionSet::new(vectors)
    }

    /// Indices of directions not orthogonal to `alpha`.
    pub fn u_alpha(&self, alpha: &LatticeVector) -> Result<Vec<usize>> {
        if alpha.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                index: 0,
                expected: self.dim,
                found: alpha.dim(),
            });
        }
        if alpha.is_zero() {
            return Err(Error::ZeroFrequency);
        }
        Ok((0..self.len())
            .filter(|&i| self.vectors[i].dot(alpha) != 0)
            .collect())
    }

    /// Primitive, sign-normalized normal to `span(V \ U)`.
    pub fn primitive_normal(&self, members: &[usize]) -> Result<LatticeVector> {
        let rest: Vec<&[i64]> = (0..self.len())
            .filter(|i| !members.contains(i))
            .map(|i| self.vectors[i].coords())
            .collect();
        hyperplane_normal(&rest, self.dim)
    }

    /// Distinct primitive normals of all hyperplanes spanned by `d − 1` directions.
    /// The box spline is polynomial off the lattice translates of these hyperplanes.
    pub fn cut_normals(&self) -> Vec<LatticeVector> {
        let mut out: Vec<LatticeVector> = Vec::new();
        for w in combinations(self.len(), self.dim - 1) {
            let rows: Vec<&[i64]> = w.iter().map(|&i| self.vectors[i].coords()).collect();
            if integer_rank(&rows) + 1 != self.dim {
                continue;
            }
            if let Ok(n) = hyperplane_normal(&rows, self.dim) {
                if !out.contains(&n) {
                    out.push(n);
                }
            }
        }
        out
    }

    /// `Λ`: every `U` with `#U = ϱ_V + 1` whose complement fails to span.
    pub fn lambda_set(&self) -> Result<Vec<HyperplaneClass>> {
        self.require_unimodular()?;
        self.lambda_set_unchecked()
    }

    /// `Λ` without the unimodularity requirement.
    pub fn lambda_set_unchecked(&self) -> Result<Vec<HyperplaneClass>> {
        let n = self.len();
        let mut out: Vec<HyperplaneClass> = Vec::new();
        let mut seen: Vec<Vec<&LatticeVector>> = Vec::new();
        for members in combinations(n, self.rho + 1) {
            if self.subset_spans((0..n).filter(|i| !members.contains(i))) {
                continue;
            }
            let mut key: Vec<&LatticeVector> = members.iter().map(|&i| &self.vectors[i]).collect();
            key.sort();
            if seen.contains(&key) {
                continue;
            }
            seen.push(key);
            let alpha = self.primitive_normal(&members)?;
            let denominators = members.iter().map(|&i| self.vectors[i].dot(&alpha)).collect();
            out.push(HyperplaneClass {
                members,
                alpha,
                denominators,
            });
        }
        Ok(out)
    }
}

/// Primitive normal, first nonzero coordinate positive, of the hyperplane spanned
/// by `rows` (which must have rank `d − 1`).
pub fn hyperplane_normal(rows: &[&[i64]], d: usize) -> Result<LatticeVector> {
    let rank = integer_rank(rows);
    if rank + 1 != d {
        return Err(Error::NotAHyperplaneClass {
            rank,
            expected: d - 1,
        });
    }
    let mut basis: Vec<&[i64]> = Vec::with_capacity(d - 1);
    for &row in rows {
        if basis.len() + 1 == d {
            break;
        }
        basis.push(row);
        if integer_rank(&basis) < basis.len() {
            basis.pop();
        }
    }
    // generalized cross product: signed maximal minors
    let mut alpha: Vec<i64> = (0..d)
        .map(|j| {
            let minor: Vec<Vec<i64>> = basis
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let refs: Vec<&[i64]> = minor.iter().map(|r| r.as_slice()).collect();
            let det = integer_det(&refs) as i64;
            if j % 2 == 0 {
                det
            } else {
                -det
            }
        })
        .collect();
    let g = alpha.iter().fold(0i64, |g, &a| g.gcd(&a));
    let first = alpha.iter().copied().find(|&a| a != 0).unwrap_or(1);
    let s = if first < 0 { -g } else { g };
    for a in &mut alpha {
        *a /= s;
    }
    Ok(LatticeVector(alpha))
}

/// Coefficients of the homogeneous polynomial `∏_{v∈U} (x·v)`, keyed by exponent.
pub fn expand_linear_product(u: &[&LatticeVector], d: usize) -> BTreeMap<MultiIndex, i64> {
    let mut poly = BTreeMap::new();
    poly.insert(MultiIndex::zero(d), 1i64);
    for v in u {
        let mut next = BTreeMap::new();
        for (mono, coef) in &poly {
            for (j, &c) in v.coords().iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let mut m = mono.clone();
                m.0[j] += 1;
                *next.entry(m).or_insert(0) += coef * c;
            }
        }
        next.retain(|_, c| *c != 0);
        poly = next;
    }
    poly
}

/// `C(β, U) = D^β ∏_{v∈U}(x·v)`, a constant when `|β| = #U`.
pub fn c_coefficient(beta: &MultiIndex, u: &[&LatticeVector]) -> Result<Rational64> {
    if beta.order() as usize != u.len() {
        return Err(Error::OrderMismatch {
            order: beta.order(),
            len: u.len(),
        });
    }
    let d = beta.dim();
    for (index, v) in u.iter().enumerate() {
        if v.dim() != d {
            return Err(Error::DimensionMismatch {
                index,
                expected: d,
                found: v.dim(),
            });
        }
    }
    let poly = expand_linear_product(u, d);
    let coef = poly.get(beta).copied().unwrap_or(0);
    Ok(Rational64::from_integer(coef * beta.factorial()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(c: &[i64]) -> LatticeVector {
        LatticeVector::new(c.to_vec())
    }

    fn courant() -> DirectionSet {
        DirectionSet::from_rows(&[&[1, 0], &[0, 1], &[1, 1]]).unwrap()
    }

    #[test]
    fn span_examples() {
        assert!(spans_full(&[lv(&[1, 0]), lv(&[0, 1])], 2).unwrap());
        assert!(!spans_full(&[lv(&[1, 1]), lv(&[2, 2])], 2).unwrap());
        let three = [lv(&[1, 0]), lv(&[0, 1]), lv(&[1, 1])];
        for skip in 0..3 {
            let rest: Vec<_> = (0..3).filter(|&i| i != skip).map(|i| three[i].clone()).collect();
            assert!(spans_full(&rest, 2).unwrap());
        }
        assert!(matches!(
            spans_full(&[lv(&[1, 0]), lv(&[1])], 2),
            Err(Error::DimensionMismatch { index: 1, .. })
        ));
    }

    #[test]
    fn determinant_and_rank() {
        assert_eq!(integer_det(&[&[1, 1], &[1, -1]]), -2);
        assert_eq!(integer_det(&[&[0, 1], &[1, 0]]), -1);
        assert_eq!(integer_det(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 1]]), 0);
        assert_eq!(integer_det(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]]), 6);
        assert_eq!(integer_rank(&[&[1, 2, 3], &[2, 4, 6], &[0, 0, 1]]), 2);
    }

    #[test]
    fn unimodularity() {
        assert!(courant().is_unimodular());
        let zp = DirectionSet::from_rows(&[&[1, 0], &[0, 1], &[1, 1], &[1, -1]]).unwrap();
        assert!(!zp.is_unimodular());
        assert!(matches!(
            zp.require_unimodular(),
            Err(Error::NotUnimodular { det: -2, .. })
        ));
        let b3 = DirectionSet::from_rows(&[&[1], &[1], &[1]]).unwrap();
        assert!(b3.is_unimodular());
    }

    #[test]
    fn rho_examples() {
        for n in 1..6 {
            let rows: Vec<&[i64]> = vec![&[1]; n];
            assert_eq!(DirectionSet::from_rows(&rows).unwrap().rho(), n - 1);
        }
        assert_eq!(DirectionSet::from_rows(&[&[1, 0], &[0, 1]]).unwrap().rho(), 0);
        assert_eq!(courant().rho(), 1);
        let courant2 =
            DirectionSet::from_rows(&[&[1, 0], &[1, 0], &[0, 1], &[0, 1], &[1, 1], &[1, 1]])
                .unwrap();
        assert_eq!(courant2.rho(), 3);
    }

    #[test]
    fn rejects_invalid_sets() {
        assert!(matches!(
            DirectionSet::from_rows(&[&[1, 0], &[0, 0]]),
            Err(Error::ZeroDirection(1))
        ));
        assert!(matches!(
            DirectionSet::from_rows(&[&[1, 1], &[2, 2]]),
            Err(Error::NotSpanning(2))
        ));
        let many: Vec<&[i64]> = vec![&[1]; MAX_DIRECTIONS + 1];
        assert!(matches!(
            DirectionSet::from_rows(&many),
            Err(Error::TooManyDirections { .. })
        ));
    }

    #[test]
    fn lambda_examples() {
        let tensor = DirectionSet::from_rows(&[&[1, 0], &[0, 1]]).unwrap();
        let l = tensor.lambda_set().unwrap();
        assert_eq!(l.len(), 2);
        assert_eq!(l[0].members, vec![0]);
        assert_eq!(l[0].alpha, lv(&[1, 0]));
        assert_eq!(l[1].members, vec![1]);

        let l = courant().lambda_set().unwrap();
        let members: Vec<_> = l.iter().map(|c| c.members.clone()).collect();
        assert_eq!(members, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(l[0].alpha, lv(&[1, -1]));
        assert_eq!(l[0].denominators, vec![1, -1]);
        assert_eq!(l[0].scale(), Rational64::from_integer(-1));

        let hat = DirectionSet::from_rows(&[&[1], &[1]]).unwrap();
        let l = hat.lambda_set().unwrap();
        assert_eq!(l.len(), 1);
        assert_eq!(l[0].members, vec![0, 1]);
        assert_eq!(l[0].alpha, lv(&[1]));
    }

    #[test]
    fn lambda_with_repeated_directions() {
        let v = DirectionSet::from_rows(&[&[1, 0], &[1, 0], &[0, 1], &[0, 1]]).unwrap();
        assert_eq!(v.rho(), 1);
        let l = v.lambda_set().unwrap();
        let members: Vec<_> = l.iter().map(|c| c.members.clone()).collect();
        assert_eq!(members, vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn lambda_rejects_non_unimodular() {
        let zp = DirectionSet::from_rows(&[&[1, 0], &[0, 1], &[1, 1], &[1, -1]]).unwrap();
        assert!(matches!(zp.lambda_set(), Err(Error::NotUnimodular { .. })));
    }

    #[test]
    fn primitive_normal_examples() {
        let tensor = DirectionSet::from_rows(&[&[1, 0], &[0, 1]]).unwrap();
        assert_eq!(tensor.primitive_normal(&[0]).unwrap(), lv(&[1, 0]));
        assert_eq!(courant().primitive_normal(&[0, 1]).unwrap(), lv(&[1, -1]));
        let hat = DirectionSet::from_rows(&[&[1], &[1]]).unwrap();
        assert_eq!(hat.primitive_normal(&[0, 1]).unwrap(), lv(&[1]));
        assert!(matches!(
            courant().primitive_normal(&[0]),
            Err(Error::NotAHyperplaneClass { rank: 2, .. })
        ));
        let v = DirectionSet::from_rows(&[&[2, 4, 0], &[1, 0, 0], &[0, 0, 1]]).unwrap();
        // V \ {e3} spans {z = 0}; non-primitive rows still give a primitive normal
        assert_eq!(v.primitive_normal(&[2]).unwrap(), lv(&[0, 0, 1]));
    }

    #[test]
    fn u_alpha_examples() {
        let c = courant();
        assert_eq!(c.u_alpha(&lv(&[1, -1])).unwrap(), vec![0, 1]);
        assert_eq!(c.u_alpha(&lv(&[1, 0])).unwrap(), vec![0, 2]);
        let tensor = DirectionSet::from_rows(&[&[1, 0], &[0, 1]]).unwrap();
        assert_eq!(tensor.u_alpha(&lv(&[1, 0])).unwrap(), vec![0]);
        assert!(matches!(c.u_alpha(&lv(&[0, 0])), Err(Error::ZeroFrequency)));
    }

    #[test]
    fn c_coefficient_examples() {
        let one = lv(&[1]);
        assert_eq!(
            c_coefficient(&MultiIndex::new([2]), &[&one, &one]).unwrap(),
            Rational64::from_integer(2)
        );
        let (e1, e2, e12) = (lv(&[1, 0]), lv(&[0, 1]), lv(&[1, 1]));
        assert_eq!(
            c_coefficient(&MultiIndex::new([1, 1]), &[&e1, &e2]).unwrap(),
            Rational64::from_integer(1)
        );
        assert_eq!(
            c_coefficient(&MultiIndex::new([1, 1]), &[&e1, &e12]).unwrap(),
            Rational64::from_integer(1)
        );
        assert_eq!(
            c_coefficient(&MultiIndex::new([2, 0]), &[&e1, &e12]).unwrap(),
            Rational64::from_integer(2)
        );
        assert_eq!(
            c_coefficient(&MultiIndex::new([0, 2]), &[&e1, &e12]).unwrap(),
            Rational64::from_integer(0)
        );
        assert!(matches!(
            c_coefficient(&MultiIndex::new([1, 0]), &[&e1, &e12]),
            Err(Error::OrderMismatch { .. })
        ));
    }

    #[test]
    fn multi_index_enumeration() {
        let all = MultiIndex::all_of_order(2, 3);
        assert_eq!(all.len(), 4);
        assert_eq!(all[0], MultiIndex::new([3, 0]));
        assert_eq!(MultiIndex::all_of_order(3, 2).len(), 6);
        assert_eq!(MultiIndex::new([2, 1]).lower_set().len(), 6);
        assert_eq!(MultiIndex::new([3, 2]).factorial(), 12);
    }
}
