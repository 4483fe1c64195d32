//! Gauss–Legendre rules and piecewise rules on the unit cell.
//!
//! Box splines and Bernoulli splines are polynomial on the pieces cut out of
//! `[0,1]^d` by families of lattice hyperplanes `n·x ∈ Z`. [`CellRule`] splits
//! the unit cell along those hyperplanes and places a Gauss rule on every
//! piece, so piecewise-polynomial integrands are integrated exactly up to the
//! rule's degree. Only `d ∈ {1, 2}` is supported for the split rules.

use crate::error::{Error, Result};
use crate::lattice::LatticeVector;

/// Gauss–Legendre nodes and weights on `[0, 1]`.
pub fn gauss_legendre(order: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(order >= 1, "Gauss-Legendre order must be positive");
    let n = order;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..(n + 1) / 2 {
        // Tricomi initial guess, then Newton on P_n
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                let (_, d) = legendre_with_derivative(n, x);
                dp = d;
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // map [-1,1] -> [0,1]
        nodes[i] = 0.5 * (1.0 - x);
        nodes[n - 1 - i] = 0.5 * (1.0 + x);
        weights[i] = 0.5 * w;
        weights[n - 1 - i] = 0.5 * w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// A quadrature node with its weight.
#[derive(Debug, Clone, PartialEq)]
pub struct Node {
    pub point: Vec<f64>,
    pub weight: f64,
}

/// Composite tensor Gauss rule on the box `[lo, hi]`, `cells` subintervals per axis.
pub fn tensor_rule(lo: &[f64], hi: &[f64], cells: usize, order: usize) -> Vec<Node> {
    let (x, w) = gauss_legendre(order);
    let axes: Vec<Vec<(f64, f64)>> = lo
        .iter()
        .zip(hi)
        .map(|(&a, &b)| {
            let step = (b - a) / cells as f64;
            (0..cells)
                .flat_map(|c| {
                    let left = a + c as f64 * step;
                    x.iter()
                        .zip(&w)
                        .map(move |(&xi, &wi)| (left + xi * step, wi * step))
                })
                .collect()
        })
        .collect();
    let mut nodes = vec![Node {
        point: Vec::with_capacity(lo.len()),
        weight: 1.0,
    }];
    for axis in &axes {
        nodes = nodes
            .into_iter()
            .flat_map(|n| {
                axis.iter().map(move |&(x, w)| {
                    let mut point = n.point.clone();
                    point.push(x);
                    Node {
                        point,
                        weight: n.weight * w,
                    }
                })
            })
            .collect();
    }
    nodes
}

type Polygon = Vec<[f64; 2]>;

fn polygon_area(poly: &Polygon) -> f64 {
    let n = poly.len();
    let mut a = 0.0;
    for i in 0..n {
        let p = poly[i];
        let q = poly[(i + 1) % n];
        a += p[0] * q[1] - q[0] * p[1];
    }
    0.5 * a.abs()
}

/// Splits a convex polygon by the line `normal·x = level`.
fn split_polygon(poly: &Polygon, normal: [f64; 2], level: f64) -> (Polygon, Polygon) {
    let side = |p: &[f64; 2]| normal[0] * p[0] + normal[1] * p[1] - level;
    let mut below = Vec::new();
    let mut above = Vec::new();
    let n = poly.len();
    for i in 0..n {
        let p = poly[i];
        let q = poly[(i + 1) % n];
        let (sp, sq) = (side(&p), side(&q));
        if sp <= 0.0 {
            below.push(p);
        }
        if sp >= 0.0 {
            above.push(p);
        }
        if (sp < 0.0 && sq > 0.0) || (sp > 0.0 && sq < 0.0) {
            let t = sp / (sp - sq);
            let x = [p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])];
            below.push(x);
            above.push(x);
        }
    }
    (below, above)
}

/// A quadrature rule on `[0,1]^d` whose nodes respect a family of lattice cuts.
#[derive(Debug, Clone)]
pub struct CellRule {
    pub dim: usize,
    pub nodes: Vec<Node>,
}

impl CellRule {
    /// Rule on the unit cell split along every hyperplane `n·x = k`, `k ∈ Z`,
    /// for the given integer normals.
    pub fn split(dim: usize, normals: &[LatticeVector], order: usize) -> Result<Self> {
        let cuts: Vec<(LatticeVector, Vec<f64>)> =
            normals.iter().map(|n| (n.clone(), vec![0.0])).collect();
        Self::split_with_offsets(dim, &cuts, order)
    }

    /// Like [`CellRule::split`], but each normal `n` cuts along `n·x ∈ Z + o`
    /// for every offset `o` in its list.
    pub fn split_with_offsets(
        dim: usize,
        cuts: &[(LatticeVector, Vec<f64>)],
        order: usize,
    ) -> Result<Self> {
        let (x, w) = gauss_legendre(order);
        match dim {
            1 => {
                let mut breaks = vec![0.0, 1.0];
                for (n, offsets) in cuts {
                    let nf = n.0[0] as f64;
                    if nf == 0.0 {
                        continue;
                    }
                    let (lo, hi) = (nf.min(0.0), nf.max(0.0));
                    for &o in offsets {
                        for k in (lo - o).floor() as i64..=(hi - o).ceil() as i64 {
                            let t = (k as f64 + o) / nf;
                            if t > 1e-14 && t < 1.0 - 1e-14 {
                                breaks.push(t);
                            }
                        }
                    }
                }
                breaks.sort_by(f64::total_cmp);
                breaks.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
                let mut nodes = Vec::new();
                for pair in breaks.windows(2) {
                    let (a, b) = (pair[0], pair[1]);
                    for (&xi, &wi) in x.iter().zip(&w) {
                        nodes.push(Node {
                            point: vec![a + xi * (b - a)],
                            weight: wi * (b - a),
                        });
                    }
                }
                Ok(Self { dim, nodes })
            }
            2 => {
                let mut pieces: Vec<Polygon> = vec![vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]];
                for (n, offsets) in cuts {
                    let nf = [n.0[0] as f64, n.0[1] as f64];
                    let corners = [0.0, nf[0], nf[1], nf[0] + nf[1]];
                    let lo = corners.iter().cloned().fold(f64::INFINITY, f64::min);
                    let hi = corners.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                    for &o in offsets {
                        for k in (lo - o).floor() as i64..=(hi - o).ceil() as i64 {
                            let level = k as f64 + o;
                            if level <= lo + 1e-14 || level >= hi - 1e-14 {
                                continue;
                            }
                            pieces = pieces
                                .into_iter()
                                .flat_map(|p| {
                                    let (a, b) = split_polygon(&p, nf, level);
                                    [a, b]
                                })
                                .filter(|p| p.len() >= 3 && polygon_area(p) > 1e-14)
                                .collect();
                        }
                    }
                }
                let mut nodes = Vec::new();
                for poly in &pieces {
                    let a = poly[0];
                    for t in 1..poly.len() - 1 {
                        let (b, c) = (poly[t], poly[t + 1]);
                        let twice_area = ((b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0])).abs();
                        if twice_area < 1e-14 {
                            continue;
                        }
                        for (&u, &wu) in x.iter().zip(&w) {
                            for (&v, &wv) in x.iter().zip(&w) {
                                let p = [
                                    a[0] + u * (b[0] - a[0]) + u * v * (c[0] - b[0]),
                                    a[1] + u * (b[1] - a[1]) + u * v * (c[1] - b[1]),
                                ];
                                nodes.push(Node {
                                    point: p.to_vec(),
                                    weight: wu * wv * u * twice_area,
                                });
                            }
                        }
                    }
                }
                Ok(Self { dim, nodes })
            }
            found => Err(Error::UnsupportedDimension {
                what: "piecewise cell quadrature",
                supported: "1 or 2",
                found,
            }),
        }
    }

    pub fn integrate(&self, mut f: impl FnMut(&[f64]) -> f64) -> f64 {
        self.nodes.iter().map(|n| n.weight * f(&n.point)).sum()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}
