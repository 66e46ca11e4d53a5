//! Chebyshev–Lobatto point sets with spectral differentiation, the
//! Radau-type nodes used by the classic-Levin baseline, and barycentric
//! Lagrange utilities.
//!
//! Nodes are kept in ascending order, x_j = −cos(jπ/(n−1)), so the first
//! node of a mapped grid lands exactly on 0 and the last exactly on the
//! interval length a. Differentiation-matrix diagonals use the negative-sum
//! trick (row sums of a differentiation matrix vanish on constants), which
//! is the standard way to keep rounding error down.

use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum GridError {
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
}

/// Chebyshev–Lobatto grid on [−1, 1], ascending, with the first-derivative
/// spectral differentiation matrix stored row-major.
#[derive(Debug, Clone)]
pub struct ChebyshevGrid {
    pub n: usize,
    pub nodes: Vec<f64>,
    pub diff: Vec<f64>,
}

impl ChebyshevGrid {
    #[inline]
    pub fn diff_at(&self, i: usize, j: usize) -> f64 {
        self.diff[i * self.n + j]
    }

    /// diff · samples, for tests and diagnostics.
    pub fn apply_diff(&self, samples: &[f64]) -> Vec<f64> {
        assert_eq!(samples.len(), self.n);
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.diff_at(i, j) * samples[j]).sum())
            .collect()
    }
}

/// Affine image of a Lobatto grid on [0, a]. Endpoints are assigned exactly
/// (not computed through the affine formula): the removable-singularity
/// limits downstream dispatch on `x == 0.0`.
#[derive(Debug, Clone)]
pub struct MappedGrid {
    pub base: ChebyshevGrid,
    pub a: f64,
    pub mapped: Vec<f64>,
}

/// Chebyshev–Lobatto nodes and differentiation matrix, n ≥ 2.
pub fn lobatto_grid(n: usize) -> Result<ChebyshevGrid, GridError> {
    if n < 2 {
        return Err(GridError::InvalidArgument("lobatto_grid requires n >= 2"));
    }
    let nm1 = (n - 1) as f64;
    // sin form of −cos(jπ/(n−1)): exactly antisymmetric, exact 0 in the middle.
    let mut nodes: Vec<f64> = (0..n)
        .map(|j| (PI * (2.0 * j as f64 - nm1) / (2.0 * nm1)).sin())
        .collect();
    nodes[0] = -1.0;
    nodes[n - 1] = 1.0;

    let c = |j: usize| if j == 0 || j == n - 1 { 2.0 } else { 1.0 };
    let mut diff = vec![0.0; n * n];
    for i in 0..n {
        let mut row_sum = 0.0;
        for j in 0..n {
            if i == j {
                continue;
            }
            let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
            let v = (c(i) / c(j)) * sign / (nodes[i] - nodes[j]);
            diff[i * n + j] = v;
            row_sum += v;
        }
        diff[i * n + i] = -row_sum;
    }
    Ok(ChebyshevGrid { n, nodes, diff })
}

/// Modified Chebyshev–Gauss–Radau points t_j = (1 + cos(2πj/(2n−1)))/2,
/// j = 0..n−1: t_0 = 1, all nodes in (0, 1], decreasing, endpoint 0 excluded.
pub fn radau_grid(n: usize) -> Result<Vec<f64>, GridError> {
    if n < 2 {
        return Err(GridError::InvalidArgument("radau_grid requires n >= 2"));
    }
    let denom = (2 * n - 1) as f64;
    let mut t: Vec<f64> = (0..n)
        .map(|j| 0.5 * (1.0 + (2.0 * PI * j as f64 / denom).cos()))
        .collect();
    t[0] = 1.0;
    Ok(t)
}

/// Map a Lobatto grid onto [0, a] through φ(x) = (a/2)x + a/2.
pub fn map_grid(base: ChebyshevGrid, a: f64) -> Result<MappedGrid, GridError> {
    if !a.is_finite() || a <= 0.0 {
        return Err(GridError::InvalidArgument("map_grid requires a > 0"));
    }
    let n = base.n;
    let mut mapped: Vec<f64> = base.nodes.iter().map(|&x| 0.5 * a * x + 0.5 * a).collect();
    mapped[0] = 0.0;
    mapped[n - 1] = a;
    Ok(MappedGrid { base, a, mapped })
}

/// Barycentric weights λ_j = 1/Π_{k≠j}(x_j − x_k), rescaled so the largest
/// magnitude is 1 (only ratios matter downstream).
pub fn barycentric_weights(nodes: &[f64]) -> Vec<f64> {
    let n = nodes.len();
    let mut w = vec![0.0; n];
    for j in 0..n {
        let mut prod = 1.0;
        for k in 0..n {
            if k != j {
                prod *= nodes[j] - nodes[k];
            }
        }
        w[j] = 1.0 / prod;
    }
    let scale = w.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    for v in &mut w {
        *v /= scale;
    }
    w
}

/// First-derivative Lagrange differentiation matrix on arbitrary distinct
/// nodes, D_ij = (λ_j/λ_i)/(x_i − x_j) off the diagonal, negative-sum diagonal.
pub fn lagrange_diff_matrix(nodes: &[f64]) -> Vec<f64> {
    let n = nodes.len();
    let w = barycentric_weights(nodes);
    let mut d = vec![0.0; n * n];
    for i in 0..n {
        let mut row_sum = 0.0;
        for j in 0..n {
            if i == j {
                continue;
            }
            let v = (w[j] / w[i]) / (nodes[i] - nodes[j]);
            d[i * n + j] = v;
            row_sum += v;
        }
        d[i * n + i] = -row_sum;
    }
    d
}

/// Evaluate the interpolating polynomial through `(nodes[j], values[j])` at
/// `x` by the barycentric formula. Valid anywhere, including outside the
/// node hull (the interpolant is a polynomial).
pub fn barycentric_eval(nodes: &[f64], weights: &[f64], values: &[Complex64], x: f64) -> Complex64 {
    debug_assert_eq!(nodes.len(), weights.len());
    debug_assert_eq!(nodes.len(), values.len());
    let mut num = Complex64::new(0.0, 0.0);
    let mut den = 0.0;
    for j in 0..nodes.len() {
        let dx = x - nodes[j];
        if dx == 0.0 {
            return values[j];
        }
        let r = weights[j] / dx;
        num += values[j] * r;
        den += r;
    }
    num / den
}
