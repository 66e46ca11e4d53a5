//! Dense complex linear algebra: one-sided Jacobi SVD and truncated-SVD
//! minimal-norm least squares.
//!
//! The collocation systems this crate solves are small (n ≤ 64) and often
//! severely ill-conditioned, which is exactly the regime where one-sided
//! Jacobi shines: it computes small singular values to high relative
//! accuracy and needs no external dependency. Column pairs are rotated until
//! every pair is numerically orthogonal; singular values are the final
//! column norms.

use num_complex::Complex64;
use thiserror::Error;

/// Relative threshold below which the default truncated solve discards
/// singular directions. Discards only rounding-level directions in doubles.
pub const DEFAULT_REL_TOL: f64 = 1e-13;

const MAX_SWEEPS: usize = 60;
const PAIR_TOL: f64 = 1e-15;

#[derive(Debug, Error, PartialEq)]
pub enum LinalgError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("Jacobi SVD did not converge within {MAX_SWEEPS} sweeps for a {rows}x{cols} matrix")]
    NoConvergence { rows: usize, cols: usize },
}

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self, LinalgError> {
        if rows == 0 || cols == 0 {
            return Err(LinalgError::InvalidArgument("matrix dimensions must be positive".into()));
        }
        if entries.len() != rows * cols {
            return Err(LinalgError::InvalidArgument(format!(
                "entry count {} does not match {rows}x{cols}",
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self { rows, cols, entries }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(|z| z.is_finite())
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.at(j, i).conj())
    }

    pub fn matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut s = Complex64::new(0.0, 0.0);
                for j in 0..self.cols {
                    s += self.at(i, j) * x[j];
                }
                s
            })
            .collect()
    }
}

/// Thin SVD A = U · diag(σ) · Vᴴ with k = min(rows, cols) columns in U and V
/// and σ sorted descending.
#[derive(Debug, Clone)]
pub struct SvdFactorization {
    pub u: ComplexMatrix,
    pub sigma: Vec<f64>,
    pub v: ComplexMatrix,
}

impl SvdFactorization {
    /// U · diag(σ) · Vᴴ, for reconstruction checks.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let m = self.u.rows();
        let n = self.v.rows();
        let k = self.sigma.len();
        ComplexMatrix::from_fn(m, n, |i, j| {
            let mut s = Complex64::new(0.0, 0.0);
            for l in 0..k {
                s += self.u.at(i, l) * self.sigma[l] * self.v.at(j, l).conj();
            }
            s
        })
    }
}

/// Truncated least-squares solution with diagnostics.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub solution: Vec<Complex64>,
    pub rank_used: usize,
    pub residual_inf: f64,
    pub sigma_max: f64,
    pub sigma_min: f64,
}

/// One-sided Jacobi SVD of a complex matrix. Deterministic for fixed input.
pub fn svd(a: &ComplexMatrix) -> Result<SvdFactorization, LinalgError> {
    if !a.is_finite() {
        return Err(LinalgError::InvalidArgument("matrix has non-finite entries".into()));
    }
    if a.rows() >= a.cols() {
        svd_tall(a)
    } else {
        let f = svd_tall(&a.conj_transpose())?;
        Ok(SvdFactorization { u: f.v, sigma: f.sigma, v: f.u })
    }
}

fn svd_tall(a: &ComplexMatrix) -> Result<SvdFactorization, LinalgError> {
    let m = a.rows();
    let n = a.cols();
    // Column-major working copies of A and V.
    let mut b: Vec<Vec<Complex64>> = (0..n).map(|j| (0..m).map(|i| a.at(i, j)).collect()).collect();
    let mut v: Vec<Vec<Complex64>> = (0..n)
        .map(|j| {
            let mut col = vec![Complex64::new(0.0, 0.0); n];
            col[j] = Complex64::new(1.0, 0.0);
            col
        })
        .collect();

    let mut converged = false;
    for _sweep in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let mut alpha = 0.0;
                let mut beta = 0.0;
                let mut gamma = Complex64::new(0.0, 0.0);
                for i in 0..m {
                    alpha += b[p][i].norm_sqr();
                    beta += b[q][i].norm_sqr();
                    gamma += b[p][i].conj() * b[q][i];
                }
                let g = gamma.norm();
                if g <= PAIR_TOL * (alpha * beta).sqrt() || g == 0.0 {
                    continue;
                }
                rotated = true;
                // Phase that makes the column inner product real, then a
                // real Jacobi rotation on (a_p, a_q·e^{−iφ}).
                let conj_phase = (gamma / g).conj();
                let tau = (beta - alpha) / (2.0 * g);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (tau - (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for i in 0..m {
                    let bp = b[p][i];
                    let bq = b[q][i] * conj_phase;
                    b[p][i] = c * bp - s * bq;
                    b[q][i] = s * bp + c * bq;
                }
                for i in 0..n {
                    let vp = v[p][i];
                    let vq = v[q][i] * conj_phase;
                    v[p][i] = c * vp - s * vq;
                    v[q][i] = s * vp + c * vq;
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(LinalgError::NoConvergence { rows: m, cols: n });
    }

    let mut sigma: Vec<f64> = b.iter().map(|col| col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| sigma[j].partial_cmp(&sigma[i]).unwrap());
    let b_sorted: Vec<Vec<Complex64>> = order.iter().map(|&j| b[j].clone()).collect();
    let v_sorted: Vec<Vec<Complex64>> = order.iter().map(|&j| v[j].clone()).collect();
    sigma = order.iter().map(|&j| sigma[j]).collect();

    // Normalize U columns; complete exactly-zero columns to an orthonormal set.
    let mut u_cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for (j, col) in b_sorted.iter().enumerate() {
        if sigma[j] > 0.0 {
            u_cols.push(col.iter().map(|z| z / sigma[j]).collect());
        } else {
            u_cols.push(orthonormal_completion(&u_cols, m));
        }
    }

    let u = ComplexMatrix::from_fn(m, n, |i, j| u_cols[j][i]);
    let v = ComplexMatrix::from_fn(n, n, |i, j| v_sorted[j][i]);
    Ok(SvdFactorization { u, sigma, v })
}

/// Unit vector orthogonal to every column already in `cols` (Gram–Schmidt
/// over canonical candidates).
fn orthonormal_completion(cols: &[Vec<Complex64>], m: usize) -> Vec<Complex64> {
    for cand in 0..m {
        let mut v = vec![Complex64::new(0.0, 0.0); m];
        v[cand] = Complex64::new(1.0, 0.0);
        for col in cols {
            let proj: Complex64 = col.iter().zip(v.iter()).map(|(c, x)| c.conj() * x).sum();
            for i in 0..m {
                v[i] -= proj * col[i];
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 0.5 {
            return v.iter().map(|z| z / norm).collect();
        }
    }
    unreachable!("fewer than m columns can always be completed");
}

/// Minimal-norm least squares through an existing factorization, keeping
/// singular triplets with σ_i > rel_tol·σ_0. `a` is only used to report the
/// residual.
pub fn tsvd_solve_with(
    f: &SvdFactorization,
    a: &ComplexMatrix,
    b: &[Complex64],
    rel_tol: f64,
) -> Result<SolveReport, LinalgError> {
    if b.len() != a.rows() {
        return Err(LinalgError::InvalidArgument(format!(
            "rhs length {} does not match {} rows",
            b.len(),
            a.rows()
        )));
    }
    if !(rel_tol > 0.0 && rel_tol < 1.0) {
        return Err(LinalgError::InvalidArgument("rel_tol must lie in (0, 1)".into()));
    }
    if b.iter().any(|z| !z.is_finite()) {
        return Err(LinalgError::InvalidArgument("rhs has non-finite entries".into()));
    }
    let k = f.sigma.len();
    let n = f.v.rows();
    let sigma_max = f.sigma[0];
    let sigma_min = f.sigma[k - 1];
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    let mut rank_used = 0;
    if sigma_max > 0.0 {
        let cutoff = rel_tol * sigma_max;
        for l in 0..k {
            if f.sigma[l] <= cutoff {
                break;
            }
            rank_used += 1;
            let mut coeff = Complex64::new(0.0, 0.0);
            for i in 0..a.rows() {
                coeff += f.u.at(i, l).conj() * b[i];
            }
            coeff /= f.sigma[l];
            for i in 0..n {
                x[i] += coeff * f.v.at(i, l);
            }
        }
    }
    let r = a.matvec(&x);
    let residual_inf = r
        .iter()
        .zip(b.iter())
        .map(|(ri, bi)| (ri - bi).norm())
        .fold(0.0_f64, f64::max);
    Ok(SolveReport { solution: x, rank_used, residual_inf, sigma_max, sigma_min })
}

/// Factor and solve in one call.
pub fn tsvd_solve(a: &ComplexMatrix, b: &[Complex64], rel_tol: f64) -> Result<SolveReport, LinalgError> {
    let f = svd(a)?;
    tsvd_solve_with(&f, a, b, rel_tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut ChaCha8Rng, m: usize, n: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(m, n, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        })
    }

    fn check_factorization(a: &ComplexMatrix, f: &SvdFactorization) {
        let k = f.sigma.len();
        assert_eq!(k, a.rows().min(a.cols()));
        for l in 1..k {
            assert!(f.sigma[l] <= f.sigma[l - 1]);
            assert!(f.sigma[l] >= 0.0);
        }
        let rec = f.reconstruct();
        let scale = f.sigma[0].max(1e-300) * a.rows().max(a.cols()) as f64;
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                assert!(
                    (rec.at(i, j) - a.at(i, j)).norm() <= 1e-12 * scale,
                    "reconstruction mismatch at ({i},{j})"
                );
            }
        }
        // orthonormal columns
        for (mat, rows) in [(&f.u, a.rows()), (&f.v, a.cols())] {
            for p in 0..k {
                for q in 0..k {
                    let mut dot = Complex64::new(0.0, 0.0);
                    for i in 0..rows {
                        dot += mat.at(i, p).conj() * mat.at(i, q);
                    }
                    let want = if p == q { 1.0 } else { 0.0 };
                    assert!((dot - want).norm() <= 1e-12, "({p},{q}): {dot}");
                }
            }
        }
    }

    #[test]
    fn identity_has_unit_singular_values() {
        let a = ComplexMatrix::identity(3);
        let f = svd(&a).unwrap();
        for s in &f.sigma {
            assert!((s - 1.0).abs() < 1e-14);
        }
        check_factorization(&a, &f);
    }

    #[test]
    fn rank_deficient_diagonal() {
        let a = ComplexMatrix::from_fn(2, 2, |i, j| {
            if i == 0 && j == 0 { Complex64::new(3.0, 0.0) } else { Complex64::new(0.0, 0.0) }
        });
        let f = svd(&a).unwrap();
        assert!((f.sigma[0] - 3.0).abs() < 1e-14);
        assert!(f.sigma[1].abs() < 1e-14);
        check_factorization(&a, &f);
    }

    #[test]
    fn singular_values_match_real_embedding() {
        // σ of A appear twice among the σ of [[Re, −Im], [Im, Re]].
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = random_matrix(&mut rng, 8, 8);
        let f = svd(&a).unwrap();
        let emb = ComplexMatrix::from_fn(16, 16, |i, j| {
            let (bi, bj) = (i / 8, j / 8);
            let v = a.at(i % 8, j % 8);
            let re = match (bi, bj) {
                (0, 0) | (1, 1) => v.re,
                (0, 1) => -v.im,
                _ => v.im,
            };
            Complex64::new(re, 0.0)
        });
        let fe = svd(&emb).unwrap();
        for l in 0..8 {
            assert!((fe.sigma[2 * l] - f.sigma[l]).abs() <= 1e-10 * f.sigma[0]);
            assert!((fe.sigma[2 * l + 1] - f.sigma[l]).abs() <= 1e-10 * f.sigma[0]);
        }
    }

    #[test]
    fn factorization_invariants_across_shapes() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for &(m, n) in &[(2usize, 2usize), (5, 3), (3, 5), (9, 9), (10, 4)] {
            let a = random_matrix(&mut rng, m, n);
            let f = svd(&a).unwrap();
            check_factorization(&a, &f);
        }
    }

    #[test]
    fn svd_is_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_matrix(&mut rng, 6, 6);
        let f1 = svd(&a).unwrap();
        let f2 = svd(&a).unwrap();
        assert_eq!(f1.sigma, f2.sigma);
        assert_eq!(f1.u, f2.u);
        assert_eq!(f1.v, f2.v);
    }

    #[test]
    fn tsvd_identity_and_minimal_norm() {
        let a = ComplexMatrix::identity(2);
        let b = vec![Complex64::new(1.0, 1.0), Complex64::new(2.0, 0.0)];
        let r = tsvd_solve(&a, &b, 1e-13).unwrap();
        assert_eq!(r.rank_used, 2);
        assert!((r.solution[0] - b[0]).norm() < 1e-14);
        assert!((r.solution[1] - b[1]).norm() < 1e-14);

        let a = ComplexMatrix::from_fn(2, 2, |i, j| {
            if i == 0 && j == 0 { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) }
        });
        let b = vec![Complex64::new(1.0, 0.0), Complex64::new(5.0, 0.0)];
        let r = tsvd_solve(&a, &b, 1e-13).unwrap();
        assert_eq!(r.rank_used, 1);
        assert!((r.solution[0] - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        assert!(r.solution[1].norm() < 1e-14, "zero direction must be truncated");
    }

    /// Gaussian elimination with partial pivoting; the independent solver oracle.
    fn gauss_solve(a: &ComplexMatrix, b: &[Complex64]) -> Vec<Complex64> {
        let n = a.rows();
        let mut m: Vec<Vec<Complex64>> = (0..n)
            .map(|i| {
                let mut row: Vec<Complex64> = (0..n).map(|j| a.at(i, j)).collect();
                row.push(b[i]);
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).max_by(|&i, &j| m[i][col].norm().partial_cmp(&m[j][col].norm()).unwrap()).unwrap();
            m.swap(col, piv);
            for i in (col + 1)..n {
                let factor = m[i][col] / m[col][col];
                for j in col..=n {
                    let sub = factor * m[col][j];
                    m[i][j] -= sub;
                }
            }
        }
        let mut x = vec![Complex64::new(0.0, 0.0); n];
        for i in (0..n).rev() {
            let mut s = m[i][n];
            for j in (i + 1)..n {
                s -= m[i][j] * x[j];
            }
            x[i] = s / m[i][i];
        }
        x
    }

    #[test]
    fn tsvd_matches_elimination_on_well_conditioned_system() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..5 {
            let mut a = random_matrix(&mut rng, 6, 6);
            for i in 0..6 {
                // diagonal dominance keeps the instance well conditioned
                let d = a.at(i, i) + Complex64::new(4.0, 0.0);
                a.set(i, i, d);
            }
            let b: Vec<Complex64> = (0..6)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let r = tsvd_solve(&a, &b, 1e-13).unwrap();
            let x = gauss_solve(&a, &b);
            let scale = x.iter().map(|z| z.norm()).fold(0.0_f64, f64::max);
            for (got, want) in r.solution.iter().zip(x.iter()) {
                assert!((got - want).norm() <= 1e-11 * scale);
            }
            assert_eq!(r.rank_used, 6);
        }
    }

    #[test]
    fn truncation_rank_monotone_in_tolerance() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = random_matrix(&mut rng, 8, 8);
        let b: Vec<Complex64> = (0..8).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), 0.0)).collect();
        let mut prev_rank = usize::MAX;
        for &tol in &[1e-16, 1e-12, 1e-8, 1e-4, 1e-1] {
            let r = tsvd_solve(&a, &b, tol).unwrap();
            assert!(r.rank_used <= prev_rank);
            prev_rank = r.rank_used;
        }
    }

    #[test]
    fn solution_is_locally_least_squares_optimal() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..5 {
            let a = random_matrix(&mut rng, 7, 5);
            let b: Vec<Complex64> =
                (0..7).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
            let r = tsvd_solve(&a, &b, 1e-13).unwrap();
            let res2 = |x: &[Complex64]| -> f64 {
                a.matvec(x).iter().zip(b.iter()).map(|(ri, bi)| (ri - bi).norm_sqr()).sum()
            };
            let base = res2(&r.solution);
            for coord in 0..5 {
                for &delta in &[1e-6, -1e-6] {
                    let mut x = r.solution.clone();
                    x[coord] += Complex64::new(delta, 0.0);
                    assert!(res2(&x) >= base - 1e-12);
                    let mut x = r.solution.clone();
                    x[coord] += Complex64::new(0.0, delta);
                    assert!(res2(&x) >= base - 1e-12);
                }
            }
        }
    }

    #[test]
    fn zero_matrix_flags_rank_zero() {
        let a = ComplexMatrix::zeros(3, 3);
        let b = vec![Complex64::new(1.0, 0.0); 3];
        let r = tsvd_solve(&a, &b, 1e-13).unwrap();
        assert_eq!(r.rank_used, 0);
        assert!(r.solution.iter().all(|z| z.norm() == 0.0));
        assert!((r.residual_inf - 1.0).abs() < 1e-15);
    }

    #[test]
    fn invalid_inputs_are_rejected() {
        let a = ComplexMatrix::identity(2);
        let b = vec![Complex64::new(1.0, 0.0); 3];
        assert!(matches!(tsvd_solve(&a, &b, 1e-13), Err(LinalgError::InvalidArgument(_))));
        let b = vec![Complex64::new(1.0, 0.0); 2];
        assert!(tsvd_solve(&a, &b, 0.0).is_err());
        assert!(tsvd_solve(&a, &b, 1.5).is_err());
        let bad = ComplexMatrix::from_fn(2, 2, |_, _| Complex64::new(f64::NAN, 0.0));
        assert!(svd(&bad).is_err());
        assert!(ComplexMatrix::new(2, 2, vec![Complex64::new(0.0, 0.0); 3]).is_err());
    }
}
