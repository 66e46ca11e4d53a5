//! The quadrature engines: classic Levin collocation, and the
//! singularity-separated variants for ∫₀ᵃ f(x) log(x) e^{iwg(x)} dx with a
//! linear or a general oscillator.
//!
//! Classic Levin converts ∫ f e^{iwg} into the ODE 𝓛p = p' + iwg'p = f,
//! collocates p on a spectral grid, and reads the integral off the
//! endpoints: I = p(a)e^{iwg(a)} − p(0)e^{iwg(0)}. With a log x factor the
//! forcing becomes singular; the ansatz p = q·log x + h splits the problem
//! into non-singular collocation solves for q and one part of h, plus a
//! closed-form part involving Γ(0, −iwg(x)):
//!
//! ```text
//! q' + iwg'q  = f                    (solve q₁, impose q(0) = 0 afterwards)
//! h₁' + iwg'h₁ = −q₂·g'              (q₂ the divided difference of q₁)
//! h₂' + iwg'h₂ = −q₁(0)·g'·(1 − e^{−iwg})/g
//!              ⇒ h₂(x) = q₁(0)·e^{−iwg(x)}·Ein(−iwg(x)),  h₂(0) = 0
//! ```
//!
//! All collocation systems share one matrix L = (2/a)D + iwG, so a single
//! SVD serves every right-hand side, with a truncated solve absorbing the
//! ill-conditioning that breaks a naive elimination at large n.

use crate::chebyshev::{self, GridError, MappedGrid};
use crate::linalg::{self, ComplexMatrix, LinalgError, SolveReport, SvdFactorization, DEFAULT_REL_TOL};
use crate::special::{self, SpecialError};
use num_complex::Complex64;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// Minimum |w| accepted by the log-weighted Levin paths. The method is
/// asymptotic in the frequency; below this the collocation matrix
/// degenerates toward pure differentiation and h₂ loses meaning, so callers
/// are pointed at the oracle instead.
pub const W_MIN: f64 = 1.0;

pub type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
pub type ComplexFn = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;

#[derive(Debug, Error)]
pub enum LevinError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("|w| = {w} is below the Levin-path minimum {min}; use the adaptive oracle instead")]
    FrequencyTooLow { w: f64, min: f64 },
    #[error("unsupported problem: {0}")]
    Unsupported(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Special(#[from] SpecialError),
}

/// Oscillator g with its user-supplied derivative. The derivative is taken
/// as given rather than differenced numerically; convergence studies must
/// not be polluted by differentiation noise.
#[derive(Clone)]
pub struct Oscillator {
    pub g: RealFn,
    pub gprime: RealFn,
    pub descriptor: String,
}

impl Oscillator {
    pub fn new(g: RealFn, gprime: RealFn, descriptor: impl Into<String>) -> Self {
        Self { g, gprime, descriptor: descriptor.into() }
    }

    /// g(x) = x.
    pub fn linear() -> Self {
        Self::new(Arc::new(|x| x), Arc::new(|_| 1.0), "x")
    }

    #[inline]
    pub fn g(&self, x: f64) -> f64 {
        (self.g)(x)
    }

    #[inline]
    pub fn gprime(&self, x: f64) -> f64 {
        (self.gprime)(x)
    }
}

impl fmt::Debug for Oscillator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Oscillator").field("descriptor", &self.descriptor).finish()
    }
}

/// One integral instance: ∫₀ᵃ f(x)·[log x]·e^{iwg(x)} dx, the log weight
/// present when `singular` is set. `phase` accumulates the unit prefactor
/// produced by normalization; the problem's value is
/// phase · ∫₀ᵃ f log x e^{iwg} dx over the stored fields.
#[derive(Clone)]
pub struct IntegralProblem {
    pub f: ComplexFn,
    pub osc: Oscillator,
    pub a: f64,
    pub w: f64,
    pub singular: bool,
    pub phase: Complex64,
    pub fliplabel: bool,
}

impl IntegralProblem {
    pub fn new(f: ComplexFn, osc: Oscillator, a: f64, w: f64, singular: bool) -> Result<Self, LevinError> {
        if !a.is_finite() || a <= 0.0 {
            return Err(LevinError::InvalidArgument("interval length a must be positive".into()));
        }
        if !w.is_finite() || w == 0.0 {
            return Err(LevinError::InvalidArgument("frequency w must be finite and nonzero".into()));
        }
        Ok(Self { f, osc, a, w, singular, phase: Complex64::new(1.0, 0.0), fliplabel: false })
    }

    #[inline]
    pub fn f(&self, x: f64) -> Complex64 {
        (self.f)(x)
    }
}

impl fmt::Debug for IntegralProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IntegralProblem")
            .field("osc", &self.osc.descriptor)
            .field("a", &self.a)
            .field("w", &self.w)
            .field("singular", &self.singular)
            .field("phase", &self.phase)
            .field("fliplabel", &self.fliplabel)
            .finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodKind {
    Classic,
    LogLinear,
    LogGeneral,
}

impl MethodKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MethodKind::Classic => "classic",
            MethodKind::LogLinear => "log_linear",
            MethodKind::LogGeneral => "log_general",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridKind {
    Lobatto,
    Radau,
}

/// Complex integral value plus solver diagnostics.
#[derive(Debug, Clone)]
pub struct QuadratureResult {
    pub value: Complex64,
    pub n: usize,
    pub rank_used: usize,
    pub residual_inf: f64,
    pub method: MethodKind,
}

/// Rewrite a problem so that g(0) = 0 and g' > 0 on [0, a], folding any
/// constant phase e^{iwg(0)} into `phase` and a decreasing oscillator into a
/// sign flip of w (`fliplabel`). The integral value is invariant:
/// value = phase · (quadrature of the normalized fields).
pub fn normalize_problem(p: &IntegralProblem) -> Result<IntegralProblem, LevinError> {
    let n_check = 33;
    let grid = chebyshev::lobatto_grid(n_check)?;
    let mg = chebyshev::map_grid(grid, p.a)?;
    let mut sign = 0.0_f64;
    for &x in &mg.mapped {
        let gp = p.osc.gprime(x);
        if !gp.is_finite() || gp == 0.0 {
            return Err(LevinError::Unsupported(format!(
                "g' vanishes or is non-finite at x = {x}; stationary points are out of scope"
            )));
        }
        if sign == 0.0 {
            sign = gp.signum();
        } else if gp.signum() != sign {
            return Err(LevinError::Unsupported(
                "g' changes sign on the grid; stationary points are out of scope".into(),
            ));
        }
    }
    let g0 = p.osc.g(0.0);
    if !g0.is_finite() {
        return Err(LevinError::InvalidArgument("g(0) is not finite".into()));
    }
    let g = Arc::clone(&p.osc.g);
    let gp = Arc::clone(&p.osc.gprime);
    let new_g: RealFn = Arc::new(move |x| sign * (g(x) - g0));
    let new_gp: RealFn = Arc::new(move |x| sign * gp(x));
    let descriptor = if sign > 0.0 && g0 == 0.0 {
        p.osc.descriptor.clone()
    } else {
        format!("normalized({})", p.osc.descriptor)
    };
    Ok(IntegralProblem {
        f: Arc::clone(&p.f),
        osc: Oscillator::new(new_g, new_gp, descriptor),
        a: p.a,
        w: sign * p.w,
        singular: p.singular,
        phase: p.phase * Complex64::from_polar(1.0, p.w * g0),
        fliplabel: if sign < 0.0 { !p.fliplabel } else { p.fliplabel },
    })
}

fn check_finite_samples(v: &[Complex64]) -> Result<(), LevinError> {
    if v.iter().any(|z| !z.is_finite()) {
        return Err(LevinError::InvalidArgument("function samples are not finite on the grid".into()));
    }
    Ok(())
}

/// L = (2/a)·D + iw·diag(g'(x̂)) on a mapped Lobatto grid.
fn collocation_matrix(mg: &MappedGrid, gprime_vals: &[f64], w: f64) -> ComplexMatrix {
    let n = mg.base.n;
    let scale = 2.0 / mg.a;
    ComplexMatrix::from_fn(n, n, |i, j| {
        let d = scale * mg.base.diff_at(i, j);
        if i == j {
            Complex64::new(d, w * gprime_vals[i])
        } else {
            Complex64::new(d, 0.0)
        }
    })
}

fn solve_stack(
    svd: &SvdFactorization,
    l: &ComplexMatrix,
    b: &[Complex64],
) -> Result<SolveReport, LevinError> {
    Ok(linalg::tsvd_solve_with(svd, l, b, DEFAULT_REL_TOL)?)
}

/// Classic Levin collocation for ∫₀ᵃ f e^{iwg} dx (no log weight handling):
/// solve 𝓛p = f on the chosen grid and evaluate the endpoints. The Radau
/// grid excludes x = 0, so there the endpoint value p(0) comes from
/// barycentric evaluation of the collocation polynomial.
pub fn levin_classic(
    f: &dyn Fn(f64) -> Complex64,
    osc: &Oscillator,
    a: f64,
    w: f64,
    n: usize,
    grid: GridKind,
) -> Result<QuadratureResult, LevinError> {
    if n < 2 {
        return Err(LevinError::InvalidArgument("levin_classic requires n >= 2".into()));
    }
    if !a.is_finite() || a <= 0.0 {
        return Err(LevinError::InvalidArgument("interval length a must be positive".into()));
    }
    if !w.is_finite() || w == 0.0 {
        return Err(LevinError::InvalidArgument("frequency w must be finite and nonzero".into()));
    }
    match grid {
        GridKind::Lobatto => {
            let mg = chebyshev::map_grid(chebyshev::lobatto_grid(n)?, a)?;
            let fv: Vec<Complex64> = mg.mapped.iter().map(|&x| f(x)).collect();
            check_finite_samples(&fv)?;
            let gpv: Vec<f64> = mg.mapped.iter().map(|&x| osc.gprime(x)).collect();
            let l = collocation_matrix(&mg, &gpv, w);
            let svd = linalg::svd(&l)?;
            let p = solve_stack(&svd, &l, &fv)?;
            let e_a = Complex64::from_polar(1.0, w * osc.g(a));
            let e_0 = Complex64::from_polar(1.0, w * osc.g(0.0));
            let value = p.solution[n - 1] * e_a - p.solution[0] * e_0;
            Ok(QuadratureResult {
                value,
                n,
                rank_used: p.rank_used,
                residual_inf: p.residual_inf,
                method: MethodKind::Classic,
            })
        }
        GridKind::Radau => {
            let t = chebyshev::radau_grid(n)?;
            let mut xs: Vec<f64> = t.iter().map(|&tj| a * tj).collect();
            xs[0] = a;
            let fv: Vec<Complex64> = xs.iter().map(|&x| f(x)).collect();
            check_finite_samples(&fv)?;
            let d = chebyshev::lagrange_diff_matrix(&xs);
            let l = ComplexMatrix::from_fn(n, n, |i, j| {
                if i == j {
                    Complex64::new(d[i * n + j], w * osc.gprime(xs[i]))
                } else {
                    Complex64::new(d[i * n + j], 0.0)
                }
            });
            let svd = linalg::svd(&l)?;
            let p = solve_stack(&svd, &l, &fv)?;
            let weights = chebyshev::barycentric_weights(&xs);
            let p_at_0 = chebyshev::barycentric_eval(&xs, &weights, &p.solution, 0.0);
            let e_a = Complex64::from_polar(1.0, w * osc.g(a));
            let e_0 = Complex64::from_polar(1.0, w * osc.g(0.0));
            let value = p.solution[0] * e_a - p_at_0 * e_0;
            Ok(QuadratureResult {
                value,
                n,
                rank_used: p.rank_used,
                residual_inf: p.residual_inf,
                method: MethodKind::Classic,
            })
        }
    }
}

/// q₂ for a linear oscillator: the divided difference (q₁(x) − q₁(0))/x for
/// x > 0 and its limit q₁'(0) = f(0) − iwg'(0)q₁(0) at x = 0.
pub fn q2_linear_value(
    x: f64,
    q1_x: Complex64,
    q1_0: Complex64,
    f0: Complex64,
    gprime0: f64,
    w: f64,
) -> Complex64 {
    if x == 0.0 {
        f0 - Complex64::new(0.0, w * gprime0) * q1_0
    } else {
        (q1_x - q1_0) / x
    }
}

/// q₂ for a general oscillator: (q₁(x) − q₁(0))/g(x) for x > 0 and the limit
/// (f(0) − iwg'(0)q₁(0))/g'(0) at x = 0.
pub fn q2_general_value(
    x: f64,
    g_x: f64,
    q1_x: Complex64,
    q1_0: Complex64,
    f0: Complex64,
    gprime0: f64,
    w: f64,
) -> Result<Complex64, LevinError> {
    if x == 0.0 {
        Ok((f0 - Complex64::new(0.0, w * gprime0) * q1_0) / gprime0)
    } else if g_x == 0.0 {
        Err(LevinError::Domain(format!("g({x}) = 0 away from the origin; g must increase from 0")))
    } else {
        Ok((q1_x - q1_0) / g_x)
    }
}

/// f₁(x) = f(x)·log(x/g(x)) with the limit f(0)·log(1/g'(0)) at x = 0.
pub fn f1_general_value(x: f64, f_x: Complex64, g_x: f64, gprime0: f64) -> Result<Complex64, LevinError> {
    if x == 0.0 {
        Ok(f_x * (-(gprime0.ln())))
    } else if g_x == 0.0 {
        Err(LevinError::Domain(format!("g({x}) = 0 away from the origin; g must increase from 0")))
    } else {
        Ok(f_x * (x / g_x).ln())
    }
}

/// Closed-form endpoint value h₂(gval) = q₁(0)·e^{−iw·gval}·Ein(−iw·gval),
/// with Ein(z) = γ + Γ(0, z) + Log(z). Callers define h₂(0) = 0 themselves;
/// this formula requires gval > 0.
pub fn h2_endpoint(q1_at_0: Complex64, w: f64, gval: f64) -> Result<Complex64, LevinError> {
    if !gval.is_finite() || gval <= 0.0 {
        return Err(LevinError::Domain("h2_endpoint requires gval > 0".into()));
    }
    if !w.is_finite() || w == 0.0 {
        return Err(LevinError::Domain("h2_endpoint requires a nonzero frequency".into()));
    }
    if q1_at_0.re == 0.0 && q1_at_0.im == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let combo = special::ein(Complex64::new(0.0, -w * gval))?;
    Ok(q1_at_0 * Complex64::from_polar(1.0, -w * gval) * combo)
}

/// ∫₀ᵃ f(x) log(x) e^{iwx} dx by the singularity-separated collocation for
/// the linear oscillator g(x) = x.
///
/// One SVD of L = (2/a)D + iwI serves both solves: q₁ from 𝓛q₁ = f and h₁
/// from 𝓛h₁ = −q₂, then
///
/// ```text
/// Q = (e^{iwa}·eₙᵀ − e₁ᵀ)(q₁·log a + h₁) + e^{iwa}·h₂(a).
/// ```
pub fn levin_log_linear(
    f: &dyn Fn(f64) -> Complex64,
    a: f64,
    w: f64,
    n: usize,
) -> Result<QuadratureResult, LevinError> {
    if n < 3 {
        return Err(LevinError::InvalidArgument("levin_log_linear requires n >= 3".into()));
    }
    if !a.is_finite() || a <= 0.0 {
        return Err(LevinError::InvalidArgument("interval length a must be positive".into()));
    }
    if !w.is_finite() || w.abs() < W_MIN {
        return Err(LevinError::FrequencyTooLow { w, min: W_MIN });
    }
    let mg = chebyshev::map_grid(chebyshev::lobatto_grid(n)?, a)?;
    let fv: Vec<Complex64> = mg.mapped.iter().map(|&x| f(x)).collect();
    check_finite_samples(&fv)?;
    let gpv = vec![1.0; n];
    let l = collocation_matrix(&mg, &gpv, w);
    let svd = linalg::svd(&l)?;

    let q1 = solve_stack(&svd, &l, &fv)?;
    let q1_0 = q1.solution[0];
    let rhs_h1: Vec<Complex64> = mg
        .mapped
        .iter()
        .enumerate()
        .map(|(j, &x)| -q2_linear_value(x, q1.solution[j], q1_0, fv[0], 1.0, w))
        .collect();
    let h1 = solve_stack(&svd, &l, &rhs_h1)?;
    let h2_a = h2_endpoint(q1_0, w, a)?;

    let ln_a = a.ln();
    let e_iwa = Complex64::from_polar(1.0, w * a);
    let at_a = q1.solution[n - 1] * ln_a + h1.solution[n - 1];
    let at_0 = q1_0 * ln_a + h1.solution[0];
    let value = e_iwa * at_a - at_0 + e_iwa * h2_a;
    Ok(QuadratureResult {
        value,
        n,
        rank_used: q1.rank_used,
        residual_inf: q1.residual_inf.max(h1.residual_inf),
        method: MethodKind::LogLinear,
    })
}

/// ∫₀ᵃ f(x) log(x) e^{iwg(x)} dx for a general normalized oscillator
/// (g(0) = 0, g' > 0): the integral is split as
/// f·log(x/g(x)) (non-singular, classic Levin) plus f·log(g(x)) (handled
/// like the linear case in the variable g). Three right-hand sides share
/// the single SVD of L:
///
/// ```text
/// Q = (e^{iwg(a)}·eₙᵀ − e₁ᵀ)(q + q₁·log g(a) + h₁) + e^{iwg(a)}·h₂(a),
/// ```
///
/// with 𝓛q = f₁, 𝓛q₁ = f, 𝓛h₁ = −g'·q₂.
pub fn levin_log_general(
    f: &dyn Fn(f64) -> Complex64,
    osc: &Oscillator,
    a: f64,
    w: f64,
    n: usize,
) -> Result<QuadratureResult, LevinError> {
    if n < 3 {
        return Err(LevinError::InvalidArgument("levin_log_general requires n >= 3".into()));
    }
    if !a.is_finite() || a <= 0.0 {
        return Err(LevinError::InvalidArgument("interval length a must be positive".into()));
    }
    if !w.is_finite() || w.abs() < W_MIN {
        return Err(LevinError::FrequencyTooLow { w, min: W_MIN });
    }
    let mg = chebyshev::map_grid(chebyshev::lobatto_grid(n)?, a)?;
    let gv: Vec<f64> = mg.mapped.iter().map(|&x| osc.g(x)).collect();
    let gpv: Vec<f64> = mg.mapped.iter().map(|&x| osc.gprime(x)).collect();
    if gv[0].abs() > 1e-12 * gv[n - 1].abs().max(1.0) {
        return Err(LevinError::Unsupported(format!(
            "oscillator is not normalized: g(0) = {} (expected 0)",
            gv[0]
        )));
    }
    if gpv.iter().any(|&gp| !gp.is_finite() || gp <= 0.0) {
        return Err(LevinError::Unsupported(
            "g' must be positive on the grid; normalize the problem first".into(),
        ));
    }
    let ga = gv[n - 1];
    if ga.is_nan() || ga <= 0.0 {
        return Err(LevinError::Unsupported(format!("g(a) = {ga} must be positive")));
    }

    let fv: Vec<Complex64> = mg.mapped.iter().map(|&x| f(x)).collect();
    check_finite_samples(&fv)?;
    let mut f1v = Vec::with_capacity(n);
    for (j, &x) in mg.mapped.iter().enumerate() {
        let g_x = if j == 0 { 0.0 } else { gv[j] };
        f1v.push(f1_general_value(x, fv[j], g_x, gpv[0])?);
    }
    check_finite_samples(&f1v)?;

    let l = collocation_matrix(&mg, &gpv, w);
    let svd = linalg::svd(&l)?;

    let q = solve_stack(&svd, &l, &f1v)?;
    let q1 = solve_stack(&svd, &l, &fv)?;
    let q1_0 = q1.solution[0];
    let mut rhs_h1 = Vec::with_capacity(n);
    for (j, &x) in mg.mapped.iter().enumerate() {
        let g_x = if j == 0 { 0.0 } else { gv[j] };
        let q2 = q2_general_value(x, g_x, q1.solution[j], q1_0, fv[0], gpv[0], w)?;
        rhs_h1.push(-gpv[j] * q2);
    }
    let h1 = solve_stack(&svd, &l, &rhs_h1)?;
    let h2_a = h2_endpoint(q1_0, w, ga)?;

    let ln_ga = ga.ln();
    let e_iwga = Complex64::from_polar(1.0, w * ga);
    let at_a = q.solution[n - 1] + q1.solution[n - 1] * ln_ga + h1.solution[n - 1];
    let at_0 = q.solution[0] + q1_0 * ln_ga + h1.solution[0];
    let value = e_iwga * at_a - at_0 + e_iwga * h2_a;
    Ok(QuadratureResult {
        value,
        n,
        rank_used: q1.rank_used,
        residual_inf: q.residual_inf.max(q1.residual_inf).max(h1.residual_inf),
        method: MethodKind::LogGeneral,
    })
}
