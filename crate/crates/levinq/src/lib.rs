//! Levin-type collocation quadrature for highly oscillatory integrals with a
//! logarithmic endpoint singularity.
//!
//! The crate evaluates integrals of the form
//!
//! ```text
//! I = ∫₀ᵃ f(x) · log(x) · e^{i w g(x)} dx
//! ```
//!
//! where `f` is smooth, the oscillator `g` is smooth with `g'(x) ≠ 0` on
//! `[0, a]`, and the frequency `w` may be very large. The singular Levin ODE
//! `p' + iwg'p = f log x` is split by the ansatz `p = q log x + h` into
//! non-singular ODEs that a Chebyshev collocation solves stably through a
//! truncated SVD, plus one ODE with a closed-form solution in terms of the
//! complementary incomplete gamma function. The classic Levin collocation
//! method (no singularity handling) is included as a baseline, together with
//! an independent adaptive reference integrator and closed forms for
//! verification.
//!
//! Modules:
//!
//! - [`chebyshev`]: Lobatto and Radau-type point sets, spectral
//!   differentiation, barycentric evaluation.
//! - [`linalg`]: self-contained complex SVD (one-sided Jacobi) and
//!   truncated-SVD least squares.
//! - [`special`]: Γ(0, z), Ein(z), Si/Ci, principal logarithm.
//! - [`levin`]: the quadrature engines (classic, log-linear, log-general).
//! - [`oracle`]: closed forms and a brute-force adaptive reference.
//! - [`cli`]: problem registry, CSV records, and the command implementations
//!   behind the `levinq` binary.

pub mod chebyshev;
pub mod cli;
pub mod levin;
pub mod linalg;
pub mod oracle;
pub mod special;
