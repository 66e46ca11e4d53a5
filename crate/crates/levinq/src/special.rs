//! Special functions behind the closed-form pieces of the quadrature: the
//! principal complex logarithm, the complementary incomplete gamma function
//! Γ(0, z), the entire exponential integral Ein(z), and the sine and cosine
//! integrals Si(x), Ci(x).
//!
//! Γ(0, z) = ∫_z^∞ e^{−t}/t dt on the principal branch |arg z| < π. For
//! |z| ≤ 4 it is evaluated through the series
//!
//! ```text
//! Γ(0, z) = −γ − Log(z) + Ein(z),    Ein(z) = Σ_{j≥1} (−1)^{j+1} z^j / (j·j!),
//! ```
//!
//! and for |z| > 4 through the continued fraction
//!
//! ```text
//! Γ(0, z) = e^{−z} / (z + 1 − 1²/(z + 3 − 2²/(z + 5 − ...)))
//! ```
//!
//! evaluated with the modified Lentz algorithm (Numerical Recipes §6.2 with
//! a = 0). Ein is entire, so the series needs no branch bookkeeping and the
//! combination γ + Γ(0, z) + Log(z) = Ein(z) is free of the cancellation
//! that plagues assembling it from its three pieces at small |z|.
//!
//! Si and Ci are recovered from Γ(0, ix) via E₁(ix) = −Ci(x) + i(Si(x) − π/2)
//! (Abramowitz & Stegun 5.2), which keeps one accurate code path for every
//! argument size instead of a truncated asymptotic expansion.

use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;
use thiserror::Error;

/// Euler's constant γ.
pub const EULER_GAMMA: f64 = 0.577215664901532860606512090082402431;

/// Radius splitting the series and continued-fraction regimes of Γ(0, z).
pub const Z_SWITCH: f64 = 4.0;

const SERIES_MAX_TERMS: usize = 400;
const CF_MAX_ITER: usize = 10_000;
const CF_TINY: f64 = 1e-300;

#[derive(Debug, Error, PartialEq)]
pub enum SpecialError {
    #[error("domain error: {0}")]
    Domain(&'static str),
    #[error("continued fraction for Γ(0,z) did not converge within {max_iter} iterations at z = {z}")]
    NoConvergence { z: Complex64, max_iter: usize },
}

/// Euler's constant to full double precision.
pub fn euler_gamma() -> f64 {
    EULER_GAMMA
}

/// Principal branch of the complex logarithm, log|z| + i·arg(z), arg ∈ (−π, π].
pub fn principal_log(z: Complex64) -> Result<Complex64, SpecialError> {
    if !z.is_finite() {
        return Err(SpecialError::Domain("log of a non-finite argument"));
    }
    if z.re == 0.0 && z.im == 0.0 {
        return Err(SpecialError::Domain("log of zero"));
    }
    Ok(Complex64::new(z.norm().ln(), z.im.atan2(z.re)))
}

/// Ein(z) = Σ_{j≥1} (−1)^{j+1} z^j/(j·j!), summed until the term drops below
/// 1e−18 of the partial sum. Accurate for |z| up to a little past `Z_SWITCH`;
/// beyond that the alternating terms grow large and digits wash out.
fn ein_series(z: Complex64) -> Complex64 {
    if z.re == 0.0 && z.im == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let mut term = z; // (−1)^{j+1} z^j / j! at j = 1
    let mut sum = z; // term / j at j = 1
    for j in 2..=SERIES_MAX_TERMS {
        term *= -z / j as f64;
        let add = term / j as f64;
        sum += add;
        if add.norm() <= 1e-18 * sum.norm() {
            break;
        }
    }
    sum
}

/// Γ(0, z) by the series route: −γ − Log(z) + Ein(z). Intended for |z| ≲ `Z_SWITCH`;
/// exposed so the continued fraction can be cross-checked against it.
pub fn gamma0_series(z: Complex64) -> Result<Complex64, SpecialError> {
    Ok(ein_series(z) - EULER_GAMMA - principal_log(z)?)
}

/// Γ(0, z) by the modified Lentz continued fraction, scaled by e^{−z}.
/// Converges for z off the negative real axis; exposed for cross-checking.
pub fn gamma0_continued_fraction(z: Complex64) -> Result<Complex64, SpecialError> {
    if z.re == 0.0 && z.im == 0.0 {
        return Err(SpecialError::Domain("Γ(0,z) at z = 0"));
    }
    let floor = |w: Complex64| if w.norm() < CF_TINY { Complex64::new(CF_TINY, 0.0) } else { w };
    let mut f = floor(z + 1.0);
    let mut c = f;
    let mut d = Complex64::new(0.0, 0.0);
    for n in 1..=CF_MAX_ITER {
        let an = -((n * n) as f64);
        let bn = z + (2 * n + 1) as f64;
        d = floor(bn + an * d);
        d = d.inv();
        c = floor(bn + an / c);
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).norm() < 1e-15 {
            return Ok((-z).exp() / f);
        }
    }
    Err(SpecialError::NoConvergence { z, max_iter: CF_MAX_ITER })
}

/// Complementary incomplete gamma function Γ(0, z) = ∫_z^∞ e^{−t}/t dt on the
/// principal branch |arg z| < π.
pub fn gamma0(z: Complex64) -> Result<Complex64, SpecialError> {
    if !z.is_finite() {
        return Err(SpecialError::Domain("Γ(0,z) of a non-finite argument"));
    }
    if z.re == 0.0 && z.im == 0.0 {
        return Err(SpecialError::Domain("Γ(0,z) at z = 0"));
    }
    if z.norm() <= Z_SWITCH {
        gamma0_series(z)
    } else {
        gamma0_continued_fraction(z)
    }
}

/// Entire exponential integral Ein(z) = γ + Log(z) + Γ(0, z).
///
/// This is the combination the endpoint formulas need; evaluating it directly
/// avoids the γ/Log cancellation as z → 0. For |z| > `Z_SWITCH` it requires
/// |arg z| < π (it goes through the Γ(0, z) continued fraction).
pub fn ein(z: Complex64) -> Result<Complex64, SpecialError> {
    if !z.is_finite() {
        return Err(SpecialError::Domain("Ein of a non-finite argument"));
    }
    if z.norm() <= Z_SWITCH {
        Ok(ein_series(z))
    } else {
        Ok(gamma0_continued_fraction(z)? + EULER_GAMMA + principal_log(z)?)
    }
}

/// Sine and cosine integrals, Si(x) = ∫₀ˣ sin t/t dt and
/// Ci(x) = γ + log x + ∫₀ˣ (cos t − 1)/t dt, for x > 0.
pub fn sici(x: f64) -> Result<(f64, f64), SpecialError> {
    if !x.is_finite() || x <= 0.0 {
        return Err(SpecialError::Domain("Si/Ci require x > 0"));
    }
    // E₁(ix) = −Ci(x) + i(Si(x) − π/2)
    let e1 = gamma0(Complex64::new(0.0, x))?;
    Ok((FRAC_PI_2 + e1.im, -e1.re))
}
