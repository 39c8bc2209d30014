//! The first- and second-order constants of the large-k expansion
//!
//! `j_{xk,k}/k = ι(x) − c₁(x)/k + ζ_x/k² + o(k⁻²)`,
//!
//! with `c₁(x) = (π/4) f/√(f²−1)` and
//!
//! `ζ_x = c₁(x)·(1/(2π²) − ∫_{f(x)}^∞ [−g''(t)/8 + (t²−1)/(6π²t⁴)·M(1/t)] dt)`,
//!
//! where `M(a) = ∫₀^∞ s³K₁(s)e^{−as} ds`. The outer integral is taken in
//! `u = 1/t`, which maps it onto the finite interval `[0, 1/f(x)]` with a
//! smooth integrand.
//!
//! The same constant is also assembled from its defining density `Θ₀`,
//! `ζ_x = c₁(x)(1/(2π²) − ∫₀^x Θ₀)`, integrated after the change of
//! variables `t = f⁻¹(τ)`, `u = 1/τ`. That route builds the integrand from
//! `Θ₀` itself and evaluates the moment through its hypergeometric closed
//! form, so the two evaluations share no intermediate formula.

use std::f64::consts::PI;

use super::gfun::g_eval;
use super::inverse::{f_inverse, f_inverse_derivative, f_of, f_root_gap};
use crate::error::{Error, Result};
use crate::specfun::moments::{k1_laplace_moment_closed_form, k1_laplace_moment_quad};
use crate::specfun::quadrature::{integrate, QuadratureResult, DEFAULT_BUDGET};

/// Absolute tolerance of the outer ζ integrals.
pub const ZETA_TOL: f64 = 1.0e-13;
const MOMENT_TOL: f64 = 1.0e-15;

/// `c₁(x) = (π/4)·f(x)/√(f(x)²−1)`.
pub fn c1(x: f64) -> Result<f64> {
    let f = f_of(x)?;
    Ok(0.25 * PI * f / f_root_gap(x)?)
}

fn third_moment_quad(a: f64) -> f64 {
    // Quadrature errors surface as NaN and are caught by the outer check.
    k1_laplace_moment_quad(4.0, a, MOMENT_TOL).map(|r| r.value).unwrap_or(f64::NAN)
}

/// Integrand of the alternative formula in `u = 1/t`:
/// `−g''(1/u)/(8u²) + (1 − u²)·M(u)/(6π²)`.
fn alternative_integrand(u: f64) -> f64 {
    if u <= 0.0 {
        return third_moment_quad(0.0) / (6.0 * PI * PI);
    }
    let t = 1.0 / u;
    let g2 = g_eval(t, 2).unwrap_or(f64::NAN);
    -g2 * t * t / 8.0 + (1.0 - u * u) * third_moment_quad(u) / (6.0 * PI * PI)
}

/// `∫_{f(x)}^∞ [−g''(t)/8 + (t²−1)/(6π²t⁴)·M(1/t)] dt`, which equals `∫₀^x Θ₀`.
pub fn theta0_integral(x: f64) -> Result<QuadratureResult> {
    let f = f_of(x)?;
    let r = integrate(alternative_integrand, 0.0, 1.0 / f, ZETA_TOL, DEFAULT_BUDGET)?;
    if !r.value.is_finite() {
        return Err(Error::accuracy(format!("inner moment failed while integrating to x={x}"), r.value));
    }
    Ok(r)
}

/// ζ_x from the alternative (single outer integral) formula.
pub fn zeta(x: f64) -> Result<f64> {
    let i = theta0_integral(x).map_err(|e| e.context(format!("ζ at x={x}")))?;
    Ok(c1(x)? * (0.5 / (PI * PI) - i.value))
}

/// The density `Θ₀(x)` of the second-order constant:
///
/// `Θ₀(x) = −(π/(8x²)) g''(f) f/√(f²−1) − ∂²F·(2/π)√(f²−1)/f`,
///
/// `∂²F = −(1/(12x²f²)) ∫₀^∞ t³K₁(t)e^{−t/f} dt`.
pub fn theta0(x: f64) -> Result<f64> {
    let f = f_of(x)?;
    let r = f_root_gap(x)?;
    theta0_parts(x, f, r)
}

fn theta0_parts(x: f64, f: f64, root_gap: f64) -> Result<f64> {
    let moment = k1_laplace_moment_closed_form(4.0, 1.0 / f)?;
    let d2f = -moment / (12.0 * x * x * f * f);
    let g2 = g_eval(f, 2)?;
    Ok(-(PI / (8.0 * x * x)) * g2 * f / root_gap - d2f * (2.0 / PI) * root_gap / f)
}

/// `Θ₀(f⁻¹(τ))·|(f⁻¹)'(τ)|/u²` at `τ = 1/u`: the transformed density.
fn transformed_theta0(u: f64) -> f64 {
    if u <= 0.0 {
        // τ → ∞: the density tends to M(0)/(6π²), the same as the alternative form.
        return 1.5 * PI / (6.0 * PI * PI);
    }
    let tau = 1.0 / u;
    let eval = || -> Result<f64> {
        let x = f_inverse(tau)?;
        let root_gap = ((tau - 1.0) * (tau + 1.0)).sqrt();
        let th = theta0_parts(x, tau, root_gap)?;
        Ok(th * f_inverse_derivative(tau)?.abs() * tau * tau)
    };
    eval().unwrap_or(f64::NAN)
}

/// `∫₀^x Θ₀(t) dt` through the substitution `t = f⁻¹(1/u)`.
pub fn theta0_integral_transformed(x: f64) -> Result<QuadratureResult> {
    let f = f_of(x)?;
    let r = integrate(transformed_theta0, 0.0, 1.0 / f, ZETA_TOL, DEFAULT_BUDGET)?;
    if !r.value.is_finite() {
        return Err(Error::accuracy(format!("Θ₀ density failed while integrating to x={x}"), r.value));
    }
    Ok(r)
}

/// ζ_x from the defining density `Θ₀`.
pub fn zeta_via_theta0(x: f64) -> Result<f64> {
    let i = theta0_integral_transformed(x).map_err(|e| e.context(format!("ζ via Θ₀ at x={x}")))?;
    Ok(c1(x)? * (0.5 / (PI * PI) - i.value))
}

/// Root of ζ on `[1, 100]`: bisection down to a bracket of width 10⁻⁶,
/// then secant steps kept inside the bracket. Returns the root and the
/// number of ζ evaluations spent (at most 60).
pub fn find_x0_with_count() -> Result<(f64, usize)> {
    const BUDGET: usize = 60;
    let mut evals = 0;
    let mut eval = |x: f64| -> Result<f64> {
        evals += 1;
        zeta(x)
    };
    let (mut a, mut b) = (1.0, 100.0);
    let mut fa = eval(a)?;
    let mut fb = eval(b)?;
    if fa.signum() == fb.signum() {
        return Err(Error::Solver(format!(
            "ζ has no sign change on [1, 100]: ζ(1) = {fa:e}, ζ(100) = {fb:e}"
        )));
    }
    while b - a > 1e-6 {
        let m = 0.5 * (a + b);
        let fm = eval(m)?;
        if fm == 0.0 {
            return Ok((m, evals));
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
            fb = fm;
        }
    }
    // Secant polish inside [a, b].
    let (mut x0, mut f0, mut x1, mut f1) = (a, fa, b, fb);
    for _ in 0..8 {
        if f1 == f0 {
            break;
        }
        let x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
        if !(x2 > a && x2 < b) {
            break;
        }
        let f2 = eval(x2)?;
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = f2;
        if (x1 - x0).abs() < 1e-13 * x1 || f1 == 0.0 {
            break;
        }
    }
    let _ = f0;
    if evals > BUDGET {
        return Err(Error::Solver(format!("root of ζ needed {evals} evaluations")));
    }
    let best = if f1.abs() <= fa.abs().min(fb.abs()) { x1 } else if fa.abs() < fb.abs() { a } else { b };
    Ok((best, evals))
}

/// The unique zero x₀ of `x ↦ ζ_x`.
pub fn find_x0() -> Result<f64> {
    find_x0_with_count().map(|(x, _)| x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_x_limit() {
        let z = zeta(1e-3).unwrap();
        assert!((z - 1.0 / (8.0 * PI)).abs() < 1e-3);
    }

    #[test]
    fn two_routes_agree() {
        for &x in &[0.1, 1.0, 4.0] {
            let a = zeta(x).unwrap();
            let b = zeta_via_theta0(x).unwrap();
            assert!((a - b).abs() < 1e-10, "x={x}: {a} vs {b}");
        }
    }

    #[test]
    fn theta0_is_positive_and_bounded_near_zero() {
        for &x in &[1e-4, 0.01, 0.3, 2.0, 16.0, 80.0] {
            let v = theta0(x).unwrap();
            assert!(v > 0.0, "x={x}");
        }
        // Θ₀(0⁺) = 1/(4π²)
        assert!((theta0(1e-5).unwrap() - 0.25 / (PI * PI)).abs() < 1e-4);
    }
}
