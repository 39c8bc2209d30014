//! Laplace-type moments of K₁: `M(μ, a) = ∫₀^∞ e^{−as} K₁(s) s^{μ−1} ds`.

use std::f64::consts::PI;

use statrs::function::gamma::ln_gamma;

use super::bessel_k::k01_scaled;
use super::quadrature::{integrate_decaying, QuadratureResult};
use crate::error::{Error, Result};

/// Default absolute tolerance relative to the moment's natural scale.
pub const MOMENT_REL_TOL: f64 = 1.0e-14;

fn check(mu: f64, a: f64) -> Result<()> {
    if !(mu > 1.0) || !mu.is_finite() {
        return Err(Error::domain(format!("moment order must satisfy μ > 1, got {mu}")));
    }
    if !(a > -1.0 && a <= 1.0) {
        return Err(Error::domain(format!("Laplace parameter must lie in (-1, 1], got {a}")));
    }
    Ok(())
}

/// Rough magnitude of the moment, used to turn a relative target into an
/// absolute quadrature tolerance.
fn scale(mu: f64, a: f64) -> f64 {
    let near_zero = (ln_gamma(mu - 1.0) + (1.0 - mu) * (1.0 + a).ln()).exp();
    near_zero.max(1.0)
}

/// `∫₀^∞ e^{−as} K₁(s) s^{μ−1} ds` by quadrature, with its error estimate.
pub fn k1_laplace_moment_quad(mu: f64, a: f64, rel_tol: f64) -> Result<QuadratureResult> {
    check(mu, a)?;
    let rate = 1.0 + a;
    let integrand = |s: f64| {
        if s <= 0.0 {
            return 0.0;
        }
        let (_, k1e) = k01_scaled(s);
        k1e * (-(rate * s)).exp() * s.powf(mu - 1.0)
    };
    integrate_decaying(integrand, rate, rel_tol * scale(mu, a))
}

/// `∫₀^∞ e^{−as} K₁(s) s^{μ−1} ds` for μ > 1 and a ∈ (−1, 1].
pub fn k1_laplace_moment(mu: f64, a: f64) -> Result<f64> {
    k1_laplace_moment_quad(mu, a, MOMENT_REL_TOL).map(|r| r.value)
}

/// Closed form of the same moment through the Legendre function, written as
///
/// `√(π/2) Γ(μ−1)Γ(μ+1)/Γ(μ+½) · (1+a)^{½−μ} · ₂F₁(−½, 3/2; μ+½; (1−a)/2)`,
///
/// which is the associated Legendre representation after Euler's transformation
/// and also holds at `a = 1`.
pub fn k1_laplace_moment_closed_form(mu: f64, a: f64) -> Result<f64> {
    check(mu, a)?;
    let z = 0.5 * (1.0 - a);
    let c = mu + 0.5;
    let f = hyp2f1(-0.5, 1.5, c, z)?;
    let log_pref = 0.5 * (0.5 * PI).ln() + ln_gamma(mu - 1.0) + ln_gamma(mu + 1.0) - ln_gamma(c)
        + (0.5 - mu) * (1.0 + a).ln();
    Ok(log_pref.exp() * f)
}

/// Gauss hypergeometric series for `0 ≤ z < 1`.
pub(crate) fn hyp2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&z) {
        return Err(Error::domain(format!("hypergeometric series needs 0 <= z < 1, got {z}")));
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 0..2_000_000 {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * z;
        sum += term;
        if term.abs() < 1e-17 * sum.abs() && n > 2 {
            return Ok(sum);
        }
    }
    Err(Error::accuracy("hypergeometric series did not converge", sum))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_values_at_unit_parameter() {
        assert!((k1_laplace_moment(4.0, 1.0).unwrap() - 16.0 / 35.0).abs() < 1e-13);
        assert!((k1_laplace_moment(5.0, 1.0).unwrap() - 16.0 / 21.0).abs() < 1e-13);
        assert!((k1_laplace_moment_closed_form(4.0, 1.0).unwrap() - 16.0 / 35.0).abs() < 1e-14);
        assert!((k1_laplace_moment_closed_form(5.0, 1.0).unwrap() - 16.0 / 21.0).abs() < 1e-14);
    }

    #[test]
    fn mellin_value_without_damping() {
        let want = 1.5 * PI;
        assert!((k1_laplace_moment(4.0, 0.0).unwrap() - want).abs() < 1e-12);
        assert!((k1_laplace_moment_closed_form(4.0, 0.0).unwrap() - want).abs() < 1e-13);
    }

    #[test]
    fn closed_form_agrees_with_quadrature() {
        // mpmath values for the same integrals
        let cases = [
            (2.5, 0.3, 0.990_548_862_122_726),
            (1.5, -0.7, 5.695_106_266_073_349),
            (7.0, 0.9, 6.215_205_380_842_912),
        ];
        for &(mu, a, want) in &cases {
            let q = k1_laplace_moment(mu, a).unwrap();
            let c = k1_laplace_moment_closed_form(mu, a).unwrap();
            assert!(((q - want) / want).abs() < 1e-12, "quad μ={mu} a={a}: {q}");
            assert!(((c - want) / want).abs() < 1e-12, "closed μ={mu} a={a}: {c}");
        }
    }

    #[test]
    fn domain_checks() {
        assert!(k1_laplace_moment(1.0, 0.5).unwrap_err().is_domain());
        assert!(k1_laplace_moment(3.0, -1.0).unwrap_err().is_domain());
        assert!(k1_laplace_moment(3.0, 1.5).unwrap_err().is_domain());
    }
}
