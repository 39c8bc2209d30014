//! Order derivative of Bessel zeros through Watson's integral
//!
//! `dj/dν = 2j ∫₀^∞ K₀(2j sinh t) e^{−2νt} dt`,
//!
//! evaluated after substituting `u = 2j sinh t`:
//!
//! `dj/dν = ∫₀^∞ K₀(u) exp(−2ν asinh(u/(2j))) / √(1 + u²/(4j²)) du`.

use super::bessel_k::k01_scaled;
use super::quadrature::{integrate_decaying, QuadratureResult};
use super::zeros::bessel_j_zero;
use crate::error::Result;

/// Default absolute tolerance of the Watson integral (its value is O(1)).
pub const WATSON_TOL: f64 = 1.0e-13;

/// Watson's integral for a known zero `j` of `J_ν`.
pub fn watson_integral(nu: f64, j: f64, tol: f64) -> Result<QuadratureResult> {
    let inv = 0.5 / j;
    let integrand = move |u: f64| {
        if u <= 0.0 {
            return 0.0;
        }
        let (k0e, _) = k01_scaled(u);
        let r = u * inv;
        k0e * (-u - 2.0 * nu * r.asinh()).exp() / (1.0 + r * r).sqrt()
    };
    // The asinh factor only adds decay, so rate 1 bounds the tail safely.
    integrate_decaying(integrand, 1.0, tol)
}

/// `∂j_{ν,k}/∂ν`, always positive.
pub fn dzero_dnu(nu: f64, k: u64) -> Result<f64> {
    let zero = bessel_j_zero(nu, k)?;
    watson_integral(nu, zero.value, WATSON_TOL)
        .map(|r| r.value)
        .map_err(|e| e.context(format!("Watson integral at (ν={nu}, k={k})")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_high_precision_derivatives() {
        // mpmath: numerical differentiation of besseljzero in the order
        let cases = [(0.0, 1, 1.542_889_742_599_313_7), (10.0, 3, 1.234_177_413_030_800_6), (100.5, 7, 1.109_632_376_265_563_7)];
        for &(nu, k, want) in &cases {
            let got = dzero_dnu(nu, k).unwrap();
            assert!((got - want).abs() < 1e-12, "ν={nu} k={k}: {got}");
        }
    }

    #[test]
    fn agrees_with_finite_differences_of_zeros() {
        let h = 1e-5;
        for &(nu, k) in &[(3.0, 2u64), (40.0, 10), (500.0, 100)] {
            let fd = (bessel_j_zero(nu + h, k).unwrap().value - bessel_j_zero(nu - h, k).unwrap().value) / (2.0 * h);
            let w = dzero_dnu(nu, k).unwrap();
            assert!(w > 0.0);
            assert!((fd - w).abs() < 1e-6, "ν={nu} k={k}: fd {fd} vs {w}");
        }
    }
}
