//! The Elbert–Laforgia limit `ι(x) = lim_k j_{xk,k}/k`, the ratio
//! `f(x) = ι(x)/x` and its closed-form inverse
//! `f⁻¹(y) = π/(√(y²−1) − arccos(1/y))`.
//!
//! With `s = √(y²−1)` one has `arccos(1/y) = arctan s`, so both directions
//! reduce to the map `s ↦ s − arctan s`, evaluated without cancellation.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::specfun::roots::{invert_s_minus_atan, s_minus_atan};

/// `f⁻¹(y)` for `y > 1`: strictly decreasing from ∞ (at `y → 1⁺`) to 0.
pub fn f_inverse(y: f64) -> Result<f64> {
    if !(y > 1.0) {
        return Err(Error::domain(format!("f_inverse needs y > 1, got {y}")));
    }
    if y.is_infinite() {
        return Ok(0.0);
    }
    let s = ((y - 1.0) * (y + 1.0)).sqrt();
    Ok(PI / s_minus_atan(s))
}

/// `(f⁻¹)'(y) = −(√(y²−1)/(π y)) · f⁻¹(y)²`.
pub fn f_inverse_derivative(y: f64) -> Result<f64> {
    let v = f_inverse(y)?;
    let s = ((y - 1.0) * (y + 1.0)).sqrt();
    Ok(-s / (PI * y) * v * v)
}

/// `f(x)`, the unique `y > 1` with `f⁻¹(y) = x`.
pub fn f_of(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("f needs finite x > 0, got {x}")));
    }
    let s = invert_s_minus_atan(PI / x);
    let y = (1.0 + s * s).sqrt();
    if !(y > 1.0) {
        return Err(Error::Solver(format!("f({x}) is not representable above 1")));
    }
    Ok(y)
}

/// `√(f(x)² − 1)`, computed from the root `s` directly (no cancellation for large x).
pub fn f_root_gap(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("f needs finite x > 0, got {x}")));
    }
    Ok(invert_s_minus_atan(PI / x))
}

/// `f'(x) = 1/(f⁻¹)'(f(x))`.
pub fn f_derivative(x: f64) -> Result<f64> {
    f_inverse_derivative(f_of(x)?).map(|d| 1.0 / d)
}

/// `ι(x) = x·f(x)`, with the limit `ι(0) = π`.
pub fn iota(x: f64) -> Result<f64> {
    if x == 0.0 {
        return Ok(PI);
    }
    Ok(x * f_of(x)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_at_two() {
        let want = PI / (3f64.sqrt() - PI / 3.0);
        assert!((f_inverse(2.0).unwrap() - want).abs() < 1e-14);
        assert!((f_of(want).unwrap() - 2.0).abs() < 1e-13);
    }

    #[test]
    fn inverse_pair() {
        for &x in &[1e-3, 0.5, 1.0, 4.0, 16.0, 1e3] {
            let y = f_of(x).unwrap();
            assert!(((f_inverse(y).unwrap() - x) / x).abs() < 1e-12, "x={x}");
        }
        for &y in &[1.0001, 1.2, 2.0, 50.0, 1e6] {
            let x = f_inverse(y).unwrap();
            assert!(((f_of(x).unwrap() - y) / y).abs() < 1e-12, "y={y}");
        }
    }

    #[test]
    fn limits() {
        assert!(f_inverse(1e6).unwrap() < 1e-5);
        assert!((iota(1e-9).unwrap() - PI).abs() < 1e-6);
        assert!(f_inverse(1.0 + 1e-12).unwrap() > 1e6);
        assert!(f_inverse(1.0).unwrap_err().is_domain());
    }

    #[test]
    fn derivative_formula_matches_differences() {
        for &y in &[1.1, 1.5, 3.0, 10.0] {
            let h = 1e-6 * y;
            let fd = (f_inverse(y + h).unwrap() - f_inverse(y - h).unwrap()) / (2.0 * h);
            let d = f_inverse_derivative(y).unwrap();
            assert!(((fd - d) / d).abs() < 1e-7, "y={y}");
        }
    }
}
