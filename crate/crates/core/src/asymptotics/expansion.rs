//! Numerical checks of the expansion of `j_{xk,k}/k` and of the order
//! derivative along rays `ν = σk − δ`.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use super::gfun::g_eval;
use super::inverse::{f_derivative, f_of, f_root_gap};
use super::zeta::{c1, zeta};
use crate::error::{Error, Result};
use crate::specfun::watson::dzero_dnu;
use crate::specfun::zeros::bessel_j_zero;

/// Residuals of the expansion at one rank.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResidualRecord {
    pub k: u64,
    /// `r0 = j_{xk,k}/k − ι(x)`.
    pub r0: f64,
    /// `r1 = k·r0 + c₁(x)`.
    pub r1: f64,
    /// `r2 = k²·(r0 + c₁(x)/k)`, which tends to ζ_x.
    pub r2: f64,
}

/// Expansion data at one `x`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpansionProfile {
    pub x: f64,
    pub iota: f64,
    pub f_value: f64,
    pub c1: f64,
    pub zeta: f64,
    pub residual_orders: Vec<ResidualRecord>,
    /// Least-squares slope of `log|r0|` against `log k` (expected −1).
    pub first_order_slope: f64,
    /// Least-squares slope of `log|r1|` against `log k` (expected −1).
    pub second_order_slope: f64,
    /// Polynomial extrapolation of `r2` in `1/k` to `1/k = 0`.
    pub extrapolated_zeta: f64,
}

/// Least-squares slope of `ys` against `xs`.
pub fn fit_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    sxy / sxx
}

fn log_log_slope(ks: &[u64], vals: &[f64]) -> f64 {
    let lx: Vec<f64> = ks.iter().map(|&k| (k as f64).ln()).collect();
    let ly: Vec<f64> = vals.iter().map(|v| v.abs().ln()).collect();
    fit_slope(&lx, &ly)
}

/// Extrapolates samples `values[i] ≈ L + a/k_i + b/k_i² + …` to `L` by
/// Neville's scheme in `h = 1/k`, using all samples.
pub fn richardson(ks: &[u64], values: &[f64]) -> Result<f64> {
    if ks.len() != values.len() || ks.is_empty() {
        return Err(Error::domain("richardson needs matching, non-empty samples"));
    }
    let h: Vec<f64> = ks.iter().map(|&k| 1.0 / k as f64).collect();
    let mut p = values.to_vec();
    let n = p.len();
    for m in 1..n {
        for i in 0..n - m {
            let (hi, hj) = (h[i], h[i + m]);
            if hi == hj {
                return Err(Error::domain("richardson needs distinct ranks"));
            }
            p[i] = (hj * p[i] - hi * p[i + 1]) / (hj - hi);
        }
    }
    Ok(p[0])
}

/// Zeros `j_{xk,k}` and the expansion residuals for each `k` in `k_list`.
pub fn expansion_residuals(x: f64, k_list: &[u64]) -> Result<ExpansionProfile> {
    if k_list.is_empty() {
        return Err(Error::domain("k_list must not be empty"));
    }
    if k_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::domain("k_list must be strictly increasing"));
    }
    let f = f_of(x)?;
    let iota = x * f;
    let c = c1(x)?;
    let z = zeta(x)?;
    let zeros: Vec<Result<f64>> = k_list
        .par_iter()
        .map(|&k| bessel_j_zero(x * k as f64, k).map(|r| r.value))
        .collect();
    let mut records = Vec::with_capacity(k_list.len());
    for (&k, zr) in k_list.iter().zip(zeros) {
        let j = zr?;
        let kf = k as f64;
        let r0 = (j - kf * iota) / kf;
        let r1 = kf * r0 + c;
        records.push(ResidualRecord { k, r0, r1, r2: kf * r1 });
    }
    let r0s: Vec<f64> = records.iter().map(|r| r.r0).collect();
    let r1s: Vec<f64> = records.iter().map(|r| r.r1).collect();
    let r2s: Vec<f64> = records.iter().map(|r| r.r2).collect();
    let (first_order_slope, second_order_slope) = if k_list.len() >= 2 {
        (log_log_slope(k_list, &r0s), log_log_slope(k_list, &r1s))
    } else {
        (f64::NAN, f64::NAN)
    };
    Ok(ExpansionProfile {
        x,
        iota,
        f_value: f,
        c1: c,
        zeta: z,
        residual_orders: records,
        first_order_slope,
        second_order_slope,
        extrapolated_zeta: richardson(k_list, &r2s)?,
    })
}

/// Deviations of `∂j/∂ν` along a ray from its predicted limit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DerivativeCheck {
    pub sigma: f64,
    /// `g(f(σ))`.
    pub limit: f64,
    /// Coefficient of `1/k` subtracted from the derivative before measuring.
    pub first_order_coefficient: f64,
    pub entries: Vec<(u64, f64)>,
    /// `−slope` of `log(deviation)` against `log k`.
    pub fitted_exponent: f64,
}

/// First-order coefficient `−(π/(4σ)) f/√(f²−1) g'(f) − g'(f) f'(σ) δ` of the
/// derivative along `ν = σk − δ`.
pub fn derivative_first_order_coefficient(sigma: f64, delta: f64) -> Result<f64> {
    let f = f_of(sigma)?;
    let gp = g_eval(f, 1)?;
    Ok(-(PI / (4.0 * sigma)) * f / f_root_gap(sigma)? * gp - gp * f_derivative(sigma)? * delta)
}

fn derivative_check(sigma: f64, k_list: &[u64], delta: f64, subtract_first_order: bool) -> Result<DerivativeCheck> {
    if !(sigma > 0.0) {
        return Err(Error::domain(format!("σ must be positive, got {sigma}")));
    }
    if k_list.len() < 2 {
        return Err(Error::domain("need at least two ranks to fit a decay exponent"));
    }
    let limit = g_eval(f_of(sigma)?, 0)?;
    let coeff = if subtract_first_order { derivative_first_order_coefficient(sigma, delta)? } else { 0.0 };
    let derivs: Vec<Result<f64>> = k_list
        .par_iter()
        .map(|&k| {
            let nu = sigma * k as f64 - delta;
            if nu < 0.0 {
                return Err(Error::domain(format!("order σk − δ is negative at k={k}")));
            }
            dzero_dnu(nu, k)
        })
        .collect();
    let mut entries = Vec::with_capacity(k_list.len());
    for (&k, d) in k_list.iter().zip(derivs) {
        let dev = (d? - limit - coeff / k as f64).abs();
        entries.push((k, dev));
    }
    let ks: Vec<u64> = entries.iter().map(|e| e.0).collect();
    let devs: Vec<f64> = entries.iter().map(|e| e.1).collect();
    Ok(DerivativeCheck {
        sigma,
        limit,
        first_order_coefficient: coeff,
        entries,
        fitted_exponent: -log_log_slope(&ks, &devs),
    })
}

/// Deviations `|∂j/∂ν(σk − σ/4, k) − g(f(σ))|`; the first-order term
/// vanishes on this ray, so the fitted exponent should be close to 2.
pub fn derivative_limit_check(sigma: f64, k_list: &[u64]) -> Result<DerivativeCheck> {
    derivative_check(sigma, k_list, 0.25 * sigma, false)
}

/// Deviations along `ν = σk` after subtracting the first-order correction;
/// these should decay faster than `1/k`.
pub fn derivative_first_order_check(sigma: f64, k_list: &[u64]) -> Result<DerivativeCheck> {
    derivative_check(sigma, k_list, 0.0, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn richardson_removes_polynomial_terms() {
        let ks = [10u64, 20, 40];
        let vals: Vec<f64> = ks.iter().map(|&k| 3.0 + 2.0 / k as f64 - 5.0 / (k * k) as f64).collect();
        assert!((richardson(&ks, &vals).unwrap() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn first_order_coefficient_vanishes_on_quarter_shift() {
        for &s in &[0.5, 1.0, 4.0] {
            let c = derivative_first_order_coefficient(s, 0.25 * s).unwrap();
            assert!(c.abs() < 1e-12, "σ={s}: {c}");
        }
    }

    #[test]
    fn residuals_have_expected_signs() {
        let p = expansion_residuals(1.0, &[50, 100, 200]).unwrap();
        for r in &p.residual_orders {
            assert!(r.r0 < 0.0);
        }
        assert!((p.first_order_slope + 1.0).abs() < 0.05);
    }
}
