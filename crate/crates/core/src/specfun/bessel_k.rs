//! Modified Bessel functions of the second kind, orders 0 and 1.
//!
//! `x ≤ 2` uses the ascending series with the logarithmic term; larger
//! arguments use Steed's continued fraction (CF2) normalised by the
//! Temme sum, which also yields the exponentially scaled values directly.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const SERIES_LIMIT: f64 = 2.0;

/// Scaled pair `(e^x K₀(x), e^x K₁(x))` for `x > 0`, no argument checks.
pub(crate) fn k01_scaled(x: f64) -> (f64, f64) {
    if x <= SERIES_LIMIT {
        let (k0, k1) = k01_series(x);
        let e = x.exp();
        (k0 * e, k1 * e)
    } else {
        k01_steed_scaled(x)
    }
}

/// Unscaled pair `(K₀(x), K₁(x))` for `x > 0`; underflows to zero past x ≈ 700.
pub(crate) fn k01(x: f64) -> (f64, f64) {
    if x <= SERIES_LIMIT {
        k01_series(x)
    } else {
        let (a, b) = k01_steed_scaled(x);
        let e = (-x).exp();
        (a * e, b * e)
    }
}

fn k01_series(x: f64) -> (f64, f64) {
    let half = 0.5 * x;
    let y = half * half;
    let lg = half.ln();
    // term_k = y^k / (k!)^2, harmonic H_k
    let mut term = 1.0;
    let mut harmonic = 0.0;
    let mut i0 = 0.0;
    let mut i1_over = 0.0; // I₁(x)/(x/2) = Σ y^k/(k!(k+1)!)
    let mut s0 = 0.0;
    let mut s1 = 0.0;
    for k in 0..60 {
        let kf = k as f64;
        let psi1 = harmonic - EULER_GAMMA; // ψ(k+1)
        let psi2 = psi1 + 1.0 / (kf + 1.0); // ψ(k+2)
        let t1 = term / (kf + 1.0);
        i0 += term;
        i1_over += t1;
        s0 += psi1 * term;
        s1 += (psi1 + psi2) * t1;
        if term < 1.0e-18 * i0 {
            break;
        }
        harmonic += 1.0 / (kf + 1.0);
        term *= y / ((kf + 1.0) * (kf + 1.0));
    }
    let k0 = -lg * i0 + s0;
    let k1 = 1.0 / x + lg * half * i1_over - 0.5 * half * s1;
    (k0, k1)
}

fn k01_steed_scaled(x: f64) -> (f64, f64) {
    const EPS: f64 = 1.0e-17;
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 1..10_000 {
        let fi = i as f64;
        a -= 2.0 * fi;
        c = -a * c / (fi + 1.0);
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < EPS {
            break;
        }
    }
    h *= a1;
    let k0 = (PI / (2.0 * x)).sqrt() / s;
    let k1 = k0 * (x + 0.5 - h) / x;
    (k0, k1)
}

fn check_arg(x: f64) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("modified Bessel K needs finite x > 0, got {x}")));
    }
    Ok(())
}

/// K_n(x) for n ∈ {0, 1} and x > 0.
///
/// Returns a range error once the value underflows (x beyond ≈ 705).
pub fn bessel_k(n: u32, x: f64) -> Result<f64> {
    check_arg(x)?;
    let (k0, k1) = k01(x);
    let v = match n {
        0 => k0,
        1 => k1,
        _ => return Err(Error::domain(format!("only orders 0 and 1 are supported, got {n}"))),
    };
    if v < f64::MIN_POSITIVE {
        return Err(Error::Range(format!("K_{n}({x}) underflows")));
    }
    Ok(v)
}

/// Exponentially scaled `e^x K_n(x)` for n ∈ {0, 1}; valid for all x > 0.
pub fn bessel_k_scaled(n: u32, x: f64) -> Result<f64> {
    check_arg(x)?;
    let (k0, k1) = k01_scaled(x);
    match n {
        0 => Ok(k0),
        1 => Ok(k1),
        _ => Err(Error::domain(format!("only orders 0 and 1 are supported, got {n}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Reference values from mpmath.besselk at 30 digits.
    const K0_REF: [(f64, f64); 6] = [
        (0.001, 7.023688800562382),
        (0.5, 0.9244190712276659),
        (1.0, 0.42102443824070834),
        (2.0, 0.11389387274953344),
        (2.5, 0.06234755320036619),
        (10.0, 1.778006231616765e-05),
    ];
    const K1_REF: [(f64, f64); 6] = [
        (0.001, 999.9962381560856),
        (0.5, 1.656441120003301),
        (1.0, 0.6019072301972346),
        (2.0, 0.13986588181652243),
        (2.5, 0.07389081634774707),
        (10.0, 1.8648773453825585e-05),
    ];

    #[test]
    fn matches_reference_values() {
        for &(x, v) in &K0_REF {
            let got = bessel_k(0, x).unwrap();
            assert!(((got - v) / v).abs() < 1e-14, "K0({x}) = {got}, want {v}");
        }
        for &(x, v) in &K1_REF {
            let got = bessel_k(1, x).unwrap();
            assert!(((got - v) / v).abs() < 1e-14, "K1({x}) = {got}, want {v}");
        }
    }

    #[test]
    fn branches_agree_at_switch() {
        let lo = k01_series(SERIES_LIMIT);
        let e = SERIES_LIMIT.exp();
        let hi = k01_steed_scaled(SERIES_LIMIT);
        assert!((lo.0 * e / hi.0 - 1.0).abs() < 1e-14);
        assert!((lo.1 * e / hi.1 - 1.0).abs() < 1e-14);
    }

    #[test]
    fn derivative_relation() {
        for &x in &[0.05f64, 0.7, 1.9, 2.1, 5.0, 30.0] {
            let h = 1e-5 * x.min(1.0);
            let d = (bessel_k(0, x + h).unwrap() - bessel_k(0, x - h).unwrap()) / (2.0 * h);
            let k1 = bessel_k(1, x).unwrap();
            assert!(((d + k1) / k1).abs() < 1e-8, "x={x}");
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(bessel_k(0, 0.0).unwrap_err().is_domain());
        assert!(bessel_k(1, -2.0).unwrap_err().is_domain());
        assert!(bessel_k(2, 1.0).unwrap_err().is_domain());
        assert!(matches!(bessel_k(0, 800.0), Err(Error::Range(_))));
        assert!(bessel_k_scaled(0, 800.0).unwrap() > 0.0);
    }
}
