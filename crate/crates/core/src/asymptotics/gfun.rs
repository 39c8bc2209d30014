//! `g(t) = arccos(1/t)/√(1 − 1/t²)`, the Laplace transform
//! `∫₀^∞ K₀(s) e^{−s/t} ds`, and its first two derivatives.
//!
//! Writing `w = t² − 1` gives `g = t·A(w)` with `A(w) = arctan(√w)/√w
//! = Σ (−w)ⁿ/(2n+1)`. Close to `t = 1` the closed forms are 0/0, so the
//! convergent series in `w` is used there instead.

use crate::error::{Error, Result};
use crate::specfun::roots::s_minus_atan;

/// Below this `t` the series in `w = t² − 1` is used.
const SERIES_SWITCH: f64 = 1.1;

/// `A(w)`, `A'(w)`, `A''(w)` from the power series (|w| < 1).
fn a_series(w: f64) -> (f64, f64, f64) {
    let (mut a, mut d1, mut d2) = (0.0, 0.0, 0.0);
    // p = (−w)^n; coefficients of w^{n−1} and w^{n−2} in the derivatives
    // carry the same sign (−1)^n.
    let mut p = 1.0;
    let mut p1 = 0.0; // (−1)^n w^{n−1}
    let mut p2 = 0.0; // (−1)^n w^{n−2}
    for n in 0..400 {
        let nf = n as f64;
        let c = 1.0 / (2.0 * nf + 1.0);
        a += c * p;
        d1 += nf * c * p1;
        d2 += nf * (nf - 1.0) * c * p2;
        if n >= 3 && p.abs() < 1e-18 && p1.abs() < 1e-18 && p2.abs() < 1e-18 {
            break;
        }
        // advance to n + 1
        p2 = -p1;
        p1 = if n == 0 { -1.0 } else { -p1 * w };
        p = -p * w;
        if n == 0 {
            p2 = 0.0;
        }
    }
    (a, d1, d2)
}

/// Evaluates `g` (`deriv = 0`), `g'` (`1`) or `g''` (`2`) at `t ≥ 1`.
pub fn g_eval(t: f64, deriv: u8) -> Result<f64> {
    if !(t >= 1.0) {
        return Err(Error::domain(format!("g needs t >= 1, got {t}")));
    }
    if deriv > 2 {
        return Err(Error::domain(format!("only derivatives 0, 1, 2 are available, got {deriv}")));
    }
    if t.is_infinite() {
        return Ok(if deriv == 0 { std::f64::consts::FRAC_PI_2 } else { 0.0 });
    }
    if t < SERIES_SWITCH {
        let w = (t - 1.0) * (t + 1.0);
        let (a, a1, a2) = a_series(w);
        return Ok(match deriv {
            0 => t * a,
            1 => a + 2.0 * t * t * a1,
            _ => 6.0 * t * a1 + 4.0 * t * t * t * a2,
        });
    }
    let s = ((t - 1.0) * (t + 1.0)).sqrt();
    let theta = s.atan(); // arccos(1/t)
    let gap = s_minus_atan(s);
    Ok(match deriv {
        0 => t * theta / s,
        1 => gap / (s * s * s),
        _ => {
            // (3t² arccos(1/t) − s − 2t² s)/(t s⁵) = (s³ − 3t²(s − arctan s))/(t s⁵)
            let s2 = s * s;
            (s2 * s - 3.0 * t * t * gap) / (t * s2 * s2 * s)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, SQRT_2};

    #[test]
    fn values_at_one() {
        assert_eq!(g_eval(1.0, 0).unwrap(), 1.0);
        assert!((g_eval(1.0, 1).unwrap() - 1.0 / 3.0).abs() < 1e-16);
        assert!((g_eval(1.0, 2).unwrap() + 0.4).abs() < 1e-15);
    }

    #[test]
    fn closed_form_point_and_limit() {
        assert!((g_eval(SQRT_2, 0).unwrap() - FRAC_PI_4 * SQRT_2).abs() < 1e-15);
        assert!((g_eval(1e6, 0).unwrap() - FRAC_PI_2).abs() < 1e-5);
    }

    #[test]
    fn branches_agree_at_switch() {
        for d in 0..=2 {
            let t = SERIES_SWITCH;
            let w = (t - 1.0) * (t + 1.0);
            let (a, a1, a2) = a_series(w);
            let series = match d {
                0 => t * a,
                1 => a + 2.0 * t * t * a1,
                _ => 6.0 * t * a1 + 4.0 * t * t * t * a2,
            };
            let closed = g_eval(t + 1e-15, d).unwrap();
            assert!((series - closed).abs() < 1e-13, "deriv {d}: {series} vs {closed}");
        }
    }

    #[test]
    fn derivatives_match_differences() {
        for &t in &[1.02, 1.3, 2.0, 7.0] {
            for d in 0..2u8 {
                let h = 1e-5;
                let fd = (g_eval(t + h, d).unwrap() - g_eval(t - h, d).unwrap()) / (2.0 * h);
                let an = g_eval(t, d + 1).unwrap();
                assert!((fd - an).abs() < 1e-8, "t={t} d={d}: {fd} vs {an}");
            }
        }
    }

    #[test]
    fn shape_of_derivatives() {
        let mut prev1 = f64::INFINITY;
        let mut prev2 = f64::NEG_INFINITY;
        for i in 0..200 {
            let t = 1.0 + 0.05 * i as f64;
            let d1 = g_eval(t, 1).unwrap();
            let d2 = g_eval(t, 2).unwrap();
            assert!(d1 > 0.0 && d1 < prev1);
            assert!(d2 < 0.0 && d2 > prev2);
            prev1 = d1;
            prev2 = d2;
        }
    }
}
