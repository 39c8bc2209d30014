//! Bessel functions of the first kind for real order ν ≥ 0 and real x ≥ 0.
//!
//! Evaluation regions:
//!
//! * tiny `x` relative to the order: ascending power series;
//! * `x` away from the turning point `x = ν`: Debye expansions, oscillatory
//!   (`x > ν`) or monotone (`x < ν`), with the polynomials `u_k` generated
//!   once from their recursion;
//! * `x` near `ν` for large orders: start from two Debye-valid orders a few
//!   `x^{1/3}` away and run the three-term recurrence towards `ν` in its
//!   stable direction (upwards while the order stays below `x`, downwards
//!   above it);
//! * everything else (small orders at moderate `x`): Temme's method, i.e.
//!   continued fractions CF1/CF2 normalised through the Wronskian.

use std::f64::consts::{FRAC_PI_4, PI};
use std::sync::OnceLock;

use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

/// Number of Debye polynomials generated.
const DEBYE_TERMS: usize = 22;
/// Absolute size at which a Debye term is considered negligible (the sums are O(1)).
const DEBYE_TOL: f64 = 1.0e-17;
/// Orders at and above this use the turning-point recurrence.
const RECURRENCE_MIN_ORDER: f64 = 12.0;

/// Taylor coefficients of 1/Γ(z) around z = 0; entry k multiplies z^k.
const RGAMMA_TAYLOR: [f64; 29] = [
    0.0,
    1.0,
    0.577_215_664_901_532_860_61,
    -0.655_878_071_520_253_881_08,
    -0.042_002_635_034_095_235_529,
    0.166_538_611_382_291_489_5,
    -0.042_197_734_555_544_336_748,
    -0.009_621_971_527_876_973_562_1,
    0.007_218_943_246_663_099_542_4,
    -0.001_165_167_591_859_065_112_1,
    -0.000_215_241_674_114_950_972_82,
    0.000_128_050_282_388_116_186_15,
    -0.000_020_134_854_780_788_238_656,
    -1.250_493_482_142_670_657_3e-6,
    1.133_027_231_981_695_882_4e-6,
    -2.056_338_416_977_607_103_5e-7,
    6.116_095_104_481_415_817_9e-9,
    5.002_007_644_469_222_930_1e-9,
    -1.181_274_570_487_020_144_6e-9,
    1.043_426_711_691_100_510_5e-10,
    7.782_263_439_905_071_254e-12,
    -3.696_805_618_642_205_708_2e-12,
    5.100_370_287_454_475_979e-13,
    -2.058_326_053_566_506_783_2e-14,
    -5.348_122_539_423_017_982_4e-15,
    1.226_778_628_238_260_790_2e-15,
    -1.181_259_301_697_458_769_5e-16,
    1.186_692_254_751_600_332_6e-18,
    1.412_380_655_318_031_781_6e-18,
];

/// Debye coefficient tables. `osc[k][j]` multiplies `(t²)^j` in
/// `u_k(i t) / i^k / t^k`; `mono[k][j]` multiplies `(t²)^j` in `u_k(t) / t^k`.
struct DebyeTables {
    osc: Vec<Vec<f64>>,
    mono: Vec<Vec<f64>>,
}

fn debye_tables() -> &'static DebyeTables {
    static TABLES: OnceLock<DebyeTables> = OnceLock::new();
    TABLES.get_or_init(|| {
        // u_{k+1}(t) = ½ t²(1 − t²) u_k'(t) + ⅛ ∫₀ᵗ (1 − 5s²) u_k(s) ds
        let mut polys: Vec<Vec<f64>> = vec![vec![1.0]];
        for k in 0..DEBYE_TERMS - 1 {
            let u = &polys[k];
            let mut next = vec![0.0; 3 * (k + 1) + 1];
            for (p, &c) in u.iter().enumerate() {
                if c == 0.0 {
                    continue;
                }
                if p >= 1 {
                    let d = p as f64 * c;
                    next[p + 1] += 0.5 * d;
                    next[p + 3] -= 0.5 * d;
                }
                next[p + 1] += 0.125 * c / (p + 1) as f64;
                next[p + 3] -= 0.625 * c / (p + 3) as f64;
            }
            polys.push(next);
        }
        let mut osc = Vec::with_capacity(DEBYE_TERMS);
        let mut mono = Vec::with_capacity(DEBYE_TERMS);
        for (k, u) in polys.iter().enumerate() {
            let m: Vec<f64> = (0..=k).map(|j| u[k + 2 * j]).collect();
            let o: Vec<f64> = m
                .iter()
                .enumerate()
                .map(|(j, &c)| if j % 2 == 0 { c } else { -c })
                .collect();
            osc.push(o);
            mono.push(m);
        }
        DebyeTables { osc, mono }
    })
}

#[inline]
fn horner(coeffs: &[f64], y: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * y + c)
}

/// Oscillatory Debye expansion, `x > ν`. Returns `None` when the asymptotic
/// series does not reach full precision at this point.
pub(crate) fn debye_oscillatory(nu: f64, x: f64) -> Option<f64> {
    let (amp, phase, even, odd) = debye_oscillatory_parts(nu, x)?;
    Some(amp * (phase.cos() * even + phase.sin() * odd))
}

/// Amplitude `√(2/(π s))`, leading phase `ξ`, and the even/odd correction
/// sums of the oscillatory expansion, `J = amp·(cos ξ · even + sin ξ · odd)`.
pub(crate) fn debye_oscillatory_parts(nu: f64, x: f64) -> Option<(f64, f64, f64, f64)> {
    let s = ((x - nu) * (x + nu)).sqrt();
    if !(s >= 6.0) {
        return None;
    }
    let w = 1.0 / s;
    let t = nu * w;
    // Cheap pre-screen on the expansion parameter near the turning point.
    if t * t * t * w > 0.08 {
        return None;
    }
    let y = t * t;
    let tables = &debye_tables().osc;
    let mut even = 0.0;
    let mut odd = 0.0;
    let mut wk = 1.0;
    let mut prev = f64::INFINITY;
    let mut converged = false;
    for (k, coeffs) in tables.iter().enumerate() {
        let mut term = wk * horner(coeffs, y);
        if (k / 2) % 2 == 1 {
            term = -term;
        }
        let size = term.abs();
        if k >= 2 && size > prev && size > DEBYE_TOL {
            // Asymptotic divergence before reaching the target.
            return None;
        }
        if k % 2 == 0 {
            even += term;
        } else {
            odd += term;
        }
        if k >= 1 && size < DEBYE_TOL && prev < 1.0e3 * DEBYE_TOL {
            converged = true;
            break;
        }
        prev = size;
        wk *= w;
    }
    if !converged {
        return None;
    }
    let phase = oscillatory_phase(nu, s);
    let amp = (2.0 / (PI * s)).sqrt();
    Some((amp, phase, even, odd))
}

/// Leading Debye phase `ξ = √(x²−ν²) − ν·arccos(ν/x) − π/4` for `x > ν`.
pub(crate) fn oscillatory_phase(nu: f64, s: f64) -> f64 {
    s - nu * s.atan2(nu) - FRAC_PI_4
}

/// Leading Debye phase for `x ≥ ν`, computing `√(x²−ν²)` internally.
pub fn debye_phase(nu: f64, x: f64) -> f64 {
    let s = ((x - nu) * (x + nu)).max(0.0).sqrt();
    oscillatory_phase(nu, s)
}

/// Monotone Debye expansion for `x < ν`; returns `(sum/√(2πs), η)` with
/// `J = sum/√(2πs) · e^η`.
fn debye_monotone(nu: f64, x: f64) -> Option<(f64, f64)> {
    let s = ((nu - x) * (nu + x)).sqrt();
    if !(s >= 6.0) {
        return None;
    }
    let w = 1.0 / s;
    let t = nu * w;
    if t * t * t * w > 0.08 {
        return None;
    }
    let y = t * t;
    let tables = &debye_tables().mono;
    let mut sum = 0.0;
    let mut wk = 1.0;
    let mut prev = f64::INFINITY;
    let mut converged = false;
    for (k, coeffs) in tables.iter().enumerate() {
        let term = wk * horner(coeffs, y);
        let size = term.abs();
        if k >= 2 && size > prev && size > DEBYE_TOL {
            return None;
        }
        sum += term;
        if k >= 1 && size < DEBYE_TOL && prev < 1.0e3 * DEBYE_TOL {
            converged = true;
            break;
        }
        prev = size;
        wk *= w;
    }
    if !converged {
        return None;
    }
    let eta = s - nu * ((nu + s) / x).ln();
    Some((sum / (2.0 * PI * s).sqrt(), eta))
}

/// Ascending series; only used for `x² ≪ ν + 1`.
fn series(nu: f64, x: f64) -> f64 {
    let half = 0.5 * x;
    let log_lead = nu * half.ln() - ln_gamma(nu + 1.0);
    let q = -half * half;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        let kf = k as f64;
        term *= q / (kf * (nu + kf));
        sum += term;
        if term.abs() < 1.0e-17 * sum.abs() {
            break;
        }
    }
    sum * log_lead.exp()
}

/// Near the turning point: recurrence from Debye-valid orders.
fn turning_recurrence(nu: f64, x: f64) -> Option<f64> {
    let mut shift = (4.0 * x.cbrt()).ceil().max(8.0);
    for _ in 0..6 {
        if x >= nu {
            let lo = nu - shift;
            if lo - 1.0 < 0.0 {
                return None;
            }
            if let (Some(a), Some(b)) = (debye_oscillatory(lo - 1.0, x), debye_oscillatory(lo, x)) {
                let (mut prev, mut cur) = (a, b);
                let n = shift as usize;
                for i in 0..n {
                    let mu = lo + i as f64;
                    let next = 2.0 * mu / x * cur - prev;
                    prev = cur;
                    cur = next;
                }
                return Some(cur);
            }
        } else {
            let hi = nu + shift;
            if let (Some((a, ea)), Some((b, eb))) = (debye_monotone(hi + 1.0, x), debye_monotone(hi, x)) {
                // Common scale e^{eb}; the higher order is smaller.
                let mut above = a * (ea - eb).exp();
                let mut cur = b;
                let n = shift as usize;
                for i in 0..n {
                    let mu = hi - i as f64;
                    let next = 2.0 * mu / x * cur - above;
                    above = cur;
                    cur = next;
                }
                return Some(cur * eb.exp());
            }
        }
        shift *= 2.0;
    }
    None
}

/// Temme's 1/Γ combinations for |μ| ≤ 1/2:
/// (γ₁, γ₂, 1/Γ(1+μ), 1/Γ(1−μ)).
fn temme_gammas(mu: f64) -> (f64, f64, f64, f64) {
    let mut gam1 = 0.0;
    let mut gam2 = 0.0;
    let mut gampl = 0.0;
    let mut gammi = 0.0;
    let mut pow = 1.0; // μ^{k−1}
    let mut pow_even = 1.0; // μ^{k−2} for even k
    for (k, &c) in RGAMMA_TAYLOR.iter().enumerate().skip(1) {
        gampl += c * pow;
        gammi += if (k - 1) % 2 == 0 { c * pow } else { -c * pow };
        if k % 2 == 0 {
            gam1 -= c * pow_even;
            pow_even *= mu * mu;
        } else {
            gam2 += c * pow;
        }
        pow *= mu;
    }
    (gam1, gam2, gampl, gammi)
}

/// Temme's method (CF1 + CF2 / small-x series) for J_ν(x) with x > 0.
fn temme(nu: f64, x: f64) -> f64 {
    const EPS: f64 = 1.0e-16;
    const FPMIN: f64 = 1.0e-300;
    const MAXIT: usize = 200_000;
    const XMIN: f64 = 2.0;

    let nl = if x < XMIN {
        (nu + 0.5) as i64
    } else {
        ((nu - x + 1.5) as i64).max(0)
    };
    let xmu = nu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI;

    // CF1: J'_ν/J_ν.
    let mut isign = 1.0;
    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut c = h;
    for _ in 0..MAXIT {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() < EPS {
            break;
        }
    }

    let mut rjl = isign * 1.0e-30;
    let mut rjpl = h * rjl;
    let rjl1 = rjl;
    let mut fact = nu * xi;
    for _ in 0..nl {
        let rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
    }
    if rjl == 0.0 {
        rjl = EPS;
    }
    let f = rjpl / rjl;

    let rjmu = if x < XMIN {
        let x2 = 0.5 * x;
        let pimu = PI * xmu;
        let fact = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
        let d = -x2.ln();
        let e = xmu * d;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = temme_gammas(xmu);
        let mut ff = 2.0 / PI * fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let e = e.exp();
        let mut p = e / (gampl * PI);
        let mut q = 1.0 / (e * PI * gammi);
        let pimu2 = 0.5 * pimu;
        let fact3 = if pimu2.abs() < EPS { 1.0 } else { pimu2.sin() / pimu2 };
        let r = PI * pimu2 * fact3 * fact3;
        let mut c = 1.0;
        let d = -x2 * x2;
        let mut sum = ff + r * q;
        let mut sum1 = p;
        for i in 1..MAXIT {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - xmu2);
            c *= d / fi;
            p /= fi - xmu;
            q /= fi + xmu;
            let del = c * (ff + r * q);
            sum += del;
            let del1 = c * p - fi * del;
            sum1 += del1;
            if del.abs() < (1.0 + sum.abs()) * EPS {
                break;
            }
        }
        let rymu = -sum;
        let ry1 = -sum1 * xi2;
        let rymup = xmu * xi * rymu - ry1;
        w / (rymup - f * rymu)
    } else {
        // CF2 (Steed): p + iq.
        let mut a = 0.25 - xmu2;
        let mut p = -0.5 * xi;
        let mut q = 1.0;
        let br = 2.0 * x;
        let mut bi = 2.0;
        let mut fact = a * xi / (p * p + q * q);
        let mut cr = br + q * fact;
        let mut ci = bi + p * fact;
        let mut den = br * br + bi * bi;
        let mut dr = br / den;
        let mut di = -bi / den;
        let mut dlr = cr * dr - ci * di;
        let mut dli = cr * di + ci * dr;
        let mut temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        for i in 2..MAXIT {
            a += 2.0 * (i - 1) as f64;
            bi += 2.0;
            dr = a * dr + br;
            di = a * di + bi;
            if dr.abs() + di.abs() < FPMIN {
                dr = FPMIN;
            }
            fact = a / (cr * cr + ci * ci);
            cr = br + cr * fact;
            ci = bi - ci * fact;
            if cr.abs() + ci.abs() < FPMIN {
                cr = FPMIN;
            }
            den = dr * dr + di * di;
            dr /= den;
            di /= -den;
            dlr = cr * dr - ci * di;
            dli = cr * di + ci * dr;
            temp = p * dlr - q * dli;
            q = p * dli + q * dlr;
            p = temp;
            if (dlr - 1.0).abs() + dli.abs() < EPS {
                break;
            }
        }
        let gam = (p - f) / q;
        let rjmu = (w / ((p - f) * gam + q)).sqrt();
        rjmu.copysign(rjl)
    };
    rjl1 * (rjmu / rjl)
}

/// J_ν(x) without range checks; underflow flushes to zero.
pub(crate) fn jv(nu: f64, x: f64) -> f64 {
    if x == 0.0 {
        return if nu == 0.0 { 1.0 } else { 0.0 };
    }
    if x > nu {
        if let Some(v) = debye_oscillatory(nu, x) {
            return v;
        }
    } else if let Some((m, eta)) = debye_monotone(nu, x) {
        return m * eta.exp();
    }
    if x * x < 0.1 * (nu + 1.0) && nu < 200.0 {
        return series(nu, x);
    }
    if nu >= RECURRENCE_MIN_ORDER {
        if let Some(v) = turning_recurrence(nu, x) {
            return v;
        }
    }
    temme(nu, x)
}

/// Bessel function of the first kind J_ν(x) for real ν ≥ 0, x ≥ 0.
///
/// Returns a range error when the value underflows the normal double range
/// (deep in the monotone region `x ≪ ν`).
pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    if !(nu >= 0.0) || !nu.is_finite() {
        return Err(Error::domain(format!("order must be finite and >= 0, got {nu}")));
    }
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("argument must be finite and >= 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(if nu == 0.0 { 1.0 } else { 0.0 });
    }
    if x < nu {
        // log|J| ≈ η for the monotone region; check before evaluating.
        let s = ((nu - x) * (nu + x)).sqrt();
        let eta = s - nu * ((nu + s) / x).ln();
        if eta < -700.0 {
            return Err(Error::Range(format!(
                "J_{nu}({x}) underflows (log-magnitude ≈ {eta:.1})"
            )));
        }
    }
    let v = jv(nu, x);
    if v != 0.0 && v.abs() < f64::MIN_POSITIVE {
        return Err(Error::Range(format!("J_{nu}({x}) is subnormal")));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_debye_polynomials() {
        let t = &debye_tables().mono;
        // u_1 = (3t − 5t³)/24
        assert!((t[1][0] - 0.125).abs() < 1e-16);
        assert!((t[1][1] + 5.0 / 24.0).abs() < 1e-16);
        // u_2 = (81t² − 462t⁴ + 385t⁶)/1152
        assert!((t[2][0] - 81.0 / 1152.0).abs() < 1e-16);
        assert!((t[2][1] + 462.0 / 1152.0).abs() < 1e-16);
        assert!((t[2][2] - 385.0 / 1152.0).abs() < 1e-16);
    }

    #[test]
    fn origin_values() {
        assert_eq!(bessel_j(0.0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_j(2.5, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn half_order_is_sine() {
        for &x in &[0.3, 1.0, 2.0, 5.0, 17.0, 40.0, 300.0, 12345.6] {
            let expected = (2.0 / (PI * x)).sqrt() * x.sin();
            let got = bessel_j(0.5, x).unwrap();
            assert!((got - expected).abs() < 2e-14 * (1.0 + x.sqrt().recip()), "x={x}: {got} vs {expected}");
        }
        let v = bessel_j(0.5, PI).unwrap();
        assert!(v.abs() < 1e-15);
    }

    #[test]
    fn domain_and_range_errors() {
        assert!(matches!(bessel_j(-1.0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(bessel_j(1.0, -1.0), Err(Error::Domain(_))));
        assert!(matches!(bessel_j(5000.0, 1.0), Err(Error::Range(_))));
    }
}

