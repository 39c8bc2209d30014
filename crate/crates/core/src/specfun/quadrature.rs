//! Quadrature engines: globally adaptive Gauss–Kronrod (21 points), a
//! tanh-sinh rule for integrable endpoint singularities, and a panel
//! marcher for exponentially decaying integrands on `[0, ∞)`.

use std::collections::BinaryHeap;
use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::error::{Error, Result};

/// Value of a numerical integral with its error estimate and cost.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
}

impl QuadratureResult {
    fn add(&mut self, other: QuadratureResult) {
        self.value += other.value;
        self.abs_error_estimate += other.abs_error_estimate;
        self.evaluations += other.evaluations;
    }
}

/// Default evaluation budget for a single adaptive integral.
pub const DEFAULT_BUDGET: usize = 400_000;

// Kronrod abscissae on [-1, 1] (positive half, descending; last is the centre).
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_067_781_554,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];
// Gauss weights for the Kronrod nodes with odd index.
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// One 21-point Kronrod panel: (Kronrod value, |Kronrod − Gauss|).
fn gk21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = WGK[10] * fc;
    let mut gauss = 0.0;
    for i in 0..10 {
        let dx = h * XGK[i];
        let s = f(c - dx) + f(c + dx);
        kron += WGK[i] * s;
        if i % 2 == 1 {
            gauss += WG[i / 2] * s;
        }
    }
    (kron * h, ((kron - gauss) * h).abs())
}

#[derive(Debug)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// Globally adaptive Gauss–Kronrod integration of `f` over `[a, b]` to
/// absolute tolerance `tol`.
///
/// The panel with the largest error is bisected until the summed error
/// estimate drops below `tol` or the evaluation `budget` is spent; in the
/// latter case an accuracy error carries the partial estimate.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64, budget: usize) -> Result<QuadratureResult> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::domain(format!("finite limits required, got [{a}, {b}]")));
    }
    if !(tol > 0.0) {
        return Err(Error::domain(format!("tolerance must be positive, got {tol}")));
    }
    if a == b {
        return Ok(QuadratureResult { value: 0.0, abs_error_estimate: 0.0, evaluations: 1 });
    }
    let (value, err) = gk21(&f, a, b);
    let mut evaluations = 21;
    let mut heap = BinaryHeap::new();
    heap.push(Panel { a, b, value, err });
    let mut total = value;
    let mut total_err = err;
    while total_err > tol {
        if evaluations + 42 > budget {
            return Err(Error::accuracy(
                format!("adaptive quadrature on [{a}, {b}] exhausted {budget} evaluations"),
                total,
            ));
        }
        let worst = heap.pop().expect("heap holds at least one panel");
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            // Interval can no longer be split in double precision.
            heap.push(worst);
            break;
        }
        let (v1, e1) = gk21(&f, worst.a, mid);
        let (v2, e2) = gk21(&f, mid, worst.b);
        evaluations += 42;
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.err;
        heap.push(Panel { a: worst.a, b: mid, value: v1, err: e1 });
        heap.push(Panel { a: mid, b: worst.b, value: v2, err: e2 });
        if heap.len() % 64 == 0 {
            // Resum to limit drift from incremental updates.
            total = heap.iter().map(|p| p.value).sum();
            total_err = heap.iter().map(|p| p.err).sum();
        }
    }
    let value: f64 = heap.iter().map(|p| p.value).sum();
    let err: f64 = heap.iter().map(|p| p.err).sum();
    if !value.is_finite() {
        return Err(Error::accuracy(format!("non-finite integral on [{a}, {b}]"), value));
    }
    Ok(QuadratureResult { value, abs_error_estimate: err, evaluations })
}

/// Tanh-sinh (double exponential) rule on `[a, b]`, suited to integrable
/// singularities at either endpoint. The integrand is called with the
/// distance to the nearer endpoint resolved without cancellation.
pub fn tanh_sinh<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadratureResult> {
    if !(a < b) {
        return Err(Error::domain(format!("tanh-sinh needs a < b, got [{a}, {b}]")));
    }
    let half = 0.5 * (b - a);
    // Node at parameter t contributes to both ends symmetrically.
    let pair = |t: f64| -> (f64, usize) {
        let u = FRAC_PI_2 * t.sinh();
        let e = (-2.0 * u.abs()).exp();
        // distance from the endpoint: (b − a)·e/(1 + e)
        let d = 2.0 * half * e / (1.0 + e);
        let cu = u.cosh();
        let w = half * FRAC_PI_2 * t.cosh() / (cu * cu);
        if d <= 0.0 || w == 0.0 {
            return (0.0, 0);
        }
        if t == 0.0 {
            return (w * f(a + half), 1);
        }
        let lo = a + d;
        let hi = b - d;
        let mut s = 0.0;
        let mut n = 0;
        if lo > a {
            s += w * f(lo);
            n += 1;
        }
        if hi < b {
            s += w * f(hi);
            n += 1;
        }
        (s, n)
    };
    const T_MAX: f64 = 6.5;
    let mut h = 0.5;
    let mut evaluations = 0;
    let mut sum = 0.0;
    let mut k = 0;
    loop {
        let t = k as f64 * h;
        if t > T_MAX {
            break;
        }
        let (s, n) = pair(t);
        sum += s;
        evaluations += n;
        k += 1;
    }
    let mut estimate = sum * h;
    for _level in 0..12 {
        h *= 0.5;
        let mut add = 0.0;
        let mut k = 1;
        loop {
            let t = k as f64 * h;
            if t > T_MAX {
                break;
            }
            let (s, n) = pair(t);
            add += s;
            evaluations += n;
            k += 2;
        }
        sum += add;
        let next = sum * h;
        let diff = (next - estimate).abs();
        estimate = next;
        // Quadratic convergence: the next error is far below the last difference.
        if diff < tol.max(1e-15 * estimate.abs()) && _level >= 2 {
            let err = diff * diff / tol.max(f64::MIN_POSITIVE);
            return Ok(QuadratureResult {
                value: estimate,
                abs_error_estimate: err.min(diff),
                evaluations,
            });
        }
    }
    Err(Error::accuracy(format!("tanh-sinh on [{a}, {b}] did not converge"), estimate))
}

/// Integral over `[0, ∞)` of an integrand that decays at least like
/// `e^{−rate·s}` times a slowly varying factor, possibly with an integrable
/// singularity (for example logarithmic) at `s = 0`.
///
/// `[0, s₀]` uses tanh-sinh; the rest is covered by adaptive Kronrod
/// panels of width `≈ 4/rate` until the tail bound `2|f(T)|/rate` falls
/// below `tol/10`.
pub fn integrate_decaying<F: Fn(f64) -> f64>(f: F, rate: f64, tol: f64) -> Result<QuadratureResult> {
    if !(rate > 0.0) || !rate.is_finite() {
        return Err(Error::domain(format!("decay rate must be positive, got {rate}")));
    }
    if !(tol > 0.0) {
        return Err(Error::domain(format!("tolerance must be positive, got {tol}")));
    }
    let s0 = (0.5 / rate).min(0.5);
    let mut total = tanh_sinh(&f, 0.0, s0, 0.05 * tol)?;
    let width = 4.0 / rate;
    let mut a = s0;
    for i in 0..10_000 {
        let b = s0 + width * (i + 1) as f64;
        let share = 0.15 * tol / ((i + 1) * (i + 1)) as f64;
        let panel = integrate(&f, a, b, share, DEFAULT_BUDGET)
            .map_err(|e| e.context(&format!("tail panel [{a}, {b}]")))?;
        total.add(panel);
        let tail = 2.0 * f(b).abs() / rate;
        total.evaluations += 1;
        if tail < 0.1 * tol && panel.value.abs() < tol && b * rate > 20.0 {
            total.abs_error_estimate += tail;
            return Ok(total);
        }
        if total.evaluations > DEFAULT_BUDGET {
            break;
        }
        a = b;
    }
    Err(Error::accuracy("semi-infinite quadrature did not reach its tail bound", total.value))
}

/// Gauss–Legendre nodes and weights on `[−1, 1]`, ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    for i in 0..(n + 1) / 2 {
        // Tricomi's estimate of the i-th largest root, then Newton.
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for j in 2..=n {
                let jf = j as f64;
                (p0, p1) = (p1, ((2.0 * jf - 1.0) * z * p1 - (jf - 1.0) * p0) / jf);
            }
            let p = if n == 0 { 1.0 } else { p1 };
            let pm = if n <= 1 { 1.0 } else { p0 };
            dp = nf * (z * p - pm) / (z * z - 1.0);
            let dz = p / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        x[n - 1 - i] = z;
        x[i] = -z;
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronrod_rule_is_exact_for_polynomials() {
        for deg in 0..=31 {
            let (v, _) = gk21(&|x: f64| x.powi(deg), 0.0, 1.0);
            let exact = 1.0 / (deg as f64 + 1.0);
            assert!((v - exact).abs() < 1e-15, "degree {deg}");
        }
    }

    #[test]
    fn adaptive_handles_peaks() {
        let r = integrate(|x: f64| 1.0 / (1e-4 + x * x), -1.0, 1.0, 1e-10, DEFAULT_BUDGET).unwrap();
        let exact = 2.0 * (1.0f64 / 1e-2).atan() / 1e-2;
        assert!((r.value - exact).abs() < 1e-9);
        assert!(r.evaluations > 21);
    }

    #[test]
    fn tanh_sinh_log_and_power_singularities() {
        let r = tanh_sinh(|x: f64| x.ln(), 0.0, 1.0, 1e-13).unwrap();
        assert!((r.value + 1.0).abs() < 1e-13);
        let r = tanh_sinh(|x: f64| x.powf(-0.7), 0.0, 1.0, 1e-12).unwrap();
        assert!((r.value - 1.0 / 0.3).abs() < 1e-10);
    }

    #[test]
    fn decaying_integral_of_exponential() {
        let r = integrate_decaying(|s: f64| (-2.0 * s).exp() * s.sqrt(), 2.0, 1e-12).unwrap();
        // Γ(3/2)/2^{3/2}
        let exact = 0.886_226_925_452_758 / 2f64.powf(1.5);
        assert!((r.value - exact).abs() < 1e-12);
        assert!(r.abs_error_estimate >= 0.0 && r.evaluations > 0);
    }

    #[test]
    fn gauss_legendre_exactness() {
        for &n in &[1usize, 2, 5, 64, 191] {
            let (x, w) = gauss_legendre(n);
            assert!(x.windows(2).all(|p| p[0] < p[1]));
            for deg in 0..(2 * n).min(40) {
                let v: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32)).sum();
                let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
                assert!((v - exact).abs() < 1e-13, "n={n} deg={deg}: {v}");
            }
        }
    }

    #[test]
    fn budget_exhaustion_is_an_accuracy_error() {
        let e = integrate(|x: f64| (1.0 / x).sin(), 1e-9, 1.0, 1e-14, 2_000).unwrap_err();
        assert!(matches!(e, Error::Accuracy { .. }));
    }
}
