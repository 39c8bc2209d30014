//! Positive zeros `j_{ν,k}` of `J_ν` for real ν ≥ 0.
//!
//! Ranks are certified in one of two ways.
//!
//! * Where the oscillatory Debye expansion converges, `J_ν = M cos Θ` with
//!   the continuous increasing phase `Θ = ξ − arg(E + iO)`, and the k-th
//!   zero is the solution of `Θ(x) = (k − ½)π`. The phase is exact up to the
//!   expansion error, so solving this equation pins the rank.
//! * Elsewhere (near the turning point, small arguments) the sign of `J_ν`
//!   is scanned with a step of 3 starting at `x = ν`, below which `J_ν` has
//!   no zeros. Consecutive zeros are always more than 3.11 apart, so every
//!   step brackets at most one zero and counting sign changes gives the rank.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, OnceLock, RwLock};

use serde::Serialize;

use super::bessel_j::{debye_oscillatory_parts, jv};
use super::roots::{brent, invert_s_minus_atan};
use crate::error::{Error, Result};

/// Scan step; smaller than the minimal spacing of consecutive zeros.
const SCAN_STEP: f64 = 3.0;
const MAX_SCAN_STEPS: usize = 5_000_000;

/// How the starting point of a zero computation was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GuessSource {
    /// McMahon's large-rank expansion.
    Mcmahon,
    /// Uniform (Airy-type) asymptotics, for orders large relative to the rank.
    OlverHeuristic,
    /// The neighbouring zero of the same order.
    Continuation,
}

/// One computed zero `j_{ν,k}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BesselZeroRecord {
    pub order: f64,
    pub rank: u64,
    pub value: f64,
    /// `|J_ν(value)|`.
    pub residual: f64,
    pub guess_source: GuessSource,
}

const AIRY_ZEROS: [f64; 12] = [
    -2.338_107_410_459_767_4,
    -4.087_949_444_130_97,
    -5.520_559_828_095_515,
    -6.786_708_090_071_912,
    -7.944_133_587_112_781,
    -9.022_650_853_340_979,
    -10.040_174_341_558_087,
    -11.008_524_303_733_262,
    -11.936_015_563_236_262,
    -12.828_776_752_865_757,
    -13.691_489_035_210_719,
    -14.527_829_951_775_335,
];

/// k-th zero of the Airy function Ai (negative).
pub fn airy_zero(k: u64) -> f64 {
    if k >= 1 && (k as usize) <= AIRY_ZEROS.len() {
        return AIRY_ZEROS[k as usize - 1];
    }
    let t = 3.0 * PI * (4.0 * k as f64 - 1.0) / 8.0;
    let t2 = 1.0 / (t * t);
    -t.powf(2.0 / 3.0) * (1.0 + t2 * (5.0 / 48.0 - t2 * 5.0 / 36.0))
}

/// McMahon's expansion of `j_{ν,k}` through the fourth term.
pub fn mcmahon(nu: f64, k: u64) -> f64 {
    let beta = (k as f64 + 0.5 * nu - 0.25) * PI;
    let mu = 4.0 * nu * nu;
    let b8 = 8.0 * beta;
    let b8_2 = b8 * b8;
    beta - (mu - 1.0) / b8
        - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8 * b8_2)
        - 32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) / (15.0 * b8 * b8_2 * b8_2)
}

/// Leading uniform-asymptotic estimate: `x = ν z` with
/// `√(z²−1) − arcsec z = (2/3)|a_k|^{3/2}/ν`.
pub fn olver_guess(nu: f64, k: u64) -> f64 {
    if nu <= 0.0 {
        return mcmahon(nu, k);
    }
    let c = 2.0 / 3.0 * (-airy_zero(k)).powf(1.5) / nu;
    let s = invert_s_minus_atan(c);
    nu * (1.0 + s * s).sqrt()
}

/// Total phase `Θ` and the local derivative `s/x` of its leading part, when
/// the Debye expansion converges at `x`.
pub(crate) fn total_phase(nu: f64, x: f64) -> Option<(f64, f64)> {
    let (_, xi, even, odd) = debye_oscillatory_parts(nu, x)?;
    let s = ((x - nu) * (x + nu)).sqrt();
    Some((xi - odd.atan2(even), s / x))
}

/// Solves `Θ(x) = (k − ½)π` from the starting point `x0`; `None` if the
/// phase becomes unavailable along the way.
fn solve_phase(nu: f64, k: u64, x0: f64) -> Option<f64> {
    let target = (k as f64 - 0.5) * PI;
    let mut x = x0;
    for _ in 0..60 {
        if !(x > nu) {
            return None;
        }
        let (theta, slope) = total_phase(nu, x)?;
        let mut step = (theta - target) / slope;
        // Never move by more than half a spacing in one step from a poor start.
        let limit = 0.5 * PI / slope;
        if step.abs() > limit {
            step = limit.copysign(step);
        }
        let next = x - step;
        if (next - x).abs() <= 2.0 * f64::EPSILON * x {
            return Some(next);
        }
        x = next;
    }
    None
}

/// Checks that `J_ν` changes sign across `x` within a quarter spacing.
fn confirm_sign_change(nu: f64, x: f64) -> bool {
    let s = ((x - nu) * (x + nu)).sqrt();
    let d = 0.25 * PI * x / s.max(1.0);
    let lo = jv(nu, x - d);
    let hi = jv(nu, x + d);
    lo * hi < 0.0
}

/// Scans upwards from `start`, below which exactly `below` zeros lie, and
/// refines the k-th zero once its bracket is reached.
fn scan_for_zero(nu: f64, k: u64, start: f64, below: u64) -> Result<f64> {
    let mut count = below;
    let mut x = start;
    let mut fx = jv(nu, x);
    if fx == 0.0 {
        x += 1e-9 * x.max(1.0);
        fx = jv(nu, x);
    }
    for _ in 0..MAX_SCAN_STEPS {
        let next = x + SCAN_STEP;
        let fnext = jv(nu, next);
        if fnext == 0.0 {
            count += 1;
            if count == k {
                return Ok(next);
            }
            // Step just past the exact zero.
            x = next + 1e-9 * next;
            fx = jv(nu, x);
            continue;
        }
        if fx.signum() != fnext.signum() {
            count += 1;
            if count == k {
                return brent(|t| jv(nu, t), x, next, 0.0, 400)
                    .map_err(|e| e.context(format!("refining j_{{{nu},{k}}}")));
            }
        }
        x = next;
        fx = fnext;
    }
    Err(Error::accuracy(
        format!("could not bracket j_{{{nu},{k}}} within {MAX_SCAN_STEPS} scan steps"),
        x,
    ))
}

fn check_args(nu: f64, k: u64) -> Result<()> {
    if !(nu >= 0.0) || !nu.is_finite() {
        return Err(Error::domain(format!("order must be finite and >= 0, got {nu}")));
    }
    if k == 0 {
        return Err(Error::domain("rank must be >= 1"));
    }
    Ok(())
}

fn record(nu: f64, k: u64, value: f64, guess_source: GuessSource) -> BesselZeroRecord {
    BesselZeroRecord { order: nu, rank: k, value, residual: jv(nu, value).abs(), guess_source }
}

/// Zero of rank `k` starting from `guess`, certified by phase or by scan.
fn zero_from_guess(nu: f64, k: u64, guess: f64) -> Result<f64> {
    if let Some(x) = solve_phase(nu, k, guess) {
        if confirm_sign_change(nu, x) {
            return Ok(x);
        }
    }
    scan_for_zero(nu, k, nu.max(1e-3), 0)
}

/// The k-th positive zero of `J_ν`.
pub fn bessel_j_zero(nu: f64, k: u64) -> Result<BesselZeroRecord> {
    check_args(nu, k)?;
    let (guess, source) = if k as f64 >= nu {
        (mcmahon(nu, k), GuessSource::Mcmahon)
    } else {
        (olver_guess(nu, k), GuessSource::OlverHeuristic)
    };
    let guess = guess.max(nu + 1e-3 * nu.max(1.0));
    let value = zero_from_guess(nu, k, guess).map_err(|e| e.context(format!("(ν={nu}, k={k})")))?;
    Ok(record(nu, k, value, source))
}

/// Number of zeros of `J_ν` in `(0, x)`.
pub fn zero_count_below(nu: f64, x: f64) -> Result<u64> {
    check_args(nu, 1)?;
    if x <= nu {
        return Ok(0);
    }
    if let Some((theta, _)) = total_phase(nu, x) {
        // Zeros sit at Θ = (k − ½)π.
        let c = (theta / PI + 0.5).floor();
        return Ok(if c > 0.0 { c as u64 } else { 0 });
    }
    let mut count = 0;
    let mut a = nu.max(1e-3);
    let mut fa = jv(nu, a);
    while a < x {
        let b = (a + SCAN_STEP).min(x);
        let fb = jv(nu, b);
        if fb == 0.0 && b < x {
            count += 1;
        } else if fa != 0.0 && fb != 0.0 && fa.signum() != fb.signum() {
            count += 1;
        }
        a = b;
        fa = fb;
    }
    Ok(count)
}

/// Zeros `j_{ν,1} < … < j_{ν,k_max}` by continuation along the rank.
fn zeros_by_continuation(nu: f64, k_max: u64, mut out: Vec<f64>) -> Result<Vec<f64>> {
    out.reserve(k_max as usize - out.len());
    if out.is_empty() {
        out.push(bessel_j_zero(nu, 1)?.value);
    }
    while (out.len() as u64) < k_max {
        let k = out.len() as u64 + 1;
        let prev = out[out.len() - 1];
        let s = ((prev - nu) * (prev + nu)).sqrt();
        let guess = prev + PI * prev / s.max(1.0);
        let value = match solve_phase(nu, k, guess) {
            Some(x) if x > prev && confirm_sign_change(nu, x) => Ok(x),
            _ => scan_for_zero(nu, k, prev + SCAN_STEP, k - 1),
        }
        .map_err(|e| e.context(format!("(ν={nu}, k={k})")))?;
        if !(value > prev) {
            return Err(Error::accuracy(
                format!("zeros of order {nu} not increasing at rank {k}"),
                value,
            ));
        }
        out.push(value);
    }
    Ok(out)
}

/// All zeros up to rank `k_max` for each order in `nu_list`, in order.
pub fn bessel_j_zero_grid(nu_list: &[f64], k_max: u64) -> Result<Vec<BesselZeroRecord>> {
    if k_max == 0 {
        return Err(Error::domain("k_max must be >= 1"));
    }
    let mut out = Vec::with_capacity(nu_list.len() * k_max as usize);
    for (i, &nu) in nu_list.iter().enumerate() {
        check_args(nu, 1).map_err(|e| e.context(format!("order index {i}")))?;
        let zs = cached_zeros(nu, k_max).map_err(|e| e.context(format!("order index {i}")))?;
        for (k, &value) in zs.iter().take(k_max as usize).enumerate() {
            let source = if k == 0 {
                if 1.0 >= nu {
                    GuessSource::Mcmahon
                } else {
                    GuessSource::OlverHeuristic
                }
            } else {
                GuessSource::Continuation
            };
            out.push(record(nu, k as u64 + 1, value, source));
        }
    }
    Ok(out)
}

type ZeroMemo = RwLock<HashMap<u64, Arc<Vec<f64>>>>;

fn memo() -> &'static ZeroMemo {
    static MEMO: OnceLock<ZeroMemo> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Zeros of order `nu` up to at least rank `k_max`, shared through a
/// process-wide memo. Stored vectors are never mutated; a longer request
/// replaces the entry with an extended copy.
pub fn cached_zeros(nu: f64, k_max: u64) -> Result<Arc<Vec<f64>>> {
    check_args(nu, k_max.max(1))?;
    let key = nu.to_bits();
    let existing = {
        let map = memo().read().expect("zero memo poisoned");
        map.get(&key).cloned()
    };
    let start = match existing {
        Some(v) if v.len() as u64 >= k_max => return Ok(v),
        Some(v) => v.as_ref().clone(),
        None => Vec::new(),
    };
    let computed = Arc::new(zeros_by_continuation(nu, k_max, start)?);
    let mut map = memo().write().expect("zero memo poisoned");
    let entry = map.entry(key).or_insert_with(|| computed.clone());
    if entry.len() < computed.len() {
        *entry = computed.clone();
    }
    Ok(entry.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    // mpmath.besseljzero at 30 digits
    const J0_ZEROS: [f64; 3] = [2.404_825_557_695_773, 5.520_078_110_286_311, 8.653_727_912_911_013];

    #[test]
    fn first_zeros_of_j0() {
        for (i, &z) in J0_ZEROS.iter().enumerate() {
            let r = bessel_j_zero(0.0, i as u64 + 1).unwrap();
            assert!((r.value - z).abs() < 1e-13, "k={}: {}", i + 1, r.value);
            assert!(r.residual < 1e-13);
        }
    }

    #[test]
    fn half_order_zeros_are_multiples_of_pi() {
        for k in 1..=10 {
            let r = bessel_j_zero(0.5, k).unwrap();
            assert!((r.value - k as f64 * PI).abs() < 1e-13 * k as f64, "k={k}");
        }
        let grid = bessel_j_zero_grid(&[0.5], 5).unwrap();
        for (i, r) in grid.iter().enumerate() {
            assert!((r.value - (i + 1) as f64 * PI).abs() < 1e-13);
        }
    }

    #[test]
    fn large_order_reference_values() {
        // mpmath.besseljzero(nu, k)
        let cases = [
            (100.0, 1, 108.836_165_898_409_77),
            (100.0, 50, 296.335_776_161_620_3),
            (1000.0, 3, 1_044.392_429_967_117_3),
            (37.5, 200, 685.412_079_513_796_5),
        ];
        for &(nu, k, want) in &cases {
            let r = bessel_j_zero(nu, k).unwrap();
            assert!(((r.value - want) / want).abs() < 1e-13, "ν={nu} k={k}: {}", r.value);
        }
    }

    #[test]
    fn grid_matches_single_queries() {
        let nus = [0.0, 3.3, 40.0, 250.0];
        let grid = bessel_j_zero_grid(&nus, 30).unwrap();
        for r in &grid {
            let single = bessel_j_zero(r.order, r.rank).unwrap();
            assert!(((r.value - single.value) / single.value).abs() < 1e-12);
        }
    }

    #[test]
    fn counts_below_match_ranks() {
        for &nu in &[0.0, 2.0, 15.0, 300.0] {
            let zs = cached_zeros(nu, 40).unwrap();
            for (i, &z) in zs.iter().enumerate() {
                assert_eq!(zero_count_below(nu, z - 0.1).unwrap(), i as u64);
                assert_eq!(zero_count_below(nu, z + 0.1).unwrap(), i as u64 + 1);
            }
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(bessel_j_zero(-1.0, 1).unwrap_err().is_domain());
        assert!(bessel_j_zero(1.0, 0).unwrap_err().is_domain());
    }
}
