//! Scalar root finding: Brent's method on a sign-changing bracket, and the
//! inverse of `s ↦ s − arctan s`, which underlies both the Elbert–Laforgia
//! map and the uniform-asymptotic zero guesses.

use crate::error::{Error, Result};

/// Brent's method for a root of `f` in `[a, b]` with `f(a)·f(b) ≤ 0`.
///
/// Stops when the bracket is narrower than `2·(xtol + 4ε|x|)`.
pub fn brent<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, xtol: f64, max_iter: usize) -> Result<f64> {
    let (mut a, mut b) = (a, b);
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Solver(format!(
            "no sign change on [{a}, {b}]: f = {fa:e}, {fb:e}"
        )));
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..max_iter {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b);
    }
    Err(Error::Solver(format!("Brent iteration did not converge near {b}")))
}

/// `s − arctan s`, accurate for small `s` as well.
pub fn s_minus_atan(s: f64) -> f64 {
    if s.abs() < 0.1 {
        // s³/3 − s⁵/5 + s⁷/7 − …
        let s2 = s * s;
        let mut term = s * s2;
        let mut sum = 0.0;
        let mut n = 3.0;
        let mut sign = 1.0;
        while term.abs() > 1e-18 * (s * s2).abs() {
            sum += sign * term / n;
            term *= s2;
            n += 2.0;
            sign = -sign;
        }
        sum
    } else {
        s - s.atan()
    }
}

/// Solves `s − arctan s = c` for `s ≥ 0` given `c ≥ 0`.
pub fn invert_s_minus_atan(c: f64) -> f64 {
    if c <= 0.0 {
        return 0.0;
    }
    if c.is_infinite() {
        return f64::INFINITY;
    }
    let small = (3.0 * c).cbrt() * (1.0 + 0.2 * (3.0 * c).powf(2.0 / 3.0));
    let large = {
        let z = c + std::f64::consts::FRAC_PI_2;
        z - 1.0 / z
    };
    // Start to the right of the root: Newton on a convex increasing function
    // then decreases monotonically.
    let mut s = small.max(large);
    for _ in 0..200 {
        let h = s_minus_atan(s) - c;
        let s2 = s * s;
        let dh = s2 / (1.0 + s2);
        let step = h / dh;
        let next = s - step;
        if !(next > 0.0) {
            s *= 0.5;
            continue;
        }
        if step.abs() <= 4.0 * f64::EPSILON * next {
            return next;
        }
        s = next;
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brent_finds_cubic_root() {
        let r = brent(|x| x * x * x - 2.0, 0.0, 2.0, 1e-15, 200).unwrap();
        assert!((r - 2f64.cbrt()).abs() < 1e-14);
    }

    #[test]
    fn brent_rejects_missing_sign_change() {
        assert!(matches!(brent(|x| x * x + 1.0, -1.0, 1.0, 1e-12, 50), Err(Error::Solver(_))));
    }

    #[test]
    fn s_minus_atan_inverse_roundtrip() {
        for &c in &[1e-12, 1e-6, 1e-3, 0.05, 0.3, 1.0, 7.0, 100.0, 1e6] {
            let s = invert_s_minus_atan(c);
            let back = s_minus_atan(s);
            assert!(((back - c) / c).abs() < 1e-14, "c={c}: s={s}, back={back}");
        }
    }

    #[test]
    fn series_branch_matches_direct() {
        for &s in &[0.05, 0.099, 0.1, 0.101] {
            let direct: f64 = s - f64::atan(s);
            assert!(((s_minus_atan(s) - direct) / direct).abs() < 1e-12);
        }
    }
}
