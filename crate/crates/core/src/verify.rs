//! The acceptance checks as library functions, shared by `verify-all` and
//! the integration tests. Each returns a report instead of panicking.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::asymptotics::{derivative_limit_check, expansion_residuals, f_of, find_x0, richardson, zeta, zeta_via_theta0};
use crate::error::Result;
use crate::groundstate::{build_galerkin, evaluate_energy, nehari_minimax, symmetry_break_scan};
use crate::specfun::{bessel_j_zero_grid, k1_laplace_moment};
use crate::spectrum::classify::{condition_of, gcd};
use crate::spectrum::{accumulation_point, classify, gap_scan, sigma_star_eigenvalues, Condition};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_s: f64,
    pub budget_s: f64,
}

impl CriterionReport {
    pub fn line(&self) -> String {
        format!(
            "[{}] criterion {:>2} {:<32} {:>8.2}s  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed_s,
            self.detail
        )
    }
}

fn timed(id: u8, name: &'static str, budget_s: f64, f: impl FnOnce() -> Result<(bool, String)>) -> CriterionReport {
    let t = Instant::now();
    let (passed, detail) = match f() {
        Ok(v) => v,
        Err(e) => (false, format!("error: {e}")),
    };
    let elapsed = t.elapsed();
    let over = elapsed > Duration::from_secs_f64(budget_s);
    CriterionReport {
        id,
        name,
        passed: passed && !over,
        detail: if over { format!("{detail}; over the {budget_s} s budget") } else { detail },
        elapsed_s: elapsed.as_secs_f64(),
        budget_s,
    }
}

pub fn closed_form_integrals() -> CriterionReport {
    timed(1, "closed-form integrals", 1.0, || {
        let a = k1_laplace_moment(4.0, 1.0)?;
        let b = k1_laplace_moment(5.0, 1.0)?;
        let (ea, eb) = ((a - 16.0 / 35.0).abs(), (b - 16.0 / 21.0).abs());
        Ok((ea <= 1e-10 && eb <= 1e-10, format!("|M(4,1)−16/35| = {ea:.1e}, |M(5,1)−16/21| = {eb:.1e}")))
    })
}

pub fn mcmahon_consistency() -> CriterionReport {
    timed(2, "McMahon consistency", 10.0, || {
        let zs = bessel_j_zero_grid(&[0.0], 1000)?;
        let scaled: Vec<f64> = zs[9..]
            .iter()
            .map(|z| {
                let k = z.rank as f64;
                let b = k * PI - PI / 4.0;
                k.powi(3) * (z.value - (b + 1.0 / (8.0 * b))).abs()
            })
            .collect();
        let max = scaled.iter().cloned().fold(0.0, f64::max);
        // Index i holds k = i + 10; compare the sup over [10, 100) with [100, 1000].
        let low = scaled[..90].iter().cloned().fold(0.0, f64::max);
        let high = scaled[90..].iter().cloned().fold(0.0, f64::max);
        let last = scaled[scaled.len() - 1];
        let ok = max.is_finite() && high <= 2.0 * low;
        Ok((ok, format!("sup k³|Δ| = {low:.4e} on [10,100), {high:.4e} on [100,1000]; k=1000 value {last:.4e}")))
    })
}

pub fn first_order_constant() -> CriterionReport {
    timed(3, "first-order constant", 60.0, || {
        let mut ok = true;
        let mut parts = Vec::new();
        for &x in &[0.5, 1.0, 4.0] {
            let p = expansion_residuals(x, &[2000])?;
            let v = -2000.0 * p.residual_orders[0].r0;
            let rel = (v / p.c1 - 1.0).abs();
            ok &= rel < 0.01;
            parts.push(format!("x={x}: {rel:.2e}"));
        }
        Ok((ok, format!("relative deviation {}", parts.join(", "))))
    })
}

pub fn second_order_constant() -> CriterionReport {
    timed(4, "second-order constant", 120.0, || {
        let ks = [500u64, 1000, 2000];
        let mut ok = true;
        let mut parts = Vec::new();
        for &x in &[1.0, 4.0] {
            let p = expansion_residuals(x, &ks)?;
            let r2: Vec<f64> = p.residual_orders.iter().map(|r| r.r2).collect();
            let ext = richardson(&ks, &r2)?;
            let rel = (ext / p.zeta - 1.0).abs();
            ok &= rel < 0.05;
            parts.push(format!("x={x}: extrapolated {ext:.8e} vs ζ {:.8e}", p.zeta));
        }
        Ok((ok, parts.join("; ")))
    })
}

pub fn zeta_equivalence() -> CriterionReport {
    timed(5, "ζ formula equivalence", 60.0, || {
        let mut worst: f64 = 0.0;
        for &x in &[0.1, 1.0, 4.0, 16.0, 30.0] {
            worst = worst.max((zeta(x)? - zeta_via_theta0(x)?).abs());
        }
        Ok((worst <= 1e-8, format!("max |Δζ| = {worst:.2e}")))
    })
}

pub fn zeta_limits_and_root() -> CriterionReport {
    timed(6, "ζ limit and root", 300.0, || {
        let z0 = zeta(1e-3)?;
        let lim_ok = (z0 - 1.0 / (8.0 * PI)).abs() <= 1e-3;
        let x0 = find_x0()?;
        let fx0 = f_of(x0)?;
        let root_ok = (x0 - 16.2379).abs() <= 1e-3;
        let f_ok = (fx0 - 1.384).abs() <= 1e-2;
        Ok((
            lim_ok && root_ok && f_ok,
            format!(
                "ζ(1e-3) = {z0:.6} [{}]; x₀ = {x0:.6} vs 16.2379 [{}]; f(x₀) = {fx0:.5} vs 1.384 [{}]",
                if lim_ok { "ok" } else { "off" },
                if root_ok { "ok" } else { "off" },
                if f_ok { "ok" } else { "off" }
            ),
        ))
    })
}

pub fn classification_trichotomy() -> CriterionReport {
    timed(7, "classification trichotomy", 1.0, || {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let mut checked = 0;
        let mut bad = 0;
        while checked < 10_000 {
            let (p, q) = (rng.gen_range(1..1_000_000u64), rng.gen_range(1..1_000_000u64));
            if gcd(p, q) != 1 {
                continue;
            }
            checked += 1;
            let c = condition_of(p, q);
            let (c1, c2) = (p % 4 != 0, q % 2 == 0);
            let labels = [c == Condition::C1, c == Condition::C2, c == Condition::C3];
            let exactly_one = labels.iter().filter(|&&b| b).count() == 1;
            let c3_rule = (c == Condition::C3) == (p % 4 == 0 && q % 2 == 1) && (c == Condition::C3) == (!c1 && !c2);
            if !(exactly_one && c3_rule) {
                bad += 1;
            }
        }
        Ok((bad == 0, format!("{checked} coprime pairs, {bad} violations")))
    })
}

pub fn sigma_star_convergence() -> CriterionReport {
    timed(8, "Σ_* convergence", 300.0, || {
        let mut ok = true;
        let mut parts = Vec::new();
        for &(p, q) in &[(8u64, 3u64), (4, 1)] {
            let lim = accumulation_point(p, q)?;
            let pts = sigma_star_eigenvalues(p, q, 20)?;
            let dev: Vec<f64> = pts.iter().map(|x| (x.eigenvalue - lim).abs()).collect();
            let monotone = dev[4..].windows(2).all(|w| w[1] < w[0]);
            let rel = dev[19] / lim.abs();
            ok &= monotone && rel < 0.05;
            parts.push(format!(
                "{p}/{q}: limit {lim:.6}, λ₂₀ = {:.6}, rel dev {rel:.3}, monotone {monotone}",
                pts[19].eigenvalue
            ));
        }
        Ok((ok, parts.join("; ")))
    })
}

fn window(sigma: f64, k: u64) -> u64 {
    (sigma * k as f64).ceil() as u64 + 16
}

pub fn gap_dichotomy() -> CriterionReport {
    timed(9, "gap dichotomy", 600.0, || {
        let half = classify(1, 2)?;
        let a = gap_scan(&half, window(half.sigma, 256), 256, false)?.c_min;
        let b = gap_scan(&half, window(half.sigma, 512), 512, false)?.c_min;
        let c1_ok = (b / a - 1.0).abs() < 0.2;
        let four = classify(4, 1)?;
        let n256 = gap_scan(&four, window(4.0, 256), 256, false)?.c_min;
        let n1024 = gap_scan(&four, window(4.0, 1024), 1024, false)?.c_min;
        let shrink_ok = n256 / n1024 >= 2.0;
        let e256 = gap_scan(&four, window(4.0, 256), 256, true)?.c_min;
        let e1024 = gap_scan(&four, window(4.0, 1024), 1024, true)?.c_min;
        let excl_ok = (e1024 / e256 - 1.0).abs() < 0.2;
        Ok((
            c1_ok && shrink_ok && excl_ok,
            format!(
                "σ=1/2: {a:.4} → {b:.4}; σ=4: {n256:.3e} → {n1024:.3e} (×{:.2}); excluded {e256:.4} → {e1024:.4}",
                n256 / n1024
            ),
        ))
    })
}

pub fn derivative_asymptotics() -> CriterionReport {
    timed(10, "derivative asymptotics", 120.0, || {
        let chk = derivative_limit_check(4.0, &[250, 500, 1000, 2000])?;
        let e = chk.fitted_exponent;
        Ok(((1.7..=2.3).contains(&e), format!("fitted exponent {e:.4}")))
    })
}

/// Ground-state properties at truncation `(l, k)`.
pub fn ground_state_properties(l: u64, k: u64) -> CriterionReport {
    timed(11, "ground-state properties", 900.0, || {
        let s = classify(1, 2)?;
        let p = 3.0;
        // Gradient against central differences on random directions.
        let model = build_galerkin(&s, 5.0, p, l.min(8), k.min(8))?;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let c: Vec<f64> = (0..model.dim()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let (_, g) = evaluate_energy(&model, &c)?;
        let mut grad_err: f64 = 0.0;
        for _ in 0..5 {
            let d: Vec<f64> = (0..model.dim()).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let h = 1e-5;
            let shift = |t: f64| -> Vec<f64> { c.iter().zip(&d).map(|(x, y)| x + t * y).collect() };
            let fd = (evaluate_energy(&model, &shift(h))?.0 - evaluate_energy(&model, &shift(-h))?.0) / (2.0 * h);
            let an: f64 = g.iter().zip(&d).map(|(x, y)| x * y).sum();
            grad_err = grad_err.max(((fd - an) / an).abs());
        }
        let grad_ok = grad_err < 1e-5;

        let ms = [1.0, 5.0, 10.0, 20.0, 50.0, 100.0];
        let scan = symmetry_break_scan(&s, p, &ms, l, k)?;
        let positive = scan.rows.iter().all(|r| r.c > 0.0);
        let broken = scan.rows.iter().any(|r| r.nonradial && !r.minimizer_radial);
        let slopes_ok = matches!((scan.c_slope, scan.beta_slope), (Some(a), Some(b)) if a < b);
        // Nehari identity at a solved configuration.
        let rep = nehari_minimax(&build_galerkin(&s, 20.0, p, l, k)?)?;
        let nehari_ok = rep.nehari_identity_error.abs() < 1e-4 && rep.nehari_residual < 1e-6;
        Ok((
            grad_ok && positive && broken && slopes_ok && nehari_ok,
            format!(
                "grad err {grad_err:.1e}; Nehari identity {:.1e}; c>0 {positive}; first c<β at m = {:?}; slopes c {:.2} vs β {:.2}",
                rep.nehari_identity_error,
                scan.m0,
                scan.c_slope.unwrap_or(f64::NAN),
                scan.beta_slope.unwrap_or(f64::NAN)
            ),
        ))
    })
}

/// Runs every criterion; `quick` uses a smaller Galerkin truncation for the last one.
pub fn run_all(quick: bool) -> Vec<CriterionReport> {
    let gs = if quick { 12 } else { 24 };
    vec![
        closed_form_integrals(),
        mcmahon_consistency(),
        first_order_constant(),
        second_order_constant(),
        zeta_equivalence(),
        zeta_limits_and_root(),
        classification_trichotomy(),
        sigma_star_convergence(),
        gap_dichotomy(),
        derivative_asymptotics(),
        ground_state_properties(gs, gs),
    ]
}

