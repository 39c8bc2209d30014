//! The positive radial solution of `−u″ − u′/r + mu = |u|^{p−2}u`,
//! `u′(0) = 0`, `u(1) = 0`, by shooting on `u(0)` with an adaptive
//! Dormand–Prince 5(4) integrator.

use std::f64::consts::PI;

use serde::Serialize;

use super::galerkin::{GalerkinModel, Parity};
use crate::error::{Error, Result};

/// First Dirichlet eigenvalue of the disk, `j²_{0,1}`.
pub const LAMBDA_1: f64 = 2.404_825_557_695_773 * 2.404_825_557_695_773;
const RTOL: f64 = 1.0e-12;
const START_RADIUS: f64 = 1.0e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadialSolution {
    pub m: f64,
    pub p_exponent: f64,
    /// Shooting parameter `u(0)`.
    pub u0: f64,
    pub r: Vec<f64>,
    pub u: Vec<f64>,
    pub du: Vec<f64>,
    /// `∫_B |u|^p`.
    pub lp_integral: f64,
    /// `(½ − 1/p) ∫_B |u|^p`.
    pub beta: f64,
    /// `|u(1)| / u(0)`.
    pub boundary_residual: f64,
    /// Largest profile change when the integrator tolerance is tightened 100×, relative to `u(0)`.
    pub refinement_error: f64,
}

impl RadialSolution {
    /// Cubic Hermite interpolation of the profile.
    pub fn eval(&self, r: f64) -> f64 {
        let n = self.r.len();
        let h = self.r[1] - self.r[0];
        let i = (((r - self.r[0]) / h).floor().max(0.0) as usize).min(n - 2);
        let (r0, r1) = (self.r[i], self.r[i + 1]);
        let h = r1 - r0;
        let t = (r - r0) / h;
        let (t2, t3) = (t * t, t * t * t);
        (2.0 * t3 - 3.0 * t2 + 1.0) * self.u[i]
            + (t3 - 2.0 * t2 + t) * h * self.du[i]
            + (-2.0 * t3 + 3.0 * t2) * self.u[i + 1]
            + (t3 - t2) * h * self.du[i + 1]
    }
}

type State = [f64; 3];

fn rhs(m: f64, p: f64, r: f64, y: &State) -> State {
    let (u, du) = (y[0], y[1]);
    let a = u.abs();
    let nl = a.powf(p - 2.0) * u;
    [du, -du / r + m * u - nl, a.powf(p) * r]
}

// Dormand–Prince tableau.
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// Integrates from `r0` to `r1`, returning the end state and whether `u`
/// went negative at any accepted step.
fn integrate(m: f64, p: f64, r0: f64, r1: f64, y0: State, scale: f64, rtol: f64, h: &mut f64) -> Result<(State, bool)> {
    let mut r = r0;
    let mut y = y0;
    let mut went_negative = false;
    let mut steps = 0usize;
    while r < r1 {
        steps += 1;
        if steps > 2_000_000 {
            return Err(Error::Solver(format!("radial integrator stalled at r = {r}")));
        }
        let last = r + *h >= r1;
        let step = if last { r1 - r } else { *h };
        let mut k = [[0.0; 3]; 7];
        k[0] = rhs(m, p, r, &y);
        for s in 1..7 {
            let mut ys = y;
            for (d, ysd) in ys.iter_mut().enumerate() {
                *ysd += step * (0..s).map(|j| A[s][j] * k[j][d]).sum::<f64>();
            }
            k[s] = rhs(m, p, r + C[s] * step, &ys);
        }
        let mut y5 = y;
        let mut err: f64 = 0.0;
        for d in 0..3 {
            let inc5: f64 = (0..7).map(|s| B5[s] * k[s][d]).sum();
            let inc4: f64 = (0..7).map(|s| B4[s] * k[s][d]).sum();
            y5[d] += step * inc5;
            // The accumulated integral is not error-controlled relative to u.
            if d < 2 {
                let sc = rtol * (scale + y5[d].abs().max(y[d].abs()));
                err = err.max((step * (inc5 - inc4)).abs() / sc);
            }
        }
        if err <= 1.0 || step < 1e-14 {
            r = if last { r1 } else { r + step };
            y = y5;
            if y[0] < 0.0 {
                went_negative = true;
            }
        }
        let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
        if !last || err > 1.0 {
            *h = step * factor;
        }
    }
    Ok((y, went_negative))
}

fn start_state(m: f64, p: f64, a: f64) -> State {
    let c = m * a - a.abs().powf(p - 2.0) * a;
    let r = START_RADIUS;
    [a + c * r * r / 4.0, c * r / 2.0, a.abs().powf(p) * r * r / 2.0]
}

/// Does the solution starting at `u(0) = a` stay positive on `[0, 1)`?
fn stays_positive(m: f64, p: f64, a: f64, rtol: f64) -> Result<bool> {
    let mut h = 1e-3 / (1.0 + m.abs().sqrt() + a.powf(0.5 * (p - 2.0)));
    let (y, neg) = integrate(m, p, START_RADIUS, 1.0, start_state(m, p, a), a, rtol, &mut h)?;
    Ok(!neg && y[0] > 0.0)
}

fn profile(m: f64, p: f64, a: f64, n_out: usize, rtol: f64) -> Result<(Vec<f64>, Vec<f64>, Vec<f64>, f64)> {
    let mut r = vec![0.0];
    let mut u = vec![a];
    let mut du = vec![0.0];
    let mut y = start_state(m, p, a);
    let mut r_prev = START_RADIUS;
    let mut h = 1e-3 / (1.0 + m.abs().sqrt() + a.powf(0.5 * (p - 2.0)));
    for i in 1..=n_out {
        let ri = i as f64 / n_out as f64;
        let (yn, _) = integrate(m, p, r_prev, ri, y, a, rtol, &mut h)?;
        y = yn;
        r_prev = ri;
        r.push(ri);
        u.push(y[0]);
        du.push(y[1]);
    }
    Ok((r, u, du, 2.0 * PI * y[2]))
}

/// Shooting solution on a uniform output grid of 2000 intervals.
pub fn radial_solution(m: f64, p_exponent: f64) -> Result<RadialSolution> {
    radial_solution_with(m, p_exponent, 2000)
}

pub fn radial_solution_with(m: f64, p_exponent: f64, n_out: usize) -> Result<RadialSolution> {
    let p = p_exponent;
    if !(p > 2.0 && p < 4.0) {
        return Err(Error::domain(format!("the exponent must lie in (2, 4), got {p}")));
    }
    if !(m > -LAMBDA_1) || !m.is_finite() {
        return Err(Error::domain(format!("m must exceed −j²_(0,1) = {:.6}, got {m}", -LAMBDA_1)));
    }
    // u(0) ~ (m + λ₁)^{1/(p−2)} sets the scale of the bracket.
    let mut lo = 1e-3 * (m + LAMBDA_1).powf(1.0 / (p - 2.0));
    let mut tries = 0;
    while !stays_positive(m, p, lo, RTOL)? {
        lo *= 0.1;
        tries += 1;
        if tries > 30 {
            return Err(Error::Configuration(format!("no positive shooting start found for m = {m}")));
        }
    }
    let mut hi = 2.0 * lo;
    tries = 0;
    while stays_positive(m, p, hi, RTOL)? {
        lo = hi;
        hi *= 2.0;
        tries += 1;
        if tries > 200 {
            return Err(Error::Configuration(format!("shooting bracket not found for m = {m}")));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if stays_positive(m, p, mid, RTOL)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let a = lo;
    let (r, u, du, lp) = profile(m, p, a, n_out, RTOL)?;
    let (_, u_fine, _, _) = profile(m, p, a, n_out, 1e-2 * RTOL)?;
    let refinement_error = u.iter().zip(&u_fine).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max) / a;
    let boundary_residual = u[n_out].abs() / a;
    Ok(RadialSolution {
        m,
        p_exponent: p,
        u0: a,
        r,
        u,
        du,
        lp_integral: lp,
        beta: (0.5 - 1.0 / p) * lp,
        boundary_residual,
        refinement_error,
    })
}

/// Coefficients of the radial profile in the model's `ℓ = 0` modes.
pub fn project_radial(model: &GalerkinModel, sol: &RadialSolution) -> Vec<f64> {
    let ug: Vec<f64> = model.grid.r.iter().map(|&r| sol.eval(r)).collect();
    model
        .modes
        .iter()
        .enumerate()
        .map(|(i, md)| {
            if md.l != 0 || md.parity != Parity::Cos {
                return 0.0;
            }
            let phi = model.radial_values(i);
            2.0 * PI * model.grid.wr.iter().zip(&ug).zip(phi).map(|((w, u), f)| w * u * f).sum::<f64>()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotics::expansion::fit_slope;
    use crate::groundstate::build_galerkin;
    use crate::spectrum::classify;

    #[test]
    fn profile_is_positive_decreasing_and_vanishes_at_one() {
        let s = radial_solution(10.0, 3.0).unwrap();
        assert!(s.u[..s.u.len() - 1].iter().all(|&v| v > 0.0));
        assert!(s.u.windows(2).all(|w| w[1] < w[0]));
        assert!(s.boundary_residual < 1e-8, "{}", s.boundary_residual);
        assert!(s.refinement_error < 1e-8, "{}", s.refinement_error);
        assert!(s.beta > 0.0);
    }

    #[test]
    fn beta_grows_at_least_like_the_scaling_law() {
        let p = 3.0;
        let ms = [10.0, 20.0, 50.0, 100.0];
        let betas: Vec<f64> = ms.iter().map(|&m| radial_solution(m, p).unwrap().beta).collect();
        let lx: Vec<f64> = ms.iter().map(|m: &f64| m.ln()).collect();
        let ly: Vec<f64> = betas.iter().map(|b| b.ln()).collect();
        let slope = fit_slope(&lx, &ly);
        assert!(slope >= 2.0 / (p - 2.0) - 0.2, "slope {slope}");
    }

    #[test]
    fn projection_reproduces_the_energy() {
        let sol = radial_solution(10.0, 3.0).unwrap();
        let model = build_galerkin(&classify(1, 2).unwrap(), 10.0, 3.0, 4, 32).unwrap();
        let c = project_radial(&model, &sol);
        let (phi, _) = model.energy(&c);
        assert!((phi / sol.beta - 1.0).abs() < 0.02, "{phi} vs {}", sol.beta);
    }

    #[test]
    fn rejects_out_of_range_parameters() {
        assert!(radial_solution(-LAMBDA_1 - 1.0, 3.0).unwrap_err().is_domain());
        assert!(radial_solution(1.0, 4.0).unwrap_err().is_domain());
    }
}
