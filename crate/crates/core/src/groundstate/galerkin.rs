//! Truncated Fourier–Bessel basis of the disk and the energy
//! `Φ(u) = ½ Σ (λ_i + m) c_i² − (1/p) ∫ |u|^p`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::specfun::bessel_j::jv;
use crate::specfun::gauss_legendre;
use crate::specfun::zeros::cached_zeros;
use crate::spectrum::enumerate::eigenvalue;
use crate::spectrum::{Condition, SigmaRational};

/// `|λ + m|` below this puts a mode in the zero subspace.
pub const ZERO_MODE_TOL: f64 = 1.0e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Cos,
    Sin,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Mode {
    pub l: u64,
    pub k: u64,
    pub parity: Parity,
    /// `j²_{ℓ,k} − α²ℓ² + m`.
    pub eigenvalue: f64,
    pub zero: f64,
    /// Factor making the mode's disk L² norm 1.
    pub normalization: f64,
}

/// Mode indices split by the sign of `λ + m`.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Partition {
    pub positive: Vec<usize>,
    pub zero: Vec<usize>,
    pub negative: Vec<usize>,
}

/// Tensor grid: Gauss–Legendre in r (weights include r) and uniform in θ.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskGrid {
    pub r: Vec<f64>,
    pub wr: Vec<f64>,
    pub n_theta: usize,
}

impl DiskGrid {
    pub fn new(n_r: usize, n_theta: usize) -> Self {
        let (x, w) = gauss_legendre(n_r);
        let r: Vec<f64> = x.iter().map(|x| 0.5 * (x + 1.0)).collect();
        let wr = w.iter().zip(&r).map(|(w, r)| 0.5 * w * r).collect();
        DiskGrid { r, wr, n_theta }
    }
}

#[derive(Debug, Clone)]
pub struct GalerkinModel {
    pub sigma: SigmaRational,
    pub alpha: f64,
    pub m: f64,
    pub p_exponent: f64,
    pub l_max: u64,
    pub k_max: u64,
    pub modes: Vec<Mode>,
    pub partition: Partition,
    pub grid: DiskGrid,
    pub warnings: Vec<String>,
    /// `normalization · J_ℓ(j r_a)` per radial function, row-major over radial nodes.
    radial: Vec<f64>,
    /// Index of the radial function used by each mode.
    radial_of: Vec<usize>,
    cos_table: Vec<f64>,
    sin_table: Vec<f64>,
}

/// Radial nodes used by default: enough to resolve the most oscillatory basis function.
pub fn default_radial_nodes(max_zero: f64) -> usize {
    ((1.5 * max_zero).ceil() as usize + 32).max(64)
}

/// Angular nodes used by default.
pub fn default_angular_nodes(l_max: u64) -> usize {
    (4 * (l_max as usize + 1)).max(16)
}

fn check_exponent(p: f64) -> Result<()> {
    if !(p > 2.0 && p < 4.0) {
        return Err(Error::domain(format!("the exponent must lie in (2, 4), got {p}")));
    }
    Ok(())
}

/// Basis with default quadrature.
pub fn build_galerkin(s: &SigmaRational, m: f64, p_exponent: f64, l_max: u64, k_max: u64) -> Result<GalerkinModel> {
    build_galerkin_with_grid(s, m, p_exponent, l_max, k_max, None)
}

/// Basis with explicit `(n_r, n_θ)` quadrature sizes (defaults when `None`).
pub fn build_galerkin_with_grid(
    s: &SigmaRational,
    m: f64,
    p_exponent: f64,
    l_max: u64,
    k_max: u64,
    grid: Option<(usize, usize)>,
) -> Result<GalerkinModel> {
    check_exponent(p_exponent)?;
    if k_max == 0 {
        return Err(Error::domain("K must be >= 1"));
    }
    if !m.is_finite() {
        return Err(Error::domain("m must be finite"));
    }
    let mut warnings = Vec::new();
    if s.condition == Condition::C3 {
        warnings.push(format!(
            "σ = {}/{} has a spectral accumulation point; existence of ground states is not covered in this case",
            s.p, s.q
        ));
    }
    let zeros: Vec<_> = (0..=l_max).map(|l| cached_zeros(l as f64, k_max)).collect::<Result<_>>()?;
    let max_zero = zeros.iter().map(|z| z[k_max as usize - 1]).fold(0.0, f64::max);
    let (n_r, n_theta) = grid.unwrap_or((default_radial_nodes(max_zero), default_angular_nodes(l_max)));
    if n_theta <= 2 * l_max as usize {
        return Err(Error::Configuration(format!("{n_theta} angular nodes cannot resolve ℓ = {l_max}")));
    }
    let grid = DiskGrid::new(n_r, n_theta);

    let mut radial = Vec::with_capacity(((l_max + 1) * k_max) as usize * n_r);
    let mut norms = Vec::new();
    for (l, zs) in zeros.iter().enumerate() {
        for &j in zs.iter().take(k_max as usize) {
            let vals: Vec<f64> = grid.r.iter().map(|&r| jv(l as f64, j * r)).collect();
            let rad: f64 = vals.iter().zip(&grid.wr).map(|(v, w)| v * v * w).sum();
            let angular = if l == 0 { 2.0 * PI } else { PI };
            let n = 1.0 / (angular * rad).sqrt();
            radial.extend(vals.iter().map(|v| n * v));
            norms.push(n);
        }
    }

    let mut modes = Vec::new();
    let mut radial_of = Vec::new();
    for l in 0..=l_max {
        let parities: &[Parity] = if l == 0 { &[Parity::Cos] } else { &[Parity::Cos, Parity::Sin] };
        for &parity in parities {
            for k in 1..=k_max {
                let idx = (l * k_max + k - 1) as usize;
                let zero = zeros[l as usize][k as usize - 1];
                modes.push(Mode {
                    l,
                    k,
                    parity,
                    eigenvalue: eigenvalue(s.alpha, l, zero) + m,
                    zero,
                    normalization: norms[idx],
                });
                radial_of.push(idx);
            }
        }
    }
    let mut partition = Partition::default();
    for (i, md) in modes.iter().enumerate() {
        if md.eigenvalue.abs() < ZERO_MODE_TOL {
            partition.zero.push(i);
        } else if md.eigenvalue > 0.0 {
            partition.positive.push(i);
        } else {
            partition.negative.push(i);
        }
    }
    if partition.positive.is_empty() {
        return Err(Error::Configuration("truncation has no positive modes".into()));
    }

    let mut cos_table = Vec::with_capacity((l_max as usize + 1) * n_theta);
    let mut sin_table = Vec::with_capacity((l_max as usize + 1) * n_theta);
    for l in 0..=l_max {
        for b in 0..n_theta {
            let th = 2.0 * PI * b as f64 / n_theta as f64;
            cos_table.push((l as f64 * th).cos());
            sin_table.push((l as f64 * th).sin());
        }
    }
    Ok(GalerkinModel {
        sigma: *s,
        alpha: s.alpha,
        m,
        p_exponent,
        l_max,
        k_max,
        modes,
        partition,
        grid,
        warnings,
        radial,
        radial_of,
        cos_table,
        sin_table,
    })
}

impl GalerkinModel {
    pub fn dim(&self) -> usize {
        self.modes.len()
    }

    fn n_r(&self) -> usize {
        self.grid.r.len()
    }

    /// Radial profile of mode `i` on the radial nodes.
    pub fn radial_values(&self, i: usize) -> &[f64] {
        let n = self.n_r();
        let idx = self.radial_of[i];
        &self.radial[idx * n..(idx + 1) * n]
    }

    fn check_dim(&self, c: &[f64]) -> Result<()> {
        if c.len() != self.dim() {
            return Err(Error::domain(format!("expected {} coefficients, got {}", self.dim(), c.len())));
        }
        Ok(())
    }

    /// `u` on the grid, indexed `[a * n_θ + b]`.
    pub fn synthesize(&self, c: &[f64]) -> Vec<f64> {
        let (nr, nt) = (self.n_r(), self.grid.n_theta);
        let nl = self.l_max as usize + 1;
        // Fourier coefficients per radius: a_ℓ(r), b_ℓ(r).
        let mut a = vec![0.0; nl * nr];
        let mut b = vec![0.0; nl * nr];
        for (i, md) in self.modes.iter().enumerate() {
            if c[i] == 0.0 {
                continue;
            }
            let dst = match md.parity {
                Parity::Cos => &mut a,
                Parity::Sin => &mut b,
            };
            let row = &mut dst[md.l as usize * nr..(md.l as usize + 1) * nr];
            for (d, v) in row.iter_mut().zip(self.radial_values(i)) {
                *d += c[i] * v;
            }
        }
        let mut u = vec![0.0; nr * nt];
        for l in 0..nl {
            let ct = &self.cos_table[l * nt..(l + 1) * nt];
            let st = &self.sin_table[l * nt..(l + 1) * nt];
            for ra in 0..nr {
                let (al, bl) = (a[l * nr + ra], b[l * nr + ra]);
                if al == 0.0 && bl == 0.0 {
                    continue;
                }
                let out = &mut u[ra * nt..(ra + 1) * nt];
                for t in 0..nt {
                    out[t] += al * ct[t] + bl * st[t];
                }
            }
        }
        u
    }

    /// `∫ g φ_i` for every mode, with `g` given on the grid.
    pub fn project(&self, g: &[f64]) -> Vec<f64> {
        let (nr, nt) = (self.n_r(), self.grid.n_theta);
        let nl = self.l_max as usize + 1;
        let dth = 2.0 * PI / nt as f64;
        let mut a = vec![0.0; nl * nr];
        let mut b = vec![0.0; nl * nr];
        for ra in 0..nr {
            let row = &g[ra * nt..(ra + 1) * nt];
            let w = self.grid.wr[ra] * dth;
            for l in 0..nl {
                let ct = &self.cos_table[l * nt..(l + 1) * nt];
                let st = &self.sin_table[l * nt..(l + 1) * nt];
                let (mut sa, mut sb) = (0.0, 0.0);
                for t in 0..nt {
                    sa += row[t] * ct[t];
                    sb += row[t] * st[t];
                }
                a[l * nr + ra] = sa * w;
                b[l * nr + ra] = sb * w;
            }
        }
        self.modes
            .iter()
            .enumerate()
            .map(|(i, md)| {
                let src = match md.parity {
                    Parity::Cos => &a,
                    Parity::Sin => &b,
                };
                let row = &src[md.l as usize * nr..(md.l as usize + 1) * nr];
                row.iter().zip(self.radial_values(i)).map(|(x, y)| x * y).sum()
            })
            .collect()
    }

    /// `∫ |u|^p` over the disk.
    pub fn lp_integral(&self, c: &[f64]) -> f64 {
        let u = self.synthesize(c);
        let nt = self.grid.n_theta;
        let dth = 2.0 * PI / nt as f64;
        let p = self.p_exponent;
        u.chunks(nt).zip(&self.grid.wr).map(|(row, w)| w * dth * row.iter().map(|v| v.abs().powf(p)).sum::<f64>()).sum()
    }

    /// `(Φ(c), ∇Φ(c))` with respect to the coefficients.
    pub fn energy(&self, c: &[f64]) -> (f64, Vec<f64>) {
        let u = self.synthesize(c);
        let nt = self.grid.n_theta;
        let dth = 2.0 * PI / nt as f64;
        let p = self.p_exponent;
        let mut integral = 0.0;
        let mut nl = vec![0.0; u.len()];
        for (ra, row) in u.chunks(nt).enumerate() {
            let w = self.grid.wr[ra] * dth;
            let mut acc = 0.0;
            for (t, &v) in row.iter().enumerate() {
                let a = v.abs();
                let ap2 = a.powf(p - 2.0);
                acc += ap2 * a * a;
                nl[ra * nt + t] = ap2 * v;
            }
            integral += w * acc;
        }
        let proj = self.project(&nl);
        let mut quad = 0.0;
        let grad = self
            .modes
            .iter()
            .zip(c)
            .zip(&proj)
            .map(|((md, &ci), &pi)| {
                quad += md.eigenvalue * ci * ci;
                md.eigenvalue * ci - pi
            })
            .collect();
        (0.5 * quad - integral / p, grad)
    }
}

/// `Φ` and its gradient; errors only on a dimension mismatch.
pub fn evaluate_energy(model: &GalerkinModel, coefficients: &[f64]) -> Result<(f64, Vec<f64>)> {
    model.check_dim(coefficients)?;
    Ok(model.energy(coefficients))
}

/// Re-evaluates `∫|u|^p` on a grid with twice the nodes in each direction and
/// reports the relative disagreement; above `tol` it is an accuracy error.
pub fn check_resolution(model: &GalerkinModel, coefficients: &[f64], tol: f64) -> Result<f64> {
    model.check_dim(coefficients)?;
    let fine = build_galerkin_with_grid(
        &model.sigma,
        model.m,
        model.p_exponent,
        model.l_max,
        model.k_max,
        Some((2 * model.grid.r.len(), 2 * model.grid.n_theta)),
    )?;
    let coarse = model.lp_integral(coefficients);
    let refined = fine.lp_integral(coefficients);
    let rel = (coarse - refined).abs() / refined.abs().max(f64::MIN_POSITIVE);
    if rel > tol {
        return Err(Error::accuracy(format!("quadrature under-resolved: grid refinement changes ∫|u|^p by {rel:e}"), refined));
    }
    Ok(rel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::classify;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn model(m: f64, l: u64, k: u64) -> GalerkinModel {
        build_galerkin(&classify(1, 2).unwrap(), m, 3.0, l, k).unwrap()
    }

    #[test]
    fn basis_is_orthonormal_under_quadrature() {
        let md = model(0.0, 6, 6);
        let n = md.dim();
        for i in 0..n {
            let mut e = vec![0.0; n];
            e[i] = 1.0;
            let u = md.synthesize(&e);
            let g = md.project(&u);
            for (j, &v) in g.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((v - want).abs() < 1e-10, "({i},{j}) = {v}");
            }
        }
    }

    #[test]
    fn normalization_matches_closed_form() {
        let md = model(0.0, 5, 5);
        for mode in &md.modes {
            let jl1 = jv(mode.l as f64 + 1.0, mode.zero);
            let angular = if mode.l == 0 { 2.0 * PI } else { PI };
            let want = 1.0 / (angular * 0.5 * jl1 * jl1).sqrt();
            assert!((mode.normalization / want - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn partition_structure() {
        let md = model(0.0, 8, 8);
        assert!(!md.partition.positive.is_empty() && !md.partition.negative.is_empty());
        let total = md.partition.positive.len() + md.partition.zero.len() + md.partition.negative.len();
        assert_eq!(total, md.dim());
        assert!(md.modes.iter().all(|m| m.parity == Parity::Cos || m.l >= 1));
        let shifted = model(10.0, 8, 8);
        assert!(shifted.partition.positive.len() >= md.partition.positive.len());
    }

    #[test]
    fn energy_at_origin_and_along_a_ray() {
        let md = model(0.0, 4, 4);
        let (v, g) = evaluate_energy(&md, &vec![0.0; md.dim()]).unwrap();
        assert_eq!(v, 0.0);
        assert!(g.iter().all(|&x| x == 0.0));
        let i = md.partition.positive[0];
        let mut e = vec![0.0; md.dim()];
        e[i] = 1.0;
        let ip = md.lp_integral(&e);
        let mu = md.modes[i].eigenvalue;
        let t_star = (mu / ip).powf(1.0 / (md.p_exponent - 2.0));
        for &t in &[0.5 * t_star, t_star, 1.7 * t_star] {
            let c: Vec<f64> = e.iter().map(|x| x * t).collect();
            let (v, _) = md.energy(&c);
            let want = 0.5 * mu * t * t - t.powf(md.p_exponent) * ip / md.p_exponent;
            assert!((v - want).abs() < 1e-12 * want.abs().max(1.0));
        }
        let phi = |t: f64| {
            let c: Vec<f64> = e.iter().map(|x| x * t).collect();
            md.energy(&c).0
        };
        assert!(phi(t_star) > phi(0.99 * t_star) && phi(t_star) > phi(1.01 * t_star));
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let md = model(5.0, 6, 6);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let c: Vec<f64> = (0..md.dim()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let (_, g) = md.energy(&c);
        for _ in 0..5 {
            let d: Vec<f64> = (0..md.dim()).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let h = 1e-5;
            let plus: Vec<f64> = c.iter().zip(&d).map(|(x, y)| x + h * y).collect();
            let minus: Vec<f64> = c.iter().zip(&d).map(|(x, y)| x - h * y).collect();
            let fd = (md.energy(&plus).0 - md.energy(&minus).0) / (2.0 * h);
            let an: f64 = g.iter().zip(&d).map(|(x, y)| x * y).sum();
            assert!(((fd - an) / an).abs() < 1e-5, "fd {fd} vs {an}");
        }
    }

    #[test]
    fn rejects_bad_input() {
        let s = classify(1, 2).unwrap();
        assert!(build_galerkin(&s, 0.0, 4.5, 4, 4).unwrap_err().is_domain());
        let md = model(0.0, 2, 2);
        assert!(evaluate_energy(&md, &[1.0]).unwrap_err().is_domain());
        assert!(build_galerkin_with_grid(&s, 0.0, 3.0, 8, 4, Some((64, 10))).is_err());
    }
}
