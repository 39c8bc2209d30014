//! Comparison of the ground-state energy `c_{α,m}` with the radial energy
//! `β_m` along a sequence of `m`.

use serde::Serialize;

use super::galerkin::build_galerkin;
use super::nehari::{nehari_minimax_with, RANDOM_STARTS};
use super::radial::radial_solution;
use crate::asymptotics::expansion::fit_slope;
use crate::error::{Error, Result};
use crate::spectrum::SigmaRational;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub m: f64,
    pub c: f64,
    pub beta: f64,
    /// `c < β`.
    pub nonradial: bool,
    /// Whether the computed minimiser itself is radial.
    pub minimizer_radial: bool,
    pub nonradial_fraction: f64,
    pub residual: f64,
    pub nehari_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymmetryScan {
    pub p_exponent: f64,
    pub l_max: u64,
    pub k_max: u64,
    pub rows: Vec<ScanRow>,
    /// Smallest sampled m with `c < β`.
    pub m0: Option<f64>,
    /// Log–log slopes of c and β over the sampled m within one decade of the largest.
    pub c_slope: Option<f64>,
    pub beta_slope: Option<f64>,
}

/// Scan with default truncation-independent settings: seed 0, default restarts.
pub fn symmetry_break_scan(s: &SigmaRational, p_exponent: f64, m_values: &[f64], l_max: u64, k_max: u64) -> Result<SymmetryScan> {
    symmetry_break_scan_with(s, p_exponent, m_values, l_max, k_max, 0, RANDOM_STARTS)
}

pub fn symmetry_break_scan_with(
    s: &SigmaRational,
    p_exponent: f64,
    m_values: &[f64],
    l_max: u64,
    k_max: u64,
    seed: u64,
    random_starts: usize,
) -> Result<SymmetryScan> {
    if m_values.is_empty() || m_values.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::domain("m values must be nonempty and strictly increasing"));
    }
    let mut rows = Vec::with_capacity(m_values.len());
    for &m in m_values {
        let model = build_galerkin(s, m, p_exponent, l_max, k_max).map_err(|e| e.context(format!("m = {m}")))?;
        let rep = nehari_minimax_with(&model, seed, random_starts, 2000).map_err(|e| e.context(format!("m = {m}")))?;
        let rad = radial_solution(m, p_exponent).map_err(|e| e.context(format!("m = {m}")))?;
        rows.push(ScanRow {
            m,
            c: rep.energy,
            beta: rad.beta,
            nonradial: rep.energy < rad.beta,
            minimizer_radial: rep.is_radial,
            nonradial_fraction: rep.nonradial_fraction,
            residual: rep.residual,
            nehari_residual: rep.nehari_residual,
        });
    }
    let m0 = rows.iter().find(|r| r.nonradial).map(|r| r.m);
    let top = m_values[m_values.len() - 1];
    let decade: Vec<&ScanRow> = rows.iter().filter(|r| r.m >= top / 10.0 && r.m > 0.0).collect();
    let (c_slope, beta_slope) = if decade.len() >= 2 {
        let lx: Vec<f64> = decade.iter().map(|r| r.m.ln()).collect();
        let lc: Vec<f64> = decade.iter().map(|r| r.c.ln()).collect();
        let lb: Vec<f64> = decade.iter().map(|r| r.beta.ln()).collect();
        (Some(fit_slope(&lx, &lc)), Some(fit_slope(&lx, &lb)))
    } else {
        (None, None)
    };
    Ok(SymmetryScan { p_exponent, l_max, k_max, rows, m0, c_slope, beta_slope })
}
