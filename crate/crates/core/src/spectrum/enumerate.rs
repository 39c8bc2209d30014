//! Enumeration of `Σ_α` over a rectangle of indices and the empirical gap
//! constant `min |λ|/j`.

use rayon::prelude::*;
use serde::Serialize;

use super::classify::SigmaRational;
use crate::error::{Error, Result};
use crate::specfun::bessel_j_zero;
use crate::specfun::zeros::{cached_zeros, zero_count_below};

/// `|λ| < ZERO_EIGENVALUE_TOL · j` is reported as a zero eigenvalue.
pub const ZERO_EIGENVALUE_TOL: f64 = 1.0e-6;
/// Relative width used to group numerically equal eigenvalues.
pub const MULTIPLICITY_TOL: f64 = 1.0e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectrumEntry {
    pub l: u64,
    pub k: u64,
    pub zero: f64,
    pub eigenvalue: f64,
    pub gap_ratio: f64,
    pub in_sigma_star: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MultiplicityGroup {
    pub eigenvalue: f64,
    pub members: Vec<(u64, u64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    pub sigma: SigmaRational,
    pub l_max: u64,
    pub k_max: u64,
    /// Sorted by eigenvalue, ties broken by `(ℓ, k)`.
    pub entries: Vec<SpectrumEntry>,
    /// Groups of two or more entries with numerically equal eigenvalues.
    pub multiplicities: Vec<MultiplicityGroup>,
    /// Entries with `|λ| < 10⁻⁶ j`.
    pub near_zero: Vec<(u64, u64)>,
}

/// `j² − α²ℓ²`, factored so that small eigenvalues keep their digits.
pub fn eigenvalue(alpha: f64, l: u64, zero: f64) -> f64 {
    let al = alpha * l as f64;
    (zero - al) * (zero + al)
}

fn entry(s: &SigmaRational, l: u64, k: u64, zero: f64) -> SpectrumEntry {
    let eigenvalue = eigenvalue(s.alpha, l, zero);
    SpectrumEntry {
        l,
        k,
        zero,
        eigenvalue,
        gap_ratio: eigenvalue.abs() / zero,
        in_sigma_star: s.on_sigma_star(l, k),
    }
}

fn is_near_zero(e: &SpectrumEntry) -> bool {
    e.eigenvalue.abs() < ZERO_EIGENVALUE_TOL * e.zero
}

fn check_bounds(l_max: u64, k_max: u64) -> Result<()> {
    if l_max == 0 || k_max == 0 {
        return Err(Error::domain(format!("L and K must be >= 1, got L={l_max}, K={k_max}")));
    }
    Ok(())
}

/// All entries with `0 ≤ ℓ ≤ L`, `1 ≤ k ≤ K`.
pub fn enumerate(s: &SigmaRational, l_max: u64, k_max: u64) -> Result<Spectrum> {
    check_bounds(l_max, k_max)?;
    let rows: Vec<Vec<SpectrumEntry>> = (0..=l_max)
        .into_par_iter()
        .map(|l| {
            let zs = cached_zeros(l as f64, k_max).map_err(|e| e.context(format!("ℓ={l}")))?;
            Ok(zs.iter().take(k_max as usize).enumerate().map(|(i, &z)| entry(s, l, i as u64 + 1, z)).collect())
        })
        .collect::<Result<_>>()?;
    let mut entries: Vec<SpectrumEntry> = rows.into_iter().flatten().collect();
    entries.sort_by(|a, b| a.eigenvalue.total_cmp(&b.eigenvalue).then((a.l, a.k).cmp(&(b.l, b.k))));

    let mut multiplicities = Vec::new();
    let mut i = 0;
    while i < entries.len() {
        let mut j = i + 1;
        while j < entries.len() {
            let (a, b) = (entries[j - 1].eigenvalue, entries[j].eigenvalue);
            if (b - a).abs() > MULTIPLICITY_TOL * a.abs().max(b.abs()).max(1.0) {
                break;
            }
            j += 1;
        }
        if j - i > 1 {
            multiplicities.push(MultiplicityGroup {
                eigenvalue: entries[i].eigenvalue,
                members: entries[i..j].iter().map(|e| (e.l, e.k)).collect(),
            });
        }
        i = j;
    }
    let near_zero = entries.iter().filter(|e| is_near_zero(e)).map(|e| (e.l, e.k)).collect();
    Ok(Spectrum { sigma: *s, l_max, k_max, entries, multiplicities, near_zero })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapScan {
    pub c_min: f64,
    pub argmin: (u64, u64),
    pub zero: f64,
    pub eigenvalue: f64,
    pub exclude_sigma_star: bool,
    /// Entries skipped as zero eigenvalues.
    pub near_zero: Vec<(u64, u64)>,
    /// Number of zeros actually computed.
    pub zeros_computed: usize,
}

struct RowMin {
    best: Option<SpectrumEntry>,
    near_zero: Vec<(u64, u64)>,
    computed: usize,
}

/// Minimum of `|λ|/j` over row `ℓ`. For fixed ℓ the ratio `|j − α²ℓ²/j|`
/// is monotone on either side of `j = αℓ`, so only the admissible entries
/// nearest to that crossing need to be computed.
fn row_minimum(s: &SigmaRational, l: u64, k_max: u64, exclude: bool) -> Result<RowMin> {
    let mut row = RowMin { best: None, near_zero: Vec::new(), computed: 0 };
    let nu = l as f64;
    let below = zero_count_below(nu, s.alpha * nu)?;
    let consider = |k: u64, row: &mut RowMin| -> Result<bool> {
        let z = bessel_j_zero(nu, k).map_err(|e| e.context(format!("ℓ={l}")))?.value;
        row.computed += 1;
        let e = entry(s, l, k, z);
        if exclude && e.in_sigma_star {
            return Ok(false);
        }
        if is_near_zero(&e) {
            row.near_zero.push((l, k));
            return Ok(false);
        }
        if row.best.map_or(true, |b| e.gap_ratio < b.gap_ratio) {
            row.best = Some(e);
        }
        Ok(true)
    };
    // Left of the crossing, walking down.
    let mut k = below.min(k_max);
    while k >= 1 {
        if consider(k, &mut row)? {
            break;
        }
        k -= 1;
    }
    // Right of the crossing, walking up.
    let mut k = below + 1;
    while k <= k_max {
        if consider(k, &mut row)? {
            break;
        }
        k += 1;
    }
    Ok(row)
}

/// `min |λ|/j` over nonzero eigenvalues with `ℓ ≤ L`, `k ≤ K`, optionally
/// skipping the family `ℓ = σk − σ/4`.
pub fn gap_scan(s: &SigmaRational, l_max: u64, k_max: u64, exclude_sigma_star: bool) -> Result<GapScan> {
    check_bounds(l_max, k_max)?;
    let rows: Vec<RowMin> = (0..=l_max)
        .into_par_iter()
        .map(|l| row_minimum(s, l, k_max, exclude_sigma_star))
        .collect::<Result<_>>()?;
    let mut best: Option<SpectrumEntry> = None;
    let mut near_zero = Vec::new();
    let mut zeros_computed = 0;
    // Rows arrive in ℓ order, so a strict comparison keeps the smallest index on ties.
    for r in rows {
        zeros_computed += r.computed;
        near_zero.extend(r.near_zero);
        if let Some(e) = r.best {
            if best.map_or(true, |b| e.gap_ratio < b.gap_ratio) {
                best = Some(e);
            }
        }
    }
    let b = best.ok_or_else(|| Error::Configuration("no admissible entries in the scan window".into()))?;
    Ok(GapScan {
        c_min: b.gap_ratio,
        argmin: (b.l, b.k),
        zero: b.zero,
        eigenvalue: b.eigenvalue,
        exclude_sigma_star,
        near_zero,
        zeros_computed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::classify;

    const J01: f64 = 2.404_825_557_695_773;

    #[test]
    fn first_entry_and_sign_structure() {
        let s = classify(1, 2).unwrap();
        let sp = enumerate(&s, 40, 6).unwrap();
        let e01 = sp.entries.iter().find(|e| e.l == 0 && e.k == 1).unwrap();
        assert!((e01.eigenvalue - J01 * J01).abs() < 1e-12);
        assert!(sp.entries.iter().filter(|e| e.l == 0).all(|e| e.eigenvalue > 0.0));
        let row: Vec<f64> = {
            let mut r: Vec<_> = sp.entries.iter().filter(|e| e.k == 1).collect();
            r.sort_by_key(|e| e.l);
            r.iter().map(|e| e.eigenvalue).collect()
        };
        assert!(*row.last().unwrap() < 0.0);
        assert!(row[20..].windows(2).all(|w| w[1] < w[0]));
        assert!(sp.entries.windows(2).all(|w| w[0].eigenvalue <= w[1].eigenvalue));
        assert_eq!(sp.entries.len(), 41 * 6);
    }

    #[test]
    fn eigenvalue_recomputes_exactly() {
        let s = classify(8, 3).unwrap();
        let sp = enumerate(&s, 30, 10).unwrap();
        for e in &sp.entries {
            assert_eq!(eigenvalue(s.alpha, e.l, e.zero), e.eigenvalue);
            let naive = e.zero * e.zero - (s.alpha * e.l as f64).powi(2);
            assert!((naive - e.eigenvalue).abs() <= 4.0 * f64::EPSILON * e.zero * e.zero);
        }
        assert!(sp.entries.iter().any(|e| e.in_sigma_star));
    }

    #[test]
    fn scan_matches_brute_force() {
        for &(p, q) in &[(1u64, 2u64), (4, 1), (8, 3)] {
            let s = classify(p, q).unwrap();
            for &exclude in &[false, true] {
                let g = gap_scan(&s, 60, 20, exclude).unwrap();
                let sp = enumerate(&s, 60, 20).unwrap();
                let brute = sp
                    .entries
                    .iter()
                    .filter(|e| !(exclude && e.in_sigma_star) && !is_near_zero(e))
                    .min_by(|a, b| a.gap_ratio.total_cmp(&b.gap_ratio).then((a.l, a.k).cmp(&(b.l, b.k))))
                    .unwrap();
                // continuation and direct zeros agree to ~1e-14, not bit for bit
                assert!((g.c_min - brute.gap_ratio).abs() < 1e-10, "{p}/{q} exclude={exclude}");
                assert_eq!(g.argmin, (brute.l, brute.k));
            }
        }
    }

    #[test]
    fn rejects_empty_window() {
        let s = classify(1, 2).unwrap();
        assert!(enumerate(&s, 0, 5).unwrap_err().is_domain());
        assert!(gap_scan(&s, 5, 0, false).unwrap_err().is_domain());
    }
}
