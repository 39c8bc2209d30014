//! The index family `ℓ = σk − σ/4` and the limit of its eigenvalues.

use rayon::prelude::*;
use serde::Serialize;

use super::classify::{classify, Condition, SigmaRational};
use crate::asymptotics::inverse::f_derivative;
use crate::asymptotics::{g_eval, zeta};
use crate::error::{Error, Result};
use crate::specfun::bessel_j_zero;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SigmaStarPoint {
    pub k: u64,
    pub l: u64,
    pub zero: f64,
    pub eigenvalue: f64,
}

fn require_c3(s: &SigmaRational) -> Result<()> {
    if s.condition != Condition::C3 {
        return Err(Error::Classification(format!(
            "{}/{} is {}; the family ℓ = σk − σ/4 has no integer members",
            s.p, s.q, s.condition
        )));
    }
    Ok(())
}

/// First `count` pairs `(k, ℓ)` with `4k ≡ 1 (mod q)` and `ℓ = p(4k−1)/(4q)`.
pub fn sigma_star_indices(p: u64, q: u64, count: usize) -> Result<Vec<(u64, u64)>> {
    let s = classify(p, q)?;
    require_c3(&s)?;
    let (p, q) = (s.p, s.q);
    // q is odd, so 4 is invertible modulo q and k runs through one residue class.
    let k0 = (1..=q).find(|k| (4 * k) % q == 1 % q).expect("4 is invertible mod odd q");
    let out = (0..count as u64)
        .map(|i| {
            let k = k0 + i * q;
            let l = (p / 4) * ((4 * k - 1) / q);
            (k, l)
        })
        .collect();
    Ok(out)
}

/// `λ = j²_{ℓ,k} − α²ℓ²` along the first `count` members of the family,
/// written as `(j − αℓ)(j + αℓ)` to keep the O(1) value accurate.
pub fn sigma_star_eigenvalues(p: u64, q: u64, count: usize) -> Result<Vec<SigmaStarPoint>> {
    let s = classify(p, q)?;
    let idx = sigma_star_indices(p, q, count)?;
    idx.par_iter()
        .map(|&(k, l)| {
            let zero = bessel_j_zero(l as f64, k)?.value;
            let al = s.alpha * l as f64;
            Ok(SigmaStarPoint { k, l, zero, eigenvalue: (zero - al) * (zero + al) })
        })
        .collect()
}

/// `2ασζ_σ`, the limit of the family's eigenvalues.
pub fn accumulation_point(p: u64, q: u64) -> Result<f64> {
    let s = classify(p, q)?;
    require_c3(&s)?;
    Ok(2.0 * s.alpha * s.sigma * zeta(s.sigma)?)
}

/// Second-order contribution of the order shift `δ = σ/4` to the family's
/// limit: `2ασ · (−g′(α) f′(σ) σ²/32)`.
///
/// Along `ℓ = σ(k − ¼)`, `j − αℓ = A/k + O(k⁻²)` with
/// `A = ζ_σ − ∫₀^{σ/4} B(t) dt` and `B(t) = −g′(α) f′(σ)(t − σ/4)` the 1/k
/// coefficient of `∂j/∂ν` at `ν = σk − t`. The integral does not vanish, so
/// the eigenvalues settle at `2ασ(ζ_σ + B₀)` where `B₀ = −g′(α)f′(σ)σ²/32 > 0`.
pub fn order_shift_correction(p: u64, q: u64) -> Result<f64> {
    let s = classify(p, q)?;
    require_c3(&s)?;
    let b0 = -g_eval(s.alpha, 1)? * f_derivative(s.sigma)? * s.sigma * s.sigma / 32.0;
    Ok(2.0 * s.alpha * s.sigma * b0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_families() {
        assert_eq!(sigma_star_indices(8, 3, 3).unwrap(), vec![(1, 2), (4, 10), (7, 18)]);
        assert_eq!(sigma_star_indices(4, 1, 3).unwrap(), vec![(1, 3), (2, 7), (3, 11)]);
        assert!(matches!(sigma_star_indices(1, 3, 3), Err(Error::Classification(_))));
        assert!(matches!(accumulation_point(1, 2), Err(Error::Classification(_))));
    }

    #[test]
    fn members_lie_on_the_family() {
        for &(p, q) in &[(8u64, 3u64), (4, 1), (12, 7), (20, 9)] {
            let s = classify(p, q).unwrap();
            for (k, l) in sigma_star_indices(p, q, 50).unwrap() {
                assert_eq!((4 * k - 1) % s.q, 0);
                assert!(l > 0 && s.on_sigma_star(l, k));
            }
        }
    }

    #[test]
    fn no_members_without_accumulation() {
        for &(p, q) in &[(1u64, 2u64), (3, 2), (1, 3), (5, 4), (2, 1)] {
            let s = classify(p, q).unwrap();
            assert!((1..=100_000u64).all(|k| (s.p * (4 * k - 1)) % (4 * s.q) != 0));
        }
    }

    #[test]
    fn family_settles_at_shift_corrected_limit() {
        for &(p, q) in &[(8u64, 3u64), (4, 1)] {
            let lim = accumulation_point(p, q).unwrap() + order_shift_correction(p, q).unwrap();
            let pts = sigma_star_eigenvalues(p, q, 20).unwrap();
            let dev: Vec<f64> = pts.iter().map(|x| (x.eigenvalue - lim).abs()).collect();
            assert!(dev[4..].windows(2).all(|w| w[1] < w[0]), "{p}/{q}: {dev:?}");
            assert!(dev[19] / lim < 1e-3, "{p}/{q}: {}", dev[19] / lim);
        }
    }

    #[test]
    fn limit_sign_follows_zeta() {
        let lim = accumulation_point(8, 3).unwrap();
        assert_eq!(lim.signum(), zeta(8.0 / 3.0).unwrap().signum());
    }
}
