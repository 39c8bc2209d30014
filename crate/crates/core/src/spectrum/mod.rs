//! Eigenvalues `j²_{ℓ,k} − α²ℓ²` of `−Δ + α²∂²_θ` on the unit disk, with α
//! always induced from a rational `σ = p/q` through `α = f(σ)`.

pub mod classify;
pub mod enumerate;
pub mod sigma_star;

pub use classify::{classify, Condition, SigmaRational};
pub use enumerate::{enumerate, gap_scan, GapScan, MultiplicityGroup, Spectrum, SpectrumEntry};
pub use sigma_star::{accumulation_point, order_shift_correction, sigma_star_eigenvalues, sigma_star_indices, SigmaStarPoint};
