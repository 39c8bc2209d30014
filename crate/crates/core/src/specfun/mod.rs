//! Special functions, their zeros, and the quadrature engines.

pub mod bessel_j;
pub mod bessel_k;
pub mod moments;
pub mod quadrature;
pub mod roots;
pub mod watson;
pub mod zeros;

pub use bessel_j::bessel_j;
pub use bessel_k::{bessel_k, bessel_k_scaled};
pub use moments::{k1_laplace_moment, k1_laplace_moment_closed_form};
pub use quadrature::{gauss_legendre, integrate, integrate_decaying, QuadratureResult};
pub use zeros::{bessel_j_zero, bessel_j_zero_grid, BesselZeroRecord, GuessSource};
pub use watson::dzero_dnu;
