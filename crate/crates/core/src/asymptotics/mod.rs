//! The maps ι, f, f⁻¹ and g, the expansion constants c₁ and ζ, and numerical
//! checks of the large-rank expansion of `j_{xk,k}`.

pub mod expansion;
pub mod gfun;
pub mod inverse;
pub mod zeta;

pub use expansion::{derivative_limit_check, expansion_residuals, richardson, DerivativeCheck, ExpansionProfile};
pub use gfun::g_eval;
pub use inverse::{f_inverse, f_inverse_derivative, f_of, iota};
pub use zeta::{c1, find_x0, theta0, zeta, zeta_via_theta0};
