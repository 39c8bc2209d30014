//! Ground states of `−Δu + α²∂²_θu + mu = |u|^{p−2}u` on the unit disk with
//! Dirichlet data: a truncated Galerkin minimax for the ground-state energy
//! and a radial shooting solution for comparison.

pub mod galerkin;
pub mod nehari;
mod optim;
pub mod radial;
pub mod scan;

pub use nehari::{nehari_minimax, nehari_minimax_with, SolutionReport, StartSummary};
pub use radial::{radial_solution, RadialSolution};
pub use galerkin::{build_galerkin, check_resolution, evaluate_energy, GalerkinModel, Mode, Parity, Partition};
pub use scan::{symmetry_break_scan, symmetry_break_scan_with, ScanRow, SymmetryScan};
