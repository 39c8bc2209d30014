//! Zeros of Bessel functions at large order and rank, the spectrum of the
//! mixed-type operator they generate on the unit disk, and numerical ground
//! states of the associated superlinear problem.
//!
//! Start from the runnable programs in `examples/` or the `rotwave` binary.

pub mod asymptotics;
pub mod cli;
pub mod error;
pub mod groundstate;
pub mod output;
pub mod specfun;
pub mod spectrum;
pub mod verify;

pub use error::{Error, Result};
