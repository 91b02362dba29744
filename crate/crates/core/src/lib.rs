//! Numerical laboratory for the biharmonic Steklov problem
//! Δ²u − τΔu = 0 with ∂²u/∂ν² = 0 and a third-order boundary operator
//! equal to λu, and for its interior-mass Neumann counterpart.

pub mod error;
pub mod specfun;

pub use error::{Error, Result};
pub mod harmonics;
pub mod numerics;
pub mod ball_spectrum;
pub mod radial_solver;
pub mod rayleigh;
pub mod geometry_iso;
pub mod hadamard;
pub mod selftest;
