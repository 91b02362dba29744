//! Small numerical kernels shared by the solvers.

mod gauss;
mod optimize;
mod roots;

pub use gauss::{integrate, GaussLegendre, QuadResult};
pub use optimize::nelder_mead;
pub use roots::brent;
