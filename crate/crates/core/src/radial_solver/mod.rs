//! Interface-matching solver for the radial Neumann problem with layered
//! density, the direct Steklov determinant on the ball, and the
//! mass-concentration sweep.

mod basis;
mod density;
mod dispersion;

pub use basis::{layer_basis, BasisMember, LayerBasis};
pub use density::{make_rho_eps, LayeredDensity};
pub use dispersion::{
    dispersion_determinant, neumann_dispersion_matrix, solve_neumann_eigenvalues,
    solve_neumann_eigenvalues_with, steklov_determinant_root, DispersionResult, DispersionRoot,
    RadialMode, SolveOptions,
};

use crate::ball_spectrum::{ball_eigenvalue, ProblemParams};
use crate::error::{invalid, Error, Result};
use crate::harmonics::sphere_area;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConcentrationRow {
    pub eps: f64,
    pub lambda: f64,
    pub target: f64,
    pub rel_error: f64,
}

/// The Steklov eigenvalue for surface density M/|∂B|, the limit of the
/// Neumann eigenvalues under mass concentration.
pub fn concentration_target(l: usize, dim: usize, tau: f64, mass: f64) -> Result<f64> {
    Ok(ball_eigenvalue(ProblemParams::new(dim, tau)?, l)? * sphere_area(dim) / mass)
}

/// Tracks the order-l Neumann eigenvalue nearest the concentration target
/// along a decreasing ε sweep.
pub fn concentration_experiment(
    l: usize,
    dim: usize,
    tau: f64,
    mass: f64,
    eps_list: &[f64],
) -> Result<Vec<ConcentrationRow>> {
    if eps_list.is_empty() {
        return invalid("empty eps list");
    }
    if eps_list.windows(2).any(|w| !(w[1] < w[0])) {
        return invalid("eps values must be strictly decreasing");
    }
    let target = concentration_target(l, dim, tau, mass)?;
    if !(target > 0.0) {
        return invalid(format!("order {l} has a zero limit eigenvalue; nothing to track"));
    }
    let step = target / 50.0;
    let mut rows: Vec<ConcentrationRow> = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for &eps in eps_list {
        let density = make_rho_eps(eps, mass, dim)?;
        let anchor = prev.map(|p| p.1).unwrap_or(target);
        let window = (step, 2.0 * anchor.max(target));
        let opts = SolveOptions { grid_step: Some(step), ..Default::default() };
        let found = solve_neumann_eigenvalues_with(l, dim, tau, &density, window, usize::MAX, opts)?;
        let best = found
            .roots
            .iter()
            .map(|r| r.lambda)
            .min_by(|a, b| (a - anchor).abs().total_cmp(&(b - anchor).abs()));
        let lambda = match (best, prev) {
            (Some(x), Some((pe, pl))) if (x - pl).abs() > 0.5 * pl => {
                return Err(Error::BranchLost { from: pe, to: eps })
            }
            (Some(x), _) => x,
            (None, Some((pe, _))) => return Err(Error::BranchLost { from: pe, to: eps }),
            (None, None) => {
                return Err(Error::NoConvergence(format!("no eigenvalue near {target} at eps {eps}")))
            }
        };
        rows.push(ConcentrationRow { eps, lambda, target, rel_error: (lambda - target).abs() / target });
        prev = Some((eps, lambda));
    }
    Ok(rows)
}
