//! Boundary-integral shape derivatives of symmetric functions of an
//! eigenvalue multiplet on the unit disk, with a dilation oracle and the
//! criticality test.

use crate::ball_spectrum::{ball_eigenvalue, mode_profile, ProblemParams};
use crate::error::{invalid, Error, Result};
use crate::harmonics::{circle_harmonic_derivatives, multiplicity, sphere_sample};
use crate::numerics::integrate;
use crate::radial_solver::{solve_neumann_eigenvalues, DispersionRoot, LayeredDensity};
use serde::Serialize;
use std::cell::RefCell;
use std::f64::consts::PI;
use std::sync::Arc;

const NODES: usize = 2048;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Problem {
    Steklov,
    Neumann,
}

/// Normal speed g(θ) = μ·ν on the unit circle.
#[derive(Clone)]
pub struct NormalSpeed {
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl std::fmt::Debug for NormalSpeed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("NormalSpeed")
    }
}

impl NormalSpeed {
    pub fn new(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        NormalSpeed { f: Arc::new(f) }
    }

    /// Uniform dilation speed.
    pub fn constant(c: f64) -> Self {
        Self::new(move |_| c)
    }

    pub fn cosine(k: usize) -> Self {
        Self::new(move |t| (k as f64 * t).cos())
    }

    pub fn eval(&self, theta: f64) -> f64 {
        (self.f)(theta)
    }
}

/// A full multiplet of order l on the unit disk and the symmetric function
/// Λ_{F,s} of its eigenvalues.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MultipletSpec {
    pub problem: Problem,
    pub l: usize,
    pub indices: Vec<usize>,
    pub s: usize,
    pub tau: f64,
    pub lambda: f64,
    /// (R, R', R'') at r = 1 of the normalized radial profile.
    pub boundary: [f64; 3],
}

/// First positive order-l Neumann root for unit density on the unit disk.
pub fn neumann_disk_root(l: usize, tau: f64) -> Result<DispersionRoot> {
    let density = LayeredDensity::uniform(2, 1.0)?;
    let mut hi = 50.0 * (1.0 + tau) * ((l + 1) * (l + 1)) as f64;
    for _ in 0..8 {
        let res = solve_neumann_eigenvalues(l, 2, tau, &density, (0.0, hi), 4)?;
        if let Some(root) = res.roots.into_iter().find(|r| r.lambda > 1e-9) {
            return Ok(root);
        }
        hi *= 4.0;
    }
    Err(Error::NoConvergence(format!("no positive Neumann root of order {l}")))
}

fn check_order(l: usize, s: usize) -> Result<usize> {
    let size = multiplicity(l, 2);
    if !(1..=size).contains(&s) {
        return invalid(format!("s = {s} outside [1, {size}]"));
    }
    Ok(size)
}

impl MultipletSpec {
    /// Steklov modes R_l Y with R(1) = 1, orthonormal in L²(∂B).
    pub fn steklov(l: usize, tau: f64, s: usize) -> Result<Self> {
        let size = check_order(l, s)?;
        let params = ProblemParams::new(2, tau)?;
        let lambda = ball_eigenvalue(params, l)?;
        let d = mode_profile(params, l)?.derivatives(1.0)?;
        Ok(MultipletSpec {
            problem: Problem::Steklov,
            l,
            indices: (0..size).collect(),
            s,
            tau,
            lambda,
            boundary: [d[0], d[1], d[2]],
        })
    }

    /// Neumann modes for unit density, orthonormal in L²(B).
    pub fn neumann(l: usize, tau: f64, s: usize) -> Result<Self> {
        let size = check_order(l, s)?;
        if !(tau >= 0.0 && tau.is_finite()) {
            return invalid(format!("tau must be non-negative, got {tau}"));
        }
        let root = neumann_disk_root(l, tau)?;
        let mode = &root.mode;
        let failure = RefCell::new(None);
        let norm2 = integrate(
            |r| match mode.derivatives(r) {
                Ok(v) => v[0] * v[0] * r,
                Err(e) => {
                    failure.borrow_mut().get_or_insert(e);
                    f64::NAN
                }
            },
            0.0,
            1.0,
            &mode.breakpoints(),
            1e-13,
            0.0,
        );
        if let Some(e) = failure.into_inner() {
            return Err(e);
        }
        let norm2 = norm2?.value;
        if !(norm2 > 0.0) {
            return Err(Error::DegenerateMode(format!("order {l} Neumann mode has zero norm")));
        }
        let c = 1.0 / norm2.sqrt();
        let d = mode.derivatives(1.0)?;
        Ok(MultipletSpec {
            problem: Problem::Neumann,
            l,
            indices: (0..size).collect(),
            s,
            tau,
            lambda: root.lambda,
            boundary: [c * d[0], c * d[1], c * d[2]],
        })
    }

    pub fn size(&self) -> usize {
        self.indices.len()
    }

    /// Λ_{F,s} = C(|F|, s) λ^s for a multiplet of equal eigenvalues.
    pub fn symmetric_value(&self, lambda: f64) -> f64 {
        binom(self.size(), self.s) * lambda.powi(self.s as i32)
    }
}

fn binom(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Multiplet sums on the unit circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FieldValues {
    pub v2: f64,
    /// Σ ∂(v²)/∂ν.
    pub dnu_v2: f64,
    pub grad2: f64,
    /// Σ |D²v|² (Frobenius).
    pub hess2: f64,
}

pub fn surface_fields(m: &MultipletSpec, theta: f64) -> Result<FieldValues> {
    let [r0, r1, r2] = m.boundary;
    let mut out = FieldValues { v2: 0.0, dnu_v2: 0.0, grad2: 0.0, hess2: 0.0 };
    for &idx in &m.indices {
        let [y, y1, y2] = circle_harmonic_derivatives(m.l, idx, theta)?;
        out.v2 += r0 * r0 * y * y;
        out.dnu_v2 += 2.0 * r0 * r1 * y * y;
        out.grad2 += r1 * r1 * y * y + r0 * r0 * y1 * y1;
        // polar frame at r = 1
        let h_rr = r2 * y;
        let h_rt = (r1 - r0) * y1;
        let h_tt = r0 * y2 + r1 * y;
        out.hess2 += h_rr * h_rr + 2.0 * h_rt * h_rt + h_tt * h_tt;
    }
    Ok(out)
}

/// The summed Hadamard integrand at θ, together with the sum of the
/// magnitudes of its terms.
fn integrand(m: &MultipletSpec, theta: f64, curvature: f64) -> Result<(f64, f64)> {
    let f = surface_fields(m, theta)?;
    let terms = match m.problem {
        Problem::Steklov => [m.lambda * curvature * f.v2, m.lambda * f.dnu_v2, -m.tau * f.grad2, -f.hess2],
        Problem::Neumann => [m.lambda * f.v2, 0.0, -m.tau * f.grad2, -f.hess2],
    };
    Ok((terms.iter().sum(), terms.iter().map(|t| t.abs()).sum()))
}

fn trapezoid(m: &MultipletSpec, speed: &NormalSpeed, curvature: f64, nodes: usize) -> Result<(f64, f64)> {
    let h = 2.0 * PI / nodes as f64;
    let (mut total, mut size) = (0.0, 0.0);
    for j in 0..nodes {
        let t = h * j as f64;
        let (v, a) = integrand(m, t, curvature)?;
        let g = speed.eval(t);
        total += v * g;
        size += a * g.abs();
    }
    Ok((h * total, h * size))
}

/// dΛ_{F,s} along the normal speed, with `curvature` the value of K on the
/// unit circle (1 for the sum of principal curvatures).
pub fn hadamard_derivative(m: &MultipletSpec, speed: &NormalSpeed, curvature: f64) -> Result<f64> {
    let (fine, size) = trapezoid(m, speed, curvature, NODES)?;
    let (coarse, _) = trapezoid(m, speed, curvature, NODES / 2)?;
    let tol = 1e-10 * fine.abs().max(size);
    let err = (fine - coarse).abs();
    if !(err <= tol) {
        return Err(Error::RefineNeeded { tol, estimate: err });
    }
    let s = m.s;
    let factor = m.lambda.powi(s as i32 - 1) * binom(m.size() - 1, s - 1);
    Ok(-factor * fine)
}

/// Central difference in α of Λ_{F,s} on the disk of radius α, using
/// λ(τ, αB) = α⁻³λ(α²τ, B) for Steklov and α⁻⁴λ(α²τ, B) for Neumann.
pub fn scaling_oracle(m: &MultipletSpec, h: f64) -> Result<f64> {
    if !(1e-6..=1e-2).contains(&h) {
        return invalid(format!("step {h} outside [1e-6, 1e-2]"));
    }
    let lam = |alpha: f64| -> Result<f64> {
        let t = alpha * alpha * m.tau;
        Ok(match m.problem {
            Problem::Steklov => ball_eigenvalue(ProblemParams::new(2, t)?, m.l)? / alpha.powi(3),
            Problem::Neumann => neumann_disk_root(m.l, t)?.lambda / alpha.powi(4),
        })
    };
    let up = m.symmetric_value(lam(1.0 + h)?);
    let down = m.symmetric_value(lam(1.0 - h)?);
    Ok((up - down) / (2.0 * h))
}

/// Largest deviation of the summed integrand from its mean over 1000
/// boundary points, relative to the mean size of its terms.
pub fn criticality_check(m: &MultipletSpec) -> Result<f64> {
    let pts = sphere_sample(2, 1000, 7)?;
    let mut vals = Vec::with_capacity(pts.len());
    let mut size = 0.0;
    for p in &pts {
        let (v, a) = integrand(m, p[1].atan2(p[0]), 1.0)?;
        vals.push(v);
        size += a;
    }
    let n = vals.len() as f64;
    let mean = vals.iter().sum::<f64>() / n;
    let size = size / n;
    if size == 0.0 {
        return Ok(0.0);
    }
    Ok(vals.iter().map(|v| (v - mean).abs()).fold(0.0, f64::max) / size)
}
