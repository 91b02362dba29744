//! Rayleigh quotients of separated trial functions R(r)Y_l on balls and
//! annuli, via the reduced radial numerator and a planar Cartesian check.

use crate::ball_spectrum::{power_derivatives, ModeProfile};
use crate::error::{invalid, Error, Result};
use crate::numerics::{integrate, GaussLegendre, QuadResult};
use crate::radial_solver::RadialMode;
use crate::specfun::{ultraspherical_derivatives, BesselKind};
use serde::Serialize;
use std::cell::RefCell;
use std::f64::consts::PI;
use std::sync::Arc;

const REL_TOL: f64 = 1e-11;

pub type ProfileFn = Arc<dyn Fn(f64) -> Result<[f64; 3]> + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Smoothness {
    Smooth,
    /// C² away from the declared breakpoints.
    Piecewise,
}

/// (R, R', R'') on [a, b].
#[derive(Clone)]
pub struct RadialProfile {
    f: ProfileFn,
    domain: (f64, f64),
    breakpoints: Vec<f64>,
    smoothness: Smoothness,
}

impl std::fmt::Debug for RadialProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RadialProfile")
            .field("domain", &self.domain)
            .field("breakpoints", &self.breakpoints)
            .field("smoothness", &self.smoothness)
            .finish_non_exhaustive()
    }
}

impl RadialProfile {
    pub fn new(
        domain: (f64, f64),
        breakpoints: Vec<f64>,
        smoothness: Smoothness,
        f: ProfileFn,
    ) -> Result<Self> {
        let (a, b) = domain;
        if !(a >= 0.0 && b > a && b.is_finite()) {
            return invalid(format!("bad profile domain [{a}, {b}]"));
        }
        if let Some(x) = breakpoints.iter().find(|&&x| !(x > a && x < b)) {
            return invalid(format!("breakpoint {x} outside ({a}, {b})"));
        }
        Ok(RadialProfile { f, domain, breakpoints, smoothness })
    }

    /// r^e on [0, 1].
    pub fn power(e: i32) -> Self {
        Self::polynomial_on(&[(e, 1.0)], (0.0, 1.0)).expect("unit interval is a valid domain")
    }

    /// Σ c·r^e over (e, c) pairs.
    pub fn polynomial_on(terms: &[(i32, f64)], domain: (f64, f64)) -> Result<Self> {
        let terms = terms.to_vec();
        Self::new(
            domain,
            vec![],
            Smoothness::Smooth,
            Arc::new(move |r| {
                let mut out = [0.0; 3];
                for &(e, c) in &terms {
                    let v = power_derivatives(e, r);
                    for d in 0..3 {
                        out[d] += c * v[d];
                    }
                }
                Ok(out)
            }),
        )
    }

    /// i_l(√τ r) on [0, 1].
    pub fn wrapper(l: usize, dim: usize, tau: f64) -> Result<Self> {
        if !(tau > 0.0) {
            return invalid("the wrapper profile needs tau > 0");
        }
        let s = tau.sqrt();
        Self::new(
            (0.0, 1.0),
            vec![],
            Smoothness::Smooth,
            Arc::new(move |r| {
                let w = ultraspherical_derivatives(BesselKind::I, l, dim, s * r, false)?;
                Ok([w[0], s * w[1], s * s * w[2]])
            }),
        )
    }

    pub fn from_ball_mode(mode: ModeProfile) -> Self {
        Self::new(
            (0.0, 1.0),
            vec![],
            Smoothness::Smooth,
            Arc::new(move |r| {
                let v = mode.derivatives(r)?;
                Ok([v[0], v[1], v[2]])
            }),
        )
        .expect("unit interval is a valid domain")
    }

    pub fn from_radial_mode(mode: RadialMode) -> Self {
        let breaks = mode.breakpoints();
        Self::new(
            (0.0, 1.0),
            breaks,
            Smoothness::Piecewise,
            Arc::new(move |r| {
                let v = mode.derivatives(r)?;
                Ok([v[0], v[1], v[2]])
            }),
        )
        .expect("interface radii lie inside the unit interval")
    }

    pub fn eval(&self, r: f64) -> Result<[f64; 3]> {
        let (a, b) = self.domain;
        if !(r >= a && r <= b) {
            return invalid(format!("radius {r} outside [{a}, {b}]"));
        }
        (self.f)(r)
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn smoothness(&self) -> Smoothness {
        self.smoothness
    }

    /// The same profile multiplied by c.
    pub fn scaled(&self, c: f64) -> Self {
        let f = self.f.clone();
        RadialProfile {
            f: Arc::new(move |r| Ok(f(r)?.map(|v| c * v))),
            ..self.clone()
        }
    }

    /// The same profile restricted to a subinterval of its domain.
    pub fn restricted(&self, domain: (f64, f64)) -> Result<Self> {
        let (a, b) = self.domain;
        if !(domain.0 >= a && domain.1 <= b) {
            return invalid(format!("[{}, {}] is not inside [{a}, {b}]", domain.0, domain.1));
        }
        let breaks = self.breakpoints.iter().copied().filter(|&x| x > domain.0 && x < domain.1).collect();
        Self::new(domain, breaks, self.smoothness, self.f.clone())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuotientReport {
    pub numerator: f64,
    pub denominator: f64,
    pub quotient: f64,
    pub error_estimate: f64,
}

/// Adaptive quadrature of integrand(r, R, R', R'') over the profile domain,
/// surfacing the first profile evaluation error.
fn integrate_profile<F: Fn(f64, [f64; 3]) -> f64>(profile: &RadialProfile, integrand: F) -> Result<QuadResult> {
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let (a, b) = profile.domain;
    let res = integrate(
        |r| match profile.eval(r) {
            Ok(v) => integrand(r, v),
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        },
        a,
        b,
        &profile.breakpoints,
        REL_TOL,
        0.0,
    );
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    res
}

/// The reduced numerator as a function of the angular eigenvalue k.
///
/// The 1/r⁴ terms are regrouped around p = rR' − mR, with m the degree
/// whose angular eigenvalue is k, so that profiles behaving like r^m near
/// the origin do not leave cancellation noise behind.
pub fn reduced_numerator_for_k(profile: &RadialProfile, k: f64, dim: usize, tau: f64) -> Result<QuadResult> {
    if dim < 2 {
        return invalid(format!("dimension {dim} below 2"));
    }
    if !(tau >= 0.0 && tau.is_finite()) {
        return invalid(format!("tau must be non-negative, got {tau}"));
    }
    if !(k >= 0.0 && k.is_finite()) {
        return invalid(format!("k must be non-negative, got {k}"));
    }
    let n = dim as f64;
    let m = 0.5 * (((n - 2.0) * (n - 2.0) + 4.0 * k).sqrt() - (n - 2.0));
    let ca = 2.0 * k + n - 1.0;
    let cb = 4.0 * k * (m - 1.5) + 2.0 * (n - 1.0) * m;
    let cc = k * (2.0 * (m - 1.5) * (m - 1.5) + k - n - 0.5) + (n - 1.0) * m * m;
    integrate_profile(profile, |r, [v0, v1, v2]| {
        let p = r * v1 - m * v0;
        let r2 = r * r;
        let singular = (ca * p * p + cb * p * v0 + cc * v0 * v0) / (r2 * r2);
        (v2 * v2 + tau * v1 * v1 + tau * k / r2 * v0 * v0 + singular) * r.powf(n - 1.0)
    })
}

/// ∫|D²(RY_l)|² + τ|∇(RY_l)|² over the radial domain of the profile, with
/// Y_l normalized on the unit sphere.
pub fn reduced_radial_numerator(profile: &RadialProfile, l: usize, dim: usize, tau: f64) -> Result<QuadResult> {
    let k = (l * (l + dim - 2)) as f64;
    reduced_numerator_for_k(profile, k, dim, tau)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum RadialDomain {
    Ball { radius: f64 },
    Annulus { inner: f64, outer: f64 },
}

impl RadialDomain {
    fn bounds(&self) -> (f64, f64) {
        match *self {
            RadialDomain::Ball { radius } => (0.0, radius),
            RadialDomain::Annulus { inner, outer } => (inner, outer),
        }
    }
}

/// Quotient of RY_l on a ball or annulus. `boundary_density` holds one
/// value per boundary sphere, innermost first.
pub fn rayleigh_quotient(
    profile: &RadialProfile,
    l: usize,
    dim: usize,
    tau: f64,
    domain: RadialDomain,
    boundary_density: &[f64],
) -> Result<QuotientReport> {
    let (a, b) = domain.bounds();
    let radii: Vec<f64> = if a > 0.0 { vec![a, b] } else { vec![b] };
    if boundary_density.len() != radii.len() {
        return invalid(format!(
            "{} boundary densities given for {} boundary components",
            boundary_density.len(),
            radii.len()
        ));
    }
    if let Some(rho) = boundary_density.iter().find(|v| !(**v > 0.0 && v.is_finite())) {
        return invalid(format!("boundary density must be positive, got {rho}"));
    }
    let (pa, pb) = profile.domain;
    if !(pa <= a && b <= pb) {
        return invalid(format!("profile on [{pa}, {pb}] does not cover [{a}, {b}]"));
    }
    let restricted = profile.restricted((a, b))?;
    let num = reduced_radial_numerator(&restricted, l, dim, tau)?;
    let mut den = 0.0;
    for (&rad, &rho) in radii.iter().zip(boundary_density) {
        let v = profile.eval(rad)?[0];
        den += rho * v * v * rad.powi(dim as i32 - 1);
    }
    if !(den > 0.0) {
        return invalid("trial function vanishes on the boundary");
    }
    Ok(QuotientReport {
        numerator: num.value,
        denominator: den,
        quotient: num.value / den,
        error_estimate: num.error / den,
    })
}

/// Tensor-product polar rule: Gauss in r on each segment, trapezoid in θ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PolarGrid {
    pub radial_nodes: usize,
    pub angular_nodes: usize,
}

impl Default for PolarGrid {
    fn default() -> Self {
        PolarGrid { radial_nodes: 24, angular_nodes: 64 }
    }
}

/// Returns the numerator and the size ∫(R² + R'² + R''²)(1 + l²)² r dr,
/// which sets the absolute floor of the error test.
fn cartesian_sum(profile: &RadialProfile, l: usize, tau: f64, grid: PolarGrid) -> Result<(f64, f64)> {
    let (a, b) = profile.domain;
    let mut cuts = vec![a];
    cuts.extend_from_slice(&profile.breakpoints);
    cuts.push(b);
    if a == 0.0 {
        let c = cuts[1];
        cuts.splice(1..1, [c / 4096.0, c / 256.0, c / 16.0]);
    }
    let rule = GaussLegendre::new(grid.radial_nodes);
    let m = grid.angular_nodes;
    let lf = l as f64;
    let norm = if l == 0 { (2.0 * PI).sqrt() } else { PI.sqrt() };
    let mut total = 0.0;
    let mut size = 0.0;
    for w in cuts.windows(2) {
        let (r0, r1) = (w[0], w[1]);
        let half = 0.5 * (r1 - r0);
        for (&x, &wx) in rule.nodes.iter().zip(&rule.weights) {
            let r = 0.5 * (r0 + r1) + half * x;
            let [v0, v1, v2] = profile.eval(r)?;
            let mut ring = 0.0;
            for j in 0..m {
                let th = 2.0 * PI * j as f64 / m as f64;
                let (c, s) = ((lf * th).cos() / norm, -lf * (lf * th).sin() / norm);
                let ctt = -lf * lf * c;
                // polar derivatives of u = R cos(lθ)
                let (u_r, u_t) = (v1 * c, v0 * s);
                let (u_rr, u_rt, u_tt) = (v2 * c, v1 * s, v0 * ctt);
                let h_rr = u_rr;
                let h_rt = u_rt / r - u_t / (r * r);
                let h_tt = u_tt / (r * r) + u_r / r;
                let (cs, sn) = (th.cos(), th.sin());
                let u_xx = cs * cs * h_rr - 2.0 * sn * cs * h_rt + sn * sn * h_tt;
                let u_yy = sn * sn * h_rr + 2.0 * sn * cs * h_rt + cs * cs * h_tt;
                let u_xy = sn * cs * (h_rr - h_tt) + (cs * cs - sn * sn) * h_rt;
                let u_x = cs * u_r - sn * u_t / r;
                let u_y = sn * u_r + cs * u_t / r;
                ring += u_xx * u_xx + 2.0 * u_xy * u_xy + u_yy * u_yy + tau * (u_x * u_x + u_y * u_y);
            }
            total += half * wx * r * ring * 2.0 * PI / m as f64;
            size += half * wx * r * (v0 * v0 + v1 * v1 + v2 * v2) * (1.0 + lf * lf).powi(2);
        }
    }
    Ok((total, size))
}

/// ∫_B |D²u|² + τ|∇u|² for u = R(r)cos(lθ)/√π in the plane, from Cartesian
/// Hessian entries at polar nodes. The error estimate compares against a
/// grid with twice the nodes in each direction.
pub fn cartesian_oracle_2d(profile: &RadialProfile, l: usize, tau: f64, grid: PolarGrid) -> Result<QuadResult> {
    if grid.radial_nodes < 2 || grid.angular_nodes < 2 * l + 2 {
        return invalid(format!("grid {grid:?} cannot resolve order {l}"));
    }
    let (coarse, _) = cartesian_sum(profile, l, tau, grid)?;
    let fine_grid = PolarGrid { radial_nodes: 2 * grid.radial_nodes, angular_nodes: 2 * grid.angular_nodes };
    let (fine, size) = cartesian_sum(profile, l, tau, fine_grid)?;
    let error = (fine - coarse).abs();
    let tol = (1e-6 * fine.abs()).max(1e-13 * size);
    if !(error <= tol) {
        return Err(Error::RefineNeeded { tol, estimate: error });
    }
    Ok(QuadResult { value: fine, error })
}

fn trial_inner(r: f64) -> [f64; 3] {
    [6.0 * r * r - r.powi(4), 12.0 * r - 4.0 * r.powi(3), 12.0 - 12.0 * r * r]
}

fn trial_outer(r: f64) -> [f64; 3] {
    [8.0 * r - 3.0, 8.0, 0.0]
}

/// The τ = 0 trial profile 6r² − r⁴ on [0, 1] continued by 8r − 3.
pub fn annulus_trial_profile(outer: f64) -> Result<RadialProfile> {
    if !(outer >= 1.0 && outer.is_finite()) {
        return invalid(format!("outer radius {outer} leaves the junction at r = 1 outside the domain"));
    }
    let breaks = if outer > 1.0 { vec![1.0] } else { vec![] };
    RadialProfile::new(
        (0.0, outer),
        breaks,
        Smoothness::Piecewise,
        Arc::new(|r| Ok(if r <= 1.0 { trial_inner(r) } else { trial_outer(r) })),
    )
}

/// Jumps of (R, R', R'') of the annulus trial profile across r = 1.
pub fn annulus_trial_junction() -> [f64; 3] {
    let (left, right) = (trial_inner(1.0), trial_outer(1.0));
    [0, 1, 2].map(|d| right[d] - left[d])
}

/// Outer radius of the annulus with inner radius a and the measure of the
/// unit ball.
pub fn equal_measure_outer(inner: f64, dim: usize) -> f64 {
    (1.0 + inner.powi(dim as i32)).powf(1.0 / dim as f64)
}

/// Quotient of the l = 2, τ = 0 trial function on {a < r < b}; a = 0 is
/// the ball of radius b. Requires a < 1 ≤ b.
pub fn annulus_trial_quotient(inner: f64, outer: f64, dim: usize) -> Result<QuotientReport> {
    if !(dim == 2 || dim == 3) {
        return invalid(format!("annulus trial supports N = 2, 3, got {dim}"));
    }
    if !(0.0..1.0).contains(&inner) {
        return invalid(format!("inner radius {inner} must lie in [0, 1)"));
    }
    let profile = annulus_trial_profile(outer)?;
    let domain = if inner == 0.0 {
        RadialDomain::Ball { radius: outer }
    } else {
        RadialDomain::Annulus { inner, outer }
    };
    let dens: &[f64] = if inner == 0.0 { &[1.0] } else { &[1.0, 1.0] };
    rayleigh_quotient(&profile, 2, dim, 0.0, domain, dens)
}
