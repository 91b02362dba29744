//! Closed-form Steklov spectrum of the unit ball.

use crate::error::{invalid, Error, Result};
use crate::harmonics::multiplicity;
use crate::specfun::{ultraspherical_derivatives, BesselKind};
use serde::{Deserialize, Serialize};

/// Dimension N ≥ 2 and tension τ ≥ 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProblemParams {
    pub dim: usize,
    pub tau: f64,
}

impl ProblemParams {
    pub fn new(dim: usize, tau: f64) -> Result<Self> {
        if dim < 2 {
            return invalid(format!("dimension {dim} below 2"));
        }
        if !tau.is_finite() || tau < 0.0 {
            return invalid(format!("tension must be finite and non-negative, got {tau}"));
        }
        Ok(ProblemParams { dim, tau })
    }

    fn require_positive_tau(&self) -> Result<()> {
        if self.tau > 0.0 {
            Ok(())
        } else {
            invalid("this formula needs tau > 0")
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Normalization {
    /// R(1) = 1.
    BoundaryUnit,
}

/// R(r) = A r^l + B i_l(√τ r) for τ > 0, or A r^l + B r^{l+2} for τ = 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeProfile {
    pub l: usize,
    pub dim: usize,
    pub tau: f64,
    pub a: f64,
    pub b: f64,
    /// b·e^{√τ}, the coefficient of the exponentially scaled i_l; finite
    /// where b underflows.
    pub b_scaled: f64,
    pub normalization: Normalization,
}

impl ModeProfile {
    /// (R, R', R'', R''') at r ∈ [0, 1].
    pub fn derivatives(&self, r: f64) -> Result<[f64; 4]> {
        if !(0.0..=1.0).contains(&r) {
            return invalid(format!("radius {r} outside [0, 1]"));
        }
        let mut out = power_derivatives(self.l as i32, r).map(|v| self.a * v);
        if self.b_scaled != 0.0 {
            let (coef, second) = if self.tau > 0.0 {
                let s = self.tau.sqrt();
                let w = ultraspherical_derivatives(BesselKind::I, self.l, self.dim, s * r, true)?;
                let c = self.b_scaled * (s * (r - 1.0)).exp();
                (c, [w[0], s * w[1], s * s * w[2], s * s * s * w[3]])
            } else {
                (self.b, power_derivatives(self.l as i32 + 2, r))
            };
            for (o, v) in out.iter_mut().zip(second) {
                *o += coef * v;
            }
        }
        Ok(out)
    }

    /// d-th derivative of R at r.
    pub fn eval(&self, r: f64, d: usize) -> Result<f64> {
        if d > 3 {
            return invalid(format!("derivative order {d} above 3"));
        }
        Ok(self.derivatives(r)?[d])
    }
}

/// Derivatives of r^e up to third order, exact zeros where the falling
/// factorial vanishes.
pub(crate) fn power_derivatives(e: i32, r: f64) -> [f64; 4] {
    let mut out = [0.0; 4];
    let mut c = 1.0;
    for (d, slot) in out.iter_mut().enumerate() {
        if c != 0.0 {
            *slot = c * r.powi(e - d as i32);
        }
        c *= (e - d as i32) as f64;
    }
    out
}

/// λ_(l) on the unit ball for τ > 0; exactly 0 and τ for l = 0 and 1.
pub fn closed_form_eigenvalue(params: ProblemParams, l: usize) -> Result<f64> {
    params.require_positive_tau()?;
    match l {
        0 => Ok(0.0),
        1 => Ok(params.tau),
        _ => eigenvalue_formula(params, l),
    }
}

/// The eigenvalue formula in terms of i_l and its first three derivatives
/// at √τ, applied for every l with no special cases.
pub fn eigenvalue_formula(params: ProblemParams, l: usize) -> Result<f64> {
    params.require_positive_tau()?;
    let tau = params.tau;
    let s = tau.sqrt();
    let n = params.dim as f64;
    let lf = l as f64;
    // a common exponential factor cancels, so scaled values are used
    let w = ultraspherical_derivatives(BesselKind::I, l, params.dim, s, true)?;
    let t1 = (1.0 - lf) * lf * w[0];
    let t2 = tau * w[2];
    let den = t1 + t2;
    if den.abs() <= 1e-13 * (t1.abs() + t2.abs()) {
        return Err(Error::DegenerateFormula { l, denominator: den });
    }
    let num = 3.0 * (lf - 1.0) * lf * (lf + n - 2.0) * w[0]
        - (lf - 1.0) * s * (n - 1.0 + 2.0 * n * lf + 2.0 * (lf - 2.0) * lf + tau) * w[1]
        + tau * ((lf - 1.0) * (lf + 2.0 * n - 3.0) + tau) * w[2]
        + (lf - 1.0) * tau * s * w[3];
    Ok(lf * num / den)
}

/// The same eigenvalue after eliminating derivatives with the ladder
/// identities, in terms of i_{l+1}, i_{l+2}, i_{l+3}. Free of cancellation
/// for small τ and with a positive denominator.
pub fn eigenvalue_ladder_form(params: ProblemParams, l: usize) -> Result<f64> {
    params.require_positive_tau()?;
    let tau = params.tau;
    let s = tau.sqrt();
    let n = params.dim as f64;
    let lf = l as f64;
    let w = |j: usize| -> Result<f64> {
        Ok(ultraspherical_derivatives(BesselKind::I, l + j, params.dim, s, true)?[0])
    };
    let (b, c, e) = (w(1)?, w(2)?, w(3)?);
    let pb = 3.0 * lf.powi(3) + (2.0 * n - 4.0) * lf * lf - (n + 1.0) * lf + 2.0 - n
        + tau * (lf + 2.0);
    let pc = 2.0 * (lf - 1.0) * (2.0 * lf + n) + tau;
    let num = pb * b + s * pc * c + (lf - 1.0) * tau * e;
    Ok(lf * num / (s * c + (2.0 * lf + 1.0) * b))
}

/// λ_(l) for τ = 0, l(l−1)(N + 2Nl + (l−1)(2+3l))/(1+2l).
pub fn tau0_eigenvalue(dim: usize, l: usize) -> f64 {
    let (n, l) = (dim as i128, l as i128);
    let num = l * (l - 1) * (n + 2 * n * l + (l - 1) * (2 + 3 * l));
    num as f64 / (1 + 2 * l) as f64
}

/// λ_(l) for either sign of τ.
pub fn ball_eigenvalue(params: ProblemParams, l: usize) -> Result<f64> {
    if params.tau > 0.0 {
        closed_form_eigenvalue(params, l)
    } else {
        Ok(tau0_eigenvalue(params.dim, l))
    }
}

/// λ_(l) on the ball of radius α, from λ(τ, αB) = α⁻³ λ(α²τ, B).
pub fn dilated_eigenvalue(params: ProblemParams, l: usize, radius: f64) -> Result<f64> {
    if !(radius > 0.0) {
        return invalid(format!("radius must be positive, got {radius}"));
    }
    let inner = ProblemParams::new(params.dim, radius * radius * params.tau)?;
    Ok(ball_eigenvalue(inner, l)? / radius.powi(3))
}

/// B/A = l(1−l)/(τ i_l''(√τ)).
pub fn mode_coefficient_ratio(params: ProblemParams, l: usize) -> Result<f64> {
    params.require_positive_tau()?;
    if l < 2 {
        return Ok(0.0);
    }
    let s = params.tau.sqrt();
    let w = ultraspherical_derivatives(BesselKind::I, l, params.dim, s, false)?;
    let lf = l as f64;
    Ok(lf * (1.0 - lf) / (params.tau * w[2]))
}

/// Radial profile normalized to R(1) = 1.
pub fn mode_profile(params: ProblemParams, l: usize) -> Result<ModeProfile> {
    // with τ > 0 the ratio and trace use scaled values, so the ratio is
    // B/A·e^{√τ}
    let (ratio, boundary) = if params.tau > 0.0 {
        if l < 2 {
            (0.0, 0.0)
        } else {
            let w = ultraspherical_derivatives(BesselKind::I, l, params.dim, params.tau.sqrt(), true)?;
            let lf = l as f64;
            (lf * (1.0 - lf) / (params.tau * w[2]), w[0])
        }
    } else {
        let lf = l as f64;
        (-lf * (lf - 1.0) / ((lf + 2.0) * (lf + 1.0)), 1.0)
    };
    let trace = 1.0 + ratio * boundary;
    if !(trace.abs() > 1e-14) {
        return Err(Error::DegenerateMode(format!("order {l} has vanishing boundary trace")));
    }
    let a = 1.0 / trace;
    let b_scaled = ratio * a;
    let b = if params.tau > 0.0 { b_scaled * (-params.tau.sqrt()).exp() } else { b_scaled };
    Ok(ModeProfile {
        l,
        dim: params.dim,
        tau: params.tau,
        a,
        b,
        b_scaled,
        normalization: Normalization::BoundaryUnit,
    })
}

/// d-th derivative of the boundary-normalized profile at r.
pub fn radial_profile(params: ProblemParams, l: usize, r: f64, d: usize) -> Result<f64> {
    mode_profile(params, l)?.eval(r, d)
}

/// One harmonic order's contribution to the ordered spectrum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumEntry {
    /// 1-based position of the first copy in the ordered spectrum.
    pub first_index: usize,
    pub l: usize,
    pub lambda: f64,
    pub multiplicity: usize,
    /// Copies inside the requested count.
    pub taken: usize,
    pub profile: ModeProfile,
}

/// The first `count` eigenvalues with multiplicity, grouped by order.
pub fn enumerate_spectrum(params: ProblemParams, count: usize) -> Result<Vec<SpectrumEntry>> {
    if count == 0 {
        return invalid("count must be positive");
    }
    let mut found: Vec<(usize, f64)> = Vec::new();
    let mut total = 0usize;
    let mut l = 0usize;
    loop {
        let lambda = ball_eigenvalue(params, l)?;
        // orders beyond 2 increase strictly, so stop once the list is full
        // and the newest order already lies past the largest kept value
        if total >= count && l >= 2 {
            let kept = kept_max(&found, count, params.dim);
            if lambda > kept {
                break;
            }
        }
        found.push((l, lambda));
        total += multiplicity(l, params.dim);
        l += 1;
    }
    found.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
    let mut out = Vec::new();
    let mut next = 1usize;
    for (l, lambda) in found {
        if next > count {
            break;
        }
        let m = multiplicity(l, params.dim);
        let taken = m.min(count + 1 - next);
        out.push(SpectrumEntry {
            first_index: next,
            l,
            lambda,
            multiplicity: m,
            taken,
            profile: mode_profile(params, l)?,
        });
        next += m;
    }
    Ok(out)
}

fn kept_max(found: &[(usize, f64)], count: usize, dim: usize) -> f64 {
    let mut v: Vec<(usize, f64)> = found.to_vec();
    v.sort_by(|a, b| a.1.total_cmp(&b.1));
    let mut total = 0;
    for (l, lambda) in v {
        total += multiplicity(l, dim);
        if total >= count {
            return lambda;
        }
    }
    f64::INFINITY
}
