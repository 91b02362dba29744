use crate::ball_spectrum::power_derivatives;
use crate::error::{invalid, Result};
use crate::specfun::{ultraspherical_derivatives, BesselKind};
use serde::Serialize;

/// One fundamental solution of the order-l radial equation
/// L(L − τ)R = λρR with L R = R'' + (N−1)R'/r − kR/r².
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum BasisMember {
    /// r^e
    Power { exponent: i32 },
    /// r^e ln r
    PowerLog { exponent: i32 },
    /// The ultraspherical wrapper of the given family at scale·r.
    Wrapper { kind: BesselKind, scale: f64 },
}

impl BasisMember {
    pub fn is_regular(&self, l: usize) -> bool {
        match *self {
            BasisMember::Power { exponent } => exponent >= l as i32,
            BasisMember::PowerLog { .. } => false,
            BasisMember::Wrapper { kind, .. } => kind.is_regular(),
        }
    }

    /// Exponent c with |member(r)| ≈ e^{c·r} growth, for column shifting.
    pub(crate) fn growth(&self) -> f64 {
        match *self {
            BasisMember::Wrapper { kind: BesselKind::I, scale } => scale,
            BasisMember::Wrapper { kind: BesselKind::K, scale } => -scale,
            _ => 0.0,
        }
    }

    /// (R, R', R'', R''') at r, multiplied by e^{−shift}.
    pub(crate) fn eval_shifted(&self, l: usize, dim: usize, r: f64, shift: f64) -> Result<[f64; 4]> {
        match *self {
            BasisMember::Power { exponent } => Ok(power_derivatives(exponent, r)),
            BasisMember::PowerLog { exponent } => Ok(power_log_derivatives(exponent, r)),
            BasisMember::Wrapper { kind, scale } => {
                let scaled = matches!(kind, BesselKind::I | BesselKind::K);
                let w = ultraspherical_derivatives(kind, l, dim, scale * r, scaled)?;
                let f = if scaled { (self.growth() * r - shift).exp() } else { 1.0 };
                let mut out = [0.0; 4];
                let mut sp = f;
                for d in 0..4 {
                    out[d] = sp * w[d];
                    sp *= scale;
                }
                Ok(out)
            }
        }
    }

    pub fn eval(&self, l: usize, dim: usize, r: f64) -> Result<[f64; 4]> {
        self.eval_shifted(l, dim, r, 0.0)
    }
}

fn power_log_derivatives(e: i32, r: f64) -> [f64; 4] {
    // (r^e ln r)^{(d)} = r^{e−d}(a_d ln r + b_d) with a_d the falling
    // factorial and b_{d+1} = a_d + (e−d) b_d
    let lr = r.ln();
    let mut out = [0.0; 4];
    let (mut a, mut b) = (1.0, 0.0);
    for (d, slot) in out.iter_mut().enumerate() {
        *slot = r.powi(e - d as i32) * (a * lr + b);
        let m = (e - d as i32) as f64;
        b = a + m * b;
        a *= m;
    }
    out
}

/// Four fundamental solutions of one layer.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LayerBasis {
    pub l: usize,
    pub dim: usize,
    pub tau: f64,
    pub lambda_rho: f64,
    /// Roots of μ² − τμ − λρ = 0.
    pub mu_plus: f64,
    pub mu_minus: f64,
    pub members: Vec<BasisMember>,
}

/// Fundamental solutions for density ρ at spectral parameter λ.
pub fn layer_basis(l: usize, dim: usize, tau: f64, lambda: f64, rho: f64) -> Result<LayerBasis> {
    if dim < 2 {
        return invalid(format!("dimension {dim} below 2"));
    }
    if !(tau >= 0.0 && tau.is_finite()) {
        return invalid(format!("tension must be non-negative, got {tau}"));
    }
    let lr = lambda * rho;
    if !(lr >= 0.0 && lr.is_finite()) {
        return invalid(format!("lambda * rho must be non-negative, got {lr}"));
    }
    let disc = (tau * tau + 4.0 * lr).sqrt();
    let mu_plus = 0.5 * (tau + disc);
    let mu_minus = if lr == 0.0 { 0.0 } else { -2.0 * lr / (tau + disc) };
    let li = l as i32;
    let ni = dim as i32;
    let members = if lr > 0.0 {
        let a = mu_plus.sqrt();
        let b = (-mu_minus).sqrt();
        vec![
            BasisMember::Wrapper { kind: BesselKind::I, scale: a },
            BasisMember::Wrapper { kind: BesselKind::K, scale: a },
            BasisMember::Wrapper { kind: BesselKind::J, scale: b },
            BasisMember::Wrapper { kind: BesselKind::Y, scale: b },
        ]
    } else if tau > 0.0 {
        let a = tau.sqrt();
        let harmonic = powers(&[li, 2 - ni - li]);
        vec![
            harmonic[0],
            harmonic[1],
            BasisMember::Wrapper { kind: BesselKind::I, scale: a },
            BasisMember::Wrapper { kind: BesselKind::K, scale: a },
        ]
    } else {
        let p = powers(&[li, li + 2, 2 - ni - li, 4 - ni - li]);
        vec![p[0], p[1], p[2], p[3]]
    };
    Ok(LayerBasis { l, dim, tau, lambda_rho: lr, mu_plus, mu_minus, members })
}

/// Power members for the listed exponents; a repeated exponent gets the
/// logarithmic companion.
fn powers(exps: &[i32]) -> Vec<BasisMember> {
    let mut seen = Vec::new();
    exps.iter()
        .map(|&e| {
            if seen.contains(&e) {
                BasisMember::PowerLog { exponent: e }
            } else {
                seen.push(e);
                BasisMember::Power { exponent: e }
            }
        })
        .collect()
}

impl LayerBasis {
    pub fn eval(&self, idx: usize, r: f64) -> Result<[f64; 4]> {
        self.members[idx].eval(self.l, self.dim, r)
    }

    /// Indices of the members that stay bounded at the origin.
    pub fn regular_indices(&self) -> Vec<usize> {
        (0..self.members.len()).filter(|&i| self.members[i].is_regular(self.l)).collect()
    }

    /// |L(L−τ)R − λρR| relative to the sum of the magnitudes of its terms,
    /// with R'''' from a fourth-order difference of the exact R'''.
    pub fn residual(&self, idx: usize, r: f64) -> Result<f64> {
        let h = 1e-3 * r;
        let d3 = |t: f64| -> Result<f64> { Ok(self.eval(idx, t)?[3]) };
        let d4 = (d3(r - 2.0 * h)? - 8.0 * d3(r - h)? + 8.0 * d3(r + h)? - d3(r + 2.0 * h)?)
            / (12.0 * h);
        let v = self.eval(idx, r)?;
        let n1 = self.dim as f64 - 1.0;
        let k = (self.l * (self.l + self.dim - 2)) as f64;
        let (a, a1, a2) = (n1 / r, -n1 / (r * r), 2.0 * n1 / r.powi(3));
        let (b, b1, b2) = (-k / (r * r), 2.0 * k / r.powi(3), -6.0 * k / r.powi(4));
        // P = L R, then L P expanded to derivatives of R
        let terms = [
            d4,
            2.0 * a * v[3],
            (a * a + 2.0 * a1 + 2.0 * b) * v[2],
            (a2 + 2.0 * b1 + a * a1 + 2.0 * a * b) * v[1],
            (b2 + a * b1 + b * b) * v[0],
            -self.tau * v[2],
            -self.tau * a * v[1],
            -self.tau * b * v[0],
            -self.lambda_rho * v[0],
        ];
        let sum: f64 = terms.iter().sum();
        let scale: f64 = terms.iter().map(|t| t.abs()).sum();
        Ok(if scale == 0.0 { 0.0 } else { sum.abs() / scale })
    }
}
