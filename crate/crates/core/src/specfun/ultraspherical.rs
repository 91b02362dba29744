use super::gamma::series_prefactor;
use super::{bessel_eval, ordinary, BesselKind};
use crate::error::{invalid, Error, Result};
use serde::{Deserialize, Serialize};

/// Selects one derivative of one ultraspherical wrapper.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct UltrasphericalSpec {
    pub kind: BesselKind,
    pub l: usize,
    pub dim: usize,
    pub derivative_order: u8,
}

impl UltrasphericalSpec {
    pub fn new(kind: BesselKind, l: usize, dim: usize, derivative_order: u8) -> Self {
        UltrasphericalSpec { kind, l, dim, derivative_order }
    }

    /// Bessel order ν = N/2 − 1 + l.
    pub fn order(&self) -> f64 {
        self.dim as f64 / 2.0 - 1.0 + self.l as f64
    }
}

/// d-th derivative of the unscaled wrapper at z.
pub fn ultraspherical_eval(spec: UltrasphericalSpec, z: f64) -> Result<f64> {
    pick(spec, ultraspherical_derivatives(spec.kind, spec.l, spec.dim, z, false)?)
}

/// d-th derivative of the wrapper times e^{−z} (I) or e^{z} (K);
/// identical to the unscaled value for J and Y.
pub fn ultraspherical_eval_scaled(spec: UltrasphericalSpec, z: f64) -> Result<f64> {
    pick(spec, ultraspherical_derivatives(spec.kind, spec.l, spec.dim, z, true)?)
}

fn pick(spec: UltrasphericalSpec, all: [f64; 4]) -> Result<f64> {
    match spec.derivative_order {
        d @ 0..=3 => Ok(all[d as usize]),
        d => invalid(format!("derivative order {d} above 3")),
    }
}

/// Values w, w', w'', w''' of z^{1−N/2} C_{N/2−1+l}(z).
///
/// Regular families use the termwise differentiated power series where it
/// is stable, which also covers z = 0. Elsewhere the derivatives follow from
/// w_l' = s·w_{l+1} + (l/z)·w_l applied three times.
pub fn ultraspherical_derivatives(
    kind: BesselKind,
    l: usize,
    dim: usize,
    z: f64,
    scaled: bool,
) -> Result<[f64; 4]> {
    if dim < 2 {
        return invalid(format!("dimension {dim} below 2"));
    }
    if !z.is_finite() || z < 0.0 {
        return invalid(format!("wrapper argument must be non-negative, got {z}"));
    }
    let nu = dim as f64 / 2.0 - 1.0 + l as f64;
    if z == 0.0 && !kind.is_regular() {
        return Err(Error::Pole(format!("{kind:?} wrapper of order {l}")));
    }
    let use_series = match kind {
        BesselKind::I => z <= nu.max(12.0),
        BesselKind::J => ordinary::j_series_ok(nu, z),
        _ => false,
    };
    let mut out = if use_series {
        series_derivatives(kind.recurrence_sign(), l, nu, z)
    } else {
        recurrence_derivatives(kind, l, dim, nu, z, scaled)?
    };
    if use_series && scaled && kind == BesselKind::I {
        let f = (-z).exp();
        out.iter_mut().for_each(|v| *v *= f);
    }
    if out.iter().all(|v| v.is_finite()) {
        Ok(out)
    } else {
        Err(Error::Overflow(format!("{kind:?} wrapper of order {l} at {z}")))
    }
}

fn falling(p: usize, d: usize) -> f64 {
    (0..d).fold(1.0, |acc, j| acc * (p as f64 - j as f64))
}

/// Σ_k s^k 2^{−ν−2k}/(k! Γ(ν+k+1)) z^{l+2k}, differentiated termwise.
fn series_derivatives(s: f64, l: usize, nu: f64, z: f64) -> [f64; 4] {
    let mut coef = series_prefactor(nu, 1.0);
    let mut out = [0.0; 4];
    if z == 0.0 {
        for k in 0..=2usize {
            for (d, slot) in out.iter_mut().enumerate() {
                if l + 2 * k == d {
                    *slot += coef * falling(d, d);
                }
            }
            coef *= s / (4.0 * (k as f64 + 1.0) * (nu + k as f64 + 1.0));
        }
        return out;
    }
    let z2 = z * z;
    let mut zp = z.powi(l as i32);
    let mut k = 0usize;
    loop {
        let p = l + 2 * k;
        let t = coef * zp;
        let mut biggest = 0.0f64;
        for (d, slot) in out.iter_mut().enumerate() {
            if p >= d {
                let term = t * falling(p, d) / z.powi(d as i32);
                *slot += term;
                biggest = biggest.max(term.abs() / slot.abs().max(f64::MIN_POSITIVE));
            }
        }
        let kk = k as f64 + 1.0;
        let ratio = z2 / (4.0 * kk * (nu + kk));
        if (ratio < 0.5 && biggest < 1e-17) || k > 3000 || t == 0.0 {
            break;
        }
        coef *= s / (4.0 * kk * (nu + kk));
        zp *= z2;
        k += 1;
    }
    out
}

fn recurrence_derivatives(
    kind: BesselKind,
    l: usize,
    dim: usize,
    nu: f64,
    z: f64,
    scaled: bool,
) -> Result<[f64; 4]> {
    let pre = z.powf(1.0 - dim as f64 / 2.0);
    let mut w = [0.0; 4];
    for (j, slot) in w.iter_mut().enumerate() {
        *slot = pre * bessel_eval(kind, nu + j as f64, z, scaled)?;
    }
    let s = kind.recurrence_sign();
    let lf = l as f64;
    let (a, b, c, e) = (w[0], w[1], w[2], w[3]);
    let d1 = s * b + lf / z * a;
    let d2 = c + s * (2.0 * lf + 1.0) / z * b + lf * (lf - 1.0) / (z * z) * a;
    let d3 = s * e
        + 3.0 * (lf + 1.0) / z * c
        + s * 3.0 * lf * lf / (z * z) * b
        + lf * (lf - 1.0) * (lf - 2.0) / (z * z * z) * a;
    Ok([a, d1, d2, d3])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_wrapper_in_the_plane() {
        let spec = UltrasphericalSpec::new(BesselKind::I, 0, 2, 0);
        let v = ultraspherical_eval(spec, 1.0).unwrap();
        let i0 = bessel_eval(BesselKind::I, 0.0, 1.0, false).unwrap();
        assert!((v - i0).abs() < 1e-16);
    }

    #[test]
    fn first_derivative_recurrence() {
        let d = ultraspherical_derivatives(BesselKind::I, 2, 3, 1.0, false).unwrap();
        let i3 = ultraspherical_derivatives(BesselKind::I, 3, 3, 1.0, false).unwrap()[0];
        assert!((d[1] - (2.0 * d[0] + i3)).abs() < 1e-12 * d[1]);
    }

    #[test]
    fn regular_wrapper_derivatives_positive() {
        for &z in &[0.5, 2.0, 10.0] {
            let d = ultraspherical_derivatives(BesselKind::I, 3, 2, z, false).unwrap();
            assert!(d.iter().all(|&v| v > 0.0), "z={z}: {d:?}");
        }
    }

    #[test]
    fn values_at_origin() {
        // i_1 for N=2 is I_1(z) = z/2 + ..., so i_1'(0) = 1/2
        let d = ultraspherical_derivatives(BesselKind::I, 1, 2, 0.0, false).unwrap();
        assert_eq!(d[0], 0.0);
        assert!((d[1] - 0.5).abs() < 1e-16);
        assert_eq!(d[2], 0.0);
        assert!(matches!(
            ultraspherical_derivatives(BesselKind::K, 1, 2, 0.0, false),
            Err(Error::Pole(_))
        ));
    }

    #[test]
    fn series_and_recurrence_routes_agree() {
        for &(l, dim) in &[(0usize, 2usize), (2, 3), (5, 4)] {
            for &z in &[3.0, 7.5, 11.0] {
                let nu = dim as f64 / 2.0 - 1.0 + l as f64;
                let a = series_derivatives(1.0, l, nu, z);
                let b = recurrence_derivatives(BesselKind::I, l, dim, nu, z, false).unwrap();
                for d in 0..4 {
                    assert!((a[d] / b[d] - 1.0).abs() < 1e-12, "l={l} N={dim} z={z} d={d}");
                }
            }
        }
    }
}
