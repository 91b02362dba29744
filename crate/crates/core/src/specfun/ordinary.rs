//! Ordinary Bessel functions J_ν and Y_ν of real order ν ≥ 0.

use super::gamma::{series_prefactor, temme_gammas};
use crate::error::{Error, Result};
use std::f64::consts::PI;

const EPS: f64 = 1e-16;
const FPMIN: f64 = 1e-300;
const MAXIT: usize = 100_000;
const RESCALE: f64 = 1e200;

/// Ascending series for J_ν(z). Only used where cancellation is mild.
pub(crate) fn series_j(nu: f64, z: f64) -> f64 {
    let q = -0.25 * z * z;
    let mut term = series_prefactor(nu, z);
    let mut sum = term;
    let mut k = 1.0;
    loop {
        term *= q / (k * (nu + k));
        sum += term;
        if term.abs() <= 0.25 * EPS * sum.abs() || k > 2000.0 {
            break;
        }
        k += 1.0;
    }
    sum
}

/// True when the series for J is free of harmful cancellation.
pub(crate) fn j_series_ok(nu: f64, z: f64) -> bool {
    z <= 2.0 || 0.25 * z * z <= 0.5 * (nu + 1.0)
}

/// (J_ν(x), Y_ν(x)) for x > 0: Temme's series for x < 2, Steed's complex
/// continued fraction otherwise, with CF1 and downward recurrence for J.
pub(crate) fn jy(nu: f64, x: f64) -> Result<(f64, f64)> {
    if x >= 25.0 {
        if let Some(v) = hankel(nu, x) {
            return Ok(v);
        }
    }
    let nl = if x < 2.0 {
        (nu + 0.5).floor() as usize
    } else {
        (nu - x + 1.5).floor().max(0.0) as usize
    };
    let xmu = nu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI;

    let mut isign = 1.0;
    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut c = h;
    let mut converged = false;
    for _ in 0..MAXIT {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() < EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence(format!("J ratio at nu={nu}, x={x}")));
    }

    let rjl1 = isign * FPMIN;
    let mut rjl = rjl1;
    let mut rjpl = h * rjl;
    let mut lost = 0i32;
    let mut fact = nu * xi;
    for _ in 0..nl {
        let rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
        if rjl.abs() > RESCALE {
            rjl /= RESCALE;
            rjpl /= RESCALE;
            lost += 1;
        }
    }
    if rjl == 0.0 {
        rjl = EPS;
    }
    let f = rjpl / rjl;

    let (rjmu, mut rymu, mut ry1);
    if x < 2.0 {
        let x2 = 0.5 * x;
        let pimu = PI * xmu;
        let fact = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
        let d = -x2.ln();
        let e = xmu * d;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = temme_gammas(xmu);
        let mut ff = 2.0 / PI * fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let ee = e.exp();
        let mut p = ee / (gampl * PI);
        let mut q = 1.0 / (ee * PI * gammi);
        let pimu2 = 0.5 * pimu;
        let fact3 = if pimu2.abs() < EPS { 1.0 } else { pimu2.sin() / pimu2 };
        let r = PI * pimu2 * fact3 * fact3;
        let mut c = 1.0;
        let dd = -x2 * x2;
        let mut sum = ff + r * q;
        let mut sum1 = p;
        let mut i = 1.0;
        loop {
            ff = (i * ff + p + q) / (i * i - xmu2);
            c *= dd / i;
            p /= i - xmu;
            q /= i + xmu;
            let del = c * (ff + r * q);
            sum += del;
            sum1 += c * p - i * del;
            if del.abs() < (1.0 + sum.abs()) * EPS {
                break;
            }
            i += 1.0;
            if i > MAXIT as f64 {
                return Err(Error::NoConvergence(format!("Y series at nu={nu}, x={x}")));
            }
        }
        rymu = -sum;
        ry1 = -sum1 * xi2;
        let rymup = xmu * xi * rymu - ry1;
        rjmu = w / (rymup - f * rymu);
    } else {
        let mut a = 0.25 - xmu2;
        let mut p = -0.5 * xi;
        let mut q = 1.0;
        let br = 2.0 * x;
        let mut bi = 2.0;
        let mut fact = a * xi / (p * p + q * q);
        let mut cr = br + q * fact;
        let mut ci = bi + p * fact;
        let mut den = br * br + bi * bi;
        let mut dr = br / den;
        let mut di = -bi / den;
        let mut dlr = cr * dr - ci * di;
        let mut dli = cr * di + ci * dr;
        let mut temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        let mut i = 2.0;
        loop {
            a += 2.0 * (i - 1.0);
            bi += 2.0;
            dr = a * dr + br;
            di = a * di + bi;
            if dr.abs() + di.abs() < FPMIN {
                dr = FPMIN;
            }
            fact = a / (cr * cr + ci * ci);
            cr = br + cr * fact;
            ci = bi - ci * fact;
            if cr.abs() + ci.abs() < FPMIN {
                cr = FPMIN;
            }
            den = dr * dr + di * di;
            dr /= den;
            di /= -den;
            dlr = cr * dr - ci * di;
            dli = cr * di + ci * dr;
            temp = p * dlr - q * dli;
            q = p * dli + q * dlr;
            p = temp;
            if (dlr - 1.0).abs() + dli.abs() < EPS {
                break;
            }
            i += 1.0;
            if i > MAXIT as f64 {
                return Err(Error::NoConvergence(format!("Y fraction at nu={nu}, x={x}")));
            }
        }
        let gam = (p - f) / q;
        rjmu = (w / ((p - f) * gam + q)).sqrt().copysign(rjl);
        rymu = rjmu * gam;
        let rymup = rymu * (p + q / gam);
        ry1 = xmu * xi * rymu - rymup;
    }

    let rj = rjl1 * (rjmu / rjl) * RESCALE.powi(-lost);
    for i in 1..=nl {
        let rytemp = (xmu + i as f64) * xi2 * ry1 - rymu;
        rymu = ry1;
        ry1 = rytemp;
    }
    Ok((rj, rymu))
}

/// Hankel's large-argument expansion. Returns None unless the terms stay
/// modest and fall below roundoff before the series starts to diverge.
fn hankel(nu: f64, x: f64) -> Option<(f64, f64)> {
    let mu = 4.0 * nu * nu;
    let (mut p, mut q) = (1.0, 0.0);
    let mut t = 1.0f64;
    let mut k = 1usize;
    loop {
        let odd = (2 * k - 1) as f64;
        let ratio = (mu - odd * odd) / (k as f64 * 8.0 * x);
        t *= ratio;
        if t.abs() > 10.0 || (ratio.abs() >= 1.0 && odd * odd > mu) {
            return None;
        }
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * t;
        } else {
            q += sign * t;
        }
        if t.abs() < 1e-18 {
            break;
        }
        k += 1;
    }
    let a = (0.5 * nu + 0.25) * PI;
    let (sx, cx) = x.sin_cos();
    let (sa, ca) = a.sin_cos();
    let cchi = cx * ca + sx * sa;
    let schi = sx * ca - cx * sa;
    let pref = (2.0 / (PI * x)).sqrt();
    Some((pref * (p * cchi - q * schi), pref * (p * schi + q * cchi)))
}
