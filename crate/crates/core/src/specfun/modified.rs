//! Modified Bessel functions I_ν and K_ν of real order ν ≥ 0.

use super::gamma::{series_prefactor, temme_gammas};
use crate::error::{Error, Result};
use std::f64::consts::PI;

const EPS: f64 = 1e-16;
const FPMIN: f64 = 1e-300;
const MAXIT: usize = 100_000;
const RESCALE: f64 = 1e200;

/// Ascending series for I_ν(z). All terms positive.
pub(crate) fn series_i(nu: f64, z: f64) -> f64 {
    let q = 0.25 * z * z;
    let mut term = series_prefactor(nu, z);
    let mut sum = term;
    let mut k = 1.0;
    while term > EPS * 0.25 * sum && k < 2000.0 {
        term *= q / (k * (nu + k));
        sum += term;
        k += 1.0;
    }
    sum
}

/// Exponentially scaled pair (e^{−x} I_ν(x), e^{x} K_ν(x)) for x > 0.
///
/// Temme's series for K at small x, Steed's continued fraction otherwise;
/// I comes from the Wronskian and the continued fraction for I_{ν+1}/I_ν.
pub(crate) fn ik_scaled(nu: f64, x: f64) -> Result<(f64, f64)> {
    let nl = (nu + 0.5).floor() as usize;
    let xmu = nu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;

    // CF1 for I'_ν / I_ν
    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut c = h;
    let mut converged = false;
    for _ in 0..MAXIT {
        b += xi2;
        d = 1.0 / (b + d);
        c = b + 1.0 / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence(format!("I ratio at nu={nu}, x={x}")));
    }

    // downward recurrence to order μ, rescaled to stay finite
    let ril1 = FPMIN;
    let mut ril = ril1;
    let mut ripl = h * ril;
    let mut lost = 0i32;
    let mut fact = nu * xi;
    for _ in 0..nl {
        let ritemp = fact * ril + ripl;
        fact -= xi;
        ripl = fact * ritemp + ril;
        ril = ritemp;
        if ril.abs() > RESCALE {
            ril /= RESCALE;
            ripl /= RESCALE;
            lost += 1;
        }
    }
    let f = ripl / ril;

    let (rkmu, rk1, scaled) = if x < 2.0 {
        let x2 = 0.5 * x;
        let pimu = PI * xmu;
        let fact = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
        let d = -x2.ln();
        let e = xmu * d;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = temme_gammas(xmu);
        let mut ff = fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let mut sum = ff;
        let ee = e.exp();
        let mut p = 0.5 * ee / gampl;
        let mut q = 0.5 / (ee * gammi);
        let mut c = 1.0;
        let dd = x2 * x2;
        let mut sum1 = p;
        let mut i = 1.0;
        loop {
            ff = (i * ff + p + q) / (i * i - xmu2);
            c *= dd / i;
            p /= i - xmu;
            q /= i + xmu;
            let del = c * ff;
            sum += del;
            sum1 += c * (p - i * ff);
            if del.abs() < sum.abs() * EPS {
                break;
            }
            i += 1.0;
            if i > MAXIT as f64 {
                return Err(Error::NoConvergence(format!("K series at nu={nu}, x={x}")));
            }
        }
        (sum, sum1 * xi2, false)
    } else {
        let mut b = 2.0 * (1.0 + x);
        let mut d = 1.0 / b;
        let mut delh = d;
        let mut h = d;
        let mut q1 = 0.0;
        let mut q2 = 1.0;
        let a1 = 0.25 - xmu2;
        let mut q = a1;
        let mut c = a1;
        let mut a = -a1;
        let mut s = 1.0 + q * delh;
        let mut i = 2.0;
        loop {
            a -= 2.0 * (i - 1.0);
            c = -a * c / i;
            let qnew = (q1 - b * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += c * qnew;
            b += 2.0;
            d = 1.0 / (b + a * d);
            delh *= b * d - 1.0;
            h += delh;
            let dels = q * delh;
            s += dels;
            if (dels / s).abs() < EPS {
                break;
            }
            i += 1.0;
            if i > MAXIT as f64 {
                return Err(Error::NoConvergence(format!("K fraction at nu={nu}, x={x}")));
            }
        }
        let h = a1 * h;
        let rkmu = (PI / (2.0 * x)).sqrt() / s;
        (rkmu, rkmu * (xmu + x + 0.5 - h) * xi, true)
    };

    let rkmup = xmu * xi * rkmu - rk1;
    let rimu = xi / (f * rkmu - rkmup);
    let ri = rimu * ril1 / ril * RESCALE.powi(-lost);
    let mut rkmu = rkmu;
    let mut rk1 = rk1;
    for i in 1..=nl {
        let rktemp = (xmu + i as f64) * xi2 * rk1 + rkmu;
        rkmu = rk1;
        rk1 = rktemp;
    }
    if scaled {
        Ok((ri, rkmu))
    } else {
        Ok((ri * (-x).exp(), rkmu * x.exp()))
    }
}
