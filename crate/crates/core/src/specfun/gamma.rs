//! Gamma function helpers built on the Taylor series of 1/Γ.

/// Coefficients a_k of 1/Γ(x) = Σ_{k≥1} a_k x^k.
const RGAMMA_TAYLOR: [f64; 30] = [
    1.0,
    0.577215664901532860607,
    -0.655878071520253881077,
    -0.042002635034095235529,
    0.166538611382291489502,
    -0.0421977345555443367482,
    -0.00962197152787697356211,
    0.0072189432466630995424,
    -0.00116516759185906511211,
    -0.000215241674114950972816,
    0.000128050282388116186153,
    -0.0000201348547807882386557,
    -0.00000125049348214267065735,
    0.00000113302723198169588237,
    -2.05633841697760710345e-7,
    6.11609510448141581786e-9,
    5.00200764446922293006e-9,
    -1.18127457048702014459e-9,
    1.04342671169110051049e-10,
    7.78226343990507125405e-12,
    -3.69680561864220570819e-12,
    5.10037028745447597902e-13,
    -2.05832605356650678322e-14,
    -5.34812253942301798237e-15,
    1.22677862823826079016e-15,
    -1.18125930169745876951e-16,
    1.18669225475160033258e-18,
    1.41238065531803178156e-18,
    -2.29874568443537020659e-19,
    1.71440632192733743338e-20,
];

/// 1/Γ(1+x) for |x| ≤ 1.
pub(crate) fn rgamma1p(x: f64) -> f64 {
    RGAMMA_TAYLOR.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// The pair (Γ₁, Γ₂) of Temme's method for |μ| ≤ 1/2, together with
/// 1/Γ(1+μ) and 1/Γ(1−μ).
pub(crate) fn temme_gammas(mu: f64) -> (f64, f64, f64, f64) {
    let gampl = rgamma1p(mu);
    let gammi = rgamma1p(-mu);
    let mu2 = mu * mu;
    // odd part of rgamma1p, divided by μ, with the sign flipped
    let mut gam1 = 0.0;
    for k in (1..RGAMMA_TAYLOR.len()).step_by(2).rev() {
        gam1 = gam1 * mu2 + RGAMMA_TAYLOR[k];
    }
    (-gam1, 0.5 * (gammi + gampl), gampl, gammi)
}

/// Γ(x) for x > 0. Accurate to a few ulps for moderate x; overflows to
/// infinity past x ≈ 171.6.
pub fn gamma(x: f64) -> f64 {
    assert!(x > 0.0, "gamma is only provided on the positive axis");
    let n = x.floor();
    let f = x - n;
    if f == 0.0 {
        return (1..n as u64).fold(1.0, |acc, j| acc * j as f64);
    }
    let base = 1.0 / rgamma1p(f);
    if n == 0.0 {
        return base / f;
    }
    (1..n as u64).fold(base, |acc, j| acc * (f + j as f64))
}

/// 1/Γ(ν+1) · (z/2)^ν computed without forming either factor separately.
pub(crate) fn series_prefactor(nu: f64, z: f64) -> f64 {
    let n = nu.floor();
    let f = nu - n;
    let half = 0.5 * z;
    let mut t = if f == 0.0 { 1.0 } else { half.powf(f) * rgamma1p(f) };
    for j in 1..=(n as u64) {
        t *= half / (f + j as f64);
    }
    t
}
