//! Spherical-harmonic bookkeeping: multiplicities, the normalized circle
//! harmonics and deterministic point sets on S^{N−1}.

use crate::error::{invalid, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use std::f64::consts::{PI, TAU};

/// One member of the order-l harmonic basis in dimension N.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HarmonicLabel {
    pub l: usize,
    pub dim: usize,
    pub index: usize,
}

impl HarmonicLabel {
    pub fn new(l: usize, dim: usize, index: usize) -> Result<Self> {
        if dim < 2 {
            return invalid(format!("dimension {dim} below 2"));
        }
        let m = multiplicity(l, dim);
        if index >= m {
            return invalid(format!("index {index} out of range for multiplicity {m}"));
        }
        Ok(HarmonicLabel { l, dim, index })
    }
}

fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, j| acc * (n - j) as u128 / (j as u128 + 1))
}

/// Dimension of the space of degree-l spherical harmonics on S^{N−1}.
pub fn multiplicity(l: usize, dim: usize) -> usize {
    assert!(dim >= 2, "dimension must be at least 2");
    match l {
        0 => 1,
        1 => dim,
        _ => (binom(l + dim - 1, dim - 1) - binom(l + dim - 3, dim - 1)) as usize,
    }
}

/// Y_l on the unit circle with ∫₀^{2π} Y² dθ = 1; index 0 is the cosine.
pub fn circle_harmonic(l: usize, index: usize, theta: f64) -> Result<f64> {
    match (l, index) {
        (0, 0) => Ok(1.0 / TAU.sqrt()),
        (0, _) => invalid("the constant harmonic has a single member"),
        (_, 0) => Ok((l as f64 * theta).cos() / PI.sqrt()),
        (_, 1) => Ok((l as f64 * theta).sin() / PI.sqrt()),
        _ => invalid(format!("circle harmonic index {index} is not 0 or 1")),
    }
}

/// First three θ-derivatives (Y, Y_θ, Y_θθ) of a circle harmonic.
pub fn circle_harmonic_derivatives(l: usize, index: usize, theta: f64) -> Result<[f64; 3]> {
    let y = circle_harmonic(l, index, theta)?;
    let lf = l as f64;
    let dy = match index {
        0 => -lf * (lf * theta).sin() / PI.sqrt(),
        _ => lf * (lf * theta).cos() / PI.sqrt(),
    };
    Ok([y, if l == 0 { 0.0 } else { dy }, -lf * lf * y])
}

/// Surface measure |S^{N−1}| = 2π^{N/2}/Γ(N/2).
pub fn sphere_area(dim: usize) -> f64 {
    2.0 * PI.powf(dim as f64 / 2.0) / crate::specfun::gamma(dim as f64 / 2.0)
}

/// Volume of the unit ball, |S^{N−1}|/N.
pub fn ball_volume(dim: usize) -> f64 {
    sphere_area(dim) / dim as f64
}

const GOLDEN_FRAC: f64 = 0.618_033_988_749_894_8;
const PLASTIC: f64 = 1.324_717_957_244_746;

/// Deterministic points on S^{N−1}: a shifted Kronecker sequence for N = 2
/// and an equal-area mapped R2 sequence for N = 3. Higher dimensions
/// normalize seeded Gaussian vectors.
pub fn sphere_sample(dim: usize, count: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
    if dim < 2 {
        return invalid(format!("dimension {dim} below 2"));
    }
    if count == 0 {
        return invalid("sample count must be positive");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = match dim {
        2 => {
            let s: f64 = rng.random();
            (0..count)
                .map(|j| {
                    let t = TAU * (s + j as f64 * GOLDEN_FRAC).fract();
                    vec![t.cos(), t.sin()]
                })
                .collect()
        }
        3 => {
            let (s1, s2): (f64, f64) = (rng.random(), rng.random());
            let (a1, a2) = (1.0 / PLASTIC, 1.0 / (PLASTIC * PLASTIC));
            (0..count)
                .map(|j| {
                    let u = (s1 + j as f64 * a1).fract();
                    let v = (s2 + j as f64 * a2).fract();
                    let z = 1.0 - 2.0 * u;
                    let rho = (1.0 - z * z).max(0.0).sqrt();
                    let phi = TAU * v;
                    normalize(vec![rho * phi.cos(), rho * phi.sin(), z])
                })
                .collect()
        }
        _ => (0..count)
            .map(|_| loop {
                let v: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
                if v.iter().map(|x| x * x).sum::<f64>() > 1e-20 {
                    break normalize(v);
                }
            })
            .collect(),
    };
    Ok(points)
}

fn normalize(mut v: Vec<f64>) -> Vec<f64> {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter_mut().for_each(|x| *x /= n);
    v
}
