//! Test-only power-series evaluation of i_l(z) = z^{1−N/2} I_{N/2−1+l}(z)
//! and its derivatives, written independently of the library kernels.

/// Γ(x) for x a positive integer or half-integer.
pub fn gamma_half(x: f64) -> f64 {
    let twice = (2.0 * x).round() as i64;
    assert!((2.0 * x - twice as f64).abs() < 1e-12 && twice > 0);
    let (mut g, mut t) = if twice % 2 == 0 {
        (1.0, 1.0)
    } else {
        (std::f64::consts::PI.sqrt(), 0.5)
    };
    while t < x - 0.25 {
        g *= t;
        t += 1.0;
    }
    g
}

/// d-th derivative of i_l at z (N even or odd).
pub fn i_wrapper(l: usize, dim: usize, d: usize, z: f64) -> f64 {
    let nu = dim as f64 / 2.0 - 1.0 + l as f64;
    let mut sum = 0.0;
    for k in 0..200usize {
        let p = l + 2 * k;
        if p < d {
            continue;
        }
        let mut fall = 1.0;
        for j in 0..d {
            fall *= (p - j) as f64;
        }
        let coef = 1.0
            / (2f64.powf(nu + 2.0 * k as f64)
                * gamma_half(k as f64 + 1.0)
                * gamma_half(nu + k as f64 + 1.0));
        let term = coef * fall * z.powi((p - d) as i32);
        sum += term;
        if k > 5 && term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}
