//! A quick invariant suite over every module, for the command-line
//! `selftest` and for smoke checks of a build.

use crate::ball_spectrum::{
    ball_eigenvalue, enumerate_spectrum, mode_profile, tau0_eigenvalue, ProblemParams,
};
use crate::error::Result;
use crate::geometry_iso::{isoperimetric_report, shapes, stability_constants};
use crate::hadamard::{criticality_check, hadamard_derivative, scaling_oracle, MultipletSpec, NormalSpeed};
use crate::radial_solver::{concentration_experiment, steklov_determinant_root};
use crate::rayleigh::{
    annulus_trial_quotient, cartesian_oracle_2d, equal_measure_outer, rayleigh_quotient,
    reduced_radial_numerator, PolarGrid, RadialDomain, RadialProfile,
};
use crate::specfun::{bessel_eval, BesselKind};
use serde::Serialize;
use std::f64::consts::PI;
use std::time::Instant;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

fn run(name: &str, f: impl FnOnce() -> Result<(bool, String)>) -> CheckOutcome {
    let start = Instant::now();
    let (passed, detail) = match f() {
        Ok(v) => v,
        Err(e) => (false, format!("error: {e}")),
    };
    CheckOutcome { name: name.to_string(), passed, detail, seconds: start.elapsed().as_secs_f64() }
}

fn rel(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        a.abs()
    } else {
        (a - b).abs() / b.abs()
    }
}

fn fundamental_tone() -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for dim in 2..=5 {
        for tau in [0.1, 1.0, 10.0] {
            let spec = enumerate_spectrum(ProblemParams::new(dim, tau)?, dim + 1)?;
            let second = spec.iter().find(|e| e.first_index <= 2 && 2 < e.first_index + e.multiplicity);
            let lam = second.map(|e| e.lambda).unwrap_or(f64::NAN);
            worst = worst.max(rel(lam, tau));
        }
    }
    Ok((worst <= 1e-10, format!("max relative error {worst:.3e}")))
}

fn second_order_bound() -> Result<(bool, String)> {
    let mut worst = f64::INFINITY;
    for dim in 2..=6 {
        for k in 0..10 {
            let tau = 0.05 * 1.9f64.powi(k);
            worst = worst.min(ball_eigenvalue(ProblemParams::new(dim, tau)?, 2)? / (2.0 * tau));
        }
    }
    Ok((worst >= 1.0, format!("min λ(2)/(2τ) = {worst:.6}")))
}

fn tau_zero_value() -> Result<(bool, String)> {
    let exact = tau0_eigenvalue(2, 2);
    let p = RadialProfile::polynomial_on(&[(2, 6.0), (4, -1.0)], (0.0, 1.0))?;
    let q = rayleigh_quotient(&p, 2, 2, 0.0, RadialDomain::Ball { radius: 1.0 }, &[1.0])?.quotient;
    let ok = exact == 7.2 && (q - 7.2).abs() <= 1e-8 * 7.2;
    Ok((ok, format!("closed form {exact}, quotient {q:.12}")))
}

fn determinant_roots() -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for dim in [2, 3] {
        for tau in [0.5, 1.0, 5.0] {
            for l in 0..=6 {
                let want = ball_eigenvalue(ProblemParams::new(dim, tau)?, l)?;
                let got = steklov_determinant_root(l, dim, tau, (0.5 * want, 2.0 * want + 1.0))?;
                worst = worst.max(if want == 0.0 { got.abs() } else { rel(got, want) });
            }
        }
    }
    Ok((worst <= 1e-9, format!("max relative error {worst:.3e}")))
}

fn concentration() -> Result<(bool, String)> {
    let mut ok = true;
    let mut finals = Vec::new();
    for l in [1, 2] {
        let rows = concentration_experiment(l, 2, 1.0, 2.0 * PI, &[0.08, 0.04, 0.02, 0.01])?;
        ok &= rows.windows(2).all(|w| w[1].rel_error < w[0].rel_error);
        let last = rows.last().map(|r| r.rel_error).unwrap_or(f64::NAN);
        ok &= last <= 0.05;
        finals.push(format!("l={l}: {last:.4}"));
    }
    Ok((ok, format!("final errors {}", finals.join(", "))))
}

fn rayleigh_paths() -> Result<(bool, String)> {
    let mut worst_dual = 0.0f64;
    let mut corpus = vec![
        (RadialProfile::power(2), 2, 0.0),
        (RadialProfile::power(3), 3, 1.0),
        (RadialProfile::polynomial_on(&[(2, 6.0), (4, -1.0)], (0.0, 1.0))?, 2, 0.0),
    ];
    for l in 0..=3 {
        corpus.push((RadialProfile::wrapper(l, 2, 1.0)?, l, 1.0));
    }
    for (p, l, tau) in &corpus {
        let a = reduced_radial_numerator(p, *l, 2, *tau)?.value;
        let b = cartesian_oracle_2d(p, *l, *tau, PolarGrid::default())?.value;
        worst_dual = worst_dual.max(rel(a, b));
    }
    let mut worst_opt = 0.0f64;
    for l in 1..=5 {
        let params = ProblemParams::new(2, 1.0)?;
        let p = RadialProfile::from_ball_mode(mode_profile(params, l)?);
        let q = rayleigh_quotient(&p, l, 2, 1.0, RadialDomain::Ball { radius: 1.0 }, &[1.0])?.quotient;
        worst_opt = worst_opt.max(rel(q, ball_eigenvalue(params, l)?));
    }
    let ok = worst_dual <= 1e-6 && worst_opt <= 1e-8;
    Ok((ok, format!("dual path {worst_dual:.3e}, optimality {worst_opt:.3e}")))
}

fn hadamard_checks() -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for l in 1..=3 {
        for s in 1..=2 {
            let m = MultipletSpec::steklov(l, 1.0, s)?;
            let d = hadamard_derivative(&m, &NormalSpeed::constant(1.0), 1.0)?;
            worst = worst.max(rel(d, scaling_oracle(&m, 1e-4)?));
        }
    }
    let crit_s = criticality_check(&MultipletSpec::steklov(2, 1.0, 1)?)?;
    let crit_n = criticality_check(&MultipletSpec::neumann(2, 1.0, 1)?)?;
    let ok = worst <= 1e-6 && crit_s <= 1e-8 && crit_n <= 1e-6;
    Ok((ok, format!("oracle {worst:.3e}, criticality {crit_s:.1e} / {crit_n:.1e}")))
}

fn isoperimetric_chain() -> Result<(bool, String)> {
    let polys = shapes::corpus();
    let mut failures = 0;
    for (_, p) in &polys {
        let r = isoperimetric_report(p, 1.0)?;
        if !(r.moment_holds && r.upper_bound_holds && r.quantitative_holds) {
            failures += 1;
        }
    }
    let disk = isoperimetric_report(&shapes::regular(128, 1.0), 1.0)?;
    let gap = rel(disk.lambda2_upper_bound, disk.lambda2_star);
    let (c, d) = stability_constants(2, 2.0)?;
    let ok = failures == 0 && gap <= 0.005 && (c - 0.15533).abs() < 1e-5 && (d - 0.077665).abs() < 1e-6;
    Ok((ok, format!("{} polygons, {failures} failures, disk gap {gap:.2e}", polys.len())))
}

fn sum_rule() -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for dim in 2..=4 {
        for tau in [0.3, 1.0, 8.0] {
            let spec = enumerate_spectrum(ProblemParams::new(dim, tau)?, dim + 1)?;
            let mut sum = 0.0;
            for e in &spec {
                for idx in e.first_index..e.first_index + e.taken {
                    if idx >= 2 {
                        sum += 1.0 / e.lambda;
                    }
                }
            }
            worst = worst.max(rel(sum, dim as f64 / tau));
        }
    }
    Ok((worst <= 1e-12, format!("max relative error {worst:.3e}")))
}

fn annulus_probe() -> Result<(bool, String)> {
    let mut best = 0.0f64;
    for i in 1..=10 {
        let a = 0.05 * i as f64;
        best = best.max(annulus_trial_quotient(a, equal_measure_outer(a, 2), 2)?.quotient);
    }
    Ok((best < 7.2, format!("largest annulus quotient {best:.6}")))
}

fn bessel_wronskian() -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for nu in [0.0, 0.5, 2.0, 7.5] {
        for x in [0.3, 2.0, 15.0] {
            let i0 = bessel_eval(BesselKind::I, nu, x, false)?;
            let i1 = bessel_eval(BesselKind::I, nu + 1.0, x, false)?;
            let k0 = bessel_eval(BesselKind::K, nu, x, false)?;
            let k1 = bessel_eval(BesselKind::K, nu + 1.0, x, false)?;
            worst = worst.max(rel(i0 * k1 + i1 * k0, 1.0 / x));
        }
    }
    Ok((worst <= 1e-13, format!("I·K Wronskian {worst:.3e}")))
}

/// Every check in a fixed order.
pub fn run_selftest() -> Vec<CheckOutcome> {
    vec![
        run("bessel-wronskian", bessel_wronskian),
        run("fundamental-tone", fundamental_tone),
        run("second-order-bound", second_order_bound),
        run("tau-zero-value", tau_zero_value),
        run("determinant-roots", determinant_roots),
        run("mass-concentration", concentration),
        run("rayleigh-paths", rayleigh_paths),
        run("hadamard", hadamard_checks),
        run("isoperimetric-chain", isoperimetric_chain),
        run("sum-rule", sum_rule),
        run("annulus-probe", annulus_probe),
    ]
}
