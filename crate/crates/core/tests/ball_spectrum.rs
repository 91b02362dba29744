mod support;

use steklov_core::ball_spectrum::*;
use support::series::i_wrapper;

fn p(dim: usize, tau: f64) -> ProblemParams {
    ProblemParams::new(dim, tau).unwrap()
}

#[test]
fn order_one_formula_returns_tension() {
    for &tau in &[0.1, 1.0, 10.0] {
        for dim in 2..=5 {
            let v = eigenvalue_formula(p(dim, tau), 1).unwrap();
            assert!((v / tau - 1.0).abs() <= 1e-12, "N={dim} tau={tau}: {v}");
        }
    }
}

#[test]
fn second_order_formula_against_series_oracle() {
    // λ_(2) = 2(τ i2'' − 2 i2)^{-1}[6N i2 − √τ(5N−1+τ) i2' + τ(2N−1+τ) i2'' + τ√τ i2''']
    for &(dim, tau) in &[(2usize, 1.0f64), (2, 0.3), (3, 4.0), (4, 7.5)] {
        let s = tau.sqrt();
        let n = dim as f64;
        let i = |d| i_wrapper(2, dim, d, s);
        let want = 2.0 / (tau * i(2) - 2.0 * i(0))
            * (6.0 * n * i(0) - s * (5.0 * n - 1.0 + tau) * i(1)
                + tau * (2.0 * n - 1.0 + tau) * i(2)
                + tau * s * i(3));
        let got = closed_form_eigenvalue(p(dim, tau), 2).unwrap();
        assert!((got / want - 1.0).abs() < 1e-12, "N={dim} tau={tau}: {got} vs {want}");
    }
}

#[test]
fn plane_values_at_unit_tension() {
    // independently derived by direct elimination of the boundary system
    let want = [9.219279016865, 33.928990643586, 84.145932128490, 168.869935313443];
    for (l, w) in (2..=5).zip(want) {
        let v = closed_form_eigenvalue(p(2, 1.0), l).unwrap();
        assert!((v / w - 1.0).abs() < 1e-11, "l={l}: {v}");
    }
}

#[test]
fn ladder_form_matches_formula() {
    for dim in 2..=5 {
        for &tau in &[0.05, 0.5, 1.0, 5.0, 30.0] {
            for l in 0..=10 {
                let a = eigenvalue_formula(p(dim, tau), l).unwrap();
                let b = eigenvalue_ladder_form(p(dim, tau), l).unwrap();
                assert!((a - b).abs() <= 1e-10 * b.abs().max(1e-300), "N={dim} tau={tau} l={l}: {a} {b}");
            }
        }
    }
}

#[test]
fn second_order_at_least_twice_tension() {
    let mut n = 0;
    for dim in 2..=4 {
        for k in 0..17 {
            let tau = 0.1 * (500f64).powf(k as f64 / 16.0);
            let v = closed_form_eigenvalue(p(dim, tau), 2).unwrap();
            assert!(v >= 2.0 * tau, "N={dim} tau={tau}: {v}");
            n += 1;
        }
    }
    assert!(n >= 50);
}

#[test]
fn strictly_increasing_from_order_two() {
    for dim in [2, 3, 4] {
        for &tau in &[0.2, 1.0, 8.0] {
            let vals: Vec<f64> =
                (2..=11).map(|l| closed_form_eigenvalue(p(dim, tau), l).unwrap()).collect();
            assert!(vals.windows(2).all(|w| w[1] > w[0]), "N={dim} tau={tau}: {vals:?}");
        }
    }
}

#[test]
fn vanishing_tension_limit() {
    for dim in [2, 3] {
        for l in 2..=5 {
            let limit = tau0_eigenvalue(dim, l);
            let d3 = closed_form_eigenvalue(p(dim, 1e-3), l).unwrap() - limit;
            let d4 = closed_form_eigenvalue(p(dim, 1e-4), l).unwrap() - limit;
            let ratio = d3 / d4;
            assert!((ratio - 10.0).abs() < 0.1, "N={dim} l={l}: ratio {ratio}");
        }
    }
}

#[test]
fn dilation_law_and_sum_rule() {
    for dim in 2..=4 {
        for &tau in &[0.5, 2.0] {
            for &radius in &[0.5, 1.7] {
                let v = dilated_eigenvalue(p(dim, tau), 1, radius).unwrap();
                assert!((v - tau / radius).abs() < 1e-14 * tau / radius);
            }
            let s = enumerate_spectrum(p(dim, tau), dim + 1).unwrap();
            let mut sum = 0.0;
            for e in &s {
                for j in 0..e.taken {
                    if e.first_index + j >= 2 {
                        sum += 1.0 / e.lambda;
                    }
                }
            }
            assert!((sum - dim as f64 / tau).abs() <= 1e-12 * dim as f64 / tau);
        }
    }
}

#[test]
fn coefficient_ratio_against_series() {
    let want = -2.0 / i_wrapper(2, 2, 2, 1.0);
    let got = mode_coefficient_ratio(p(2, 1.0), 2).unwrap();
    assert!((got / want - 1.0).abs() < 1e-13);
    for &(dim, tau, l) in &[(2usize, 1.0f64, 3usize), (3, 2.0, 4), (4, 0.7, 2)] {
        let prof = mode_profile(p(dim, tau), l).unwrap();
        let i2 = i_wrapper(l, dim, 2, tau.sqrt());
        let lf = l as f64;
        assert!((prof.b * tau * i2 - lf * (1.0 - lf) * prof.a).abs() < 1e-13 * prof.a.abs());
        assert!((prof.eval(1.0, 0).unwrap() - 1.0).abs() < 1e-14);
        // boundary rows of the Steklov problem at r = 1
        let r = prof.derivatives(1.0).unwrap();
        assert!(r[2].abs() < 1e-12 * r[1].abs().max(1.0));
        let k = lf * (lf + dim as f64 - 2.0);
        let n = dim as f64;
        let op = -r[3] - (n - 1.0) * r[2] + (tau + 2.0 * k + n - 1.0) * r[1] - 3.0 * k * r[0];
        let lam = closed_form_eigenvalue(p(dim, tau), l).unwrap();
        assert!((op / lam - 1.0).abs() < 1e-11, "N={dim} tau={tau} l={l}: {op} {lam}");
    }
}

#[test]
fn spectrum_is_nondecreasing() {
    for dim in 2..=4 {
        for &tau in &[0.0, 0.5, 3.0] {
            let s = enumerate_spectrum(p(dim, tau), 40).unwrap();
            assert!(s.windows(2).all(|w| w[1].lambda >= w[0].lambda));
            let total: usize = s.iter().map(|e| e.taken).sum();
            assert_eq!(total, 40);
        }
    }
}
