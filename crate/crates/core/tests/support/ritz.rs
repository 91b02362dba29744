//! Rayleigh–Ritz oracle for the radial Neumann problem with layered
//! density. Trial functions R = r^l g(r²) with g a C¹ piecewise Legendre
//! expansion in s = r², elements split at the density interfaces.

use nalgebra::{DMatrix, SymmetricEigen};

/// Gauss–Legendre nodes and weights on [−1, 1] by Golub–Welsch.
pub fn gauss_nodes(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut j = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        let b = i as f64 / ((4 * i * i - 1) as f64).sqrt();
        j[(i, i - 1)] = b;
        j[(i - 1, i)] = b;
    }
    let eig = SymmetricEigen::new(j);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| (eig.eigenvalues[i], 2.0 * eig.eigenvectors[(0, i)].powi(2)))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs.into_iter().unzip()
}

/// P_n(t), P_n'(t), P_n''(t) for n = 0..=p.
fn legendre_table(p: usize, t: f64) -> Vec<[f64; 3]> {
    let mut v = vec![[0.0; 3]; p + 1];
    v[0] = [1.0, 0.0, 0.0];
    if p >= 1 {
        v[1] = [t, 1.0, 0.0];
    }
    for n in 1..p {
        let nf = n as f64;
        let val = ((2.0 * nf + 1.0) * t * v[n][0] - nf * v[n - 1][0]) / (nf + 1.0);
        let d1 = v[n - 1][1] + (2.0 * nf + 1.0) * v[n][0];
        let d2 = v[n - 1][2] + (2.0 * nf + 1.0) * v[n][1];
        v[n + 1] = [val, d1, d2];
    }
    v
}

pub struct RitzProblem {
    pub l: usize,
    pub dim: usize,
    pub tau: f64,
    /// Element ends in s = r², starting at 0 and ending at 1.
    pub s_breaks: Vec<f64>,
    /// Density on each element.
    pub rho: Vec<f64>,
    pub degree: usize,
}

impl RitzProblem {
    /// Elements from interface radii and layer densities, each layer cut
    /// into `split` equal pieces in s.
    pub fn layered(
        l: usize,
        dim: usize,
        tau: f64,
        interfaces: &[f64],
        values: &[f64],
        degree: usize,
        split: usize,
    ) -> Self {
        let mut ends = vec![0.0];
        ends.extend(interfaces.iter().map(|r| r * r));
        ends.push(1.0);
        let mut s_breaks = vec![0.0];
        let mut rho = Vec::new();
        for k in 0..values.len() {
            for j in 1..=split {
                s_breaks.push(ends[k] + (ends[k + 1] - ends[k]) * j as f64 / split as f64);
                rho.push(values[k]);
            }
        }
        RitzProblem { l, dim, tau, s_breaks, rho, degree }
    }

    /// Local basis on one element in t ∈ [−1, 1]: (g, dg/dt, d²g/dt²) for
    /// the four Hermite cubics followed by the bubbles (1 − t²)² P_j(t).
    fn local_basis(&self, t: f64) -> Vec<[f64; 3]> {
        let p = self.degree;
        let mut out = vec![
            [(t * t * t - 3.0 * t + 2.0) / 4.0, (3.0 * t * t - 3.0) / 4.0, 1.5 * t],
            [(t * t * t - t * t - t + 1.0) / 4.0, (3.0 * t * t - 2.0 * t - 1.0) / 4.0, (6.0 * t - 2.0) / 4.0],
            [(-t * t * t + 3.0 * t + 2.0) / 4.0, (3.0 - 3.0 * t * t) / 4.0, -1.5 * t],
            [(t * t * t + t * t - t - 1.0) / 4.0, (3.0 * t * t + 2.0 * t - 1.0) / 4.0, (6.0 * t + 2.0) / 4.0],
        ];
        let q = [(1.0 - t * t).powi(2), -4.0 * t * (1.0 - t * t), 12.0 * t * t - 4.0];
        for pj in legendre_table(p.saturating_sub(4), t).into_iter().take(p.saturating_sub(3)) {
            out.push([
                q[0] * pj[0],
                q[1] * pj[0] + q[0] * pj[1],
                q[2] * pj[0] + 2.0 * q[1] * pj[1] + q[0] * pj[2],
            ]);
        }
        out
    }

    /// Sorted generalized eigenvalues of stiffness versus weighted mass.
    pub fn eigenvalues(&self) -> Vec<f64> {
        assert!(self.degree >= 3);
        let p = self.degree;
        let ne = self.rho.len();
        let nb = p - 3;
        let nd = 2 * (ne + 1) + ne * nb;
        let mut kmat = DMatrix::<f64>::zeros(nd, nd);
        let mut mmat = DMatrix::<f64>::zeros(nd, nd);
        let (gx, gw) = gauss_nodes(2 * p + self.l + 12);
        let lf = self.l as f64;
        let n = self.dim as f64;
        let k = lf * (lf + n - 2.0);
        for e in 0..ne {
            let (sa, sb) = (self.s_breaks[e], self.s_breaks[e + 1]);
            let (ra, rb) = (sa.sqrt(), sb.sqrt());
            let dtds = 2.0 / (sb - sa);
            // global index and multiplier of each local function; slope
            // functions are scaled so their degree of freedom is dg/ds
            let mut map = vec![
                (2 * e, 1.0),
                (2 * e + 1, 1.0 / dtds),
                (2 * e + 2, 1.0),
                (2 * e + 3, 1.0 / dtds),
            ];
            map.extend((0..nb).map(|j| (2 * (ne + 1) + e * nb + j, 1.0)));
            for (&x, &w) in gx.iter().zip(&gw) {
                let r = 0.5 * (ra + rb) + 0.5 * (rb - ra) * x;
                let wr = 0.5 * (rb - ra) * w * r.powf(n - 1.0);
                let s = r * r;
                let t = -1.0 + (s - sa) * dtds;
                let rl = r.powf(lf);
                let f: Vec<[f64; 3]> = self
                    .local_basis(t)
                    .iter()
                    .zip(&map)
                    .map(|(&[g, g1t, g2t], &(_, c))| {
                        let g = c * g;
                        let g1 = c * g1t * dtds;
                        let g2 = c * g2t * dtds * dtds;
                        let r0 = rl * g;
                        let r1 = lf * r.powf(lf - 1.0) * g + 2.0 * r.powf(lf + 1.0) * g1;
                        let r2 = lf * (lf - 1.0) * r.powf(lf - 2.0) * g
                            + (4.0 * lf + 2.0) * rl * g1
                            + 4.0 * r.powf(lf + 2.0) * g2;
                        [r0, r1, r2]
                    })
                    .collect();
                let r4 = r.powi(4);
                for (a, &(ia, _)) in f.iter().zip(&map) {
                    for (b, &(ib, _)) in f.iter().zip(&map) {
                        let qa = r * a[1] - 1.5 * a[0];
                        let qb = r * b[1] - 1.5 * b[0];
                        let stiff = 2.0 * k / r4 * qa * qb
                            + k * (k - n - 0.5) / r4 * a[0] * b[0]
                            + self.tau * k / (r * r) * a[0] * b[0]
                            + a[2] * b[2]
                            + (n - 1.0) / (r * r) * a[1] * b[1]
                            + self.tau * a[1] * b[1];
                        kmat[(ia, ib)] += wr * stiff;
                        mmat[(ia, ib)] += wr * self.rho[e] * a[0] * b[0];
                    }
                }
            }
        }
        let d: Vec<f64> = (0..nd).map(|i| 1.0 / mmat[(i, i)].sqrt()).collect();
        for i in 0..nd {
            for j in 0..nd {
                kmat[(i, j)] *= d[i] * d[j];
                mmat[(i, j)] *= d[i] * d[j];
            }
        }
        // largest eigenvalues of (K + σM)⁻¹M are the accurate ones
        let sigma = 1.0;
        let shifted = &kmat + sigma * &mmat;
        let chol = shifted.cholesky().expect("shifted stiffness is positive definite");
        let lower = chol.l();
        let y = lower.solve_lower_triangular(&mmat).expect("nonsingular factor");
        let b = lower
            .solve_lower_triangular(&y.transpose())
            .expect("nonsingular factor");
        let b = 0.5 * (&b + b.transpose());
        let ev: Vec<f64> =
            SymmetricEigen::new(b).eigenvalues.iter().map(|mu| 1.0 / mu - sigma).collect();
        let mut ev = ev;
        ev.sort_by(|x, y| x.total_cmp(y));
        ev
    }
}
