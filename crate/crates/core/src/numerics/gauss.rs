use crate::error::{Error, Result};

/// Gauss–Legendre rule on [−1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes by Newton iteration on P_n from Chebyshev-like starting points.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    /// Rule mapped to [a, b].
    pub fn apply<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> f64 {
        let h = 0.5 * (b - a);
        let c = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(c + h * x))
            .sum::<f64>()
            * h
    }
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let d = n as f64 * (x * p - p0) / (x * x - 1.0);
    (p, d)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
}

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

const MAX_SEGMENTS: usize = 20_000;

/// Globally adaptive Gauss–Legendre quadrature on [a, b].
///
/// Each segment is estimated with 10- and 20-point rules; the segment with
/// the largest error is bisected until the summed error is below
/// max(rel_tol·|I|, abs_tol). Breakpoints inside (a, b) are always segment
/// ends, and a left end at 0 is split geometrically first.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    rel_tol: f64,
    abs_tol: f64,
) -> Result<QuadResult> {
    if !(a < b) {
        return Err(Error::InvalidArgument(format!("empty interval [{a}, {b}]")));
    }
    let lo = GaussLegendre::new(10);
    let hi = GaussLegendre::new(20);
    let mut cuts = vec![a];
    cuts.extend(breakpoints.iter().copied().filter(|&x| x > a && x < b));
    cuts.push(b);
    cuts.sort_by(|x, y| x.total_cmp(y));
    cuts.dedup();
    if a == 0.0 {
        let c = cuts[1];
        cuts.splice(1..1, [c / 4096.0, c / 256.0, c / 16.0]);
    }
    let eval = |x0: f64, x1: f64| -> Result<Segment> {
        let g1 = lo.apply(&f, x0, x1);
        let g2 = hi.apply(&f, x0, x1);
        if !g2.is_finite() || !g1.is_finite() {
            return Err(Error::Divergent { at: x0 });
        }
        Ok(Segment { a: x0, b: x1, value: g2, error: (g2 - g1).abs() })
    };
    let mut segs: Vec<Segment> = cuts.windows(2).map(|w| eval(w[0], w[1])).collect::<Result<_>>()?;
    loop {
        let value: f64 = segs.iter().map(|s| s.value).sum();
        let error: f64 = segs.iter().map(|s| s.error).sum();
        let target = (rel_tol * value.abs()).max(abs_tol);
        if error <= target {
            return Ok(QuadResult { value, error });
        }
        if segs.len() >= MAX_SEGMENTS {
            return Err(Error::RefineNeeded { tol: target, estimate: error });
        }
        let (ix, _) = segs
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .expect("segments are never empty");
        let s = segs.swap_remove(ix);
        let mid = 0.5 * (s.a + s.b);
        if mid <= s.a || mid >= s.b || (s.b - s.a) < 1e-15 * (b - a) {
            return Err(Error::Divergent { at: s.a });
        }
        segs.push(eval(s.a, mid)?);
        segs.push(eval(mid, s.b)?);
    }
}
