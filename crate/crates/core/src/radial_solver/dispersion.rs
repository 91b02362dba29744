use super::basis::{layer_basis, BasisMember, LayerBasis};
use super::density::LayeredDensity;
use crate::error::{invalid, Error, Result};
use crate::numerics::brent;
use nalgebra::DMatrix;
use serde::Serialize;

/// One unknown of the interface system.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub(crate) struct Column {
    layer: usize,
    member: BasisMember,
    shift: f64,
    /// Multiplier applied to the column (reciprocal max-norm).
    scale: f64,
}

pub(crate) struct Assembly {
    pub matrix: DMatrix<f64>,
    pub columns: Vec<Column>,
}

/// The Neumann boundary operator τR' + k(R'−R) − (ΔR)' at r = 1.
fn neumann_row(v: &[f64; 4], l: usize, dim: usize, tau: f64) -> f64 {
    let k = (l * (l + dim - 2)) as f64;
    let n = dim as f64;
    -v[3] - (n - 1.0) * v[2] + (tau + 2.0 * k + n - 1.0) * v[1] - 3.0 * k * v[0]
}

pub(crate) fn assemble(
    l: usize,
    dim: usize,
    tau: f64,
    lambda: f64,
    density: &LayeredDensity,
) -> Result<Assembly> {
    if !(lambda >= 0.0 && lambda.is_finite()) {
        return invalid(format!("lambda must be non-negative, got {lambda}"));
    }
    if density.dim() != dim {
        return invalid("density dimension differs from the problem dimension");
    }
    let layers = density.num_layers();
    let bases: Vec<LayerBasis> = density
        .values()
        .iter()
        .map(|&rho| layer_basis(l, dim, tau, lambda, rho))
        .collect::<Result<_>>()?;
    let mut columns = Vec::new();
    for (k, basis) in bases.iter().enumerate() {
        let (inner, outer) = density.layer_bounds(k);
        let idx: Vec<usize> = if k == 0 { basis.regular_indices() } else { (0..4).collect() };
        for i in idx {
            let m = basis.members[i];
            let g = m.growth();
            let shift = if g > 0.0 { g * outer } else { g * inner };
            columns.push(Column { layer: k, member: m, shift, scale: 1.0 });
        }
    }
    let n = columns.len();
    debug_assert_eq!(n, 4 * layers - 2);
    let mut matrix = DMatrix::<f64>::zeros(n, n);
    for (j, col) in columns.iter().enumerate() {
        let (inner, outer) = density.layer_bounds(col.layer);
        if col.layer > 0 {
            let v = col.member.eval_shifted(l, dim, inner, col.shift)?;
            let row0 = 4 * (col.layer - 1);
            for d in 0..4 {
                matrix[(row0 + d, j)] = -v[d];
            }
        }
        let v = col.member.eval_shifted(l, dim, outer, col.shift)?;
        if col.layer + 1 < layers {
            let row0 = 4 * col.layer;
            for d in 0..4 {
                matrix[(row0 + d, j)] = v[d];
            }
        } else {
            matrix[(n - 2, j)] = v[2];
            matrix[(n - 1, j)] = neumann_row(&v, l, dim, tau);
        }
    }
    for (j, col) in columns.iter_mut().enumerate() {
        let m = matrix.column(j).amax();
        if !m.is_finite() {
            return Err(Error::Overflow(format!("column {j} at lambda {lambda}")));
        }
        if m > 0.0 {
            col.scale = 1.0 / m;
            matrix.column_mut(j).scale_mut(col.scale);
        }
    }
    Ok(Assembly { matrix, columns })
}

/// Interface-matching matrix whose kernel holds the layer coefficients of
/// Neumann eigenmodes. Columns are scaled to unit max-norm.
pub fn neumann_dispersion_matrix(
    l: usize,
    dim: usize,
    tau: f64,
    lambda: f64,
    density: &LayeredDensity,
) -> Result<DMatrix<f64>> {
    Ok(assemble(l, dim, tau, lambda, density)?.matrix)
}

/// Determinant of the scaled dispersion matrix.
pub fn dispersion_determinant(
    l: usize,
    dim: usize,
    tau: f64,
    lambda: f64,
    density: &LayeredDensity,
) -> Result<f64> {
    Ok(neumann_dispersion_matrix(l, dim, tau, lambda, density)?.determinant())
}

/// Piecewise fundamental-solution expansion of a radial eigenmode.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadialMode {
    pub l: usize,
    pub dim: usize,
    pub lambda: f64,
    layers: Vec<(f64, f64)>,
    terms: Vec<(usize, BasisMember, f64, f64)>,
}

impl RadialMode {
    /// (R, R', R'', R''') at r ∈ [0, 1]; interfaces use the inner layer.
    pub fn derivatives(&self, r: f64) -> Result<[f64; 4]> {
        if !(0.0..=1.0).contains(&r) {
            return invalid(format!("radius {r} outside [0, 1]"));
        }
        let layer = self.layers.iter().position(|&(_, outer)| r <= outer).unwrap_or(0);
        let mut out = [0.0; 4];
        for &(k, member, shift, coef) in &self.terms {
            if k != layer || coef == 0.0 {
                continue;
            }
            let v = member.eval_shifted(self.l, self.dim, r, shift)?;
            for d in 0..4 {
                out[d] += coef * v[d];
            }
        }
        Ok(out)
    }

    /// The same mode multiplied by c.
    pub fn scaled(&self, c: f64) -> RadialMode {
        let mut m = self.clone();
        m.terms.iter_mut().for_each(|t| t.3 *= c);
        m
    }

    /// Interface radii, which are breakpoints for quadrature.
    pub fn breakpoints(&self) -> Vec<f64> {
        self.layers.iter().map(|l| l.1).filter(|&r| r < 1.0).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DispersionRoot {
    pub lambda: f64,
    /// Grid cell in which the determinant changed sign.
    pub bracket: (f64, f64),
    /// Determinant values at the bracket ends.
    pub certificate: (f64, f64),
    /// Set when the numerical kernel looks more than one-dimensional.
    pub multiplicity_suspect: bool,
    /// Scaled-column null vector.
    pub coefficients: Vec<f64>,
    /// max|M c| relative to the largest contributing term.
    pub residual: f64,
    pub mode: RadialMode,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DispersionResult {
    pub l: usize,
    pub roots: Vec<DispersionRoot>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    /// Spacing of the sign-change grid; None splits the window into 400.
    pub grid_step: Option<f64>,
    pub rel_tol: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { grid_step: None, rel_tol: 1e-13 }
    }
}

/// All sign-change roots of the dispersion determinant in the window, in
/// increasing order, each with its eigenmode.
pub fn solve_neumann_eigenvalues(
    l: usize,
    dim: usize,
    tau: f64,
    density: &LayeredDensity,
    window: (f64, f64),
    max_roots: usize,
) -> Result<DispersionResult> {
    solve_neumann_eigenvalues_with(l, dim, tau, density, window, max_roots, SolveOptions::default())
}

pub fn solve_neumann_eigenvalues_with(
    l: usize,
    dim: usize,
    tau: f64,
    density: &LayeredDensity,
    window: (f64, f64),
    max_roots: usize,
    opts: SolveOptions,
) -> Result<DispersionResult> {
    let (lo, hi) = window;
    if !(lo >= 0.0 && hi > lo && hi.is_finite()) {
        return invalid(format!("bad window ({lo}, {hi})"));
    }
    let step = opts.grid_step.unwrap_or((hi - lo) / 400.0);
    if !(step > 0.0) {
        return invalid("grid step must be positive");
    }
    let cells = ((hi - lo) / step).ceil().max(1.0) as usize;
    let det = |x: f64| dispersion_determinant(l, dim, tau, x, density);
    let mut roots = Vec::new();

    // the basis changes form at λ = 0, so that point is tested on its own
    // and the sign scan starts just above it
    let mut prev_x = lo;
    if lo == 0.0 {
        let d0 = det(0.0)?;
        if d0 == 0.0 || is_numerically_singular(&assemble(l, dim, tau, 0.0, density)?.matrix) {
            roots.push(finish_root(l, dim, tau, density, 0.0, (0.0, 0.0), (d0, d0))?);
        }
        prev_x = 1e-6 * step;
    }
    let mut prev_d = det(prev_x)?;
    if lo > 0.0 && (prev_d == 0.0 || is_numerically_singular(&assemble(l, dim, tau, lo, density)?.matrix)) {
        roots.push(finish_root(l, dim, tau, density, lo, (lo, lo), (prev_d, prev_d))?);
        prev_d = 0.0;
    }
    for i in 1..=cells {
        if roots.len() >= max_roots {
            break;
        }
        let x = if i == cells { hi } else { lo + step * i as f64 };
        let d = det(x)?;
        if d == 0.0 {
            roots.push(finish_root(l, dim, tau, density, x, (x, x), (d, d))?);
        } else if prev_d != 0.0 && d.signum() != prev_d.signum() {
            let r = brent(&det, prev_x, x, opts.rel_tol, 200)?;
            roots.push(finish_root(l, dim, tau, density, r, (prev_x, x), (prev_d, d))?);
        }
        prev_x = x;
        prev_d = d;
    }
    roots.truncate(max_roots);
    Ok(DispersionResult { l, roots })
}

fn is_numerically_singular(m: &DMatrix<f64>) -> bool {
    let sv = m.clone().singular_values();
    let max = sv.max();
    max == 0.0 || sv.min() <= 1e-12 * max
}

fn finish_root(
    l: usize,
    dim: usize,
    tau: f64,
    density: &LayeredDensity,
    lambda: f64,
    bracket: (f64, f64),
    certificate: (f64, f64),
) -> Result<DispersionRoot> {
    let asm = assemble(l, dim, tau, lambda, density)?;
    let svd = asm.matrix.clone().svd(false, true);
    let v_t = svd.v_t.as_ref().expect("right vectors were requested");
    let sv = &svd.singular_values;
    let mut order: Vec<usize> = (0..sv.len()).collect();
    order.sort_by(|&a, &b| sv[a].total_cmp(&sv[b]));
    let smax = sv.max();
    let c: Vec<f64> = v_t.row(order[0]).iter().copied().collect();
    let suspect = order.len() > 1 && sv[order[1]] <= 1e-7 * smax;

    let mc = &asm.matrix * nalgebra::DVector::from_column_slice(&c);
    let mut residual = 0.0f64;
    for i in 0..asm.matrix.nrows() {
        let scale: f64 = (0..c.len()).map(|j| (asm.matrix[(i, j)] * c[j]).abs()).sum();
        if scale > 0.0 {
            residual = residual.max(mc[i].abs() / scale);
        }
    }
    let layers = (0..density.num_layers()).map(|k| density.layer_bounds(k)).collect();
    let terms = asm
        .columns
        .iter()
        .zip(&c)
        .map(|(col, &cj)| (col.layer, col.member, col.shift, cj * col.scale))
        .collect();
    let mut mode = RadialMode { l, dim, lambda, layers, terms };
    // fix the sign so that the boundary value (or slope) is positive
    let b = mode.derivatives(1.0)?;
    let lead = if b[0].abs() > 1e-12 * b[1].abs() { b[0] } else { b[1] };
    if lead < 0.0 {
        mode = mode.scaled(-1.0);
    }
    Ok(DispersionRoot {
        lambda,
        bracket,
        certificate,
        multiplicity_suspect: suspect,
        coefficients: c,
        residual,
        mode,
    })
}

/// Root of the 2×2 Steklov determinant for basis {r^l, i_l(√τ r)} on the
/// unit ball, searched inside the window.
pub fn steklov_determinant_root(l: usize, dim: usize, tau: f64, window: (f64, f64)) -> Result<f64> {
    if !(tau > 0.0) {
        return invalid("the Steklov determinant needs tau > 0");
    }
    let (lo, hi) = window;
    if !(lo >= 0.0 && hi > lo) {
        return invalid(format!("bad window ({lo}, {hi})"));
    }
    let cols = [
        BasisMember::Power { exponent: l as i32 },
        BasisMember::Wrapper { kind: crate::specfun::BesselKind::I, scale: tau.sqrt() },
    ];
    let mut rows = [[0.0; 2]; 3];
    for (j, m) in cols.iter().enumerate() {
        let v = m.eval_shifted(l, dim, 1.0, m.growth())?;
        let s = v.iter().fold(0.0f64, |a, b| a.max(b.abs()));
        rows[0][j] = v[2] / s;
        rows[1][j] = neumann_row(&v, l, dim, tau) / s;
        rows[2][j] = v[0] / s;
    }
    let det = |lam: f64| -> Result<f64> {
        Ok(rows[0][0] * (rows[1][1] - lam * rows[2][1]) - rows[0][1] * (rows[1][0] - lam * rows[2][0]))
    };
    let (dlo, dhi) = (det(lo)?, det(hi)?);
    if dlo == 0.0 {
        return Ok(lo);
    }
    if dhi == 0.0 {
        return Ok(hi);
    }
    if dlo.signum() == dhi.signum() {
        return invalid(format!("no Steklov root of order {l} in ({lo}, {hi})"));
    }
    brent(det, lo, hi, 1e-15, 200)
}
