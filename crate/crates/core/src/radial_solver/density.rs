use crate::error::{invalid, Result};
use crate::harmonics::ball_volume;
use serde::Serialize;

/// Piecewise-constant radial density on the unit ball, innermost layer
/// first.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LayeredDensity {
    dim: usize,
    interfaces: Vec<f64>,
    values: Vec<f64>,
    mass: f64,
}

impl LayeredDensity {
    pub fn new(dim: usize, interfaces: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if dim < 2 {
            return invalid(format!("dimension {dim} below 2"));
        }
        if values.len() != interfaces.len() + 1 {
            return invalid("need exactly one more layer value than interface radii");
        }
        let mut prev = 0.0;
        for &r in &interfaces {
            if !(r > prev && r < 1.0) {
                return invalid(format!("interface radii must increase inside (0, 1), got {interfaces:?}"));
            }
            prev = r;
        }
        if let Some(v) = values.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
            return invalid(format!("layer densities must be positive, got {v}"));
        }
        let vol = ball_volume(dim);
        let mut mass = 0.0;
        let mut inner = 0.0f64;
        for (k, v) in values.iter().enumerate() {
            let outer = interfaces.get(k).copied().unwrap_or(1.0);
            mass += v * vol * (outer.powi(dim as i32) - inner.powi(dim as i32));
            inner = outer;
        }
        Ok(LayeredDensity { dim, interfaces, values, mass })
    }

    pub fn uniform(dim: usize, value: f64) -> Result<Self> {
        Self::new(dim, vec![], vec![value])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn interfaces(&self) -> &[f64] {
        &self.interfaces
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn num_layers(&self) -> usize {
        self.values.len()
    }

    /// Inner and outer radius of layer k.
    pub fn layer_bounds(&self, k: usize) -> (f64, f64) {
        let inner = if k == 0 { 0.0 } else { self.interfaces[k - 1] };
        let outer = self.interfaces.get(k).copied().unwrap_or(1.0);
        (inner, outer)
    }

    pub fn density_at(&self, r: f64) -> f64 {
        let k = self.interfaces.iter().take_while(|&&x| x <= r).count();
        self.values[k]
    }

    /// Every layer value multiplied by c > 0.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::new(self.dim, self.interfaces.clone(), self.values.iter().map(|v| v * c).collect())
    }
}

/// Density ε on the ball of radius 1 − ε and a constant on the shell
/// chosen so that the total mass is M.
pub fn make_rho_eps(eps: f64, mass: f64, dim: usize) -> Result<LayeredDensity> {
    if !(eps > 0.0 && eps < 1.0) {
        return invalid(format!("eps must lie in (0, 1), got {eps}"));
    }
    if !(mass > 0.0 && mass.is_finite()) {
        return invalid(format!("mass must be positive, got {mass}"));
    }
    let vol = ball_volume(dim);
    let inner_vol = vol * (1.0 - eps).powi(dim as i32);
    let shell_vol = vol - inner_vol;
    let outer = (mass - eps * inner_vol) / shell_vol;
    if !(outer > 0.0) {
        return invalid(format!("eps = {eps} leaves no positive shell density for mass {mass}"));
    }
    LayeredDensity::new(dim, vec![1.0 - eps], vec![eps, outer])
}
