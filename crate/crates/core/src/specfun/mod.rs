//! Bessel functions of real order and the ultraspherical wrappers
//! w_l(z) = z^{1−N/2} C_{N/2−1+l}(z) with derivatives up to third order.

mod gamma;
mod modified;
mod ordinary;
mod ultraspherical;

pub use gamma::gamma;
pub use ultraspherical::{
    ultraspherical_derivatives, ultraspherical_eval, ultraspherical_eval_scaled,
    UltrasphericalSpec,
};

use crate::error::{invalid, Error, Result};
use serde::{Deserialize, Serialize};

/// Which Bessel family a value belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BesselKind {
    /// Modified, first kind.
    I,
    /// Modified, second kind.
    K,
    /// Ordinary, first kind.
    J,
    /// Ordinary, second kind.
    Y,
}

impl BesselKind {
    /// Sign s in the family recurrence C'_ν = s·C_{ν+1} + (ν/z)·C_ν.
    pub fn recurrence_sign(self) -> f64 {
        match self {
            BesselKind::I => 1.0,
            _ => -1.0,
        }
    }

    /// Whether the function is finite at the origin.
    pub fn is_regular(self) -> bool {
        matches!(self, BesselKind::I | BesselKind::J)
    }

    fn name(self) -> &'static str {
        match self {
            BesselKind::I => "I",
            BesselKind::K => "K",
            BesselKind::J => "J",
            BesselKind::Y => "Y",
        }
    }
}

/// C_ν(z) for the requested family. With `scaled` the modified functions
/// come back as e^{−z}I_ν(z) and e^{z}K_ν(z); J and Y are never scaled.
pub fn bessel_eval(kind: BesselKind, order: f64, z: f64, scaled: bool) -> Result<f64> {
    if !order.is_finite() || !z.is_finite() {
        return invalid("non-finite Bessel argument");
    }
    if order < 0.0 {
        return invalid(format!("negative order {order}"));
    }
    if z <= 0.0 {
        return invalid(format!("Bessel argument must be positive, got {z}"));
    }
    let value = match kind {
        BesselKind::I => {
            if z <= order.max(12.0) {
                let v = modified::series_i(order, z);
                if scaled {
                    v * (-z).exp()
                } else {
                    v
                }
            } else {
                let (i, _) = modified::ik_scaled(order, z)?;
                if scaled {
                    i
                } else {
                    i * z.exp()
                }
            }
        }
        BesselKind::K => {
            let (_, k) = modified::ik_scaled(order, z)?;
            if scaled {
                k
            } else {
                k * (-z).exp()
            }
        }
        BesselKind::J => {
            if ordinary::j_series_ok(order, z) {
                ordinary::series_j(order, z)
            } else {
                ordinary::jy(order, z)?.0
            }
        }
        BesselKind::Y => ordinary::jy(order, z)?.1,
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow(format!("{}_{order}({z})", kind.name())))
    }
}
