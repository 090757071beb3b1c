use serde::{Deserialize, Serialize};

use super::DynError;
use crate::potential::PotentialSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    Sphere,
    Hyperbolic,
}

impl Space {
    pub fn name(self) -> &'static str {
        match self {
            Space::Sphere => "sphere",
            Space::Hyperbolic => "hyperbolic",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    pub m1: f64,
    pub m2: f64,
    /// Curvature radius R.
    pub radius: f64,
    pub space: Space,
    pub potential: PotentialSpec,
}

impl SystemParams {
    pub fn new(m1: f64, m2: f64, radius: f64, space: Space, potential: PotentialSpec) -> Result<Self, DynError> {
        for (name, v) in [("m1", m1), ("m2", m2), ("R", radius)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(DynError::InvalidParam(format!("{name} must be positive, got {v}")));
            }
        }
        potential
            .validate()
            .map_err(|e| DynError::InvalidParam(e.to_string()))?;
        Ok(Self {
            m1,
            m2,
            radius,
            space,
            potential,
        })
    }

    /// Reduced mass m₁m₂/(m₁+m₂).
    pub fn m(&self) -> f64 {
        self.m1 * self.m2 / (self.m1 + self.m2)
    }

    /// a = 2R²(m₁+m₂).
    pub fn a(&self) -> f64 {
        2.0 * self.radius * self.radius * (self.m1 + self.m2)
    }

    /// 2(m₁−m₂)/(m₁+m₂).
    pub fn kappa(&self) -> f64 {
        2.0 * (self.m1 - self.m2) / (self.m1 + self.m2)
    }

    /// Radial kinetic factor K(r) = (1 ± r²)²/(8mR²) and its derivative.
    pub fn kinetic(&self, r: f64) -> (f64, f64) {
        let k = 1.0 / (8.0 * self.m() * self.radius * self.radius);
        match self.space {
            Space::Sphere => {
                let q = 1.0 + r * r;
                (k * q * q, k * 4.0 * r * q)
            }
            Space::Hyperbolic => {
                let q = 1.0 - r * r;
                (k * q * q, -k * 4.0 * r * q)
            }
        }
    }

    /// (U, U′) at r.
    pub fn potential(&self, r: f64) -> (f64, f64) {
        self.potential.eval(r, self.radius)
    }
}
