use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Physical constants of a model. All strictly positive.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelConstants {
    pub hbar: f64,
    pub mass: f64,
    pub omega: f64,
    pub beta: f64,
}

impl ModelConstants {
    pub fn new(hbar: f64, mass: f64, omega: f64, beta: f64) -> Result<Self> {
        let c = Self { hbar, mass, omega, beta };
        c.validate()?;
        Ok(c)
    }

    /// ħ = m = ω = 1 with the given β.
    pub fn natural(beta: f64) -> Result<Self> {
        Self::new(1.0, 1.0, 1.0, beta)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("hbar", self.hbar),
            ("mass", self.mass),
            ("omega", self.omega),
            ("beta", self.beta),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Domain(format!("{name} must be positive and finite, got {v}")));
            }
        }
        Ok(())
    }

    /// The dimensionless combination βħω.
    pub fn beta_hbar_omega(&self) -> f64 {
        self.beta * self.hbar * self.omega
    }
}

impl Default for ModelConstants {
    fn default() -> Self {
        Self { hbar: 1.0, mass: 1.0, omega: 1.0, beta: 1.0 }
    }
}
