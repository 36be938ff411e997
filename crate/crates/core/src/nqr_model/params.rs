use std::f64::consts::{PI, TAU};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Orientation of the lab z-axis (field direction) in the EFG principal-axes frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Orientation {
    theta: f64,
    phi: f64,
}

impl Orientation {
    pub const POLAR: Orientation = Orientation { theta: 0.0, phi: 0.0 };

    /// `theta` in [0, pi], `phi` in [0, 2 pi), radians.
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::AngleOutOfRange {
                name: "theta",
                value: theta,
                range: "[0, pi]",
            });
        }
        if !(0.0..TAU).contains(&phi) {
            return Err(Error::AngleOutOfRange {
                name: "phi",
                value: phi,
                range: "[0, 2 pi)",
            });
        }
        Ok(Self { theta, phi })
    }

    /// Like [`Orientation::new`] but folds any finite `phi` into [0, 2 pi).
    pub fn with_wrapped_phi(theta: f64, phi: f64) -> Result<Self> {
        let mut p = phi.rem_euclid(TAU);
        if p >= TAU {
            p = 0.0;
        }
        Self::new(theta, p)
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }
}

/// Sign of the Zeeman term in the thermal exponent.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeemanSign {
    /// exp(-alpha Iz - beta H_Q), as the model is usually written.
    #[default]
    Paper,
    /// exp(+alpha Iz - beta H_Q), what -H/kT gives for H_M = -gamma H0 Iz.
    Physical,
}

impl ZeemanSign {
    pub(crate) fn factor(self) -> f64 {
        match self {
            ZeemanSign::Paper => -1.0,
            ZeemanSign::Physical => 1.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ZeemanSign::Paper => "paper",
            ZeemanSign::Physical => "physical",
        }
    }
}

impl fmt::Display for ZeemanSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Dimensionless parameters of the thermal state.
///
/// `alpha = gamma H0 / kT`, `beta = eQq_ZZ / (4I(2I-1) kT)`; beta may be
/// negative for nuclei with negative quadrupole moment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub alpha: f64,
    pub beta: f64,
    pub eta: f64,
    pub orientation: Orientation,
    #[serde(default)]
    pub zeeman_sign: ZeemanSign,
}

impl ModelParams {
    pub fn new(alpha: f64, beta: f64, eta: f64, orientation: Orientation) -> Result<Self> {
        let p = Self {
            alpha,
            beta,
            eta,
            orientation,
            zeeman_sign: ZeemanSign::default(),
        };
        p.validate()?;
        Ok(p)
    }

    /// Convenience constructor taking raw angles.
    pub fn from_angles(alpha: f64, beta: f64, eta: f64, theta: f64, phi: f64) -> Result<Self> {
        Self::new(alpha, beta, eta, Orientation::new(theta, phi)?)
    }

    pub fn with_zeeman_sign(mut self, sign: ZeemanSign) -> Self {
        self.zeeman_sign = sign;
        self
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in [("alpha", self.alpha), ("beta", self.beta)] {
            if !value.is_finite() {
                return Err(Error::NonFinite { name, value });
            }
        }
        check_eta(self.eta)
    }
}

pub(crate) fn check_eta(eta: f64) -> Result<()> {
    if (0.0..=1.0).contains(&eta) {
        Ok(())
    } else {
        Err(Error::EtaOutOfRange(eta))
    }
}
