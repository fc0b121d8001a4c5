use std::f64::consts::{FRAC_PI_2, TAU};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{Gain, ModeBasis};

/// Which amplifier produces the macro state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ClonerModel {
    /// Unitary phase-covariant cloner. Sector distributions do not depend on
    /// the gain; only the witness uses it.
    Unitary { gain: Gain },
    /// Measure in a random equatorial basis, prepare `N` photons in the
    /// measured mode.
    MpEquatorial,
    /// Measure in a random equatorial basis, prepare the `J_z`-squeezed state
    /// that keeps the `τ + 1` lowest `|J_z|` pairs.
    MpSqueezed { tau: usize },
}

impl ClonerModel {
    pub fn unitary() -> Self {
        ClonerModel::Unitary {
            gain: Gain::new(1.0).expect("valid gain"),
        }
    }

    pub fn label(&self) -> String {
        match self {
            ClonerModel::Unitary { .. } => "unitary".into(),
            ClonerModel::MpEquatorial => "mp-eq".into(),
            ClonerModel::MpSqueezed { tau } => format!("mp-sq:{tau}"),
        }
    }

    /// Checks that the model can populate a sector of `photons` photons.
    pub fn validate_for(&self, photons: usize) -> Result<()> {
        match *self {
            ClonerModel::Unitary { .. } => {
                if photons.is_multiple_of(2) {
                    return Err(Error::EvenPhotonNumber(photons));
                }
            }
            ClonerModel::MpEquatorial => {
                if photons == 0 {
                    return Err(Error::InvalidArgument(
                        "the measure-and-prepare cloner needs N >= 1".into(),
                    ));
                }
            }
            ClonerModel::MpSqueezed { tau } => {
                if photons.is_multiple_of(2) {
                    return Err(Error::EvenPhotonNumber(photons));
                }
                let max_tau = (photons - 1) / 2;
                if tau > max_tau {
                    return Err(Error::InvalidArgument(format!(
                        "tau={tau} exceeds (N-1)/2={max_tau} for N={photons}"
                    )));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for ClonerModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Parses `unitary`, `mp-eq` or `mp-sq:<tau>`.
impl FromStr for ClonerModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "unitary" => return Ok(ClonerModel::unitary()),
            "mp-eq" => return Ok(ClonerModel::MpEquatorial),
            _ => {}
        }
        if let Some(tau) = s.strip_prefix("mp-sq:") {
            let tau = tau
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad tau in model spec {s:?}")))?;
            return Ok(ClonerModel::MpSqueezed { tau });
        }
        Err(Error::InvalidArgument(format!(
            "unknown model {s:?} (expected unitary, mp-eq or mp-sq:<tau>)"
        )))
    }
}

/// Polarization settings of the one-photon side (A) and the counters (B).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasurementSetting {
    pub micro: ModeBasis,
    pub macro_basis: ModeBasis,
}

impl MeasurementSetting {
    pub fn new(theta_a: f64, phi_a: f64, theta_b: f64, phi_b: f64) -> Result<Self> {
        Ok(Self {
            micro: ModeBasis::new(theta_a, phi_a)?,
            macro_basis: ModeBasis::new(theta_b, phi_b)?,
        })
    }

    /// Both sides on the equator, `φ_B = 0` and `φ_A = Δφ`.
    pub fn equatorial(delta_phi: f64) -> Result<Self> {
        Self::new(FRAC_PI_2, delta_phi, FRAC_PI_2, 0.0)
    }

    /// `φ_A − φ_B` reduced to [0, 2π).
    pub fn delta_phi(&self) -> f64 {
        (self.micro.phi() - self.macro_basis.phi()).rem_euclid(TAU)
    }
}
