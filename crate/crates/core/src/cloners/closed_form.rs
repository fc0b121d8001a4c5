//! Closed-form equatorial distributions at Δφ ∈ {0, π}.
//!
//! The tabulated expressions count photons in the mode orthogonal to the one
//! measured here. They are evaluated at `N − j` so that the result uses the
//! same orientation as the state-based pipeline; that is the only adjustment.
//! The unitary Δφ = π expression is read with `j!` in its numerator.

use std::f64::consts::{LN_2, PI};

use serde::{Deserialize, Serialize};

use super::ClonerModel;
use crate::distribution::PhotonCountDistribution;
use crate::error::{Error, Result};
use crate::special::{log_euler_beta, log_factorial};

/// Relative azimuth of the equatorial input and counter bases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReferencePhase {
    Zero,
    Pi,
}

/// ln of the tabulated unitary weight at tabulated index `t`, or `None` for a
/// parity-forbidden entry.
fn unitary_log_weight(photons: usize, t: usize, phase: ReferencePhase) -> Option<f64> {
    let rest = photons - t;
    let (a, b) = match phase {
        // t!(N−t)! / ((t/2)! ((N−t−1)/2)!)²
        ReferencePhase::Zero if t.is_multiple_of(2) && !rest.is_multiple_of(2) => (t / 2, (rest - 1) / 2),
        // t!(N−t)! / (((t−1)/2)! ((N−t)/2)!)²
        ReferencePhase::Pi if !t.is_multiple_of(2) && rest.is_multiple_of(2) => ((t - 1) / 2, rest / 2),
        _ => return None,
    };
    Some(log_factorial(t) + log_factorial(rest) - 2.0 * (log_factorial(a) + log_factorial(b)))
}

/// ln of `2 N! / (π (N−t)! t!) · B(·, ·)` at tabulated index `t`.
fn mp_log_weight(photons: usize, t: usize, phase: ReferencePhase) -> Result<f64> {
    let (t_f, rest_f) = (t as f64, (photons - t) as f64);
    let beta = match phase {
        ReferencePhase::Zero => log_euler_beta(t_f + 0.5, rest_f + 1.5)?,
        ReferencePhase::Pi => log_euler_beta(t_f + 1.5, rest_f + 0.5)?,
    };
    Ok(LN_2 + log_factorial(photons) - PI.ln() - log_factorial(photons - t) - log_factorial(t) + beta)
}

/// Equatorial distribution (`θ_A = θ_B = π/2`) from the closed forms.
pub fn closed_form_distribution(
    model: &ClonerModel,
    photons: usize,
    phase: ReferencePhase,
) -> Result<PhotonCountDistribution> {
    let tabulated: Vec<Option<f64>> = match model {
        ClonerModel::Unitary { .. } => {
            if photons.is_multiple_of(2) {
                return Err(Error::EvenPhotonNumber(photons));
            }
            (0..=photons).map(|t| unitary_log_weight(photons, t, phase)).collect()
        }
        ClonerModel::MpEquatorial => {
            if photons == 0 {
                return Err(Error::InvalidArgument(
                    "the measure-and-prepare cloner needs N >= 1".into(),
                ));
            }
            (0..=photons)
                .map(|t| mp_log_weight(photons, t, phase).map(Some))
                .collect::<Result<_>>()?
        }
        ClonerModel::MpSqueezed { .. } => {
            return Err(Error::InvalidArgument(
                "no closed form exists for the squeezed prepare state".into(),
            ))
        }
    };
    let top = tabulated.iter().flatten().copied().fold(f64::NEG_INFINITY, f64::max);
    let weights = (0..=photons)
        .map(|j| tabulated[photons - j].map_or(0.0, |w| (w - top).exp()))
        .collect();
    PhotonCountDistribution::from_weights(weights)
}
