//! The three amplification models and their counting statistics.
//!
//! Counting statistics follow one convention throughout: the measurement on
//! the micro side projects the photon entering the amplifier onto
//! `|θ_A, φ_A⟩`, and `j` counts photons in the macro mode `b(θ_B, φ_B)`.

mod closed_form;
mod measure_prepare;
mod model;
mod unitary;

pub use closed_form::{closed_form_distribution, ReferencePhase};
pub use measure_prepare::{
    mp_equatorial_distribution, mp_equatorial_distribution_with, mp_equatorial_state, mp_squeezed_distribution,
    mp_squeezed_distribution_with, mp_squeezed_state, MixtureQuadrature,
};
pub use model::{ClonerModel, MeasurementSetting};
pub use unitary::{unitary_distribution, unitary_macro_sector, unitary_sector};

use crate::distribution::PhotonCountDistribution;
use crate::error::Result;

/// Counting distribution of `model` in the `photons`-photon sector.
pub fn distribution(
    model: &ClonerModel,
    photons: usize,
    setting: &MeasurementSetting,
) -> Result<PhotonCountDistribution> {
    model.validate_for(photons)?;
    match model {
        ClonerModel::Unitary { .. } => unitary_distribution(photons, setting),
        ClonerModel::MpEquatorial => mp_equatorial_distribution(photons, setting),
        ClonerModel::MpSqueezed { tau } => mp_squeezed_distribution(photons, *tau, setting),
    }
}
