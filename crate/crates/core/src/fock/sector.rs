use num_complex::Complex64;

use super::{mode_rotation_matrix, ModeBasis, RotationMatrix};
use crate::distribution::PhotonCountDistribution;
use crate::error::{Error, Result};

const NORM_TOL: f64 = 1e-12;
const ROTATED_NORM_TOL: f64 = 1e-10;

/// Normalized amplitudes over one fixed-photon-number sector.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorState {
    amplitudes: Vec<Complex64>,
    basis: ModeBasis,
}

impl SectorState {
    /// Normalizes `amplitudes`; entry `m` has `m` photons in the first mode.
    pub fn normalized(amplitudes: Vec<Complex64>, basis: ModeBasis) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidArgument(
                "a sector state needs at least one amplitude".into(),
            ));
        }
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm.is_nan() || norm <= 0.0 || !norm.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "cannot normalize amplitudes with norm {norm}"
            )));
        }
        let amplitudes = amplitudes.into_iter().map(|a| a / norm).collect();
        Ok(Self { amplitudes, basis })
    }

    /// Number state `|m, N−m⟩` in `basis`.
    pub fn fock(photons: usize, first_mode: usize, basis: ModeBasis) -> Result<Self> {
        if first_mode > photons {
            return Err(Error::InvalidArgument(format!(
                "{first_mode} photons exceed the sector size {photons}"
            )));
        }
        let mut amplitudes = vec![Complex64::default(); photons + 1];
        amplitudes[first_mode] = Complex64::new(1.0, 0.0);
        Ok(Self { amplitudes, basis })
    }

    /// One photon in the first mode of `basis`.
    pub fn single_photon(basis: ModeBasis) -> Self {
        Self::fock(1, 1, basis).expect("valid one-photon state")
    }

    pub fn total_photons(&self) -> usize {
        self.amplitudes.len() - 1
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn basis(&self) -> &ModeBasis {
        &self.basis
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn rotate_to(&self, to: &ModeBasis) -> Result<Self> {
        if self.basis == *to {
            return Ok(self.clone());
        }
        let matrix = mode_rotation_matrix(self.total_photons(), &self.basis, to)?;
        self.rotate_with(&matrix, to)
    }

    /// Applies a prebuilt rotation; `matrix` must map `self.basis()` to `to`.
    pub fn rotate_with(&self, matrix: &RotationMatrix, to: &ModeBasis) -> Result<Self> {
        if matrix.photons() != self.total_photons() {
            return Err(Error::LengthMismatch {
                left: matrix.dim(),
                right: self.amplitudes.len(),
            });
        }
        let rotated = Self {
            amplitudes: matrix.apply(&self.amplitudes),
            basis: *to,
        };
        let norm = rotated.norm_sqr();
        if (norm - 1.0).abs() > ROTATED_NORM_TOL {
            return Err(Error::NormalizationDefect {
                photons: self.total_photons(),
                sum: norm,
            });
        }
        Ok(rotated)
    }

    /// Born-rule counting statistics in the state's own basis.
    pub fn count_probabilities(&self) -> Result<PhotonCountDistribution> {
        PhotonCountDistribution::new(self.amplitudes.iter().map(|a| a.norm_sqr()).collect())
    }

    pub(crate) fn debug_assert_normalized(&self) {
        debug_assert!((self.norm_sqr() - 1.0).abs() <= NORM_TOL, "norm {}", self.norm_sqr());
    }
}

pub fn rotate_sector_state(state: &SectorState, to: &ModeBasis) -> Result<SectorState> {
    state.rotate_to(to)
}

pub fn count_probabilities(state: &SectorState) -> Result<PhotonCountDistribution> {
    state.count_probabilities()
}
