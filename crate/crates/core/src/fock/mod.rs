//! Two-mode photon-number states at fixed total photon number.
//!
//! A sector state with `N` photons is stored as `N + 1` amplitudes; entry `m`
//! is the amplitude of `m` photons in the first mode of its [`ModeBasis`] and
//! `N - m` in the second. The canonical frame is h/v; equatorial bases are
//! derived views reached through [`mode_rotation_matrix`].

mod basis;
mod rotation;
mod sector;

pub use basis::{Gain, ModeBasis};
pub use rotation::{mode_change_matrix, mode_rotation_matrix, rotation_ladder, RotationMatrix, UNITARITY_GUARD};
pub use sector::{count_probabilities, rotate_sector_state, SectorState};

pub use num_complex::Complex64;
