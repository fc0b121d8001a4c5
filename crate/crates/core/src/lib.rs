//! Photon-counting statistics of amplified single photons.
//!
//! One photon of a polarization singlet is amplified either by the unitary
//! phase-covariant cloner, which keeps the micro-macro entanglement, or by a
//! measure-and-prepare cloner, which destroys it. The crate computes exact
//! counting distributions for both at fixed total photon number, blurs them
//! with a moving-average model of imprecise counters, and measures how
//! quickly the two become indistinguishable.
//!
//! Modules:
//! - [`fock`]: two-mode sector states and SU(2) basis changes,
//! - [`cloners`]: the amplifier models and their distributions,
//! - [`analysis`]: coarse-graining, distances and sweeps,
//! - [`witness`]: the spin-correlation entanglement witness,
//! - [`cli`]: the `cloner-sim` command line.

pub mod analysis;
pub mod cli;
pub mod cloners;
pub mod distribution;
pub mod error;
pub mod fock;
pub mod special;
pub mod witness;

pub use distribution::PhotonCountDistribution;
pub use error::{Error, Result};
