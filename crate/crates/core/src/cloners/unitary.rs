use num_complex::Complex64;

use super::MeasurementSetting;
use crate::distribution::PhotonCountDistribution;
use crate::error::{Error, Result};
use crate::fock::{ModeBasis, SectorState};
use crate::special::log_factorial;

/// Unnormalized sector amplitudes of the amplified first-mode and
/// second-mode photon, in the equatorial frame of the amplifier.
///
/// In an equatorial frame `(b, b⊥)` the cloner Hamiltonian is a pair of
/// opposite single-mode squeezers. Acting on `b†|0⟩` it gives
/// `Σ (Γ/2)^{k+l} (−1)^l √((2k+1)!(2l)!)/(k! l!) |2k+1, 2l⟩` up to the
/// common factor `C^{-2}`; on `b⊥†|0⟩` the roles of the modes swap, giving
/// `|2k, 2l+1⟩` with `√((2k)!(2l+1)!)/(k! l!)` and the same sign rule. Inside a
/// fixed sector `(Γ/2)^{k+l}` is constant, so the gain drops out.
fn amplified_pair(photons: usize) -> (Vec<f64>, Vec<f64>) {
    let log_mag = |first: usize, second: usize| {
        0.5 * (log_factorial(first) + log_factorial(second)) - log_factorial(first / 2) - log_factorial(second / 2)
    };
    let sign = |second: usize| if (second / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
    let logs: Vec<f64> = (0..=photons).map(|m| log_mag(m, photons - m)).collect();
    let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut first = vec![0.0; photons + 1];
    let mut second = vec![0.0; photons + 1];
    for m in 0..=photons {
        let value = sign(photons - m) * (logs[m] - top).exp();
        if m % 2 == 1 {
            first[m] = value;
        } else {
            second[m] = value;
        }
    }
    (first, second)
}

/// Fixed-`N` projection of the amplified photon `|θ, φ⟩`, in the equatorial
/// frame at the input's azimuth.
///
/// A non-equatorial input is split into its two frame components, each
/// amplified separately. Both components carry equal sector norm, so the
/// projection is again gain-independent.
pub fn unitary_sector(photons: usize, input: &ModeBasis) -> Result<SectorState> {
    if photons.is_multiple_of(2) {
        return Err(Error::EvenPhotonNumber(photons));
    }
    let frame = ModeBasis::equatorial(input.phi())?;
    let components = SectorState::single_photon(*input).rotate_to(&frame)?;
    let (along_second, along_first) = (components.amplitudes()[0], components.amplitudes()[1]);
    let (first, second) = amplified_pair(photons);
    let amplitudes = first
        .iter()
        .zip(&second)
        .map(|(&f, &s)| along_first * f + along_second * s)
        .collect::<Vec<Complex64>>();
    SectorState::normalized(amplitudes, frame)
}

/// Sector state of the amplified equatorial photon, in the h/v basis.
pub fn unitary_macro_sector(photons: usize, input: &ModeBasis) -> Result<SectorState> {
    if !input.is_equatorial() {
        return Err(Error::InvalidArgument(format!(
            "the phase-covariant construction needs an equatorial input, got theta={}",
            input.theta()
        )));
    }
    unitary_sector(photons, input)?.rotate_to(&ModeBasis::hv())
}

pub fn unitary_distribution(photons: usize, setting: &MeasurementSetting) -> Result<PhotonCountDistribution> {
    let state = unitary_sector(photons, &setting.micro)?;
    state.debug_assert_normalized();
    state.rotate_to(&setting.macro_basis)?.count_probabilities()
}
