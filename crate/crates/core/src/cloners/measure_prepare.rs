use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

use super::MeasurementSetting;
use crate::distribution::{compensated_sum, PhotonCountDistribution};
use crate::error::{Error, Result};
use crate::fock::{mode_rotation_matrix, ModeBasis, SectorState};
use crate::special::log_binomial;

/// Uniform-grid rule for the average over the random equatorial basis.
///
/// The integrand is a trigonometric polynomial in φ of degree at most
/// `N + 1`, so any grid with more nodes than that is exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MixtureQuadrature {
    pub nodes: usize,
}

impl MixtureQuadrature {
    pub fn for_photons(photons: usize) -> Self {
        Self {
            nodes: 4 * (photons + 2),
        }
    }
}

/// h/v amplitudes of `(b_φ†)^N/√N! |0⟩` at φ = 0: `√C(N,m) / 2^{N/2}`.
fn equatorial_reference(photons: usize) -> Vec<Complex64> {
    let half_log2 = 0.5 * photons as f64 * std::f64::consts::LN_2;
    (0..=photons)
        .map(|m| Complex64::new((0.5 * log_binomial(photons, m) - half_log2).exp(), 0.0))
        .collect()
}

/// The squeezed prepare state at φ = 0: equal weights on
/// `|n−k, n+k+1⟩` and `|n+k+1, n−k⟩` for `k = 0..=τ`, with `n = (N−1)/2`.
fn squeezed_reference(photons: usize, tau: usize) -> Result<Vec<Complex64>> {
    if photons.is_multiple_of(2) {
        return Err(Error::EvenPhotonNumber(photons));
    }
    let n = (photons - 1) / 2;
    if tau > n {
        return Err(Error::InvalidArgument(format!("tau={tau} exceeds (N-1)/2={n}")));
    }
    let weight = Complex64::new((2.0 * (tau as f64 + 1.0)).sqrt().recip(), 0.0);
    let mut amplitudes = vec![Complex64::default(); photons + 1];
    for k in 0..=tau {
        amplitudes[n - k] = weight;
        amplitudes[n + k + 1] = weight;
    }
    Ok(amplitudes)
}

/// Rotating a prepare state about the h/v axis by φ multiplies the entry with
/// `m` horizontal photons by `e^{iφ(N−2m)/2}`.
fn azimuthal_phase(photons: usize, m: usize, phi: f64) -> Complex64 {
    Complex64::from_polar(1.0, 0.5 * phi * (photons as f64 - 2.0 * m as f64))
}

fn at_azimuth(reference: Vec<Complex64>, phi: f64) -> Result<SectorState> {
    let photons = reference.len() - 1;
    let amplitudes = reference
        .into_iter()
        .enumerate()
        .map(|(m, a)| a * azimuthal_phase(photons, m, phi))
        .collect();
    SectorState::normalized(amplitudes, ModeBasis::hv())
}

/// `N` photons in the equatorial mode at azimuth φ, in the h/v basis.
pub fn mp_equatorial_state(photons: usize, phi: f64) -> Result<SectorState> {
    at_azimuth(equatorial_reference(photons), phi)
}

/// The `J_z`-squeezed prepare state at azimuth φ, in the h/v basis.
///
/// Term `k` carries the phase `e^{±iφ(2k+1)/2}`: the half-angle phases of the
/// mode convention, so that τ = 0, N = 1 is the equatorial photon `|φ⟩`.
pub fn mp_squeezed_state(photons: usize, tau: usize, phi: f64) -> Result<SectorState> {
    at_azimuth(squeezed_reference(photons, tau)?, phi)
}

/// `(1/π) ∫₀^{2π} P⁺(φ) Q_φ(j) dφ`.
///
/// Integrating over the full circle with the "+" outcome weight covers both
/// outcomes of the equatorial measurement, since the "−" outcome at φ is the
/// "+" outcome at φ + π.
fn mixture_distribution(
    reference: &[Complex64],
    setting: &MeasurementSetting,
    rule: MixtureQuadrature,
) -> Result<PhotonCountDistribution> {
    let photons = reference.len() - 1;
    if rule.nodes <= photons + 1 {
        return Err(Error::InvalidArgument(format!(
            "{} quadrature nodes cannot integrate degree {} exactly",
            rule.nodes,
            photons + 1
        )));
    }
    let rotation = mode_rotation_matrix(photons, &ModeBasis::hv(), &setting.macro_basis)?;
    let support: Vec<(usize, Complex64)> = reference
        .iter()
        .copied()
        .enumerate()
        .filter(|(_, a)| a.norm_sqr() > 0.0)
        .collect();
    let sin_theta = setting.micro.theta().sin();
    let phi_a = setting.micro.phi();
    let step = TAU / rule.nodes as f64;

    let per_node: Vec<Vec<f64>> = (0..rule.nodes)
        .into_par_iter()
        .map(|i| {
            let phi = step * i as f64;
            let outcome_weight = 0.5 * (1.0 + sin_theta * (phi - phi_a).cos());
            let weight = 2.0 / rule.nodes as f64 * outcome_weight;
            let prepared: Vec<(usize, Complex64)> = support
                .iter()
                .map(|&(m, a)| (m, a * azimuthal_phase(photons, m, phi)))
                .collect();
            (0..=photons)
                .map(|p| {
                    let row = rotation.row(p);
                    let amp: Complex64 = prepared.iter().map(|&(m, a)| row[m] * a).sum();
                    weight * amp.norm_sqr()
                })
                .collect()
        })
        .collect();

    let probabilities = (0..=photons)
        .map(|j| compensated_sum(per_node.iter().map(|node| node[j])))
        .collect();
    PhotonCountDistribution::new(probabilities)
}

pub fn mp_equatorial_distribution(photons: usize, setting: &MeasurementSetting) -> Result<PhotonCountDistribution> {
    mp_equatorial_distribution_with(photons, setting, MixtureQuadrature::for_photons(photons))
}

pub fn mp_equatorial_distribution_with(
    photons: usize,
    setting: &MeasurementSetting,
    rule: MixtureQuadrature,
) -> Result<PhotonCountDistribution> {
    if photons == 0 {
        return Err(Error::InvalidArgument(
            "the measure-and-prepare cloner needs N >= 1".into(),
        ));
    }
    mixture_distribution(&equatorial_reference(photons), setting, rule)
}

pub fn mp_squeezed_distribution(
    photons: usize,
    tau: usize,
    setting: &MeasurementSetting,
) -> Result<PhotonCountDistribution> {
    mp_squeezed_distribution_with(photons, tau, setting, MixtureQuadrature::for_photons(photons))
}

pub fn mp_squeezed_distribution_with(
    photons: usize,
    tau: usize,
    setting: &MeasurementSetting,
    rule: MixtureQuadrature,
) -> Result<PhotonCountDistribution> {
    mixture_distribution(&squeezed_reference(photons, tau)?, setting, rule)
}
