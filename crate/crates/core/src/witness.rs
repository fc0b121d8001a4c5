//! Spin-correlation witness `|⟨σ_A·J_B⟩| − ⟨N_B⟩`.
//!
//! Separable micro-macro states satisfy `|⟨σ_A·J_B⟩| ≤ ⟨N_B⟩`. The amplified
//! singlet exceeds that bound by exactly two photons at every gain.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cloners::{distribution, ClonerModel, MeasurementSetting};
use crate::error::{Error, Result};
use crate::fock::{mode_rotation_matrix, rotation_ladder, Gain, ModeBasis};
use crate::special::log_factorial;

/// Norm deficit above which the cutoff is reported as too small.
pub const DEFICIT_WARNING: f64 = 1e-8;

/// Amplified singlet truncated to at most `cutoff` photon pairs per mode.
///
/// The micro photon is a qubit over the two modes of `frame`; for each qubit
/// value the macro state is stored sector by sector, `branches[a][n][m]` being
/// the amplitude of `m` photons in the first macro mode out of `n`.
#[derive(Debug, Clone)]
pub struct TruncatedMicroMacroState {
    cutoff: usize,
    gain: Gain,
    frame: ModeBasis,
    branches: [Vec<Vec<Complex64>>; 2],
    tail_bound: f64,
}

/// Bound on the probability lost by truncating both squeezed modes at `cutoff` pairs.
fn truncation_tail_bound(gain: Gain, cutoff: usize) -> f64 {
    let x = gain.tanh().powi(2);
    if x == 0.0 {
        return 0.0;
    }
    let c2 = gain.cosh().powi(2);
    let lead = x.powi(cutoff as i32 + 1);
    let vacuum_tail = lead * c2.sqrt();
    let photon_tail = lead / (c2 * c2.sqrt()) * ((2.0 * cutoff as f64 + 3.0) * c2 + 2.0 * x * c2 * c2);
    vacuum_tail + photon_tail
}

/// `U (1/√2)(|1⟩_A|1⊥⟩_B − |1⊥⟩_A|1⟩_B)` in the equatorial frame at φ = 0.
pub fn build_truncated_state(gain: Gain, cutoff: usize) -> Result<TruncatedMicroMacroState> {
    let max_sector = 4 * cutoff + 1;
    let mut amplified_first = vec![Vec::new(); max_sector + 1];
    let mut amplified_second = vec![Vec::new(); max_sector + 1];
    for n in 0..=max_sector {
        amplified_first[n] = vec![Complex64::default(); n + 1];
        amplified_second[n] = vec![Complex64::default(); n + 1];
    }
    let gamma = gain.tanh();
    let log_prefactor = -2.0 * gain.cosh().ln();
    let max_pairs = if gamma == 0.0 { 0 } else { cutoff };
    for k in 0..=max_pairs {
        for l in 0..=max_pairs {
            let pairs = k + l;
            let log_gain = if pairs == 0 {
                0.0
            } else {
                pairs as f64 * (0.5 * gamma).ln()
            };
            let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
            let common = log_prefactor + log_gain - log_factorial(k) - log_factorial(l);
            let n = 2 * pairs + 1;
            // photon amplified in the first mode: |2k+1, 2l⟩
            let a = common + 0.5 * (log_factorial(2 * k + 1) + log_factorial(2 * l));
            amplified_first[n][2 * k + 1] = Complex64::new(sign * a.exp(), 0.0);
            // photon amplified in the second mode: |2k, 2l+1⟩
            let b = common + 0.5 * (log_factorial(2 * k) + log_factorial(2 * l + 1));
            amplified_second[n][2 * k] = Complex64::new(sign * b.exp(), 0.0);
        }
    }
    let scale = |sectors: Vec<Vec<Complex64>>, s: f64| -> Vec<Vec<Complex64>> {
        sectors
            .into_iter()
            .map(|v| v.into_iter().map(|a| a * s).collect())
            .collect()
    };
    let branches = [
        scale(amplified_second, FRAC_1_SQRT_2),
        scale(amplified_first, -FRAC_1_SQRT_2),
    ];
    Ok(TruncatedMicroMacroState {
        cutoff,
        gain,
        frame: ModeBasis::equatorial(0.0)?,
        branches,
        tail_bound: truncation_tail_bound(gain, cutoff),
    })
}

impl TruncatedMicroMacroState {
    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn gain(&self) -> Gain {
        self.gain
    }

    pub fn frame(&self) -> &ModeBasis {
        &self.frame
    }

    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    pub fn norm_sqr(&self) -> f64 {
        self.branches.iter().flatten().flatten().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm_deficit(&self) -> f64 {
        1.0 - self.norm_sqr()
    }

    pub fn cutoff_too_small(&self) -> bool {
        self.norm_deficit() > DEFICIT_WARNING
    }

    /// Amplitude of micro index `micro` (0 = first mode) and macro Fock state
    /// `(first, second)`.
    pub fn amplitude(&self, micro: usize, first: usize, second: usize) -> Complex64 {
        self.branches[micro]
            .get(first + second)
            .map_or(Complex64::default(), |s| s[first])
    }

    /// Rewrites the state in another frame, applying the same basis change to
    /// the micro photon and the macro modes.
    pub fn rotated_to(&self, to: &ModeBasis) -> Result<Self> {
        let max_sector = self.branches[0].len() - 1;
        let ladder = rotation_ladder(max_sector, &self.frame, to)?;
        let qubit = mode_rotation_matrix(1, &self.frame, to)?;
        // branch 0 ↔ first mode ↔ one-photon index 1
        let index = |a: usize| 1 - a;
        let rotated: Vec<Vec<Vec<Complex64>>> = (0..2)
            .map(|a| self.branches[a].iter().zip(&ladder).map(|(v, d)| d.apply(v)).collect())
            .collect();
        let mut branches = [Vec::new(), Vec::new()];
        for (b, out) in branches.iter_mut().enumerate() {
            *out = (0..=max_sector)
                .map(|n| {
                    (0..=n)
                        .map(|m| (0..2).map(|a| qubit.get(index(b), index(a)) * rotated[a][n][m]).sum())
                        .collect()
                })
                .collect();
        }
        Ok(Self {
            branches,
            frame: *to,
            ..self.clone()
        })
    }

    /// Stokes expectations and correlators in the state's frame.
    pub fn stokes(&self) -> StokesExpectation {
        let norm = self.norm_sqr();
        let ops = [StokesAxis::X, StokesAxis::Y, StokesAxis::Z];
        let pauli = |axis: StokesAxis, a: usize, b: usize| -> Complex64 {
            match (axis, a, b) {
                (StokesAxis::X, 0, 1) | (StokesAxis::X, 1, 0) => Complex64::new(1.0, 0.0),
                (StokesAxis::Y, 0, 1) => Complex64::new(0.0, -1.0),
                (StokesAxis::Y, 1, 0) => Complex64::new(0.0, 1.0),
                (StokesAxis::Z, 0, 0) => Complex64::new(1.0, 0.0),
                (StokesAxis::Z, 1, 1) => Complex64::new(-1.0, 0.0),
                _ => Complex64::default(),
            }
        };
        let mut single = [0.0; 3];
        let mut correlators = [0.0; 3];
        for (i, &axis) in ops.iter().enumerate() {
            let applied: Vec<Vec<Vec<Complex64>>> = self
                .branches
                .iter()
                .map(|br| br.iter().map(|v| axis.apply(v)).collect())
                .collect();
            let mut corr = Complex64::default();
            for a in 0..2 {
                for (b, applied_b) in applied.iter().enumerate() {
                    let elem = inner(&self.branches[a], applied_b);
                    if a == b {
                        single[i] += elem.re;
                    }
                    corr += pauli(axis, a, b) * elem;
                }
            }
            correlators[i] = corr.re / norm;
            single[i] /= norm;
        }
        let n_total = self
            .branches
            .iter()
            .flat_map(|br| br.iter().enumerate())
            .map(|(n, v)| n as f64 * v.iter().map(|a| a.norm_sqr()).sum::<f64>())
            .sum::<f64>()
            / norm;
        StokesExpectation {
            jx: single[0],
            jy: single[1],
            jz: single[2],
            n_total,
            correlators,
        }
    }
}

fn inner(left: &[Vec<Complex64>], right: &[Vec<Complex64>]) -> Complex64 {
    left.iter()
        .zip(right)
        .flat_map(|(l, r)| l.iter().zip(r))
        .map(|(a, b)| a.conj() * b)
        .sum()
}

#[derive(Debug, Clone, Copy)]
enum StokesAxis {
    X,
    Y,
    Z,
}

impl StokesAxis {
    /// Applies the Stokes operator to one sector, `J = b†σb` over the frame modes.
    fn apply(self, v: &[Complex64]) -> Vec<Complex64> {
        let n = v.len() - 1;
        let mut out = vec![Complex64::default(); v.len()];
        match self {
            StokesAxis::Z => {
                for (m, (o, a)) in out.iter_mut().zip(v).enumerate() {
                    *o = a * (2.0 * m as f64 - n as f64);
                }
            }
            StokesAxis::X | StokesAxis::Y => {
                let (raise, lower) = match self {
                    StokesAxis::X => (Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)),
                    _ => (Complex64::new(0.0, -1.0), Complex64::new(0.0, 1.0)),
                };
                for m in 0..=n {
                    if m < n {
                        out[m + 1] += raise * (((m + 1) * (n - m)) as f64).sqrt() * v[m];
                    }
                    if m > 0 {
                        out[m - 1] += lower * ((m * (n - m + 1)) as f64).sqrt() * v[m];
                    }
                }
            }
        }
        out
    }
}

/// Macro-side Stokes means and the micro-macro correlators `⟨σ_i J_i⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StokesExpectation {
    pub jx: f64,
    pub jy: f64,
    pub jz: f64,
    pub n_total: f64,
    /// `[⟨σ_x J_x⟩, ⟨σ_y J_y⟩, ⟨σ_z J_z⟩]`
    pub correlators: [f64; 3],
}

impl StokesExpectation {
    pub fn excess(&self) -> f64 {
        self.correlators.iter().sum::<f64>().abs() - self.n_total
    }
}

/// `|⟨σ_A·J_B⟩| − ⟨N_B⟩` for the truncated unitary state.
pub fn witness_excess(state: &TruncatedMicroMacroState) -> f64 {
    state.stokes().excess()
}

/// Witness excess of a measure-and-prepare cloner fed by one half of a singlet.
///
/// For each axis the micro photon is found along `±n` with probability 1/2,
/// which prepares the amplifier input along `∓n`; the correlator is assembled
/// from the two conditional means of `J_n`.
pub fn mp_witness_excess(model: &ClonerModel, photons: usize) -> Result<f64> {
    if matches!(model, ClonerModel::Unitary { .. }) {
        return Err(Error::InvalidArgument(
            "mp_witness_excess takes a measure-and-prepare model".into(),
        ));
    }
    model.validate_for(photons)?;
    let axes = [
        ModeBasis::equatorial(0.0)?,
        ModeBasis::equatorial(FRAC_PI_2)?,
        ModeBasis::hv(),
    ];
    let mut total = 0.0;
    for axis in axes {
        let input_along = |input: ModeBasis| -> Result<f64> {
            let setting = MeasurementSetting {
                micro: input,
                macro_basis: axis,
            };
            Ok(distribution(model, photons, &setting)?.mean_imbalance())
        };
        let micro_plus = input_along(axis.antipode())?;
        let micro_minus = input_along(axis)?;
        total += 0.5 * (micro_plus - micro_minus);
    }
    Ok(total.abs() - photons as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bare_singlet() {
        let state = build_truncated_state(Gain::new(0.0).unwrap(), 3).unwrap();
        assert!(state.norm_deficit().abs() <= 1e-15);
        assert_eq!(state.tail_bound(), 0.0);
        let s = state.stokes();
        for c in s.correlators {
            assert!((c + 1.0).abs() < 1e-15);
        }
        assert_eq!(witness_excess(&state), 2.0);
    }

    #[test]
    fn even_macro_sectors_are_empty() {
        let state = build_truncated_state(Gain::new(0.7).unwrap(), 6).unwrap();
        for a in 0..2 {
            for (n, sector) in state.branches[a].iter().enumerate() {
                if n % 2 == 0 {
                    assert!(sector.iter().all(|x| x.norm() == 0.0));
                }
            }
        }
    }

    #[test]
    fn tail_bound_dominates_deficit() {
        for (g, k) in [(0.3, 2), (0.8, 5), (1.2, 10)] {
            let state = build_truncated_state(Gain::new(g).unwrap(), k).unwrap();
            assert!(state.norm_deficit() >= -1e-15);
            assert!(state.norm_deficit() <= state.tail_bound(), "g={g} K={k}");
        }
        let small = build_truncated_state(Gain::new(0.5).unwrap(), 40).unwrap();
        assert!(small.tail_bound() <= 1e-10 && !small.cutoff_too_small());
        assert!(build_truncated_state(Gain::new(1.5).unwrap(), 2)
            .unwrap()
            .cutoff_too_small());
    }

    #[test]
    fn amplified_singlet_excess() {
        let state = build_truncated_state(Gain::new(0.5).unwrap(), 40).unwrap();
        assert!((witness_excess(&state) - 2.0).abs() < 1e-6);
    }

    #[test]
    fn measure_and_prepare_respects_bound() {
        assert!(mp_witness_excess(&ClonerModel::MpEquatorial, 1).unwrap() <= 1e-9);
        assert!(mp_witness_excess(&ClonerModel::MpSqueezed { tau: 1 }, 11).unwrap() <= 1e-9);
        assert!(mp_witness_excess(&ClonerModel::unitary(), 3).is_err());
    }
}
