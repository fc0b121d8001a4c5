//! Coarse-graining, distribution distances and distance sweeps.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cloners::{distribution, ClonerModel, MeasurementSetting};
use crate::distribution::{compensated_sum, PhotonCountDistribution};
use crate::error::{Error, Result};

/// Width of the symmetric moving-average window; periodic in `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoarseGrainSpec {
    sigma: usize,
}

impl CoarseGrainSpec {
    pub fn new(sigma: usize) -> Result<Self> {
        if sigma == 0 || sigma.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!(
                "bin size must be odd and positive, got {sigma}"
            )));
        }
        Ok(Self { sigma })
    }

    pub fn sigma(&self) -> usize {
        self.sigma
    }
}

/// `P̄(j) = (1/σ) Σ_{|d| ≤ (σ−1)/2} P((j + d) mod (N+1))`.
pub fn coarse_grain(p: &PhotonCountDistribution, spec: CoarseGrainSpec) -> Result<PhotonCountDistribution> {
    let len = p.len();
    let sigma = spec.sigma();
    if sigma > len {
        return Err(Error::InvalidArgument(format!(
            "bin size {sigma} exceeds the {len} outcomes"
        )));
    }
    let half = (sigma - 1) / 2;
    let probs = p.probabilities();
    let scale = 1.0 / sigma as f64;
    let binned = (0..len)
        .map(|j| {
            let window = (0..sigma).map(|k| probs[(j + len + k - half) % len]);
            compensated_sum(window) * scale
        })
        .collect();
    PhotonCountDistribution::new(binned)
}

/// Distribution over non-overlapping pairs `{2m, 2m+1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairBinned(Vec<f64>);

impl PairBinned {
    pub fn probabilities(&self) -> &[f64] {
        &self.0
    }
}

impl AsRef<[f64]> for PairBinned {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

/// `Q(m) = P(2m) + P(2m+1)`; the last bin holds a single entry when `N` is even.
pub fn pair_bin(p: &PhotonCountDistribution) -> PairBinned {
    PairBinned(p.probabilities().chunks(2).map(|pair| pair.iter().sum()).collect())
}

/// `Σ_j |P(j) − Q(j)|`, between distributions on the same outcome grid.
pub fn manhattan_distance<P: AsRef<[f64]> + ?Sized>(p: &P, q: &P) -> Result<f64> {
    let (p, q) = (p.as_ref(), q.as_ref());
    if p.len() != q.len() {
        return Err(Error::LengthMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    Ok(compensated_sum(p.iter().zip(q).map(|(a, b)| (a - b).abs())))
}

/// `cos²(Δφ/2) P₀ + sin²(Δφ/2) P_π + 2 sin(Δφ/2) cos(Δφ/2) √(P₀ P_π)`, entrywise.
///
/// Not renormalized. Exact for the unitary cloner, whose `P₀` and `P_π` have
/// disjoint support; for measure-and-prepare mixtures the cross term does not
/// describe the mixed state and the result need not sum to one.
pub fn compose_delta_phi(p0: &[f64], ppi: &[f64], delta_phi: f64) -> Result<Vec<f64>> {
    if p0.len() != ppi.len() {
        return Err(Error::LengthMismatch {
            left: p0.len(),
            right: ppi.len(),
        });
    }
    if p0.iter().chain(ppi).any(|&x| x < 0.0 || !x.is_finite()) {
        return Err(Error::InvalidArgument(
            "compose_delta_phi needs non-negative entries".into(),
        ));
    }
    let (s, c) = (0.5 * delta_phi).sin_cos();
    Ok(p0
        .iter()
        .zip(ppi)
        .map(|(&a, &b)| c * c * a + s * s * b + 2.0 * s * c * (a * b).sqrt())
        .collect())
}

/// One `(N, σ)` cell of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub photons: usize,
    pub sigma: usize,
    pub model_a: ClonerModel,
    pub model_b: ClonerModel,
    pub setting: MeasurementSetting,
    pub distance: f64,
}

impl SweepRow {
    pub fn sigma_over_n(&self) -> f64 {
        self.sigma as f64 / self.photons as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    /// `(σ, D)` pairs for one photon number, in row order.
    pub fn curve(&self, photons: usize) -> Vec<(usize, f64)> {
        self.rows
            .iter()
            .filter(|r| r.photons == photons)
            .map(|r| (r.sigma, r.distance))
            .collect()
    }

    /// Distance at relative bin size `x = σ/N`, linearly interpolated along
    /// the curve of `photons`; `None` outside the sampled range.
    pub fn distance_at_relative_sigma(&self, photons: usize, x: f64) -> Option<f64> {
        let curve: Vec<(f64, f64)> = self
            .curve(photons)
            .into_iter()
            .map(|(s, d)| (s as f64 / photons as f64, d))
            .collect();
        curve.windows(2).find(|w| w[0].0 <= x && x <= w[1].0).map(|w| {
            let t = (x - w[0].0) / (w[1].0 - w[0].0);
            w[0].1 + t * (w[1].1 - w[0].1)
        })
    }
}

/// Coarse-grained distance between two models for every `(N, σ)`.
///
/// Rows are ordered N-major, σ-minor. Cells with `σ > N + 1` have no
/// defined window and are left out.
pub fn distance_sweep(
    models: (ClonerModel, ClonerModel),
    setting: &MeasurementSetting,
    photon_numbers: &[usize],
    sigmas: &[usize],
) -> Result<SweepResult> {
    let specs = sigmas
        .iter()
        .map(|&s| CoarseGrainSpec::new(s))
        .collect::<Result<Vec<_>>>()?;
    let (model_a, model_b) = models;
    let per_n: Vec<Vec<SweepRow>> = photon_numbers
        .par_iter()
        .map(|&photons| -> Result<Vec<SweepRow>> {
            let p = distribution(&model_a, photons, setting)?;
            let q = distribution(&model_b, photons, setting)?;
            specs
                .iter()
                .filter(|spec| spec.sigma() <= photons + 1)
                .map(|&spec| {
                    let distance = manhattan_distance(&coarse_grain(&p, spec)?, &coarse_grain(&q, spec)?)?;
                    Ok(SweepRow {
                        photons,
                        sigma: spec.sigma(),
                        model_a,
                        model_b,
                        setting: *setting,
                        distance,
                    })
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    Ok(SweepResult {
        rows: per_n.into_iter().flatten().collect(),
    })
}
