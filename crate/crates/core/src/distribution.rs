use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Entries this far below zero are rounding noise and clamp to zero.
pub const NEGATIVE_TOL: f64 = 1e-14;
/// Allowed deviation of the total probability from one.
pub const NORMALIZATION_TOL: f64 = 1e-10;

/// Probability of counting `j` photons in the measured mode (counter B1) and
/// `N − j` in its orthogonal partner, for `j = 0..=N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhotonCountDistribution {
    probabilities: Vec<f64>,
}

impl PhotonCountDistribution {
    /// Validates a normalized vector, clamping tiny negative entries.
    pub fn new(mut probabilities: Vec<f64>) -> Result<Self> {
        if probabilities.is_empty() {
            return Err(Error::InvalidArgument("empty distribution".into()));
        }
        let photons = probabilities.len() - 1;
        for p in probabilities.iter_mut() {
            if !p.is_finite() || *p < -NEGATIVE_TOL {
                return Err(Error::NormalizationDefect { photons, sum: *p });
            }
            if *p < 0.0 {
                *p = 0.0;
            }
        }
        let sum = compensated_sum(probabilities.iter().copied());
        if (sum - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::NormalizationDefect { photons, sum });
        }
        Ok(Self { probabilities })
    }

    /// Rescales non-negative weights to unit mass.
    pub fn from_weights(weights: Vec<f64>) -> Result<Self> {
        let sum = compensated_sum(weights.iter().copied());
        if sum.is_nan() || sum <= 0.0 || !sum.is_finite() {
            return Err(Error::InvalidArgument(format!("weights sum to {sum}")));
        }
        Self::new(weights.into_iter().map(|w| w / sum).collect())
    }

    pub fn total_photons(&self) -> usize {
        self.probabilities.len() - 1
    }

    pub fn len(&self) -> usize {
        self.probabilities.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn get(&self, j: usize) -> f64 {
        self.probabilities[j]
    }

    /// Relabels `j → N − j`.
    pub fn reflected(&self) -> Self {
        Self {
            probabilities: self.probabilities.iter().rev().copied().collect(),
        }
    }

    /// Expected Stokes value `⟨2j − N⟩` of the measured mode pair.
    pub fn mean_imbalance(&self) -> f64 {
        let n = self.total_photons() as f64;
        compensated_sum(
            self.probabilities
                .iter()
                .enumerate()
                .map(|(j, p)| p * (2.0 * j as f64 - n)),
        )
    }
}

impl AsRef<[f64]> for PhotonCountDistribution {
    fn as_ref(&self) -> &[f64] {
        &self.probabilities
    }
}

/// Neumaier summation in iteration order.
pub fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let (mut sum, mut comp) = (0.0_f64, 0.0_f64);
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}
