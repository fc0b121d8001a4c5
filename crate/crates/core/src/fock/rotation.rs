use num_complex::Complex64;

use super::ModeBasis;
use crate::error::{Error, Result};

/// Largest tolerated `max |D†D − I|` before a rotation is rejected.
pub const UNITARITY_GUARD: f64 = 1e-8;

/// Single-photon mode change `W` with `a†_from[i] = Σ_k W[i][k] a†_to[k]`.
pub fn mode_change_matrix(from: &ModeBasis, to: &ModeBasis) -> [[Complex64; 2]; 2] {
    let f = from.mode_matrix();
    let t = to.mode_matrix();
    // a_from = F a_hv and a_hv = T† a_to, so a_from = (F T†) a_to.
    let mut w = [[Complex64::default(); 2]; 2];
    for (i, row) in w.iter_mut().enumerate() {
        for (k, entry) in row.iter_mut().enumerate() {
            let r = f[i][0] * t[k][0].conj() + f[i][1] * t[k][1].conj();
            *entry = r.conj();
        }
    }
    w
}

/// Representation of a basis change on the `N`-photon sector.
///
/// Entry `(p, m)` is `⟨p, N−p|_to |m, N−m⟩_from`, indices counting photons in
/// the first mode of each basis.
#[derive(Debug, Clone)]
pub struct RotationMatrix {
    photons: usize,
    data: Vec<Complex64>,
}

impl RotationMatrix {
    fn identity_zero() -> Self {
        Self {
            photons: 0,
            data: vec![Complex64::new(1.0, 0.0)],
        }
    }

    pub fn photons(&self) -> usize {
        self.photons
    }

    pub fn dim(&self) -> usize {
        self.photons + 1
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim() + col]
    }

    pub fn row(&self, row: usize) -> &[Complex64] {
        let d = self.dim();
        &self.data[row * d..(row + 1) * d]
    }

    pub fn apply(&self, amplitudes: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(amplitudes.len(), self.dim(), "sector size mismatch");
        (0..self.dim())
            .map(|p| self.row(p).iter().zip(amplitudes).map(|(d, a)| d * a).sum())
            .collect()
    }

    /// `max_ij |(D†D − I)_ij|`.
    pub fn unitarity_defect(&self) -> f64 {
        let d = self.dim();
        let mut gram = vec![Complex64::default(); d * d];
        for p in 0..d {
            let row = self.row(p);
            for i in 0..d {
                let left = row[i].conj();
                for j in i..d {
                    gram[i * d + j] += left * row[j];
                }
            }
        }
        let mut defect = 0.0_f64;
        for i in 0..d {
            for j in i..d {
                let target = if i == j { 1.0 } else { 0.0 };
                defect = defect.max((gram[i * d + j] - target).norm());
            }
        }
        defect
    }

    fn guarded(self) -> Result<Self> {
        let defect = self.unitarity_defect();
        if defect > UNITARITY_GUARD || !defect.is_finite() {
            return Err(Error::PrecisionLoss {
                photons: self.photons,
                defect,
                limit: UNITARITY_GUARD,
            });
        }
        Ok(self)
    }

    /// One step of the sector recurrence, `N−1 → N`.
    ///
    /// Column `m` of the new sector is reached both by adding a first-mode
    /// photon to column `m−1` and a second-mode photon to column `m`; the two
    /// routes are blended with weights `m/N` and `(N−m)/N`, so every
    /// coefficient is bounded by one and rounding errors grow only linearly.
    fn next(&self, w: &[[Complex64; 2]; 2]) -> Self {
        let n = self.photons + 1;
        let nf = n as f64;
        let prev = |p: usize, m: usize| self.data[p * n + m];
        let sqrt: Vec<f64> = (0..=n).map(|k| (k as f64).sqrt()).collect();
        let mut data = vec![Complex64::default(); (n + 1) * (n + 1)];
        for p in 0..=n {
            for m in 0..=n {
                let mut value = Complex64::default();
                if m >= 1 {
                    let mut t = Complex64::default();
                    if p >= 1 {
                        t += w[0][0] * (sqrt[p] * prev(p - 1, m - 1));
                    }
                    if p < n {
                        t += w[0][1] * (sqrt[n - p] * prev(p, m - 1));
                    }
                    value += t * (sqrt[m] / nf);
                }
                if m < n {
                    let mut t = Complex64::default();
                    if p >= 1 {
                        t += w[1][0] * (sqrt[p] * prev(p - 1, m));
                    }
                    if p < n {
                        t += w[1][1] * (sqrt[n - p] * prev(p, m));
                    }
                    value += t * (sqrt[n - m] / nf);
                }
                data[p * (n + 1) + m] = value;
            }
        }
        Self { photons: n, data }
    }
}

fn build(photons: usize, from: &ModeBasis, to: &ModeBasis, mut keep: impl FnMut(&RotationMatrix)) -> RotationMatrix {
    let w = mode_change_matrix(from, to);
    let mut current = RotationMatrix::identity_zero();
    keep(&current);
    for _ in 0..photons {
        current = current.next(&w);
        keep(&current);
    }
    current
}

/// Matrix of the basis change `from → to` on the `photons`-photon sector.
///
/// Fails with [`Error::PrecisionLoss`] if the unitarity defect of the result
/// exceeds [`UNITARITY_GUARD`].
pub fn mode_rotation_matrix(photons: usize, from: &ModeBasis, to: &ModeBasis) -> Result<RotationMatrix> {
    build(photons, from, to, |_| {}).guarded()
}

/// Rotation matrices for every sector `0..=max_photons`, from one recurrence.
///
/// Only the largest sector is checked against the guard: recurrence errors
/// grow with `N`.
pub fn rotation_ladder(max_photons: usize, from: &ModeBasis, to: &ModeBasis) -> Result<Vec<RotationMatrix>> {
    let mut ladder = Vec::with_capacity(max_photons + 1);
    build(max_photons, from, to, |m| ladder.push(m.clone()));
    let top = ladder.pop().expect("non-empty ladder").guarded()?;
    ladder.push(top);
    Ok(ladder)
}
