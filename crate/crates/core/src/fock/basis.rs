use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A pair of orthogonal polarization modes labelled by a Bloch direction.
///
/// The first mode is `a(θ,φ) = cos(θ/2) e^{iφ/2} a_h + sin(θ/2) e^{-iφ/2} a_v`.
/// The second mode is its SU(2) complement
/// `−sin(θ/2) e^{iφ/2} a_h + cos(θ/2) e^{-iφ/2} a_v`, which is the antipodal
/// direction `(π−θ, φ+π)` up to a constant mode phase. With this choice
/// `ModeBasis::hv()` is exactly `(a_h, a_v)` and every basis change is in SU(2).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeBasis {
    theta: f64,
    phi: f64,
}

const EQUATOR_TOL: f64 = 1e-12;

impl ModeBasis {
    /// Builds a basis, reducing θ to [0, π] and φ to [0, 2π).
    ///
    /// Reduction may change the constant phases of the two modes, which only
    /// affects unobservable phases of sector amplitudes.
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !theta.is_finite() || !phi.is_finite() {
            return Err(Error::InvalidArgument(format!("non-finite angles ({theta}, {phi})")));
        }
        let mut theta = theta.rem_euclid(TAU);
        let mut phi = phi;
        if theta > PI {
            theta = TAU - theta;
            phi += PI;
        }
        let mut phi = phi.rem_euclid(TAU);
        if phi >= TAU {
            phi = 0.0;
        }
        Ok(Self { theta, phi })
    }

    pub fn hv() -> Self {
        Self { theta: 0.0, phi: 0.0 }
    }

    pub fn equatorial(phi: f64) -> Result<Self> {
        Self::new(FRAC_PI_2, phi)
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn is_equatorial(&self) -> bool {
        (self.theta - FRAC_PI_2).abs() <= EQUATOR_TOL
    }

    /// The orthogonal direction on the Bloch sphere.
    pub fn antipode(&self) -> Self {
        Self::new(PI - self.theta, self.phi + PI).expect("finite angles")
    }

    /// Annihilation operators of (first, second) mode as rows over `(a_h, a_v)`.
    pub fn mode_matrix(&self) -> [[Complex64; 2]; 2] {
        let (s, c) = (0.5 * self.theta).sin_cos();
        let plus = Complex64::from_polar(1.0, 0.5 * self.phi);
        let minus = plus.conj();
        [[plus * c, minus * s], [-plus * s, minus * c]]
    }

    /// h/v components of the one-photon state `a†(θ,φ)|0⟩`.
    pub fn single_photon(&self) -> [Complex64; 2] {
        let m = self.mode_matrix();
        [m[0][0].conj(), m[0][1].conj()]
    }
}

/// Amplifier gain `g = χt` with `C = cosh g` and `Γ = tanh g`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Gain(f64);

impl Gain {
    pub fn new(g: f64) -> Result<Self> {
        if !g.is_finite() || g < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "gain must be finite and non-negative, got {g}"
            )));
        }
        if g.tanh() >= 1.0 {
            return Err(Error::InvalidArgument(format!(
                "gain {g} saturates tanh in double precision"
            )));
        }
        Ok(Self(g))
    }

    pub fn value(&self) -> f64 {
        self.0
    }

    pub fn cosh(&self) -> f64 {
        self.0.cosh()
    }

    pub fn tanh(&self) -> f64 {
        self.0.tanh()
    }
}
