use thiserror::Error;

/// Errors raised by state construction, cloner models and analysis transforms.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The unitary cloner acts on one photon and creates photons in pairs,
    /// so every sector it populates has an odd total photon number.
    #[error("total photon number N={0} must be odd: the amplified single photon only populates odd-N sectors")]
    EvenPhotonNumber(usize),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("loss of precision: unitarity defect {defect:.3e} exceeds {limit:.1e} (N={photons})")]
    PrecisionLoss { photons: usize, defect: f64, limit: f64 },

    #[error("normalization defect: probabilities sum to {sum} (N={photons})")]
    NormalizationDefect { photons: usize, sum: f64 },
}

impl Error {
    /// True for failures of a runtime numerical guard rather than bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::PrecisionLoss { .. } | Error::NormalizationDefect { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
