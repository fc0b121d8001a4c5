use std::path::PathBuf;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use super::angle::PiMultiple;
use super::CliError;
use crate::cloners::{ClonerModel, MeasurementSetting};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    Dist,
    Sweep,
    Witness,
    Reproduce,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Figure {
    Fig2,
    Fig3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
pub enum OutputFormat {
    #[serde(rename = "csv")]
    Csv,
    #[serde(rename = "json")]
    Json,
    #[value(name = "svg+csv")]
    #[serde(rename = "svg+csv")]
    SvgCsv,
}

/// Bloch angles of the micro photon (A) and of the counters (B).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Angles {
    pub theta_a: PiMultiple,
    pub phi_a: PiMultiple,
    pub theta_b: PiMultiple,
    pub phi_b: PiMultiple,
}

impl Angles {
    /// Both sides on the equator with `Δφ = 0`.
    pub fn equatorial_matched() -> Self {
        Self {
            theta_a: PiMultiple::HALF,
            phi_a: PiMultiple::ZERO,
            theta_b: PiMultiple::HALF,
            phi_b: PiMultiple::ZERO,
        }
    }

    pub fn setting(&self) -> Result<MeasurementSetting> {
        MeasurementSetting::new(
            self.theta_a.radians(),
            self.phi_a.radians(),
            self.theta_b.radians(),
            self.phi_b.radians(),
        )
    }
}

/// A parameter the CLI replaced because the user asked it to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Substitution {
    pub parameter: String,
    pub requested: usize,
    pub used: usize,
    pub reason: String,
}

/// Fully resolved, validated parameters of one invocation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: CommandKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub figure: Option<Figure>,
    pub models: Vec<ClonerModel>,
    pub photons: Vec<usize>,
    pub angles: Angles,
    #[serde(default)]
    pub sigmas: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<usize>,
    pub format: OutputFormat,
    pub out: PathBuf,
    pub allow_approx_n: bool,
    #[serde(default)]
    pub substitutions: Vec<Substitution>,
}

pub(crate) fn parse_model(spec: &str, tau: Option<usize>) -> std::result::Result<ClonerModel, CliError> {
    let model = match (spec.trim(), tau) {
        ("mp-sq", Some(tau)) => ClonerModel::MpSqueezed { tau },
        ("mp-sq", None) => {
            return Err(CliError::Usage(
                "model mp-sq needs --tau or the form mp-sq:<tau>".into(),
            ))
        }
        (s, _) => s.parse().map_err(|e: Error| CliError::Usage(e.to_string()))?,
    };
    Ok(model)
}

/// Checks every model against every photon number. An even `N` that a model
/// cannot populate is an error unless `allow_approx` is set, in which case
/// `N + 1` is used and the substitution is reported.
pub(crate) fn resolve_photons(
    models: &[ClonerModel],
    requested: &[usize],
    allow_approx: bool,
) -> std::result::Result<(Vec<usize>, Vec<Substitution>), CliError> {
    let mut used = Vec::with_capacity(requested.len());
    let mut substitutions = Vec::new();
    for &n in requested {
        let parity_clash = models
            .iter()
            .any(|m| matches!(m.validate_for(n), Err(Error::EvenPhotonNumber(_))));
        let n_used = if parity_clash {
            let err = Error::EvenPhotonNumber(n);
            if !allow_approx {
                return Err(CliError::Usage(format!(
                    "{err}; pass --allow-approx-N to run at N={} instead",
                    n + 1
                )));
            }
            substitutions.push(Substitution {
                parameter: "N".into(),
                requested: n,
                used: n + 1,
                reason: err.to_string(),
            });
            n + 1
        } else {
            n
        };
        for model in models {
            model
                .validate_for(n_used)
                .map_err(|e| CliError::Usage(format!("model {model}: {e}")))?;
        }
        used.push(n_used);
    }
    Ok((used, substitutions))
}
