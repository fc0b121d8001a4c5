//! The `cloner-sim` command line.
//!
//! ```text
//! cloner-sim dist      --model unitary --model mp-eq --N 101 --theta-a 1/2 --theta-b 1/2 --dphi 0
//! cloner-sim sweep     --model unitary --model mp-sq:2 --N 51,101 --sigma 1,3,5 --theta-b 1/12
//! cloner-sim witness   --model unitary --gain 0.5 --cutoff 40
//! cloner-sim reproduce fig3 --out results/
//! ```
//!
//! Every command computes all of its outputs in memory first and then
//! writes each file atomically, followed by a `MANIFEST.json` that records
//! the resolved parameters. Exit status is 0 on success, 2 for usage errors
//! and 3 when a numerical guard trips.

mod angle;
mod commands;
mod config;
mod svg;
mod table;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

pub use angle::PiMultiple;
pub use commands::{execute, OutputFile, Outputs};
pub use config::{Angles, CommandKind, Figure, OutputFormat, RunConfig, Substitution};
pub use svg::{LineChart, Series};
pub use table::{format_g12, Cell, Table};

use crate::cloners::ClonerModel;
use crate::error::Error;
use crate::fock::Gain;

/// JSON schema of `MANIFEST.json`.
pub const MANIFEST_SCHEMA: &str = include_str!("../../schemas/manifest.schema.json");

/// Environment variable that caps the worker thread count.
pub const THREADS_ENV: &str = "CLONER_SIM_THREADS";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Library(#[from] Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Library(e) if e.is_numerical() => 3,
            CliError::Library(_) => 2,
            CliError::Io(_) => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "cloner-sim",
    version,
    about = "Photon-counting statistics of unitary and measure-and-prepare cloners"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Counting distribution P(j) for one or more models.
    Dist(DistArgs),
    /// Coarse-grained distance between two models over N and sigma.
    Sweep(SweepArgs),
    /// Spin-correlation witness excess.
    Witness(WitnessArgs),
    /// Regenerate the data behind a figure.
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Args)]
struct ModelArgs {
    /// unitary, mp-eq or mp-sq:<tau>; repeat for several models
    #[arg(long = "model", required = true)]
    models: Vec<String>,
    /// tau for a bare `mp-sq` model
    #[arg(long)]
    tau: Option<usize>,
}

/// Angles are rational multiples of pi: `1/2` means pi/2.
#[derive(Debug, Args)]
struct AngleArgs {
    #[arg(long, default_value = "1/2")]
    theta_a: PiMultiple,
    #[arg(long, conflicts_with = "dphi")]
    phi_a: Option<PiMultiple>,
    #[arg(long, default_value = "1/2")]
    theta_b: PiMultiple,
    #[arg(long, conflicts_with = "dphi")]
    phi_b: Option<PiMultiple>,
    /// phi_A - phi_B, with phi_B = 0
    #[arg(long)]
    dphi: Option<PiMultiple>,
}

impl AngleArgs {
    fn resolve(&self) -> Angles {
        let (phi_a, phi_b) = match self.dphi {
            Some(d) => (d, PiMultiple::ZERO),
            None => (
                self.phi_a.unwrap_or(PiMultiple::ZERO),
                self.phi_b.unwrap_or(PiMultiple::ZERO),
            ),
        };
        Angles {
            theta_a: self.theta_a,
            phi_a,
            theta_b: self.theta_b,
            phi_b,
        }
    }
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Output directory, created if missing
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Run an even N at N+1 when a model needs odd N, recording it in the manifest
    #[arg(long = "allow-approx-N")]
    allow_approx_n: bool,
}

#[derive(Debug, Args)]
struct DistArgs {
    #[command(flatten)]
    models: ModelArgs,
    #[arg(long = "N")]
    photons: usize,
    #[command(flatten)]
    angles: AngleArgs,
    #[command(flatten)]
    output: OutputArgs,
    #[arg(long, value_enum, default_value = "csv")]
    format: OutputFormat,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[command(flatten)]
    models: ModelArgs,
    /// Comma-separated photon numbers
    #[arg(long = "N", value_delimiter = ',', required = true)]
    photons: Vec<usize>,
    /// Comma-separated odd bin sizes
    #[arg(long = "sigma", value_delimiter = ',', required = true)]
    sigmas: Vec<usize>,
    #[command(flatten)]
    angles: AngleArgs,
    #[command(flatten)]
    output: OutputArgs,
    #[arg(long, value_enum, default_value = "csv")]
    format: OutputFormat,
}

#[derive(Debug, Args)]
struct WitnessArgs {
    /// unitary, mp-eq or mp-sq:<tau>
    #[arg(long)]
    model: String,
    #[arg(long)]
    tau: Option<usize>,
    /// Amplifier gain g of the unitary cloner
    #[arg(long, default_value_t = 1.0)]
    gain: f64,
    /// Maximum number of created photon pairs kept in the unitary state
    #[arg(long, default_value_t = 80)]
    cutoff: usize,
    /// Photon number for measure-and-prepare models
    #[arg(long = "N")]
    photons: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct ReproduceArgs {
    #[arg(value_enum)]
    figure: Figure,
    /// Override the photon numbers of the figure (comma-separated)
    #[arg(long = "N", value_delimiter = ',')]
    photons: Option<Vec<usize>>,
    #[command(flatten)]
    output: OutputArgs,
    #[arg(long, value_enum, default_value = "svg+csv")]
    format: OutputFormat,
}

fn models_from(args: &ModelArgs) -> Result<Vec<ClonerModel>, CliError> {
    args.models.iter().map(|m| config::parse_model(m, args.tau)).collect()
}

fn odd_sigmas(sigmas: &[usize]) -> Result<Vec<usize>, CliError> {
    if let Some(s) = sigmas.iter().find(|&&s| s == 0 || s % 2 == 0) {
        return Err(CliError::Usage(format!(
            "bin sizes must be odd and positive, got sigma={s}"
        )));
    }
    Ok(sigmas.to_vec())
}

impl Cli {
    /// Validates the arguments and resolves them into a [`RunConfig`].
    pub fn into_config(self) -> Result<RunConfig, CliError> {
        match self.command {
            Command::Dist(a) => {
                let models = models_from(&a.models)?;
                let (photons, substitutions) = config::resolve_photons(&models, &[a.photons], a.output.allow_approx_n)?;
                Ok(RunConfig {
                    command: CommandKind::Dist,
                    figure: None,
                    models,
                    photons,
                    angles: a.angles.resolve(),
                    sigmas: Vec::new(),
                    cutoff: None,
                    format: a.format,
                    out: a.output.out,
                    allow_approx_n: a.output.allow_approx_n,
                    substitutions,
                })
            }
            Command::Sweep(a) => {
                let models = models_from(&a.models)?;
                if models.len() != 2 {
                    return Err(CliError::Usage(format!(
                        "sweep compares exactly two models, got {}",
                        models.len()
                    )));
                }
                let (photons, substitutions) = config::resolve_photons(&models, &a.photons, a.output.allow_approx_n)?;
                Ok(RunConfig {
                    command: CommandKind::Sweep,
                    figure: None,
                    models,
                    photons,
                    angles: a.angles.resolve(),
                    sigmas: odd_sigmas(&a.sigmas)?,
                    cutoff: None,
                    format: a.format,
                    out: a.output.out,
                    allow_approx_n: a.output.allow_approx_n,
                    substitutions,
                })
            }
            Command::Witness(a) => {
                let model = match config::parse_model(&a.model, a.tau)? {
                    ClonerModel::Unitary { .. } => ClonerModel::Unitary {
                        gain: Gain::new(a.gain)?,
                    },
                    other => other,
                };
                let (photons, cutoff, substitutions) = match model {
                    ClonerModel::Unitary { .. } => (Vec::new(), Some(a.cutoff), Vec::new()),
                    _ => {
                        let n = a
                            .photons
                            .ok_or_else(|| CliError::Usage(format!("the {model} witness needs --N")))?;
                        let (photons, subs) = config::resolve_photons(&[model], &[n], a.output.allow_approx_n)?;
                        (photons, None, subs)
                    }
                };
                Ok(RunConfig {
                    command: CommandKind::Witness,
                    figure: None,
                    models: vec![model],
                    photons,
                    angles: Angles::equatorial_matched(),
                    sigmas: Vec::new(),
                    cutoff,
                    format: OutputFormat::Json,
                    out: a.output.out,
                    allow_approx_n: a.output.allow_approx_n,
                    substitutions,
                })
            }
            Command::Reproduce(a) => {
                let (models, default_photons, angles, sigmas) = match a.figure {
                    Figure::Fig2 => (
                        vec![ClonerModel::unitary(), ClonerModel::MpEquatorial],
                        vec![101],
                        Angles::equatorial_matched(),
                        Vec::new(),
                    ),
                    Figure::Fig3 => (
                        vec![ClonerModel::unitary(), ClonerModel::MpSqueezed { tau: 2 }],
                        vec![51, 101, 201],
                        Angles {
                            theta_a: PiMultiple::HALF,
                            phi_a: PiMultiple::ZERO,
                            theta_b: PiMultiple::new(1, 12).expect("nonzero denominator"),
                            phi_b: PiMultiple::ZERO,
                        },
                        (1..=61).step_by(2).collect(),
                    ),
                };
                let requested = a.photons.unwrap_or(default_photons);
                if a.figure == Figure::Fig2 && requested.len() != 1 {
                    return Err(CliError::Usage("fig2 takes a single N".into()));
                }
                let (photons, substitutions) = config::resolve_photons(&models, &requested, a.output.allow_approx_n)?;
                Ok(RunConfig {
                    command: CommandKind::Reproduce,
                    figure: Some(a.figure),
                    models,
                    photons,
                    angles,
                    sigmas,
                    cutoff: None,
                    format: a.format,
                    out: a.output.out,
                    allow_approx_n: a.output.allow_approx_n,
                    substitutions,
                })
            }
        }
    }
}

/// Writes every file atomically into `dir`: each lands under its final name
/// only once fully written.
pub fn write_outputs(dir: &Path, outputs: &Outputs) -> std::io::Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::with_capacity(outputs.files.len());
    for file in &outputs.files {
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        tmp.write_all(file.contents.as_bytes())?;
        tmp.as_file().sync_all()?;
        let path = dir.join(&file.name);
        tmp.persist(&path).map_err(|e| e.error)?;
        written.push(path);
    }
    Ok(written)
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("{THREADS_ENV} must be a positive integer, got {value:?}")))?;
    // a pool that already exists keeps its size
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    Ok(())
}

fn run_parsed(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    let config = cli.into_config()?;
    let outputs = execute(&config)?;
    for warning in &outputs.warnings {
        eprintln!("warning: {warning}");
    }
    for path in write_outputs(&config.out, &outputs)? {
        println!("{}", path.display());
    }
    Ok(())
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match run_parsed(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
