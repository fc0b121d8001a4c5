use serde_json::{json, Value};

use super::config::{CommandKind, Figure, OutputFormat, RunConfig};
use super::svg::{LineChart, Series};
use super::table::{Cell, Table};
use super::CliError;
use crate::analysis::{distance_sweep, manhattan_distance, pair_bin, SweepResult};
use crate::cloners::{distribution, ClonerModel};
use crate::witness::{build_truncated_state, mp_witness_excess, witness_excess};

/// A rendered output file, not yet written.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputFile {
    pub name: String,
    pub contents: String,
}

/// Everything one command produces, before it touches the filesystem.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Outputs {
    pub files: Vec<OutputFile>,
    pub warnings: Vec<String>,
}

impl Outputs {
    fn push(&mut self, name: impl Into<String>, contents: String) {
        self.files.push(OutputFile {
            name: name.into(),
            contents,
        });
    }

    fn push_table(&mut self, stem: &str, table: &Table, format: OutputFormat) {
        match format {
            OutputFormat::Json => self.push(format!("{stem}.json"), pretty(&table.to_json())),
            OutputFormat::Csv | OutputFormat::SvgCsv => self.push(format!("{stem}.csv"), table.to_csv()),
        }
    }

    fn push_chart(&mut self, stem: &str, chart: LineChart<'_>, format: OutputFormat) {
        if format == OutputFormat::SvgCsv {
            self.push(format!("{stem}.svg"), chart.render());
        }
    }
}

pub(crate) fn pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn slug(model: &ClonerModel) -> String {
    model.label().replace(':', "-")
}

fn probability_table(p: &[f64], index: &'static str) -> Table {
    let mut t = Table::new(vec![index, "probability"]);
    for (j, &v) in p.iter().enumerate() {
        t.push(vec![Cell::from(j), Cell::from(v)]);
    }
    t
}

fn series(label: String, p: &[f64]) -> Series {
    Series {
        label,
        points: p.iter().enumerate().map(|(j, &v)| (j as f64, v)).collect(),
    }
}

/// Runs a resolved configuration and renders its outputs, including
/// `MANIFEST.json`.
pub fn execute(config: &RunConfig) -> Result<Outputs, CliError> {
    let mut out = Outputs::default();
    for s in &config.substitutions {
        out.warnings.push(format!(
            "{} = {} replaced by {}: {}",
            s.parameter, s.requested, s.used, s.reason
        ));
    }
    match (config.command, config.figure) {
        (CommandKind::Dist, _) => dist(config, &mut out)?,
        (CommandKind::Sweep, _) => sweep(config, &mut out)?,
        (CommandKind::Witness, _) => witness(config, &mut out)?,
        (CommandKind::Reproduce, Some(Figure::Fig2)) => fig2(config, &mut out)?,
        (CommandKind::Reproduce, Some(Figure::Fig3)) => fig3(config, &mut out)?,
        (CommandKind::Reproduce, None) => return Err(CliError::Usage("reproduce needs a figure name".into())),
    }
    let manifest = manifest(config, &out);
    out.push("MANIFEST.json", pretty(&manifest));
    Ok(out)
}

fn manifest(config: &RunConfig, out: &Outputs) -> Value {
    let mut parameters = serde_json::to_value(config).expect("config serializes");
    if let Value::Object(map) = &mut parameters {
        // the output directory is where the manifest lives, not a parameter
        map.remove("out");
    }
    let mut files: Vec<&str> = out.files.iter().map(|f| f.name.as_str()).collect();
    files.sort_unstable();
    json!({
        "command": config.command,
        "files": files,
        "library": { "name": env!("CARGO_PKG_NAME"), "version": env!("CARGO_PKG_VERSION") },
        "parameters": parameters,
        "warnings": out.warnings,
    })
}

fn dist(config: &RunConfig, out: &mut Outputs) -> Result<(), CliError> {
    let setting = config.angles.setting()?;
    let photons = config.photons[0];
    let mut chart = Vec::new();
    for model in &config.models {
        let p = distribution(model, photons, &setting)?;
        out.push_table(
            &format!("dist_{}_N{photons}", slug(model)),
            &probability_table(p.probabilities(), "j"),
            config.format,
        );
        chart.push(series(model.label(), p.probabilities()));
    }
    let title = format!("Photon-count distribution, N = {photons}");
    out.push_chart(
        &format!("dist_N{photons}"),
        LineChart {
            title: &title,
            x_label: "j",
            y_label: "P(j)",
            series: chart,
        },
        config.format,
    );
    Ok(())
}

fn run_sweep(config: &RunConfig, out: &mut Outputs) -> Result<SweepResult, CliError> {
    let [a, b] = config.models[..] else {
        return Err(CliError::Usage(format!(
            "a sweep compares exactly two models, got {}",
            config.models.len()
        )));
    };
    let result = distance_sweep((a, b), &config.angles.setting()?, &config.photons, &config.sigmas)?;
    for &n in &config.photons {
        let skipped: Vec<String> = config
            .sigmas
            .iter()
            .filter(|&&s| s > n + 1)
            .map(|s| s.to_string())
            .collect();
        if !skipped.is_empty() {
            out.warnings.push(format!(
                "N={n}: sigma {} exceeds N+1 and has no periodic window; cells omitted",
                skipped.join(",")
            ));
        }
    }
    Ok(result)
}

fn sweep_table(result: &SweepResult) -> Table {
    let mut t = Table::new(vec!["N", "sigma", "sigma_over_N", "distance"]);
    for r in &result.rows {
        t.push(vec![
            Cell::from(r.photons),
            Cell::from(r.sigma),
            Cell::from(r.sigma_over_n()),
            Cell::from(r.distance),
        ]);
    }
    t
}

fn sweep_series(config: &RunConfig, result: &SweepResult, relative: bool) -> Vec<Series> {
    config
        .photons
        .iter()
        .map(|&n| Series {
            label: format!("N = {n}"),
            points: result
                .curve(n)
                .into_iter()
                .map(|(s, d)| (if relative { s as f64 / n as f64 } else { s as f64 }, d))
                .collect(),
        })
        .collect()
}

fn sweep(config: &RunConfig, out: &mut Outputs) -> Result<(), CliError> {
    let result = run_sweep(config, out)?;
    out.push_table("sweep", &sweep_table(&result), config.format);
    let title = format!("Coarse-grained distance, {} vs {}", config.models[0], config.models[1]);
    out.push_chart(
        "sweep",
        LineChart {
            title: &title,
            x_label: "sigma",
            y_label: "D",
            series: sweep_series(config, &result, false),
        },
        config.format,
    );
    Ok(())
}

fn witness(config: &RunConfig, out: &mut Outputs) -> Result<(), CliError> {
    let model = config.models[0];
    let report = match model {
        ClonerModel::Unitary { gain } => {
            let cutoff = config
                .cutoff
                .ok_or_else(|| CliError::Usage("the unitary witness needs --cutoff".into()))?;
            let state = build_truncated_state(gain, cutoff)?;
            if state.cutoff_too_small() {
                out.warnings.push(format!(
                    "norm deficit {:.3e} at cutoff {cutoff}: raise --cutoff for gain {}",
                    state.norm_deficit(),
                    gain.value()
                ));
            }
            json!({
                "excess": witness_excess(&state),
                "model": model.label(),
                "parameters": { "cutoff": cutoff, "gain": gain.value() },
                "tail_bound": state.tail_bound(),
            })
        }
        _ => {
            let photons = config.photons[0];
            json!({
                "excess": mp_witness_excess(&model, photons)?,
                "model": model.label(),
                "parameters": { "N": photons },
                "tail_bound": 0.0,
            })
        }
    };
    out.push("witness.json", pretty(&report));
    Ok(())
}

fn fig2(config: &RunConfig, out: &mut Outputs) -> Result<(), CliError> {
    let setting = config.angles.setting()?;
    let photons = config.photons[0];
    let [a, b] = config.models[..] else {
        unreachable!("fig2 is built with two models")
    };
    let p = distribution(&a, photons, &setting)?;
    let q = distribution(&b, photons, &setting)?;
    let (pp, qp) = (pair_bin(&p), pair_bin(&q));
    for (model, dist, pairs) in [(&a, &p, &pp), (&b, &q, &qp)] {
        out.push_table(
            &format!("fig2_{}", slug(model)),
            &probability_table(dist.probabilities(), "j"),
            config.format,
        );
        out.push_table(
            &format!("fig2_{}_pairs", slug(model)),
            &probability_table(pairs.probabilities(), "m"),
            config.format,
        );
    }
    let unbinned = manhattan_distance(&p, &q)?;
    let binned = manhattan_distance(&pp, &qp)?;
    let mut t = Table::new(vec!["quantity", "value"]);
    t.push(vec![Cell::from("distance_unbinned"), Cell::from(unbinned)]);
    t.push(vec![Cell::from("distance_pair_binned"), Cell::from(binned)]);
    t.push(vec![Cell::from("ratio"), Cell::from(binned / unbinned)]);
    out.push_table("fig2_distances", &t, config.format);

    let title = format!("Photon-count distributions, N = {photons}");
    out.push_chart(
        "fig2",
        LineChart {
            title: &title,
            x_label: "j",
            y_label: "P(j)",
            series: vec![
                series(a.label(), p.probabilities()),
                series(b.label(), q.probabilities()),
            ],
        },
        config.format,
    );
    out.push_chart(
        "fig2_pairs",
        LineChart {
            title: "Pair-binned distributions",
            x_label: "m",
            y_label: "P(2m) + P(2m+1)",
            series: vec![
                series(a.label(), pp.probabilities()),
                series(b.label(), qp.probabilities()),
            ],
        },
        config.format,
    );
    Ok(())
}

/// Relative bin sizes tabulated in the fig3 inset.
const INSET_GRID: std::ops::RangeInclusive<usize> = 1..=30;

fn fig3(config: &RunConfig, out: &mut Outputs) -> Result<(), CliError> {
    let result = run_sweep(config, out)?;
    out.push_table("fig3_sweep", &sweep_table(&result), config.format);
    let mut inset = Table::new(vec!["sigma_over_N", "N", "distance"]);
    for k in INSET_GRID {
        let x = k as f64 / 100.0;
        for &n in &config.photons {
            if let Some(d) = result.distance_at_relative_sigma(n, x) {
                inset.push(vec![Cell::from(x), Cell::from(n), Cell::from(d)]);
            }
        }
    }
    out.push_table("fig3_inset", &inset, config.format);
    let title = format!("Coarse-grained distance, {} vs {}", config.models[0], config.models[1]);
    out.push_chart(
        "fig3",
        LineChart {
            title: &title,
            x_label: "sigma",
            y_label: "D",
            series: sweep_series(config, &result, false),
        },
        config.format,
    );
    out.push_chart(
        "fig3_inset",
        LineChart {
            title: &title,
            x_label: "sigma / N",
            y_label: "D",
            series: sweep_series(config, &result, true),
        },
        config.format,
    );
    Ok(())
}
