//! Does the distance fall off with bin size for every measurement setting?
//!
//! Grid: θ_A, θ_B ∈ {kπ/9 : k = 1..8} and Δφ ∈ {kπ/6 : k = 0..11}, 768
//! settings in all, unitary vs `mp-sq:2` at N = 51 and 101. For each
//! setting and N the example records whether D(σ) is non-increasing and how
//! much of the unbinned distance survives σ = 21.

use std::f64::consts::PI;

use cloner_sim::analysis::distance_sweep;
use cloner_sim::cloners::{ClonerModel, MeasurementSetting};
use rayon::prelude::*;

fn main() -> cloner_sim::Result<()> {
    let thetas: Vec<f64> = (1..=8).map(|k| k as f64 * PI / 9.0).collect();
    let dphis: Vec<f64> = (0..12).map(|k| k as f64 * PI / 6.0).collect();
    let mut settings = Vec::with_capacity(thetas.len() * thetas.len() * dphis.len());
    for &theta_a in &thetas {
        for &theta_b in &thetas {
            for &dphi in &dphis {
                settings.push(MeasurementSetting::new(theta_a, dphi, theta_b, 0.0)?);
            }
        }
    }
    let ns = [51, 101];
    let sigmas: Vec<usize> = (1..=21).step_by(2).collect();
    let models = (ClonerModel::unitary(), ClonerModel::MpSqueezed { tau: 2 });

    let summaries: Vec<(bool, f64, f64)> = settings
        .par_iter()
        .map(|s| -> cloner_sim::Result<Vec<(bool, f64, f64)>> {
            let result = distance_sweep(models, s, &ns, &sigmas)?;
            Ok(ns
                .iter()
                .map(|&n| {
                    let curve = result.curve(n);
                    let rise = curve
                        .windows(2)
                        .map(|w| w[1].1 - w[0].1)
                        .fold(f64::NEG_INFINITY, f64::max);
                    let kept = curve.last().unwrap().1 / curve[0].1;
                    (rise <= 1e-9, rise, kept)
                })
                .collect())
        })
        .collect::<cloner_sim::Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();

    let monotone = summaries.iter().filter(|s| s.0).count();
    let worst_rise = summaries.iter().map(|s| s.1).fold(f64::NEG_INFINITY, f64::max);
    let worst_kept = summaries.iter().map(|s| s.2).fold(0.0, f64::max);
    println!("{} settings x {} photon numbers", settings.len(), ns.len());
    println!("non-increasing D(sigma): {monotone} of {}", summaries.len());
    println!("largest single-step rise: {worst_rise:.3e}");
    println!("largest D(21)/D(1): {worst_kept:.4}");
    Ok(())
}
