//! Closed-form reference distributions at Δφ ∈ {0, π} next to the
//! numerically computed ones.

use std::f64::consts::PI;

use cloner_sim::cloners::{closed_form_distribution, distribution, ClonerModel, MeasurementSetting, ReferencePhase};

fn main() -> cloner_sim::Result<()> {
    let n = 9;
    for model in [ClonerModel::unitary(), ClonerModel::MpEquatorial] {
        for (phase, dphi) in [(ReferencePhase::Zero, 0.0), (ReferencePhase::Pi, PI)] {
            let closed = closed_form_distribution(&model, n, phase)?;
            let direct = distribution(&model, n, &MeasurementSetting::equatorial(dphi)?)?;
            let worst = closed
                .probabilities()
                .iter()
                .zip(direct.probabilities())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            println!("{:<8} {phase:?}: max |closed - direct| = {worst:.2e}", model.label());
        }
    }
    Ok(())
}
