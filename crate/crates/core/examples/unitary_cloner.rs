//! Counting statistics of the unitary phase-covariant cloner.
//!
//! Counters aligned with the input see only odd `j`; counters rotated away
//! from the equator wash the structure out.

use std::f64::consts::{FRAC_PI_2, PI};

use cloner_sim::cloners::{unitary_distribution, MeasurementSetting};

fn main() -> cloner_sim::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(21);

    for (name, setting) in [
        ("matched, dphi = 0", MeasurementSetting::equatorial(0.0)?),
        ("opposite, dphi = pi", MeasurementSetting::equatorial(PI)?),
        (
            "counters at theta = pi/12",
            MeasurementSetting::new(FRAC_PI_2, 0.0, PI / 12.0, 0.0)?,
        ),
    ] {
        let p = unitary_distribution(n, &setting)?;
        println!("N={n}, {name}: mean imbalance <2j-N> = {:.4}", p.mean_imbalance());
        for (j, v) in p.probabilities().iter().enumerate() {
            println!("  {j:3} {v:.6} {}", "#".repeat((v * 200.0).round() as usize));
        }
    }
    Ok(())
}
