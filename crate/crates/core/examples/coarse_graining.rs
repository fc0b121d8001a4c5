//! How much of the distance between the two cloners survives imprecise
//! photon counting: moving-average bins of width σ, and pair bins.

use cloner_sim::analysis::{coarse_grain, manhattan_distance, pair_bin, CoarseGrainSpec};
use cloner_sim::cloners::{mp_equatorial_distribution, unitary_distribution, MeasurementSetting};

fn main() -> cloner_sim::Result<()> {
    let n = 101;
    let setting = MeasurementSetting::equatorial(0.0)?;
    let p = unitary_distribution(n, &setting)?;
    let q = mp_equatorial_distribution(n, &setting)?;

    println!("N={n}: unbinned D = {:.4}", manhattan_distance(&p, &q)?);
    println!(
        "N={n}: pair-binned D = {:.4}",
        manhattan_distance(&pair_bin(&p), &pair_bin(&q))?
    );
    for sigma in [3, 5, 9, 17, 33] {
        let spec = CoarseGrainSpec::new(sigma)?;
        let d = manhattan_distance(&coarse_grain(&p, spec)?, &coarse_grain(&q, spec)?)?;
        println!("  sigma={sigma:2}  D = {d:.4}");
    }
    Ok(())
}
