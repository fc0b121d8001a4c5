//! Measure-and-prepare cloners: the equatorial Fock-state preparation and
//! the squeezed preparations with `τ + 1` retained pairs.

use cloner_sim::cloners::{distribution, ClonerModel, MeasurementSetting};

fn main() -> cloner_sim::Result<()> {
    let n = 11;
    let setting = MeasurementSetting::equatorial(0.0)?;
    let models = [
        ClonerModel::MpEquatorial,
        ClonerModel::MpSqueezed { tau: 0 },
        ClonerModel::MpSqueezed { tau: 2 },
        ClonerModel::MpSqueezed { tau: 5 },
    ];
    print!("{:>4}", "j");
    for m in &models {
        print!("{:>12}", m.label());
    }
    println!();
    let dists = models
        .iter()
        .map(|m| distribution(m, n, &setting))
        .collect::<cloner_sim::Result<Vec<_>>>()?;
    for j in 0..=n {
        print!("{j:>4}");
        for d in &dists {
            print!("{:>12.6}", d.get(j));
        }
        println!();
    }
    Ok(())
}
