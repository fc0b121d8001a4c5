//! Distance between the unitary and the squeezed measure-and-prepare
//! cloner as a function of bin size, for several photon numbers.

use std::f64::consts::{FRAC_PI_2, PI};

use cloner_sim::analysis::distance_sweep;
use cloner_sim::cloners::{ClonerModel, MeasurementSetting};

fn main() -> cloner_sim::Result<()> {
    let setting = MeasurementSetting::new(FRAC_PI_2, 0.0, PI / 12.0, 0.0)?;
    let ns = [25, 51, 101];
    let sigmas: Vec<usize> = (1..=25).step_by(4).collect();
    let result = distance_sweep(
        (ClonerModel::unitary(), ClonerModel::MpSqueezed { tau: 2 }),
        &setting,
        &ns,
        &sigmas,
    )?;

    print!("{:>6}", "sigma");
    for n in ns {
        print!("{:>10}", format!("N={n}"));
    }
    println!();
    for &sigma in &sigmas {
        print!("{sigma:>6}");
        for n in ns {
            let d = result.curve(n).into_iter().find(|&(s, _)| s == sigma).map(|(_, d)| d);
            print!("{:>10}", d.map_or("-".into(), |d| format!("{d:.4}")));
        }
        println!();
    }
    for n in ns {
        if let Some(d) = result.distance_at_relative_sigma(n, 0.1) {
            println!("N={n}: D at sigma/N = 0.1 is {d:.4}");
        }
    }
    Ok(())
}
