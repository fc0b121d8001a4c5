//! The spin-correlation witness `|⟨σ_A·J_B⟩| − ⟨N_B⟩`: separable states
//! stay at or below zero, the amplified singlet sits at 2 for every gain.

use cloner_sim::cloners::ClonerModel;
use cloner_sim::fock::{Gain, ModeBasis};
use cloner_sim::witness::{build_truncated_state, mp_witness_excess, witness_excess};

fn main() -> cloner_sim::Result<()> {
    for (g, cutoff) in [(0.0, 1), (0.5, 40), (1.0, 80), (1.5, 160)] {
        let state = build_truncated_state(Gain::new(g)?, cutoff)?;
        let s = state.stokes();
        println!(
            "unitary g={g:<4} K={cutoff:<4} <N_B>={:<10.4} excess={:.12} deficit={:.1e}",
            s.n_total,
            witness_excess(&state),
            state.norm_deficit()
        );
    }
    let tilted = build_truncated_state(Gain::new(0.7)?, 40)?.rotated_to(&ModeBasis::new(1.0, 2.0)?)?;
    println!("same state in a tilted frame: excess={:.12}", witness_excess(&tilted));

    for model in [ClonerModel::MpEquatorial, ClonerModel::MpSqueezed { tau: 2 }] {
        for n in [11, 101] {
            println!(
                "{:<8} N={n:<4} excess={:.3e}",
                model.label(),
                mp_witness_excess(&model, n)?
            );
        }
    }
    Ok(())
}
