//! Two-mode Fock states under a change of polarization basis.
//!
//! A `|1,1⟩` pair in h/v counted in the diagonal basis shows the
//! Hong–Ou–Mandel effect: both photons always leave in the same mode.

use cloner_sim::fock::{mode_rotation_matrix, ModeBasis, SectorState};

fn main() -> cloner_sim::Result<()> {
    let hv = ModeBasis::hv();
    let diagonal = ModeBasis::equatorial(0.0)?;

    let pair = SectorState::fock(2, 1, hv)?;
    let counted = pair.rotate_to(&diagonal)?.count_probabilities()?;
    println!("|1,1> in the diagonal basis: {:?}", counted.probabilities());

    let d = mode_rotation_matrix(64, &hv, &ModeBasis::new(0.3, 1.1)?)?;
    println!(
        "N=64 rotation: dimension {}, unitarity defect {:.2e}",
        d.dim(),
        d.unitarity_defect()
    );

    let noon = SectorState::fock(10, 10, diagonal)?;
    let back = noon.rotate_to(&hv)?.count_probabilities()?;
    println!("10 diagonal photons counted in h/v:");
    for (j, p) in back.probabilities().iter().enumerate() {
        println!("  j={j:2}  {p:.6}");
    }
    Ok(())
}
