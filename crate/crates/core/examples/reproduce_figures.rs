//! Regenerates both figure datasets through the command-line entry point.
//!
//! `cargo run --release --example reproduce_figures -- out/` writes the
//! CSV tables, SVG charts and a manifest per figure.

fn main() {
    let out = std::env::args().nth(1).unwrap_or_else(|| "figures".into());
    for figure in ["fig2", "fig3"] {
        let dir = format!("{out}/{figure}");
        let code = cloner_sim::cli::run(["cloner-sim", "reproduce", figure, "--out", &dir]);
        if code != 0 {
            std::process::exit(code);
        }
    }
}
