//! The cavity kept explicitly on a truncated Fock space, compared with the
//! eliminated (Bloch) description at weak coupling g = 0.1 kappa.
//!
//!     cargo run --release --example full_cavity

use detune::cli::{self, CompareOptions};

fn main() -> detune::Result<()> {
    let full = cli::run(&cli::find_preset("oracle-g01")?.config)?;
    let bloch = cli::run(&cli::find_preset("oracle-g01-bloch")?.config)?;
    let report = cli::compare(&full, &bloch, &CompareOptions::default())?;
    print!("{}", report.summary_text());
    for tau in [2.5, 5.0, 10.0, 20.0, 40.0] {
        let (a, b) = (full.at(tau).unwrap(), bloch.at(tau).unwrap());
        println!("tau {tau:4.1}  C full {:.4}  C bloch {:.4}", a.concurrence_clamped, b.concurrence_clamped);
    }
    Ok(())
}
