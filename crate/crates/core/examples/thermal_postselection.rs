//! Thermal photons and qubit loss, with and without modulation, followed by
//! postselection on the qubits not being found in |00>.
//!
//!     cargo run --release --example thermal_postselection

use detune::cli;

fn main() -> detune::Result<()> {
    for name in ["fig7-modulated", "fig7-unmodulated", "fig7-zero-temperature"] {
        let out = cli::run(&cli::find_preset(name)?.config)?;
        println!("{name}");
        for tau in [5.0, 10.0, 25.0, 50.0, 100.0] {
            let r = out.at(tau).unwrap();
            let p = r.postselected.unwrap();
            println!(
                "  tau {tau:5.1}  C {:.4}  success {:.4}  C_post {:.4}  <s|rho_p|s> {:.4}",
                r.concurrence_clamped, p.success_prob, p.concurrence_clamped, p.f_s
            );
        }
    }
    Ok(())
}
