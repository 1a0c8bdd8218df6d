//! Periodic switching of the detuning, 16 edges with period 2.5.
//!
//!     cargo run --example square_wave

use detune::cli;

fn main() -> detune::Result<()> {
    let out = cli::run(&cli::find_preset("fig6")?.config)?;
    let peak = out
        .rows
        .iter()
        .max_by(|a, b| a.concurrence_clamped.total_cmp(&b.concurrence_clamped))
        .unwrap();
    for r in out.rows.iter().step_by(100) {
        println!("tau {:5.1}  delta {:5.1}  C {:.2e}  p_down {:.4}", r.tau, r.delta_value, r.concurrence_clamped, r.p_down);
    }
    println!("largest concurrence {:.3e} at tau = {:.2}", peak.concurrence_clamped, peak.tau);
    Ok(())
}
