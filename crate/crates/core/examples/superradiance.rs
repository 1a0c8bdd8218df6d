//! Resonant decay of |11>: the population passes through the symmetric state
//! and never reaches the antisymmetric one, so no entanglement appears.
//!
//!     cargo run --example superradiance

use detune::bloch;
use detune::metrics::Diagnostics;
use detune::{DetuningSchedule, DickeState, StepConfig, SystemParams};

fn main() -> detune::Result<()> {
    let params = SystemParams::new(0.3);
    let traj = bloch::integrate(DickeState::up(), DetuningSchedule::Zero, &params, 25.0, StepConfig::new(1e-3, 250))?
        .with_metrics()?;
    println!("{:>6} {:>9} {:>9} {:>9} {:>9} {:>10}", "tau", "p_up", "p_s", "p_a", "p_down", "C_relaxed");
    for ((tau, d), m) in traj.iter().zip(traj.metrics.as_ref().unwrap()) {
        println!(
            "{tau:6.2} {:9.5} {:9.5} {:9.5} {:9.6} {:10.5}",
            d.p_up, d.p_s, d.p_a, d.p_down, m.concurrence_relaxed
        );
    }
    let (_, last) = traj.last().unwrap();
    println!("p_down(25) = {:.7}  (1 - 11 e^-10 = {:.7})", last.p_down, 1.0 - 11.0 * (-10.0f64).exp());
    Ok(())
}
