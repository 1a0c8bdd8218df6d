//! Finite detuning pulses. After a pulse ends the symmetric part decays again
//! and only the antisymmetric population survives. A pulse still on at the
//! readout time gives the step result.
//!
//!     cargo run --release --example pulse_width

use detune::bloch;
use detune::metrics::concurrence_xform;
use detune::{DetuningSchedule, DickeState, StepConfig, SystemParams};

fn main() -> detune::Result<()> {
    let params = SystemParams::new(0.3);
    let tau_end = 60.0;
    println!("{:>7} {:>9} {:>9}", "width", "C(60)", "p_a(60)");
    for width in [0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0] {
        let t = bloch::integrate(
            DickeState::up(),
            DetuningSchedule::pulse(10.0, 2.5, width),
            &params,
            tau_end,
            StepConfig::new(1e-3, 100_000),
        )?;
        let d = t.last().unwrap().1;
        println!("{width:7.2} {:9.5} {:9.5}", concurrence_xform(d).0, d.p_a);
    }
    Ok(())
}
