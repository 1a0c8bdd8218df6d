//! A detuning step at the superradiant maximum freezes part of the population
//! in a dark superposition of |s> and |a>; the concurrence then stays finite.
//!
//! With no losses the steady value follows `p_s(tau0) sin^2(A/2)`.
//!
//!     cargo run --release --example heaviside_trapping

use detune::bloch;
use detune::metrics::concurrence_xform;
use detune::{DetuningSchedule, DickeState, StepConfig, SystemParams};

fn main() -> detune::Result<()> {
    let params = SystemParams::new(0.3);
    let step = DetuningSchedule::heaviside(10.0, 2.5);
    let traj = bloch::integrate(DickeState::up(), step, &params, 60.0, StepConfig::new(1e-3, 2500))?;
    for (tau, d) in traj.iter() {
        println!("tau {tau:5.1}  C {:.5}  f_s {:.4}  f_a {:.4}", concurrence_xform(d).0, d.p_s, d.p_a);
    }

    println!("\nsteady concurrence vs amplitude (tau0 = 2.5):");
    for a in [2.0, 4.0, 6.0, 8.0, 10.0, 12.0] {
        let t = bloch::integrate(
            DickeState::up(),
            DetuningSchedule::heaviside(a, 2.5),
            &params,
            60.0,
            StepConfig::new(1e-3, 60_000),
        )?;
        let c = concurrence_xform(t.last().unwrap().1).0;
        let law = (-1.0f64).exp() * (a / 2.0).sin().powi(2);
        println!("  A = {a:4.1}: C = {c:.5}, e^-1 sin^2(A/2) = {law:.5}");
    }
    Ok(())
}
