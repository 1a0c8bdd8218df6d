//! Parameter grid through the runner: steady concurrence against the step
//! time tau0 and amplitude, evaluated in parallel.
//!
//!     cargo run --release --example switch_time_sweep

use detune::cli::{self, Axis, SweepConfig};

fn main() -> detune::Result<()> {
    let mut base = cli::find_preset("fig3")?.config;
    base.tau_end = 60.0;
    let cfg = SweepConfig {
        base,
        axes: vec![
            Axis {
                path: "schedule.heaviside.tau0".into(),
                values: [1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 5.0].map(Into::into).to_vec(),
            },
            Axis {
                path: "schedule.heaviside.amplitude".into(),
                values: [8.0, 10.0, 12.0].map(Into::into).to_vec(),
            },
        ],
        reduce: vec!["concurrence_clamped".into(), "f_s".into(), "f_a".into()],
        steady_window: 2.0,
        steady_tol: 1e-4,
        max_points: 100,
    };
    print!("{}", cli::sweep(&cfg)?.to_csv());
    Ok(())
}
