//! Named scenarios.

use serde::Serialize;

use super::config::{ModelChoice, RunConfig};
use crate::error::{Error, Result};
use crate::lindblad::DetuningCoupling;
use crate::params::SystemParams;
use crate::schedule::DetuningSchedule;

#[derive(Debug, Clone, Serialize)]
pub struct Preset {
    pub name: &'static str,
    /// What the run shows and the number it is expected to reproduce.
    pub description: &'static str,
    pub config: RunConfig,
}

fn bloch(params: SystemParams, schedule: DetuningSchedule, tau_end: f64) -> RunConfig {
    RunConfig::new(params, schedule, tau_end)
}

fn g03() -> SystemParams {
    SystemParams::new(0.3)
}

fn lossy() -> SystemParams {
    g03().with_gamma(1e-3).with_nbar(0.06)
}

fn step() -> DetuningSchedule {
    DetuningSchedule::heaviside(10.0, 2.5)
}

fn postselected(mut c: RunConfig) -> RunConfig {
    c.postselect = true;
    c
}

/// Every preset, in catalog order.
pub fn catalog() -> Vec<Preset> {
    let p = |name, description, config| Preset {
        name,
        description,
        config,
    };
    let mut oracle = bloch(SystemParams::new(0.1), step(), 40.0);
    oracle.model = ModelChoice::Full;
    oracle.nmax = 8;
    oracle.coupling = DetuningCoupling::Phase;
    oracle.dtau = 2e-3;
    oracle.sample_stride = 5;
    vec![
        p(
            "fig2",
            "Resonant superradiant decay from |11>: p_s peaks near 0.37 at tau = 2.5, no entanglement.",
            bloch(g03(), DetuningSchedule::Zero, 25.0),
        ),
        p(
            "fig3",
            "Heaviside detuning 10 at tau0 = 2.5 traps entanglement; steady concurrence about 0.34.",
            bloch(g03(), step(), 25.0),
        ),
        p(
            "fig3-tau0-1.5",
            "As fig3 with the step at tau0 = 1.5 (lower steady concurrence).",
            bloch(g03(), DetuningSchedule::heaviside(10.0, 1.5), 25.0),
        ),
        p(
            "fig3-tau0-3.5",
            "As fig3 with the step at tau0 = 3.5 (lower steady concurrence).",
            bloch(g03(), DetuningSchedule::heaviside(10.0, 3.5), 25.0),
        ),
        p(
            "fig3-tau0-25",
            "Step after the excitation has decayed: essentially no entanglement.",
            bloch(g03(), DetuningSchedule::heaviside(10.0, 25.0), 45.0),
        ),
        p(
            "fig4",
            "Heaviside protection to tau = 45: both Dicke fidelities stabilize, f_s >> f_a.",
            bloch(g03(), step(), 45.0),
        ),
        p(
            "fig5-heaviside",
            "Reference for fig5-sigmoid.",
            bloch(g03(), step(), 45.0),
        ),
        p(
            "fig5-sigmoid",
            "Smooth switch-on, slope 3, compared against fig5-heaviside.",
            bloch(g03(), DetuningSchedule::sigmoid(10.0, 3.0, 2.5), 45.0),
        ),
        p(
            "fig6",
            "Square wave of period 2.5 with 16 edges: the concurrence stays zero.",
            bloch(g03(), DetuningSchedule::square_wave(10.0, 2.5, 16), 45.0),
        ),
        p(
            "fig7-modulated",
            "Thermal cavity (nbar = 0.06) and qubit loss 1e-3; postselected on not finding |00>.",
            postselected(bloch(lossy(), step(), 100.0)),
        ),
        p(
            "fig7-unmodulated",
            "As fig7-modulated without detuning.",
            postselected(bloch(lossy(), DetuningSchedule::Zero, 100.0)),
        ),
        p(
            "fig7-zero-temperature",
            "Postselected modulated run without thermal photons or qubit loss: close to one ebit.",
            postselected(bloch(g03(), step(), 100.0)),
        ),
        p(
            "fig8",
            "Long-time concurrence with thermal photons and qubit loss, tau up to 100.",
            bloch(lossy(), step(), 100.0),
        ),
        p(
            "decay25",
            "Resonant decay: p_down(25) = 1 - 11 exp(-10) = 0.999501.",
            bloch(g03(), DetuningSchedule::Zero, 25.0),
        ),
        p(
            "oracle-g01",
            "Full cavity model (nmax 8) at g = 0.1 kappa on the fig3 scenario.",
            oracle.clone(),
        ),
        p(
            "oracle-g01-bloch",
            "Bloch counterpart of oracle-g01 on the same tau grid.",
            {
                let mut c = oracle;
                c.model = ModelChoice::Bloch;
                c
            },
        ),
    ]
}

pub fn find(name: &str) -> Result<Preset> {
    catalog()
        .into_iter()
        .find(|p| p.name == name)
        .ok_or_else(|| {
            let names: Vec<_> = catalog().iter().map(|p| p.name).collect();
            Error::Config(format!("unknown preset `{name}` (known: {})", names.join(", ")))
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_is_valid_and_unique() {
        let cat = catalog();
        assert!(cat.len() >= 10);
        for p in &cat {
            p.config.validate().unwrap();
            assert_eq!(cat.iter().filter(|q| q.name == p.name).count(), 1);
        }
    }

    #[test]
    fn anchors() {
        assert_eq!(find("fig2").unwrap().config.schedule, Some(DetuningSchedule::Zero));
        assert_eq!(find("decay25").unwrap().config.tau_end, 25.0);
        assert!(find("fig9").is_err());
    }
}
