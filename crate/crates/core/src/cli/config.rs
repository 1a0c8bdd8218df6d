//! Run configuration documents.
//!
//! A run is described by one JSON object. Rates carry their unit in the field
//! name (`g_over_kappa`, `gamma_over_kappa`); times are in the dimensionless
//! `tau` of [`SystemParams`]. Example:
//!
//! ```json
//! {
//!   "model": "bloch",
//!   "initial": "up",
//!   "schedule": { "heaviside": { "amplitude": 10.0, "tau0": 2.5 } },
//!   "params": { "g_over_kappa": 0.3 },
//!   "tau_end": 25.0
//! }
//! ```
//!
//! `schedule` drives qubit 1 only; `drive` gives both qubits explicitly
//! (`{"qubit1": ..., "qubit2": ...}`). At most one of them may be present.
//! Omitted fields take the defaults of [`RunConfig`]; serializing a parsed
//! config writes every field (canonical form).

use std::path::PathBuf;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::bloch::BlochForm;
use crate::error::{Error, Result};
use crate::lindblad::DetuningCoupling;
use crate::params::SystemParams;
use crate::rk4::{StepConfig, DEFAULT_DTAU};
use crate::schedule::{DetuningSchedule, Drive};
use crate::state::{DickeState, TwoQubitState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelChoice {
    #[default]
    Bloch,
    Reduced,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NamedState {
    Up,
    Down,
    Symmetric,
    Antisymmetric,
    /// `|10>`: one excitation on qubit 1.
    Excited1,
    /// `|01>`.
    Excited2,
    MaximallyMixed,
}

/// Initial qubit state: a name, or explicit Dicke-basis entries.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InitialState {
    Named(NamedState),
    Dicke {
        p_up: f64,
        p_s: f64,
        p_a: f64,
        p_down: f64,
        #[serde(default)]
        re_csa: f64,
        #[serde(default)]
        im_csa: f64,
    },
}

impl Default for InitialState {
    fn default() -> Self {
        Self::Named(NamedState::Up)
    }
}

impl InitialState {
    pub fn to_dicke(&self) -> Result<DickeState> {
        let half = 0.5;
        let d = match *self {
            Self::Named(n) => match n {
                NamedState::Up => DickeState::up(),
                NamedState::Down => DickeState::down(),
                NamedState::Symmetric => DickeState::symmetric(),
                NamedState::Antisymmetric => DickeState::antisymmetric(),
                // |10> = (|s> - |a>)/sqrt 2, |01> = (|s> + |a>)/sqrt 2
                NamedState::Excited1 => DickeState::new(0.0, half, half, 0.0, C64::new(-half, 0.0))?,
                NamedState::Excited2 => DickeState::new(0.0, half, half, 0.0, C64::new(half, 0.0))?,
                NamedState::MaximallyMixed => DickeState::diagonal(0.25, 0.25, 0.25, 0.25),
            },
            Self::Dicke {
                p_up,
                p_s,
                p_a,
                p_down,
                re_csa,
                im_csa,
            } => DickeState::new(p_up, p_s, p_a, p_down, C64::new(re_csa, im_csa))?,
        };
        d.validate()?;
        Ok(d)
    }

    pub fn to_state(&self) -> Result<TwoQubitState> {
        self.to_dicke()?.to_computational()
    }
}

/// Optional output paths; the command line `--out` takes precedence.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Outputs {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub csv: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub model: ModelChoice,
    #[serde(default)]
    pub initial: InitialState,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schedule: Option<DetuningSchedule>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub drive: Option<Drive>,
    pub params: SystemParams,
    pub tau_end: f64,
    #[serde(default = "default_dtau")]
    pub dtau: f64,
    #[serde(default = "default_stride")]
    pub sample_stride: usize,
    #[serde(default)]
    pub postselect: bool,
    /// Only read by the `bloch` model.
    #[serde(default)]
    pub bloch_form: BlochForm,
    /// Fock cutoff of the `full` model.
    #[serde(default = "default_nmax")]
    pub nmax: usize,
    /// Only read by the `full` model.
    #[serde(default)]
    pub coupling: DetuningCoupling,
    #[serde(default)]
    pub outputs: Outputs,
}

fn default_dtau() -> f64 {
    DEFAULT_DTAU
}

fn default_stride() -> usize {
    10
}

fn default_nmax() -> usize {
    8
}

impl RunConfig {
    pub fn new(params: SystemParams, schedule: DetuningSchedule, tau_end: f64) -> Self {
        Self {
            model: ModelChoice::Bloch,
            initial: InitialState::default(),
            schedule: Some(schedule),
            drive: None,
            params,
            tau_end,
            dtau: DEFAULT_DTAU,
            sample_stride: default_stride(),
            postselect: false,
            bloch_form: BlochForm::default(),
            nmax: default_nmax(),
            coupling: DetuningCoupling::default(),
            outputs: Outputs::default(),
        }
    }

    /// Parses and validates a JSON document. Errors carry the line and
    /// column of the offending token or field.
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_value(v: serde_json::Value) -> Result<Self> {
        let cfg: Self = serde_json::from_value(v).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Canonical pretty-printed form with every field present.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn drive(&self) -> Drive {
        match (&self.drive, &self.schedule) {
            (Some(d), _) => d.clone(),
            (None, Some(s)) => Drive::single(s.clone()),
            (None, None) => Drive::default(),
        }
    }

    pub fn step(&self) -> StepConfig {
        StepConfig::new(self.dtau, self.sample_stride)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |field: &str, msg: String| Err(Error::Config(format!("field `{field}`: {msg}")));
        if self.schedule.is_some() && self.drive.is_some() {
            return bad("drive", "give either `schedule` or `drive`, not both".into());
        }
        if !(self.tau_end > 0.0 && self.tau_end.is_finite()) {
            return bad("tau_end", format!("must be positive, got {}", self.tau_end));
        }
        if !(self.dtau > 0.0 && self.dtau.is_finite()) {
            return bad("dtau", format!("must be positive, got {}", self.dtau));
        }
        if self.sample_stride == 0 {
            return bad("sample_stride", "must be >= 1".into());
        }
        if self.model == ModelChoice::Full && self.nmax == 0 {
            return bad("nmax", "must be >= 1".into());
        }
        self.params
            .validate()
            .or_else(|e| bad("params", e.to_string()))?;
        self.drive()
            .validate()
            .or_else(|e| bad("schedule", e.to_string()))?;
        self.initial
            .to_dicke()
            .map(|_| ())
            .or_else(|e| bad("initial", e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "schedule": {"heaviside": {"amplitude": 10.0, "tau0": 2.5}},
        "params": {"g_over_kappa": 0.3},
        "tau_end": 25.0
    }"#;

    #[test]
    fn minimal_config_takes_defaults() {
        let c = RunConfig::from_json(MINIMAL).unwrap();
        assert_eq!(c.model, ModelChoice::Bloch);
        assert_eq!(c.initial, InitialState::Named(NamedState::Up));
        assert_eq!(c.dtau, DEFAULT_DTAU);
        assert_eq!(c.params.gamma, 0.0);
        assert!(!c.postselect);
    }

    #[test]
    fn canonical_round_trip() {
        let c = RunConfig::from_json(MINIMAL).unwrap();
        let text = c.to_json();
        assert_eq!(RunConfig::from_json(&text).unwrap(), c);
        assert_eq!(RunConfig::from_json(&text).unwrap().to_json(), text);
    }

    #[test]
    fn unknown_field_reports_location() {
        let text = "{\n \"params\": {\"g_over_kappa\": 0.3},\n \"tau_end\": 1.0,\n \"tua\": 2\n}";
        let err = RunConfig::from_json(text).unwrap_err().to_string();
        assert!(err.contains("tua"), "{err}");
        assert!(err.contains("line 4"), "{err}");
    }

    #[test]
    fn semantic_errors_name_the_field() {
        let text = r#"{"params": {"g_over_kappa": 0.3}, "tau_end": -1}"#;
        let err = RunConfig::from_json(text).unwrap_err().to_string();
        assert!(err.contains("tau_end"), "{err}");
        let both = r#"{"params": {"g_over_kappa": 0.3}, "tau_end": 1,
            "schedule": "zero", "drive": {"qubit1": "zero"}}"#;
        assert!(RunConfig::from_json(both).is_err());
    }

    #[test]
    fn initial_state_forms() {
        let s: InitialState = serde_json::from_str("\"symmetric\"").unwrap();
        assert_eq!(s.to_dicke().unwrap(), DickeState::symmetric());
        let d: InitialState =
            serde_json::from_str(r#"{"p_up": 0.5, "p_s": 0, "p_a": 0, "p_down": 0.5}"#).unwrap();
        assert_eq!(d.to_dicke().unwrap(), DickeState::diagonal(0.5, 0.0, 0.0, 0.5));
        let e1 = InitialState::Named(NamedState::Excited1).to_state().unwrap();
        assert!((e1.matrix()[(1, 1)].re - 1.0).abs() < 1e-15);
        let e2 = InitialState::Named(NamedState::Excited2).to_state().unwrap();
        assert!((e2.matrix()[(2, 2)].re - 1.0).abs() < 1e-15);
    }
}
