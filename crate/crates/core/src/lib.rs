//! Simulation of two qubits coupled to a common leaky cavity whose relative
//! detuning is modulated in time.
//!
//! The crate provides three generators of increasing fidelity:
//!
//! * [`bloch`]: closed Bloch equations for the Dicke populations and the
//!   `s`-`a` coherence (6 real variables),
//! * [`lindblad::reduced_me_rhs`]: the two-qubit master equation after the
//!   cavity has been adiabatically eliminated,
//! * [`lindblad::full`]: cavity plus qubits on a truncated Fock space,
//!
//! together with entanglement diagnostics ([`metrics`]), ideal postselection
//! on the qubits not being found in `|00>` ([`postselect`]), and an
//! experiment runner with named presets ([`cli`]).
//!
//! Times are dimensionless, `tau = tau_scale * g^2 t / kappa`; see
//! [`params::SystemParams`].

pub mod bloch;
pub mod cli;
pub mod error;
pub mod lindblad;
pub mod metrics;
pub mod params;
pub mod postselect;
pub mod rk4;
pub mod schedule;
pub mod state;
pub mod trajectory;

pub use bloch::{bloch_rhs, BlochDerivative, BlochForm};
pub use error::{Error, Result};
pub use metrics::MetricRecord;
pub use params::{g_coeff, GCoefficient, SystemParams};
pub use postselect::{postselect, PostselectionResult};
pub use rk4::StepConfig;
pub use schedule::{DetuningSchedule, Drive};
pub use state::{computational_to_dicke, dicke_to_computational, DickeState, TwoQubitState};
pub use trajectory::{ModelKind, Trajectory};
