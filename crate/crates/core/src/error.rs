use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("state is not normalized (trace {trace})")]
    NotNormalized { trace: f64 },

    #[error("state has coherences outside the Dicke X-form (residual norm {residual:.3e})")]
    OutsideDickeSpan { residual: f64 },

    #[error("non-physical state: {0}")]
    NonPhysical(String),

    #[error("shape mismatch: expected {expected:?}, found {found:?}")]
    ShapeMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },

    #[error("integration step rejected at tau = {tau}: {reason} (reduce dtau)")]
    StepRejected { tau: f64, reason: String },

    #[error("Fock tail population {population:.3e} at tau = {tau} exceeds tolerance for nmax = {nmax}")]
    FockTailOverflow {
        tau: f64,
        population: f64,
        nmax: usize,
    },

    #[error("postselection success probability {success_prob:.3e} is numerically zero")]
    DegeneratePostselection { success_prob: f64 },

    #[error("configuration error: {0}")]
    Config(String),
}
