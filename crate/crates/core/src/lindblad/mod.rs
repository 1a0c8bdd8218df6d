//! Operator-level master equations.
//!
//! [`full`] evolves the cavity mode together with both qubits on a truncated
//! Fock space. The reduced equation in this module describes the qubits alone
//! after the cavity has been eliminated: single-qubit cavity-induced decay
//! and thermal excitation at the bare rate `g^2/kappa`, spontaneous emission
//! at `gamma`, and a cross-qubit Liouvillian carrying the phase
//! `exp(-i Delta)` of the relative detuning.
//!
//! All Lindblad terms use the convention `rate * (2 L rho L^+ - {L^+ L, rho})`.

pub mod full;
mod integrate;

use nalgebra::{DMatrix, Matrix4};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::bloch::BlochDerivative;
use crate::error::{Error, Result};
use crate::params::SystemParams;
use crate::state::{dicke_components, dicke_to_computational, DickeState, Mat4, TwoQubitState};

pub use full::{full_me_rhs, full_me_rhs_dense, partial_trace_cavity, CompositeState, FullModel};
pub use integrate::{integrate_full, integrate_operator, integrate_reduced, OperatorModel};

/// Largest out-of-span component tolerated in a projected derivative.
pub const PROJECTION_TOLERANCE: f64 = 1e-10;

/// How a schedule value enters the full cavity model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DetuningCoupling {
    /// The value is a phase on the qubit's coupling, `g exp(-i Delta_j) a^+ sigma_j^-`.
    /// This matches the reduced and Bloch models, where only the phase enters.
    #[default]
    Phase,
    /// The value sets a qubit-cavity frequency offset
    /// `(Delta_j g^2 / kappa) sigma_z / 2`.
    Frequency,
}

/// A jump operator with its rate.
#[derive(Debug, Clone, PartialEq)]
pub struct LindbladTerm {
    pub op: DMatrix<C64>,
    pub rate: f64,
}

impl LindbladTerm {
    pub fn new(op: DMatrix<C64>, rate: f64) -> Result<Self> {
        if !(rate >= 0.0) {
            return Err(Error::InvalidParams(format!("negative Lindblad rate {rate}")));
        }
        Ok(Self { op, rate })
    }

    pub fn apply(&self, rho: &DMatrix<C64>) -> Result<DMatrix<C64>> {
        Ok(dissipator(&self.op, rho)? * C64::new(self.rate, 0.0))
    }
}

/// `2 L rho L^+ - L^+ L rho - rho L^+ L`.
pub fn dissipator(l: &DMatrix<C64>, rho: &DMatrix<C64>) -> Result<DMatrix<C64>> {
    if l.shape() != rho.shape() || !l.is_square() {
        return Err(Error::ShapeMismatch {
            expected: rho.shape(),
            found: l.shape(),
        });
    }
    let ld = l.adjoint();
    let ldl = &ld * l;
    Ok(l * rho * &ld * C64::new(2.0, 0.0) - &ldl * rho - rho * &ldl)
}

/// `2 A rho B^+ - B^+ A rho - rho B^+ A`.
fn cross(a: &Mat4, b: &Mat4, rho: &Mat4) -> Mat4 {
    let bd = b.adjoint();
    let bda = bd * a;
    a * rho * bd * C64::new(2.0, 0.0) - bda * rho - rho * bda
}

/// Lowering operator of qubit 1 (left factor) in `{|11>, |10>, |01>, |00>}`.
pub fn sigma_minus_1() -> Mat4 {
    let mut m = Mat4::zeros();
    m[(2, 0)] = C64::new(1.0, 0.0);
    m[(3, 1)] = C64::new(1.0, 0.0);
    m
}

/// Lowering operator of qubit 2.
pub fn sigma_minus_2() -> Mat4 {
    let mut m = Mat4::zeros();
    m[(1, 0)] = C64::new(1.0, 0.0);
    m[(3, 2)] = C64::new(1.0, 0.0);
    m
}

/// Reduced two-qubit generator at relative detuning phase `delta_rel`.
pub fn reduced_me_rhs(r: &TwoQubitState, delta_rel: f64, params: &SystemParams) -> Mat4 {
    reduced_me_rhs_matrix(r.matrix(), delta_rel, params)
}

/// Same as [`reduced_me_rhs`] with the detunings of both qubits given
/// separately; only their difference matters.
pub fn reduced_me_rhs_pair(
    r: &TwoQubitState,
    delta1: f64,
    delta2: f64,
    params: &SystemParams,
) -> Mat4 {
    reduced_me_rhs(r, delta1 - delta2, params)
}

pub(crate) fn reduced_me_rhs_matrix(rho: &Mat4, delta_rel: f64, params: &SystemParams) -> Mat4 {
    let rate = params.collective_rate();
    let nbar = params.nbar;
    let s1 = sigma_minus_1();
    let s2 = sigma_minus_2();
    let c = |x: f64| C64::new(x, 0.0);

    let mut out = Matrix4::zeros();
    for s in [&s1, &s2] {
        let sp = s.adjoint();
        out += cross(s, s, rho) * c(rate * (nbar + 1.0) + params.gamma);
        if nbar > 0.0 {
            out += cross(&sp, &sp, rho) * c(rate * nbar);
        }
    }

    let phase = C64::from_polar(rate, -delta_rel);
    let (s1p, s2p) = (s1.adjoint(), s2.adjoint());
    out += cross(&s1, &s2, rho) * (phase * (nbar + 1.0));
    out += cross(&s2, &s1, rho) * (phase.conj() * (nbar + 1.0));
    if nbar > 0.0 {
        out += cross(&s2p, &s1p, rho) * (phase * nbar);
        out += cross(&s1p, &s2p, rho) * (phase.conj() * nbar);
    }
    out
}

/// Reduced generator projected onto the Dicke X-form; fails if the derivative
/// leaves that form.
pub fn project_reduced_rhs(
    d: &DickeState,
    delta_rel: f64,
    params: &SystemParams,
) -> Result<BlochDerivative> {
    let r = dicke_to_computational(d)?;
    let m = reduced_me_rhs(&r, delta_rel, params);
    let comps = dicke_components(&m);
    if comps.residual > PROJECTION_TOLERANCE {
        return Err(Error::OutsideDickeSpan {
            residual: comps.residual,
        });
    }
    Ok(BlochDerivative {
        d_up: comps.up.re,
        d_s: comps.s.re,
        d_a: comps.a.re,
        d_down: comps.down.re,
        d_csa: comps.sa,
    })
}
