use serde::{Deserialize, Serialize};

use super::full::{partial_trace, CMatrix, CompositeState, FullModel, DEFAULT_TAIL_TOL};
use super::{reduced_me_rhs_matrix, DetuningCoupling};
use crate::bloch::STEP_REJECT;
use crate::error::{Error, Result};
use crate::params::SystemParams;
use crate::rk4::{self, StepConfig};
use crate::schedule::Drive;
use crate::state::{Mat4, TwoQubitState};
use crate::trajectory::{ModelKind, Trajectory};

/// Operator-level generator choice.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OperatorModel {
    Reduced,
    Full {
        nmax: usize,
        #[serde(default)]
        coupling: DetuningCoupling,
    },
}

fn trace_check(trace: f64, tau: f64) -> Result<()> {
    if !trace.is_finite() || (trace - 1.0).abs() > STEP_REJECT {
        return Err(Error::StepRejected {
            tau,
            reason: format!("trace drifted to {trace}"),
        });
    }
    Ok(())
}

/// Integrates the reduced two-qubit master equation.
pub fn integrate_reduced(
    initial: TwoQubitState,
    drive: impl Into<Drive>,
    params: &SystemParams,
    tau_end: f64,
    step: StepConfig,
) -> Result<Trajectory<TwoQubitState>> {
    let drive = drive.into();
    params.validate()?;
    drive.validate()?;
    initial.validate()?;
    let scale = params.dt_per_tau();
    let rhs = |rho: &Mat4, tau: f64, left: bool| -> Mat4 {
        let delta = if left {
            drive.relative_left(tau)
        } else {
            drive.relative(tau)
        };
        reduced_me_rhs_matrix(rho, delta, params) * num_complex::Complex64::new(scale, 0.0)
    };
    let check = |rho: &Mat4, tau: f64| trace_check(rho.trace().re, tau);
    let (taus, mats) = rk4::integrate(
        initial.into_matrix(),
        &drive.edges(tau_end),
        tau_end,
        step,
        rhs,
        check,
    )?;
    Ok(Trajectory {
        taus,
        states: mats
            .into_iter()
            .map(TwoQubitState::from_matrix_unchecked)
            .collect(),
        drive,
        params: *params,
        model: ModelKind::Reduced,
        metrics: None,
    })
}

/// Integrates the full cavity + qubits master equation and returns the
/// qubits' reduced state at each sample.
pub fn integrate_full(
    initial: CompositeState,
    drive: impl Into<Drive>,
    params: &SystemParams,
    tau_end: f64,
    step: StepConfig,
    coupling: DetuningCoupling,
    tail_tol: f64,
) -> Result<Trajectory<TwoQubitState>> {
    let drive = drive.into();
    params.validate()?;
    drive.validate()?;
    let nmax = initial.nmax;
    let model = FullModel::new(nmax);
    if initial.rho.shape() != (model.dim(), model.dim()) {
        return Err(Error::ShapeMismatch {
            expected: (model.dim(), model.dim()),
            found: initial.rho.shape(),
        });
    }
    let tail = |rho: &CMatrix| -> f64 { (0..4).map(|q| rho[(4 * nmax + q, 4 * nmax + q)].re).sum() };
    if tail(&initial.rho) > tail_tol {
        return Err(Error::FockTailOverflow {
            tau: 0.0,
            population: tail(&initial.rho),
            nmax,
        });
    }
    let scale = num_complex::Complex64::new(params.dt_per_tau(), 0.0);
    let rhs = |rho: &CMatrix, tau: f64, left: bool| -> CMatrix {
        let (d1, d2) = drive.both(tau, left);
        model.rhs(rho, d1, d2, params, coupling) * scale
    };
    let check = |rho: &CMatrix, tau: f64| -> Result<()> {
        trace_check(rho.trace().re, tau)?;
        let t = tail(rho);
        if t > tail_tol {
            return Err(Error::FockTailOverflow {
                tau,
                population: t,
                nmax,
            });
        }
        Ok(())
    };
    let (taus, mats) = rk4::integrate(
        initial.rho,
        &drive.edges(tau_end),
        tau_end,
        step,
        rhs,
        check,
    )?;
    Ok(Trajectory {
        taus,
        states: mats
            .iter()
            .map(|m| TwoQubitState::from_matrix_unchecked(partial_trace(m, nmax)))
            .collect(),
        drive,
        params: *params,
        model: ModelKind::Full { nmax, coupling },
        metrics: None,
    })
}

/// Dispatches to the reduced or full model. The full model starts from the
/// cavity's thermal state at `params.nbar` times `initial`.
pub fn integrate_operator(
    model: OperatorModel,
    initial: TwoQubitState,
    drive: impl Into<Drive>,
    params: &SystemParams,
    tau_end: f64,
    step: StepConfig,
) -> Result<Trajectory<TwoQubitState>> {
    match model {
        OperatorModel::Reduced => integrate_reduced(initial, drive, params, tau_end, step),
        OperatorModel::Full { nmax, coupling } => {
            initial.validate()?;
            let c = CompositeState::thermal(&initial, params.nbar, nmax);
            integrate_full(c, drive, params, tau_end, step, coupling, DEFAULT_TAIL_TOL)
        }
    }
}
