//! Closed Bloch equations for the X-form two-qubit state.
//!
//! The system evolves the four Dicke populations and the `s`-`a` coherence
//! under the cavity-mediated collective decay, with the relative detuning
//! entering as a phase through `cos Delta` and `sin Delta`. The `a`-population
//! equation is the `s` equation with `p_s -> p_a` and `Delta -> pi - Delta`;
//! `p_down` follows from trace closure.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::SystemParams;
use crate::rk4::{self, StepConfig};
use crate::schedule::Drive;
use crate::state::DickeState;
use crate::trajectory::{ModelKind, Trajectory};

/// Slack on populations and normalization tolerated during integration.
pub const STEP_REJECT: f64 = 1e-6;

/// Variant of the `p_up` equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlochForm {
    /// Thermal re-excitation of `|up>` is `2 G^0_0 (p_s + p_a)`, independent of
    /// the detuning phase.
    #[default]
    Standard,
    /// Adds the phase-dependent part of the thermal re-excitation,
    /// `2 G^0_0 [cos Delta (p_s - p_a) + 2 sin Delta Im c_sa]`, which the
    /// reduced master equation contains. Identical to `Standard` at `nbar = 0`.
    Complete,
}

/// Time derivatives of a [`DickeState`], in units of `kappa` (per unit of
/// physical time) unless stated otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochDerivative {
    pub d_up: f64,
    pub d_s: f64,
    pub d_a: f64,
    pub d_down: f64,
    pub d_csa: C64,
}

impl BlochDerivative {
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            d_up: self.d_up * factor,
            d_s: self.d_s * factor,
            d_a: self.d_a * factor,
            d_down: self.d_down * factor,
            d_csa: self.d_csa * factor,
        }
    }

    pub fn population_sum(&self) -> f64 {
        self.d_up + self.d_s + self.d_a + self.d_down
    }

    /// Largest absolute component.
    pub fn max_abs(&self) -> f64 {
        [
            self.d_up.abs(),
            self.d_s.abs(),
            self.d_a.abs(),
            self.d_down.abs(),
            self.d_csa.norm(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    /// Elementwise maximum difference.
    pub fn max_diff(&self, other: &Self) -> f64 {
        [
            (self.d_up - other.d_up).abs(),
            (self.d_s - other.d_s).abs(),
            (self.d_a - other.d_a).abs(),
            (self.d_down - other.d_down).abs(),
            (self.d_csa - other.d_csa).norm(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// Right-hand side of the Bloch equations at phase `delta` (standard form).
pub fn bloch_rhs(d: &DickeState, delta: f64, params: &SystemParams) -> BlochDerivative {
    bloch_rhs_form(d, delta, params, BlochForm::Standard)
}

pub fn bloch_rhs_form(
    d: &DickeState,
    delta: f64,
    params: &SystemParams,
    form: BlochForm,
) -> BlochDerivative {
    let g11 = params.g_coeff(1, 1, 1);
    let g00 = params.g_coeff(0, 0, 1);
    let g01 = params.g_coeff(0, 1, 1);
    let g01_2 = params.g_coeff(0, 1, 2);
    let g11_2 = params.g_coeff(1, 1, 2);
    let (sin, cos) = delta.sin_cos();
    // -i sin(D) c_sa + h.c. = 2 sin(D) Im c_sa
    let im_csa = d.c_sa.im;

    let population = |x: f64, cos: f64| -> f64 {
        -g01_2 * (2.0 * cos * x + 2.0 * sin * im_csa) + 2.0 * g11 * (d.p_up - x)
            - 2.0 * g00 * (x - d.p_down)
            + 2.0 * cos * (g01 * d.p_up + g00 * d.p_down)
    };

    let mut d_up = -4.0 * g11 * d.p_up + 2.0 * g00 * (d.p_s + d.p_a);
    if form == BlochForm::Complete {
        d_up += 2.0 * g00 * (cos * (d.p_s - d.p_a) + 2.0 * sin * im_csa);
    }
    let d_s = population(d.p_s, cos);
    // Delta -> pi - Delta flips the cosine and keeps the sine.
    let d_a = population(d.p_a, -cos);
    let d_csa = -2.0 * g11_2 * d.c_sa
        + C64::new(0.0, sin)
            * (2.0 * g01 * d.p_up + 2.0 * g00 * d.p_down - g01_2 * (d.p_s + d.p_a));
    BlochDerivative {
        d_up,
        d_s,
        d_a,
        d_down: -(d_up + d_s + d_a),
        d_csa,
    }
}

/// Derivative with respect to `tau` instead of physical time.
pub fn bloch_rhs_tau(
    d: &DickeState,
    delta: f64,
    params: &SystemParams,
    form: BlochForm,
) -> BlochDerivative {
    bloch_rhs_form(d, delta, params, form).scaled(params.dt_per_tau())
}

type Packed = [f64; 6];

fn pack(d: &DickeState) -> Packed {
    [d.p_up, d.p_s, d.p_a, d.p_down, d.c_sa.re, d.c_sa.im]
}

fn unpack(v: &Packed) -> DickeState {
    DickeState {
        p_up: v[0],
        p_s: v[1],
        p_a: v[2],
        p_down: v[3],
        c_sa: C64::new(v[4], v[5]),
    }
}

fn pack_derivative(d: &BlochDerivative) -> Packed {
    [d.d_up, d.d_s, d.d_a, d.d_down, d.d_csa.re, d.d_csa.im]
}

fn check_step(v: &Packed, tau: f64) -> Result<()> {
    let reject = |reason: String| Err(Error::StepRejected { tau, reason });
    if v.iter().any(|x| !x.is_finite()) {
        return reject("non-finite state".into());
    }
    let sum = v[0] + v[1] + v[2] + v[3];
    if (sum - 1.0).abs() > STEP_REJECT {
        return reject(format!("normalization drifted to {sum}"));
    }
    if let Some(p) = v[..4]
        .iter()
        .find(|&&p| !(-STEP_REJECT..=1.0 + STEP_REJECT).contains(&p))
    {
        return reject(format!("population {p} left [0, 1]"));
    }
    Ok(())
}

/// Integrates the standard Bloch equations from `d0` up to `tau_end`.
pub fn integrate(
    d0: DickeState,
    drive: impl Into<Drive>,
    params: &SystemParams,
    tau_end: f64,
    step: StepConfig,
) -> Result<Trajectory<DickeState>> {
    integrate_form(d0, drive, params, tau_end, step, BlochForm::Standard)
}

pub fn integrate_form(
    d0: DickeState,
    drive: impl Into<Drive>,
    params: &SystemParams,
    tau_end: f64,
    step: StepConfig,
    form: BlochForm,
) -> Result<Trajectory<DickeState>> {
    let drive = drive.into();
    params.validate()?;
    drive.validate()?;
    d0.validate()?;
    let scale = params.dt_per_tau();
    let rhs = |v: &Packed, tau: f64, left: bool| -> Packed {
        let delta = if left {
            drive.relative_left(tau)
        } else {
            drive.relative(tau)
        };
        pack_derivative(&bloch_rhs_form(&unpack(v), delta, params, form).scaled(scale))
    };
    let (taus, packed) = rk4::integrate(
        pack(&d0),
        &drive.edges(tau_end),
        tau_end,
        step,
        rhs,
        check_step,
    )?;
    Ok(Trajectory {
        taus,
        states: packed.iter().map(unpack).collect(),
        drive,
        params: *params,
        model: ModelKind::Bloch(form),
        metrics: None,
    })
}

/// Final state and whether every `tau`-derivative component over the trailing
/// `window` stayed below `tol`.
pub fn steady_state(traj: &Trajectory<DickeState>, window: f64, tol: f64) -> (DickeState, bool) {
    let form = match traj.model {
        ModelKind::Bloch(form) => form,
        _ => BlochForm::Standard,
    };
    let Some((tau_end, last)) = traj.last() else {
        return (DickeState::up(), false);
    };
    if traj.duration() < window {
        return (*last, false);
    }
    let max_rate = traj
        .iter()
        .filter(|(tau, _)| *tau >= tau_end - window)
        .map(|(tau, d)| {
            bloch_rhs_tau(d, traj.drive.relative(tau), &traj.params, form).max_abs()
        })
        .fold(0.0, f64::max);
    (*last, max_rate < tol)
}

/// Richardson estimate of the final-state error at step `dtau`, from a
/// companion run at `2 dtau`.
pub fn step_doubling_error(
    d0: DickeState,
    drive: impl Into<Drive>,
    params: &SystemParams,
    tau_end: f64,
    dtau: f64,
    form: BlochForm,
) -> Result<f64> {
    let drive = drive.into();
    let fine = integrate_form(d0, drive.clone(), params, tau_end, StepConfig::new(dtau, usize::MAX), form)?;
    let coarse = integrate_form(d0, drive, params, tau_end, StepConfig::new(2.0 * dtau, usize::MAX), form)?;
    let a = pack(fine.states.last().expect("nonempty"));
    let b = pack(coarse.states.last().expect("nonempty"));
    let diff = a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    Ok(diff / 15.0)
}
