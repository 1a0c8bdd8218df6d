//! Fixed-step classical Runge-Kutta on the `tau` axis.
//!
//! Steps never straddle a schedule edge: a step containing an edge is split
//! in two at the edge. Stage evaluations at the end of a (sub)step use the
//! left limit of the schedule so a jump at that instant does not leak in.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_DTAU: f64 = 1e-3;

/// Vector-space operation needed by the integrator.
pub trait Axpy: Clone {
    /// `self + h * k`
    fn axpy(&self, h: f64, k: &Self) -> Self;
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepConfig {
    pub dtau: f64,
    /// Keep every `stride`-th step (the final state is always kept).
    pub stride: usize,
}

impl Default for StepConfig {
    fn default() -> Self {
        Self {
            dtau: DEFAULT_DTAU,
            stride: 1,
        }
    }
}

impl StepConfig {
    pub fn new(dtau: f64, stride: usize) -> Self {
        Self { dtau, stride }
    }

    pub(crate) fn validate(&self, tau_end: f64) -> Result<()> {
        if !(self.dtau > 0.0 && self.dtau.is_finite()) {
            return Err(Error::InvalidParams(format!("dtau must be > 0, got {}", self.dtau)));
        }
        if !(tau_end > 0.0 && tau_end.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "tau_end must be > 0, got {tau_end}"
            )));
        }
        if self.stride == 0 {
            return Err(Error::InvalidParams("sample stride must be >= 1".into()));
        }
        Ok(())
    }

    pub fn step_count(&self, tau_end: f64) -> usize {
        ((tau_end / self.dtau) - 1e-9).ceil().max(1.0) as usize
    }
}

/// One classical RK4 step of size `h` from `tau`.
///
/// `rhs(y, tau, left)` evaluates the derivative; `left` requests the left
/// limit of any time-dependent coefficient.
pub fn rk4_step<S, F>(y: &S, tau: f64, h: f64, rhs: &mut F) -> S
where
    S: Axpy,
    F: FnMut(&S, f64, bool) -> S,
{
    let k1 = rhs(y, tau, false);
    let k2 = rhs(&y.axpy(0.5 * h, &k1), tau + 0.5 * h, false);
    let k3 = rhs(&y.axpy(0.5 * h, &k2), tau + 0.5 * h, false);
    let k4 = rhs(&y.axpy(h, &k3), tau + h, true);
    y.axpy(h / 6.0, &k1)
        .axpy(h / 3.0, &k2)
        .axpy(h / 3.0, &k3)
        .axpy(h / 6.0, &k4)
}

/// Integrates from `tau = 0` to `tau_end`, returning sampled times and
/// states. `check` runs after every full step and may abort the run.
pub fn integrate<S, F, C>(
    y0: S,
    edges: &[f64],
    tau_end: f64,
    step: StepConfig,
    mut rhs: F,
    mut check: C,
) -> Result<(Vec<f64>, Vec<S>)>
where
    S: Axpy,
    F: FnMut(&S, f64, bool) -> S,
    C: FnMut(&S, f64) -> Result<()>,
{
    step.validate(tau_end)?;
    let n = step.step_count(tau_end);
    let eps = 1e-9 * step.dtau;
    let time = |k: usize| (k as f64 * step.dtau).min(tau_end);

    let mut taus = vec![0.0];
    let mut states = vec![y0.clone()];
    let mut y = y0;
    let mut edge_iter = edges.iter().copied().peekable();

    for k in 0..n {
        let (ta, tb) = (time(k), time(k + 1));
        let mut t = ta;
        while let Some(&e) = edge_iter.peek() {
            if e <= ta + eps {
                edge_iter.next();
                continue;
            }
            if e < tb - eps {
                y = rk4_step(&y, t, e - t, &mut rhs);
                t = e;
                edge_iter.next();
            } else {
                break;
            }
        }
        y = rk4_step(&y, t, tb - t, &mut rhs);
        check(&y, tb)?;
        if (k + 1) % step.stride == 0 || k + 1 == n {
            taus.push(tb);
            states.push(y.clone());
        }
    }
    Ok((taus, states))
}

impl Axpy for f64 {
    fn axpy(&self, h: f64, k: &Self) -> Self {
        self + h * k
    }
}

impl<const N: usize> Axpy for [f64; N] {
    fn axpy(&self, h: f64, k: &Self) -> Self {
        std::array::from_fn(|i| self[i] + h * k[i])
    }
}

impl<R, C, S> Axpy for nalgebra::Matrix<num_complex::Complex64, R, C, S>
where
    R: nalgebra::Dim,
    C: nalgebra::Dim,
    S: nalgebra::RawStorageMut<num_complex::Complex64, R, C> + Clone,
{
    fn axpy(&self, h: f64, k: &Self) -> Self {
        let mut out = self.clone();
        out.iter_mut().zip(k.iter()).for_each(|(o, d)| *o += d * h);
        out
    }
}
