//! Entanglement and state diagnostics.

use nalgebra::SymmetricEigen;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::state::{dicke_to_computational, DickeState, Mat4, TwoQubitState, MIN_EIGENVALUE, SPAN_TOLERANCE};
use crate::trajectory::Trajectory;

/// Per-sample diagnostics; also the metric block of a CSV row.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricRecord {
    pub tau: f64,
    pub concurrence_clamped: f64,
    pub concurrence_relaxed: f64,
    pub f_s: f64,
    pub f_a: f64,
    pub negativity: f64,
    pub purity: f64,
}

impl MetricRecord {
    /// Uses the closed X-form concurrence.
    pub fn from_dicke(tau: f64, d: &DickeState) -> Result<Self> {
        let r = dicke_to_computational(d)?;
        let (clamped, relaxed) = concurrence_xform(d);
        let (f_s, f_a) = fidelities(d);
        Ok(Self {
            tau,
            concurrence_clamped: clamped,
            concurrence_relaxed: relaxed,
            f_s,
            f_a,
            negativity: negativity(&r),
            purity: purity(&r),
        })
    }

    /// Clamped concurrence from the Wootters formula. The relaxed value is
    /// the X-form expression when the state has X-form, so that it matches
    /// Bloch output; otherwise the Wootters relaxed value.
    pub fn from_state(tau: f64, r: &TwoQubitState) -> Result<Self> {
        let (clamped, w_relaxed) = concurrence_wootters(r)?;
        let comps = r.dicke_components();
        let d = r.dicke_projection();
        let relaxed = if comps.residual <= SPAN_TOLERANCE {
            concurrence_xform(&d).1
        } else {
            w_relaxed
        };
        Ok(Self {
            tau,
            concurrence_clamped: clamped,
            concurrence_relaxed: relaxed,
            f_s: d.p_s,
            f_a: d.p_a,
            negativity: negativity(r),
            purity: purity(r),
        })
    }
}

/// `sigma_y (x) sigma_y` in the computational basis.
fn spin_flip() -> Mat4 {
    let mut m = Mat4::zeros();
    for (i, s) in [-1.0, 1.0, 1.0, -1.0].into_iter().enumerate() {
        m[(i, 3 - i)] = C64::new(s, 0.0);
    }
    m
}

fn hermitian_part(m: &Mat4) -> Mat4 {
    (m + m.adjoint()) * C64::new(0.5, 0.0)
}

/// Wootters concurrence `(clamped, relaxed)` with
/// `relaxed = sqrt(a1) - sqrt(a2) - sqrt(a3) - sqrt(a4)`, the `a_i` being the
/// descending eigenvalues of `rho rho~`.
///
/// The roots `sqrt(a_i)` are taken as the singular values of
/// `sqrt(rho) (sy x sy) sqrt(rho)*`, whose Gram matrix is the Hermitian
/// `sqrt(rho) rho~ sqrt(rho)`. This keeps them accurate to machine precision
/// even when some `a_i` vanish.
pub fn concurrence_wootters(r: &TwoQubitState) -> Result<(f64, f64)> {
    let rho = hermitian_part(r.matrix());
    let eig = SymmetricEigen::new(rho);
    if let Some(min) = eig.eigenvalues.iter().copied().reduce(f64::min) {
        if min < MIN_EIGENVALUE {
            return Err(Error::NonPhysical(format!("negative eigenvalue {min:.3e}")));
        }
    }
    // eigenvalues in [-1e-8, 0) are rounding noise
    let sqrt_vals = eig.eigenvalues.map(|x| C64::new(x.max(0.0).sqrt(), 0.0));
    let v = &eig.eigenvectors;
    let sqrt_rho = v * Mat4::from_diagonal(&sqrt_vals) * v.adjoint();
    let m = sqrt_rho * spin_flip() * sqrt_rho.conjugate();
    let mut roots: Vec<f64> = m.singular_values().iter().copied().collect();
    roots.sort_by(|a, b| b.total_cmp(a));
    let relaxed = roots[0] - roots[1] - roots[2] - roots[3];
    Ok((relaxed.max(0.0), relaxed))
}

/// Closed form for X-form states,
/// `relaxed = 2(|rho_{10,01}| - sqrt(p_up p_down))`.
pub fn concurrence_xform(d: &DickeState) -> (f64, f64) {
    let relaxed = 2.0 * (d.coherence_10_01().norm() - (d.p_up * d.p_down).max(0.0).sqrt());
    (relaxed.max(0.0), relaxed)
}

/// `(<s|rho|s>, <a|rho|a>)`.
pub fn fidelities(d: &DickeState) -> (f64, f64) {
    (d.p_s, d.p_a)
}

/// Partial transpose over the second qubit.
pub fn partial_transpose(rho: &Mat4) -> Mat4 {
    Mat4::from_fn(|i, j| {
        let (a1, a2) = (i / 2, i % 2);
        let (b1, b2) = (j / 2, j % 2);
        rho[(2 * a1 + b2, 2 * b1 + a2)]
    })
}

/// Sum of the magnitudes of the negative eigenvalues of the partial transpose.
pub fn negativity(r: &TwoQubitState) -> f64 {
    let pt = hermitian_part(&partial_transpose(r.matrix()));
    pt.symmetric_eigenvalues()
        .iter()
        .filter(|&&x| x < 0.0)
        .map(|x| -x)
        .fold(0.0, |acc, x| acc + x)
}

/// `tr(rho^2)`.
pub fn purity(r: &TwoQubitState) -> f64 {
    let m = r.matrix();
    (m * m).trace().re
}

/// Computes per-sample metrics for a trajectory.
pub trait Diagnostics {
    fn metric_records(&self) -> Result<Vec<MetricRecord>>;

    /// Fills `metrics` in place.
    fn with_metrics(self) -> Result<Self>
    where
        Self: Sized;
}

impl Diagnostics for Trajectory<DickeState> {
    fn metric_records(&self) -> Result<Vec<MetricRecord>> {
        self.iter().map(|(t, d)| MetricRecord::from_dicke(t, d)).collect()
    }

    fn with_metrics(mut self) -> Result<Self> {
        self.metrics = Some(self.metric_records()?);
        Ok(self)
    }
}

impl Diagnostics for Trajectory<TwoQubitState> {
    fn metric_records(&self) -> Result<Vec<MetricRecord>> {
        self.iter().map(|(t, r)| MetricRecord::from_state(t, r)).collect()
    }

    fn with_metrics(mut self) -> Result<Self> {
        self.metrics = Some(self.metric_records()?);
        Ok(self)
    }
}
