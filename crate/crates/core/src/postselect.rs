//! Ideal postselection on the qubits not being found in `|00>`.
//!
//! The two-outcome measurement is `{P0 = |00><00|, P1 = 1 - P0}`; keeping the
//! `P1` outcome gives `rho_p = P1 rho P1 / tr(P1 rho)`.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::metrics::concurrence_wootters;
use crate::state::{DickeState, TwoQubitState};
use crate::trajectory::Trajectory;

/// Success probabilities at or below this are refused.
pub const DEGENERATE_SUCCESS: f64 = 1e-12;

const GROUND: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PostselectionResult {
    pub state: TwoQubitState,
    pub success_prob: f64,
    /// `(clamped, relaxed)` Wootters concurrence of `state`.
    pub concurrence: (f64, f64),
    pub f_s_post: f64,
}

/// Projects out `|00>` (row and column, so coherences with the ground state
/// are removed too) and renormalizes.
pub fn postselect(r: &TwoQubitState) -> Result<PostselectionResult> {
    let mut m = *r.matrix();
    let success_prob = r.trace() - r.p_ground();
    if success_prob <= DEGENERATE_SUCCESS {
        return Err(Error::DegeneratePostselection { success_prob });
    }
    for k in 0..4 {
        m[(GROUND, k)] = C64::new(0.0, 0.0);
        m[(k, GROUND)] = C64::new(0.0, 0.0);
    }
    let state = TwoQubitState::from_matrix_unchecked(m.unscale(success_prob));
    let concurrence = concurrence_wootters(&state)?;
    let f_s_post = state.dicke_components().s.re;
    Ok(PostselectionResult {
        state,
        success_prob,
        concurrence,
        f_s_post,
    })
}

/// One entry per trajectory sample; `Err` marks a degenerate sample.
pub type SweepRecord = (f64, Result<PostselectionResult>);

/// Applies [`postselect`] at every sample of a trajectory.
pub trait PostselectSweep {
    fn postselect_sweep(&self) -> Vec<SweepRecord>;
}

impl PostselectSweep for Trajectory<TwoQubitState> {
    fn postselect_sweep(&self) -> Vec<SweepRecord> {
        self.iter().map(|(t, r)| (t, postselect(r))).collect()
    }
}

impl PostselectSweep for Trajectory<DickeState> {
    fn postselect_sweep(&self) -> Vec<SweepRecord> {
        self.iter()
            .map(|(t, d)| (t, d.to_computational().and_then(|r| postselect(&r))))
            .collect()
    }
}

/// Free-function form of [`PostselectSweep::postselect_sweep`].
pub fn postselect_sweep<T: PostselectSweep>(traj: &T) -> Vec<SweepRecord> {
    traj.postselect_sweep()
}
