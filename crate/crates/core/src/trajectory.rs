use serde::{Deserialize, Serialize};

use crate::bloch::BlochForm;
use crate::lindblad::DetuningCoupling;
use crate::metrics::MetricRecord;
use crate::params::SystemParams;
use crate::schedule::Drive;

/// Which generator produced a trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Bloch(BlochForm),
    Reduced,
    Full { nmax: usize, coupling: DetuningCoupling },
}

/// Time-ordered samples of an integrator run.
#[derive(Debug, Clone)]
pub struct Trajectory<S> {
    pub taus: Vec<f64>,
    pub states: Vec<S>,
    pub drive: Drive,
    pub params: SystemParams,
    pub model: ModelKind,
    pub metrics: Option<Vec<MetricRecord>>,
}

impl<S> Trajectory<S> {
    pub fn len(&self) -> usize {
        self.taus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.taus.is_empty()
    }

    pub fn last(&self) -> Option<(f64, &S)> {
        Some((*self.taus.last()?, self.states.last()?))
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &S)> {
        self.taus.iter().copied().zip(self.states.iter())
    }

    /// Sample closest to `tau`.
    pub fn at(&self, tau: f64) -> Option<(f64, &S)> {
        self.iter()
            .min_by(|a, b| (a.0 - tau).abs().total_cmp(&(b.0 - tau).abs()))
    }

    pub fn duration(&self) -> f64 {
        match (self.taus.first(), self.taus.last()) {
            (Some(a), Some(b)) => b - a,
            _ => 0.0,
        }
    }
}
