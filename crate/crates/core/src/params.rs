//! System parameters and unit conventions.
//!
//! Rates are stored in units of the cavity decay rate `kappa` (normally 1).
//! Times are exposed on the dimensionless axis `tau = tau_scale * g^2 t / kappa`;
//! the integrators convert a step `dtau` into physical time through
//! [`SystemParams::dt_per_tau`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default `tau_scale`.
///
/// With this value the bare collective rate `g^2/kappa` amounts to 0.1 per
/// unit of `tau`, which puts the resonant maximum of the symmetric-state
/// population at `tau = 2.5` and gives `p_down(25) = 1 - 11 e^-10`.
pub const DEFAULT_TAU_SCALE: f64 = 10.0;

/// Coupling above which the adiabatic elimination of the cavity becomes
/// questionable.
pub const WEAK_COUPLING_WARN: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemParams {
    /// Qubit-cavity coupling `g`, in units of `kappa`.
    #[serde(rename = "g_over_kappa")]
    pub g: f64,
    /// Cavity decay rate (the unit of rate).
    #[serde(default = "one")]
    pub kappa: f64,
    /// Single-qubit spontaneous-emission rate, in units of `kappa`.
    #[serde(rename = "gamma_over_kappa", default)]
    pub gamma: f64,
    /// Mean thermal photon number of the cavity bath.
    #[serde(default)]
    pub nbar: f64,
    /// Multiplier in `tau = tau_scale * g^2 t / kappa`.
    #[serde(default = "default_tau_scale")]
    pub tau_scale: f64,
}

fn one() -> f64 {
    1.0
}

fn default_tau_scale() -> f64 {
    DEFAULT_TAU_SCALE
}

impl SystemParams {
    /// Zero-temperature, loss-free parameters with coupling `g` and `kappa = 1`.
    pub fn new(g: f64) -> Self {
        Self {
            g,
            kappa: 1.0,
            gamma: 0.0,
            nbar: 0.0,
            tau_scale: DEFAULT_TAU_SCALE,
        }
    }

    pub fn with_gamma(mut self, gamma: f64) -> Self {
        self.gamma = gamma;
        self
    }

    pub fn with_nbar(mut self, nbar: f64) -> Self {
        self.nbar = nbar;
        self
    }

    pub fn with_tau_scale(mut self, tau_scale: f64) -> Self {
        self.tau_scale = tau_scale;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.g, self.kappa, self.gamma, self.nbar, self.tau_scale]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(Error::InvalidParams("non-finite parameter".into()));
        }
        if self.g <= 0.0 {
            return Err(Error::InvalidParams(format!("g must be > 0, got {}", self.g)));
        }
        if self.kappa <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "kappa must be > 0, got {}",
                self.kappa
            )));
        }
        if self.gamma < 0.0 {
            return Err(Error::InvalidParams(format!(
                "gamma must be >= 0, got {}",
                self.gamma
            )));
        }
        if self.nbar < 0.0 {
            return Err(Error::InvalidParams(format!(
                "nbar must be >= 0, got {}",
                self.nbar
            )));
        }
        if self.tau_scale <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "tau_scale must be > 0, got {}",
                self.tau_scale
            )));
        }
        Ok(())
    }

    /// True when `g` exceeds the weak-coupling threshold `0.5 kappa`.
    pub fn outside_weak_coupling(&self) -> bool {
        self.g > WEAK_COUPLING_WARN * self.kappa
    }

    /// Bare cavity-induced rate `g^2 / kappa`.
    pub fn collective_rate(&self) -> f64 {
        self.g * self.g / self.kappa
    }

    /// Physical time elapsed per unit of `tau`.
    pub fn dt_per_tau(&self) -> f64 {
        1.0 / (self.tau_scale * self.collective_rate())
    }

    pub fn tau_to_t(&self, tau: f64) -> f64 {
        tau * self.dt_per_tau()
    }

    pub fn t_to_tau(&self, t: f64) -> f64 {
        t / self.dt_per_tau()
    }

    /// `G^q_p(k nbar) = q gamma + g^2 (k nbar + p) / kappa`.
    pub fn g_coeff(&self, q: u8, p: u8, k: u8) -> f64 {
        GCoefficient::new(q, p, k).value(self)
    }
}

/// Index triple of a rate coefficient `G^q_p(k nbar)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GCoefficient {
    pub q: u8,
    pub p: u8,
    pub k: u8,
}

impl GCoefficient {
    /// # Panics
    /// If `q, p` are not in `{0, 1}` or `k` is not in `{1, 2}`.
    pub fn new(q: u8, p: u8, k: u8) -> Self {
        assert!(q <= 1 && p <= 1, "q and p must be 0 or 1");
        assert!(k == 1 || k == 2, "k must be 1 or 2");
        Self { q, p, k }
    }

    pub fn value(&self, params: &SystemParams) -> f64 {
        f64::from(self.q) * params.gamma
            + params.g * params.g * (f64::from(self.k) * params.nbar + f64::from(self.p))
                / params.kappa
    }
}

/// Free-function form of [`SystemParams::g_coeff`].
pub fn g_coeff(params: &SystemParams, q: u8, p: u8, k: u8) -> f64 {
    params.g_coeff(q, p, k)
}
