//! Detuning schedules `Delta(tau)`.
//!
//! Piecewise-constant variants are right-continuous: the value at an edge is
//! the value just after it. [`DetuningSchedule::eval_left`] gives the limit
//! from below, which the integrators use at the end of a step.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum DetuningSchedule {
    Zero,
    Constant {
        amplitude: f64,
    },
    /// `amplitude * Theta(tau - tau0)`.
    Heaviside {
        amplitude: f64,
        tau0: f64,
    },
    /// `amplitude * [1 + exp(2 slope (tau0 - tau))]^(-1/2)`.
    Sigmoid {
        amplitude: f64,
        slope: f64,
        tau0: f64,
    },
    /// `amplitude * sum_{n=1..edges} (-1)^(n+1) Theta(tau - n period)`.
    SquareWave {
        amplitude: f64,
        period: f64,
        edges: u32,
    },
    /// `amplitude` on `[tau0, tau0 + width)`, zero elsewhere.
    Pulse {
        amplitude: f64,
        tau0: f64,
        width: f64,
    },
    /// `values[i]` on `[breaks[i-1], breaks[i])`, with `values[0]` before the
    /// first break.
    Piecewise {
        breaks: Vec<f64>,
        values: Vec<f64>,
    },
}

impl Default for DetuningSchedule {
    fn default() -> Self {
        Self::Zero
    }
}

impl DetuningSchedule {
    pub fn heaviside(amplitude: f64, tau0: f64) -> Self {
        Self::Heaviside { amplitude, tau0 }
    }

    pub fn sigmoid(amplitude: f64, slope: f64, tau0: f64) -> Self {
        Self::Sigmoid {
            amplitude,
            slope,
            tau0,
        }
    }

    pub fn square_wave(amplitude: f64, period: f64, edges: u32) -> Self {
        Self::SquareWave {
            amplitude,
            period,
            edges,
        }
    }

    pub fn pulse(amplitude: f64, tau0: f64, width: f64) -> Self {
        Self::Pulse {
            amplitude,
            tau0,
            width,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidParams(format!("schedule: {msg}")));
        match self {
            Self::Zero => Ok(()),
            Self::Constant { amplitude } if !amplitude.is_finite() => bad("non-finite amplitude"),
            Self::Constant { .. } => Ok(()),
            Self::Heaviside { amplitude, tau0 } => {
                if !amplitude.is_finite() || !tau0.is_finite() {
                    bad("non-finite field")
                } else {
                    Ok(())
                }
            }
            Self::Sigmoid {
                amplitude,
                slope,
                tau0,
            } => {
                if ![amplitude, slope, tau0].iter().all(|v| v.is_finite()) {
                    bad("non-finite field")
                } else if *slope <= 0.0 {
                    bad("sigmoid slope must be positive")
                } else {
                    Ok(())
                }
            }
            Self::SquareWave {
                amplitude,
                period,
                edges,
            } => {
                if !amplitude.is_finite() || !period.is_finite() || *period <= 0.0 {
                    bad("square wave needs a positive period")
                } else if *edges == 0 {
                    bad("square wave needs at least one edge")
                } else {
                    Ok(())
                }
            }
            Self::Pulse {
                amplitude,
                tau0,
                width,
            } => {
                if ![amplitude, tau0, width].iter().all(|v| v.is_finite()) || *width < 0.0 {
                    bad("pulse needs a non-negative width")
                } else {
                    Ok(())
                }
            }
            Self::Piecewise { breaks, values } => {
                if values.len() != breaks.len() + 1 {
                    bad("piecewise needs one more value than breaks")
                } else if breaks.windows(2).any(|w| w[0] >= w[1]) {
                    bad("piecewise breaks must be strictly increasing")
                } else if !breaks.iter().chain(values).all(|v| v.is_finite()) {
                    bad("non-finite piecewise entry")
                } else {
                    Ok(())
                }
            }
        }
    }

    /// Right-continuous value at `tau`.
    pub fn eval(&self, tau: f64) -> f64 {
        self.eval_side(tau, false)
    }

    /// Limit from below at `tau`. Equal to [`eval`](Self::eval) away from edges.
    pub fn eval_left(&self, tau: f64) -> f64 {
        self.eval_side(tau, true)
    }

    fn eval_side(&self, tau: f64, left: bool) -> f64 {
        // step(tau - edge): 1 past the edge; at the edge 1 from the right, 0 from the left
        let step = |edge: f64| -> f64 {
            if tau > edge || (!left && tau == edge) {
                1.0
            } else {
                0.0
            }
        };
        match self {
            Self::Zero => 0.0,
            Self::Constant { amplitude } => *amplitude,
            Self::Heaviside { amplitude, tau0 } => amplitude * step(*tau0),
            Self::Sigmoid {
                amplitude,
                slope,
                tau0,
            } => amplitude / (1.0 + (2.0 * slope * (tau0 - tau)).exp()).sqrt(),
            Self::SquareWave {
                amplitude,
                period,
                edges,
            } => {
                let mut sum = 0.0;
                for n in 1..=*edges {
                    let s = step(period * f64::from(n));
                    if s == 0.0 {
                        break;
                    }
                    sum += if n % 2 == 1 { s } else { -s };
                }
                amplitude * sum
            }
            Self::Pulse {
                amplitude,
                tau0,
                width,
            } => amplitude * (step(*tau0) - step(tau0 + width)),
            Self::Piecewise { breaks, values } => {
                let idx = breaks.iter().take_while(|&&b| step(b) == 1.0).count();
                values[idx]
            }
        }
    }

    /// Discontinuities in `(0, tau_end)`, ascending.
    pub fn edges(&self, tau_end: f64) -> Vec<f64> {
        let mut out: Vec<f64> = match self {
            Self::Zero | Self::Constant { .. } | Self::Sigmoid { .. } => Vec::new(),
            Self::Heaviside { tau0, .. } => vec![*tau0],
            Self::SquareWave { period, edges, .. } => {
                (1..=*edges).map(|n| period * f64::from(n)).collect()
            }
            Self::Pulse { tau0, width, .. } => vec![*tau0, tau0 + width],
            Self::Piecewise { breaks, .. } => breaks.clone(),
        };
        out.retain(|&e| e > 0.0 && e < tau_end);
        out.sort_by(f64::total_cmp);
        out.dedup();
        out
    }
}

/// Detunings of both qubits. Only the relative detuning
/// `qubit1 - qubit2` enters the reduced dynamics.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Drive {
    pub qubit1: DetuningSchedule,
    #[serde(default)]
    pub qubit2: DetuningSchedule,
}

impl Drive {
    pub fn single(schedule: DetuningSchedule) -> Self {
        Self {
            qubit1: schedule,
            qubit2: DetuningSchedule::Zero,
        }
    }

    pub fn pair(qubit1: DetuningSchedule, qubit2: DetuningSchedule) -> Self {
        Self { qubit1, qubit2 }
    }

    pub fn validate(&self) -> Result<()> {
        self.qubit1.validate()?;
        self.qubit2.validate()
    }

    pub fn relative(&self, tau: f64) -> f64 {
        self.qubit1.eval(tau) - self.qubit2.eval(tau)
    }

    pub fn relative_left(&self, tau: f64) -> f64 {
        self.qubit1.eval_left(tau) - self.qubit2.eval_left(tau)
    }

    /// Values of both schedules, right- or left-continuous.
    pub fn both(&self, tau: f64, left: bool) -> (f64, f64) {
        if left {
            (self.qubit1.eval_left(tau), self.qubit2.eval_left(tau))
        } else {
            (self.qubit1.eval(tau), self.qubit2.eval(tau))
        }
    }

    pub fn edges(&self, tau_end: f64) -> Vec<f64> {
        let mut e = self.qubit1.edges(tau_end);
        e.extend(self.qubit2.edges(tau_end));
        e.sort_by(f64::total_cmp);
        e.dedup();
        e
    }
}

impl From<DetuningSchedule> for Drive {
    fn from(s: DetuningSchedule) -> Self {
        Self::single(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heaviside_is_right_continuous() {
        let s = DetuningSchedule::heaviside(10.0, 2.5);
        assert_eq!(s.eval(2.0), 0.0);
        assert_eq!(s.eval(3.0), 10.0);
        assert_eq!(s.eval(2.5), 10.0);
        assert_eq!(s.eval_left(2.5), 0.0);
    }

    #[test]
    fn sigmoid_midpoint() {
        let s = DetuningSchedule::sigmoid(10.0, 3.0, 2.5);
        assert!((s.eval(2.5) - 7.0710678118654755).abs() < 1e-12);
        assert_eq!(s.eval(2.5), s.eval_left(2.5));
        assert!(s.eval(20.0) > 9.999_999);
    }

    #[test]
    fn square_wave_by_term_sum() {
        let s = DetuningSchedule::square_wave(10.0, 2.5, 16);
        // Direct sum of the alternating steps.
        let oracle = |tau: f64| -> f64 {
            (1..=16)
                .map(|n| {
                    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
                    if tau >= 2.5 * n as f64 {
                        sign * 10.0
                    } else {
                        0.0
                    }
                })
                .sum()
        };
        assert_eq!(s.eval(3.0), 10.0);
        assert_eq!(s.eval(6.0), 0.0);
        for i in 0..500 {
            let tau = i as f64 * 0.1 + 0.013;
            assert_eq!(s.eval(tau), oracle(tau), "tau = {tau}");
        }
        assert_eq!(s.eval(5.0), 0.0);
        assert_eq!(s.eval_left(5.0), 10.0);
        assert_eq!(s.edges(45.0).len(), 16);
        assert_eq!(s.edges(10.0), vec![2.5, 5.0, 7.5]);
    }

    #[test]
    fn pulse_window() {
        let s = DetuningSchedule::pulse(10.0, 2.5, 1.0);
        assert_eq!(s.eval(2.4), 0.0);
        assert_eq!(s.eval(2.5), 10.0);
        assert_eq!(s.eval(3.4), 10.0);
        assert_eq!(s.eval(3.5), 0.0);
        assert_eq!(s.eval_left(3.5), 10.0);
        assert_eq!(s.edges(100.0), vec![2.5, 3.5]);
    }

    #[test]
    fn piecewise_table() {
        let s = DetuningSchedule::Piecewise {
            breaks: vec![1.0, 2.0],
            values: vec![0.0, 3.0, -1.0],
        };
        s.validate().unwrap();
        assert_eq!(s.eval(0.5), 0.0);
        assert_eq!(s.eval(1.0), 3.0);
        assert_eq!(s.eval_left(1.0), 0.0);
        assert_eq!(s.eval(2.5), -1.0);
        let bad = DetuningSchedule::Piecewise {
            breaks: vec![1.0],
            values: vec![0.0],
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn serde_variant_keys() {
        let s: DetuningSchedule =
            serde_json::from_str(r#"{"heaviside": {"amplitude": 10.0, "tau0": 2.5}}"#).unwrap();
        assert_eq!(s, DetuningSchedule::heaviside(10.0, 2.5));
        let z: DetuningSchedule = serde_json::from_str(r#""zero""#).unwrap();
        assert_eq!(z, DetuningSchedule::Zero);
        assert!(serde_json::from_str::<DetuningSchedule>(r#"{"heaviside": {"amp": 1}}"#).is_err());
    }

    #[test]
    fn drive_uses_relative_detuning() {
        let d = Drive::pair(
            DetuningSchedule::heaviside(5.0, 2.5),
            DetuningSchedule::heaviside(-5.0, 2.5),
        );
        assert_eq!(d.relative(3.0), 10.0);
        assert_eq!(d.relative_left(2.5), 0.0);
        assert_eq!(d.edges(10.0), vec![2.5]);
    }
}
