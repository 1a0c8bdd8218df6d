//! Executing a [`RunConfig`] and formatting its rows.

use std::fmt::Write as _;

use serde::Serialize;

use super::config::{ModelChoice, RunConfig};
use crate::bloch;
use crate::error::Result;
use crate::lindblad::{integrate_operator, OperatorModel};
use crate::metrics::MetricRecord;
use crate::postselect::{postselect, PostselectionResult};
use crate::state::{DickeState, TwoQubitState};

/// Columns always present, in order.
pub const CSV_COLUMNS: [&str; 14] = [
    "tau",
    "p_up",
    "p_s",
    "p_a",
    "p_down",
    "re_csa",
    "im_csa",
    "concurrence_clamped",
    "concurrence_relaxed",
    "f_s",
    "f_a",
    "negativity",
    "purity",
    "delta_value",
];

/// Appended when the run postselects.
pub const POSTSELECTED_COLUMNS: [&str; 5] = [
    "postselected.success_prob",
    "postselected.concurrence_clamped",
    "postselected.concurrence_relaxed",
    "postselected.f_s",
    "postselected.degenerate",
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PostselectedRow {
    pub success_prob: f64,
    pub concurrence_clamped: f64,
    pub concurrence_relaxed: f64,
    pub f_s: f64,
    /// Success probability numerically zero; the other fields are NaN.
    pub degenerate: bool,
}

impl PostselectedRow {
    fn new(r: &TwoQubitState) -> Result<Self> {
        use crate::error::Error;
        match postselect(r) {
            Ok(PostselectionResult {
                success_prob,
                concurrence,
                f_s_post,
                ..
            }) => Ok(Self {
                success_prob,
                concurrence_clamped: concurrence.0,
                concurrence_relaxed: concurrence.1,
                f_s: f_s_post,
                degenerate: false,
            }),
            Err(Error::DegeneratePostselection { success_prob }) => Ok(Self {
                success_prob,
                concurrence_clamped: f64::NAN,
                concurrence_relaxed: f64::NAN,
                f_s: f64::NAN,
                degenerate: true,
            }),
            Err(e) => Err(e),
        }
    }
}

/// One output sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Row {
    pub tau: f64,
    pub p_up: f64,
    pub p_s: f64,
    pub p_a: f64,
    pub p_down: f64,
    pub re_csa: f64,
    pub im_csa: f64,
    pub concurrence_clamped: f64,
    pub concurrence_relaxed: f64,
    pub f_s: f64,
    pub f_a: f64,
    pub negativity: f64,
    pub purity: f64,
    pub delta_value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub postselected: Option<PostselectedRow>,
}

impl Row {
    fn new(d: &DickeState, m: MetricRecord, delta_value: f64, post: Option<PostselectedRow>) -> Self {
        Self {
            tau: m.tau,
            p_up: d.p_up,
            p_s: d.p_s,
            p_a: d.p_a,
            p_down: d.p_down,
            re_csa: d.c_sa.re,
            im_csa: d.c_sa.im,
            concurrence_clamped: m.concurrence_clamped,
            concurrence_relaxed: m.concurrence_relaxed,
            f_s: m.f_s,
            f_a: m.f_a,
            negativity: m.negativity,
            purity: m.purity,
            delta_value,
            postselected: post,
        }
    }

    /// Value of a CSV column by name.
    pub fn get(&self, column: &str) -> Option<f64> {
        let p = self.postselected.as_ref();
        Some(match column {
            "tau" => self.tau,
            "p_up" => self.p_up,
            "p_s" => self.p_s,
            "p_a" => self.p_a,
            "p_down" => self.p_down,
            "re_csa" => self.re_csa,
            "im_csa" => self.im_csa,
            "concurrence_clamped" => self.concurrence_clamped,
            "concurrence_relaxed" => self.concurrence_relaxed,
            "f_s" => self.f_s,
            "f_a" => self.f_a,
            "negativity" => self.negativity,
            "purity" => self.purity,
            "delta_value" => self.delta_value,
            "postselected.success_prob" => p?.success_prob,
            "postselected.concurrence_clamped" => p?.concurrence_clamped,
            "postselected.concurrence_relaxed" => p?.concurrence_relaxed,
            "postselected.f_s" => p?.f_s,
            "postselected.degenerate" => f64::from(u8::from(p?.degenerate)),
            _ => return None,
        })
    }

    /// Dicke state variables, used for steady-state checks.
    pub fn state_vector(&self) -> [f64; 6] {
        [self.p_up, self.p_s, self.p_a, self.p_down, self.re_csa, self.im_csa]
    }
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub config: RunConfig,
    pub rows: Vec<Row>,
}

/// Integrates the configured model and evaluates all per-sample metrics.
pub fn run(config: &RunConfig) -> Result<RunOutput> {
    config.validate()?;
    let drive = config.drive();
    let d0 = config.initial.to_dicke()?;
    let post = |r: &TwoQubitState| -> Result<Option<PostselectedRow>> {
        if config.postselect {
            PostselectedRow::new(r).map(Some)
        } else {
            Ok(None)
        }
    };
    let mut rows = Vec::new();
    match config.model {
        ModelChoice::Bloch => {
            let traj = bloch::integrate_form(
                d0,
                drive.clone(),
                &config.params,
                config.tau_end,
                config.step(),
                config.bloch_form,
            )?;
            for (tau, d) in traj.iter() {
                let m = MetricRecord::from_dicke(tau, d)?;
                let p = post(&d.to_computational()?)?;
                rows.push(Row::new(d, m, drive.relative(tau), p));
            }
        }
        ModelChoice::Reduced | ModelChoice::Full => {
            let model = if config.model == ModelChoice::Reduced {
                OperatorModel::Reduced
            } else {
                OperatorModel::Full {
                    nmax: config.nmax,
                    coupling: config.coupling,
                }
            };
            let traj = integrate_operator(
                model,
                d0.to_computational()?,
                drive.clone(),
                &config.params,
                config.tau_end,
                config.step(),
            )?;
            for (tau, r) in traj.iter() {
                let m = MetricRecord::from_state(tau, r)?;
                rows.push(Row::new(&r.dicke_projection(), m, drive.relative(tau), post(r)?));
            }
        }
    }
    Ok(RunOutput {
        config: config.clone(),
        rows,
    })
}

/// Fixed CSV number format: 17 significant digits.
pub fn fmt_num(x: f64) -> String {
    format!("{x:.16e}")
}

impl RunOutput {
    pub fn columns(&self) -> Vec<&'static str> {
        let mut cols = CSV_COLUMNS.to_vec();
        if self.config.postselect {
            cols.extend(POSTSELECTED_COLUMNS);
        }
        cols
    }

    pub fn to_csv(&self) -> String {
        let cols = self.columns();
        let mut out = cols.join(",");
        out.push('\n');
        for row in &self.rows {
            for (i, c) in cols.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                if *c == "postselected.degenerate" {
                    let flag = row.postselected.map(|p| p.degenerate).unwrap_or(false);
                    out.push_str(if flag { "1" } else { "0" });
                } else {
                    let _ = write!(out, "{}", fmt_num(row.get(c).unwrap_or(f64::NAN)));
                }
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Doc<'a> {
            config: &'a RunConfig,
            rows: &'a [Row],
        }
        serde_json::to_string_pretty(&Doc {
            config: &self.config,
            rows: &self.rows,
        })
        .expect("rows serialize")
    }

    pub fn last(&self) -> Option<&Row> {
        self.rows.last()
    }

    /// Sample closest to `tau`.
    pub fn at(&self, tau: f64) -> Option<&Row> {
        self.rows
            .iter()
            .min_by(|a, b| (a.tau - tau).abs().total_cmp(&(b.tau - tau).abs()))
    }

    /// Values of one column, or `None` for an unknown name.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        self.rows.iter().map(|r| r.get(name)).collect()
    }

    /// True when no state variable moves by more than `tol` over the final
    /// `window` of the run. Runs shorter than `window` are never steady.
    pub fn is_steady(&self, window: f64, tol: f64) -> bool {
        let Some(last) = self.last() else {
            return false;
        };
        if last.tau - self.rows[0].tau < window {
            return false;
        }
        let target = last.state_vector();
        self.rows
            .iter()
            .filter(|r| r.tau >= last.tau - window)
            .all(|r| {
                r.state_vector()
                    .iter()
                    .zip(&target)
                    .all(|(a, b)| (a - b).abs() <= tol)
            })
    }
}
