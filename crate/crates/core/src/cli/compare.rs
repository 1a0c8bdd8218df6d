//! Sample-by-sample comparison of two runs.

use super::run::{fmt_num, RunOutput};
use crate::error::{Error, Result};

/// Largest tau mismatch accepted between the two grids.
const GRID_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct CompareOptions {
    /// Column tested against `threshold`.
    pub metric: String,
    pub threshold: Option<f64>,
    /// Only samples with `tau >= tau_min` enter the maxima.
    pub tau_min: f64,
}

impl Default for CompareOptions {
    fn default() -> Self {
        Self {
            metric: "concurrence_clamped".into(),
            threshold: None,
            tau_min: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ColumnDiff {
    pub column: String,
    pub max_abs_diff: f64,
    pub tau_at_max: f64,
}

#[derive(Debug, Clone)]
pub struct CompareReport {
    pub columns: Vec<String>,
    pub taus: Vec<f64>,
    /// `diffs[k][c]` is `a - b` for sample `k` and column `c`.
    pub diffs: Vec<Vec<f64>>,
    pub summary: Vec<ColumnDiff>,
    pub metric: String,
    pub threshold: Option<f64>,
}

impl CompareReport {
    pub fn max_diff(&self, column: &str) -> Option<f64> {
        self.summary
            .iter()
            .find(|d| d.column == column)
            .map(|d| d.max_abs_diff)
    }

    /// `None` without a threshold.
    pub fn passed(&self) -> Option<bool> {
        let t = self.threshold?;
        Some(self.max_diff(&self.metric).is_some_and(|d| d < t))
    }

    pub fn to_csv(&self) -> String {
        let mut out = format!("tau,{}\n", self.columns.join(","));
        for (tau, row) in self.taus.iter().zip(&self.diffs) {
            out.push_str(&fmt_num(*tau));
            for d in row {
                out.push(',');
                out.push_str(&fmt_num(*d));
            }
            out.push('\n');
        }
        out
    }

    pub fn summary_text(&self) -> String {
        let mut s = String::from("column,max_abs_diff,tau_at_max\n");
        for d in &self.summary {
            s.push_str(&format!("{},{},{}\n", d.column, fmt_num(d.max_abs_diff), fmt_num(d.tau_at_max)));
        }
        if let (Some(t), Some(ok)) = (self.threshold, self.passed()) {
            s.push_str(&format!(
                "{} max diff {} vs threshold {}: {}\n",
                self.metric,
                fmt_num(self.max_diff(&self.metric).unwrap_or(f64::NAN)),
                t,
                if ok { "PASS" } else { "FAIL" }
            ));
        }
        s
    }
}

/// Differences of every shared column. The runs must share their tau grid.
pub fn compare(a: &RunOutput, b: &RunOutput, opts: &CompareOptions) -> Result<CompareReport> {
    let grid_ok = a.rows.len() == b.rows.len()
        && a.rows.iter().zip(&b.rows).all(|(x, y)| (x.tau - y.tau).abs() <= GRID_TOL);
    if !grid_ok {
        return Err(Error::Config(format!(
            "tau grids differ ({} vs {} samples); use equal tau_end, dtau and sample_stride",
            a.rows.len(),
            b.rows.len()
        )));
    }
    let b_cols = b.columns();
    let columns: Vec<String> = a
        .columns()
        .into_iter()
        .filter(|c| *c != "tau" && *c != "postselected.degenerate" && b_cols.contains(c))
        .map(String::from)
        .collect();
    if !columns.contains(&opts.metric) {
        return Err(Error::Config(format!("metric `{}` is not a shared column", opts.metric)));
    }
    let taus: Vec<f64> = a.rows.iter().map(|r| r.tau).collect();
    let diffs: Vec<Vec<f64>> = a
        .rows
        .iter()
        .zip(&b.rows)
        .map(|(x, y)| {
            columns
                .iter()
                .map(|c| x.get(c).unwrap_or(f64::NAN) - y.get(c).unwrap_or(f64::NAN))
                .collect()
        })
        .collect();
    let summary = columns
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let (tau_at_max, max_abs_diff) = taus
                .iter()
                .zip(&diffs)
                .filter(|(t, _)| **t >= opts.tau_min)
                .map(|(t, d)| (*t, d[i].abs()))
                .fold((f64::NAN, 0.0), |acc, x| if x.1 > acc.1 || acc.0.is_nan() { x } else { acc });
            ColumnDiff {
                column: c.clone(),
                max_abs_diff,
                tau_at_max,
            }
        })
        .collect();
    Ok(CompareReport {
        columns,
        taus,
        diffs,
        summary,
        metric: opts.metric.clone(),
        threshold: opts.threshold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::config::RunConfig;
    use crate::cli::run::run;
    use crate::params::SystemParams;
    use crate::schedule::DetuningSchedule;

    fn cfg(tau0: f64, tau_end: f64) -> RunConfig {
        let mut c = RunConfig::new(SystemParams::new(0.3), DetuningSchedule::heaviside(10.0, tau0), tau_end);
        c.dtau = 1e-2;
        c
    }

    #[test]
    fn identical_runs_have_zero_difference() {
        let a = run(&cfg(1.0, 3.0)).unwrap();
        let opts = CompareOptions {
            threshold: Some(1e-15),
            ..Default::default()
        };
        let r = compare(&a, &a, &opts).unwrap();
        assert_eq!(r.max_diff("p_s"), Some(0.0));
        assert_eq!(r.passed(), Some(true));
    }

    #[test]
    fn threshold_and_tau_min() {
        let a = run(&cfg(1.0, 3.0)).unwrap();
        let b = run(&cfg(2.0, 3.0)).unwrap();
        let mut opts = CompareOptions {
            metric: "delta_value".into(),
            threshold: Some(1.0),
            tau_min: 0.0,
        };
        let r = compare(&a, &b, &opts).unwrap();
        assert_eq!(r.max_diff("delta_value"), Some(10.0));
        assert_eq!(r.passed(), Some(false));
        opts.tau_min = 2.0;
        let r = compare(&a, &b, &opts).unwrap();
        assert_eq!(r.max_diff("delta_value"), Some(0.0));
        assert!(r.to_csv().starts_with("tau,p_up,"));
    }

    #[test]
    fn grid_mismatch_is_an_error() {
        let a = run(&cfg(1.0, 3.0)).unwrap();
        let b = run(&cfg(1.0, 2.0)).unwrap();
        assert!(compare(&a, &b, &CompareOptions::default()).is_err());
    }
}
