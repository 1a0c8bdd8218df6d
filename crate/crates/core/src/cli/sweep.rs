//! Grid sweeps over fields of a base [`RunConfig`].

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::config::RunConfig;
use super::run::{fmt_num, run};
use crate::error::{Error, Result};

pub const MAX_GRID: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Axis {
    /// Dot-separated path into the run config, e.g. `schedule.heaviside.tau0`
    /// or `params.nbar`.
    pub path: String,
    pub values: Vec<Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub base: RunConfig,
    pub axes: Vec<Axis>,
    /// Columns reported at `tau_end`.
    #[serde(default = "default_reduce")]
    pub reduce: Vec<String>,
    /// Trailing window for the steadiness flag.
    #[serde(default = "default_window")]
    pub steady_window: f64,
    /// Largest change of any Dicke variable over the window.
    #[serde(default = "default_tol")]
    pub steady_tol: f64,
    #[serde(default = "default_max")]
    pub max_points: usize,
}

fn default_reduce() -> Vec<String> {
    ["concurrence_clamped", "concurrence_relaxed", "f_s", "f_a", "p_down"]
        .map(String::from)
        .to_vec()
}

fn default_window() -> f64 {
    2.0
}

fn default_tol() -> f64 {
    1e-4
}

fn default_max() -> usize {
    MAX_GRID
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub point: Vec<Value>,
    pub steady: bool,
    /// `reduce` values in order; empty when the run failed.
    pub values: Vec<f64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone)]
pub struct SweepTable {
    pub axes: Vec<String>,
    pub reduce: Vec<String>,
    pub rows: Vec<SweepRow>,
}

fn cmp_values(a: &Value, b: &Value) -> Ordering {
    match (a.as_f64(), b.as_f64()) {
        (Some(x), Some(y)) => x.total_cmp(&y),
        // numbers first, then everything else by its JSON text
        (Some(_), None) => Ordering::Less,
        (None, Some(_)) => Ordering::Greater,
        (None, None) => a.to_string().cmp(&b.to_string()),
    }
}

/// Sets `path` in `doc`; every segment but the last must already exist.
pub fn set_path(doc: &mut Value, path: &str, value: Value) -> Result<()> {
    let segs: Vec<&str> = path.split('.').collect();
    let mut cur = doc;
    for (i, seg) in segs.iter().enumerate() {
        let last = i + 1 == segs.len();
        cur = match cur {
            Value::Object(map) => {
                if last {
                    map.insert(seg.to_string(), value);
                    return Ok(());
                }
                map.get_mut(*seg)
            }
            Value::Array(items) => {
                let idx: usize = seg
                    .parse()
                    .map_err(|_| Error::Config(format!("`{path}`: `{seg}` is not an index")))?;
                if last {
                    let slot = items
                        .get_mut(idx)
                        .ok_or_else(|| Error::Config(format!("`{path}`: index {idx} out of range")))?;
                    *slot = value;
                    return Ok(());
                }
                items.get_mut(idx)
            }
            _ => None,
        }
        .ok_or_else(|| Error::Config(format!("`{path}`: no field `{seg}` in base config")))?;
    }
    Err(Error::Config("empty axis path".into()))
}

impl SweepConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.axes.is_empty() {
            return Err(Error::Config("sweep needs at least one axis".into()));
        }
        if self.axes.iter().any(|a| a.values.is_empty()) {
            return Err(Error::Config("sweep axis without values".into()));
        }
        let n = self.grid_size();
        if n > self.max_points {
            return Err(Error::Config(format!(
                "grid has {n} points, above the limit of {}",
                self.max_points
            )));
        }
        self.base.validate()
    }

    pub fn grid_size(&self) -> usize {
        self.axes.iter().map(|a| a.values.len()).product()
    }

    /// Grid points in lexicographic order of the (sorted) axis values.
    pub fn points(&self) -> Vec<Vec<Value>> {
        let sorted: Vec<Vec<Value>> = self
            .axes
            .iter()
            .map(|a| {
                let mut v = a.values.clone();
                v.sort_by(cmp_values);
                v
            })
            .collect();
        let mut pts = vec![Vec::new()];
        for vals in &sorted {
            pts = pts
                .into_iter()
                .flat_map(|p| {
                    vals.iter().map(move |v| {
                        let mut q = p.clone();
                        q.push(v.clone());
                        q
                    })
                })
                .collect();
        }
        pts
    }

    fn config_at(&self, point: &[Value]) -> Result<RunConfig> {
        let mut doc = serde_json::to_value(&self.base).map_err(|e| Error::Config(e.to_string()))?;
        for (axis, v) in self.axes.iter().zip(point) {
            set_path(&mut doc, &axis.path, v.clone())?;
        }
        RunConfig::from_value(doc)
    }

    fn evaluate(&self, point: Vec<Value>) -> SweepRow {
        let outcome = self.config_at(&point).and_then(|c| run(&c)).and_then(|out| {
            let last = out.last().ok_or_else(|| Error::Config("empty run".into()))?;
            let values = self
                .reduce
                .iter()
                .map(|name| {
                    last.get(name)
                        .ok_or_else(|| Error::Config(format!("unknown reduce column `{name}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((out.is_steady(self.steady_window, self.steady_tol), values))
        });
        match outcome {
            Ok((steady, values)) => SweepRow {
                point,
                steady,
                values,
                error: None,
            },
            Err(e) => SweepRow {
                point,
                steady: false,
                values: Vec::new(),
                error: Some(e.to_string()),
            },
        }
    }
}

/// Runs every grid point (in parallel); rows come back in grid order.
/// Failing points are kept with their error message.
pub fn sweep(config: &SweepConfig) -> Result<SweepTable> {
    config.validate()?;
    let rows = config
        .points()
        .into_par_iter()
        .map(|p| config.evaluate(p))
        .collect();
    Ok(SweepTable {
        axes: config.axes.iter().map(|a| a.path.clone()).collect(),
        reduce: config.reduce.clone(),
        rows,
    })
}

impl SweepTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let mut header: Vec<String> = self.axes.clone();
        header.extend(self.reduce.iter().cloned());
        header.push("steady".into());
        header.push("error".into());
        out.push_str(&header.join(","));
        out.push('\n');
        for r in &self.rows {
            let mut cells: Vec<String> = r
                .point
                .iter()
                .map(|v| match v.as_f64() {
                    Some(x) => fmt_num(x),
                    None => v.to_string().replace(',', ";"),
                })
                .collect();
            if r.values.is_empty() {
                cells.extend(self.reduce.iter().map(|_| "NaN".to_string()));
            } else {
                cells.extend(r.values.iter().map(|&x| fmt_num(x)));
            }
            cells.push(u8::from(r.steady).to_string());
            cells.push(r.error.as_deref().unwrap_or("").replace([',', '\n'], ";"));
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// Values of one reduce column, NaN for failed points.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.reduce.iter().position(|r| r == name)?;
        Some(
            self.rows
                .iter()
                .map(|r| r.values.get(i).copied().unwrap_or(f64::NAN))
                .collect(),
        )
    }
}
