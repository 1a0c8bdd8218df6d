//! Experiment runner: configured runs, presets, sweeps and comparisons.
//!
//! The `detune` binary is a thin wrapper around [`main_with_args`]. Exit
//! codes: 0 success, 1 usage or configuration error, 2 numerical failure,
//! 3 comparison above threshold.

pub mod compare;
pub mod config;
pub mod presets;
pub mod run;
pub mod sweep;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use compare::{compare, CompareOptions, CompareReport};
pub use config::{InitialState, ModelChoice, NamedState, Outputs, RunConfig};
pub use presets::{catalog, find as find_preset, Preset};
pub use run::{run, Row, RunOutput};
pub use sweep::{sweep, Axis, SweepConfig, SweepTable};

use crate::error::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NUMERIC: i32 = 2;
pub const EXIT_THRESHOLD: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "detune", version, about = "Two-qubit entanglement under detuning modulation in a leaky cavity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct Overrides {
    /// Override the integration step.
    #[arg(long)]
    dtau: Option<f64>,
    /// Override the final time.
    #[arg(long = "tau-end")]
    tau_end: Option<f64>,
}

impl Overrides {
    fn apply(&self, c: &mut RunConfig) {
        if let Some(d) = self.dtau {
            c.dtau = d;
        }
        if let Some(t) = self.tau_end {
            c.tau_end = t;
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Integrate one configuration or preset.
    Run {
        #[arg(long, conflicts_with = "preset", required_unless_present = "preset")]
        config: Option<PathBuf>,
        #[arg(long)]
        preset: Option<String>,
        /// Directory for output files (stdout otherwise).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Run a parameter grid and tabulate final-time metrics.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Compare two runs on a shared tau grid. Give two sources; presets come
    /// before configs when both flags are used.
    Compare {
        #[arg(long)]
        preset: Vec<String>,
        #[arg(long)]
        config: Vec<PathBuf>,
        #[arg(long, default_value = "concurrence_clamped")]
        metric: String,
        /// Exit with status 3 if the metric's max difference is not below this.
        #[arg(long)]
        threshold: Option<f64>,
        #[arg(long = "tau-min", default_value_t = 0.0)]
        tau_min: f64,
        /// Directory for the per-tau difference table.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// List the named presets.
    Presets {
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Numeric(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Config(_) | Error::InvalidParams(_) => Failure::Usage(e.to_string()),
            _ => Failure::Numeric(e.to_string()),
        }
    }
}

fn io_err(path: &Path, e: std::io::Error) -> Failure {
    Failure::Usage(format!("{}: {e}", path.display()))
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| io_err(path, e))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    }
    fs::write(path, text).map_err(|e| io_err(path, e))
}

fn load(path: &Path) -> Result<RunConfig, Failure> {
    RunConfig::from_json(&read(path)?)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "run".into())
}

fn run_command(cli: Cli) -> Result<i32, Failure> {
    match cli.command {
        Command::Run {
            config,
            preset,
            out,
            format,
            overrides,
        } => {
            let (name, mut cfg) = match (config, preset) {
                (Some(path), _) => (stem(&path), load(&path)?),
                (None, Some(p)) => {
                    let p = find_preset(&p)?;
                    (p.name.to_string(), p.config)
                }
                (None, None) => return Err(Failure::Usage("give --config or --preset".into())),
            };
            overrides.apply(&mut cfg);
            let output = run(&cfg)?;
            let text = match format {
                Format::Csv => output.to_csv(),
                Format::Json => output.to_json(),
            };
            let ext = if format == Format::Csv { "csv" } else { "json" };
            match out {
                Some(dir) => write(&dir.join(format!("{name}.{ext}")), &text)?,
                None if cfg.outputs.csv.is_some() || cfg.outputs.json.is_some() => {
                    if let Some(p) = &cfg.outputs.csv {
                        write(p, &output.to_csv())?;
                    }
                    if let Some(p) = &cfg.outputs.json {
                        write(p, &output.to_json())?;
                    }
                }
                None => print!("{text}"),
            }
            Ok(EXIT_OK)
        }
        Command::Sweep {
            config,
            out,
            overrides,
        } => {
            let mut cfg = SweepConfig::from_json(&read(&config)?)
                .map_err(|e| Failure::Usage(format!("{}: {e}", config.display())))?;
            overrides.apply(&mut cfg.base);
            let table = sweep(&cfg)?;
            match out {
                Some(dir) => write(&dir.join(format!("{}.csv", stem(&config))), &table.to_csv())?,
                None => print!("{}", table.to_csv()),
            }
            Ok(EXIT_OK)
        }
        Command::Compare {
            preset,
            config,
            metric,
            threshold,
            tau_min,
            out,
            overrides,
        } => {
            let mut sources = Vec::new();
            for p in &preset {
                sources.push(find_preset(p)?.config);
            }
            for c in &config {
                sources.push(load(c)?);
            }
            if sources.len() != 2 {
                return Err(Failure::Usage(format!(
                    "compare needs exactly two runs, got {}",
                    sources.len()
                )));
            }
            for s in &mut sources {
                overrides.apply(s);
            }
            let a = run(&sources[0])?;
            let b = run(&sources[1])?;
            let opts = CompareOptions {
                metric,
                threshold,
                tau_min,
            };
            let report = compare(&a, &b, &opts)?;
            print!("{}", report.summary_text());
            if let Some(dir) = out {
                write(&dir.join("compare.csv"), &report.to_csv())?;
            }
            Ok(match report.passed() {
                Some(false) => EXIT_THRESHOLD,
                _ => EXIT_OK,
            })
        }
        Command::Presets { format } => {
            let cat = catalog();
            match format {
                Some(Format::Json) => {
                    println!("{}", serde_json::to_string_pretty(&cat).expect("catalog serializes"))
                }
                Some(Format::Csv) => {
                    println!("name,description");
                    for p in &cat {
                        println!("{},\"{}\"", p.name, p.description.replace('"', "'"));
                    }
                }
                None => {
                    let width = cat.iter().map(|p| p.name.len()).max().unwrap_or(0);
                    for p in &cat {
                        println!("{:width$}  {}", p.name, p.description);
                    }
                }
            }
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args` (including the program name), executes the command and
/// returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match run_command(cli) {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Numeric(m)) => {
            eprintln!("numerical failure: {m}");
            EXIT_NUMERIC
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn usage_errors_exit_1() {
        assert_eq!(main_with_args(["detune", "frobnicate"]), EXIT_USAGE);
        assert_eq!(main_with_args(["detune", "run", "--preset", "nope"]), EXIT_USAGE);
        assert_eq!(main_with_args(["detune", "compare", "--preset", "fig2"]), EXIT_USAGE);
    }
}
