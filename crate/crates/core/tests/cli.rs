//! End-to-end checks of the `detune` binary and the runner API.

use std::path::Path;
use std::process::{Command, Output};

use detune::cli::{self, RunConfig, SweepConfig};

fn detune(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_detune"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

const SHORT: &str = r#"{
    "schedule": {"heaviside": {"amplitude": 10.0, "tau0": 2.5}},
    "params": {"g_over_kappa": 0.3},
    "tau_end": 5.0,
    "dtau": 0.01,
    "postselect": true
}"#;

#[test]
fn presets_catalog() {
    let out = detune(&["presets"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().count() >= 10);
    for name in ["fig2", "fig3", "fig3-tau0-1.5", "fig3-tau0-3.5", "fig4", "fig6", "fig8", "decay25", "oracle-g01"] {
        assert!(text.lines().any(|l| l.starts_with(name)), "{name}");
    }
    let json = detune(&["presets", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), cli::catalog().len());
}

#[test]
fn run_config_to_csv_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "short.json", SHORT);
    let out_dir = dir.path().join("out");
    let out = out_dir.to_string_lossy();
    assert!(detune(&["run", "--config", &cfg, "--out", &out]).status.success());
    let csv = std::fs::read_to_string(out_dir.join("short.csv")).unwrap();
    let header = csv.lines().next().unwrap();
    assert_eq!(
        header,
        "tau,p_up,p_s,p_a,p_down,re_csa,im_csa,concurrence_clamped,concurrence_relaxed,f_s,f_a,negativity,purity,delta_value,\
postselected.success_prob,postselected.concurrence_clamped,postselected.concurrence_relaxed,postselected.f_s,postselected.degenerate"
    );
    // 500 steps, stride 10, plus the initial sample
    assert_eq!(csv.lines().count(), 52);
    let first: Vec<&str> = csv.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(first[1], "1.0000000000000000e0");

    assert!(detune(&["run", "--config", &cfg, "--out", &out, "--format", "json"]).status.success());
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out_dir.join("short.json")).unwrap()).unwrap();
    assert_eq!(doc["rows"].as_array().unwrap().len(), 51);
    assert_eq!(doc["config"]["params"]["g_over_kappa"], 0.3);
}

#[test]
fn overrides_apply() {
    let out = detune(&["run", "--preset", "fig2", "--tau-end", "1", "--dtau", "0.01"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    // 100 steps, stride 10
    assert_eq!(text.lines().count(), 12);
    assert!(text.lines().last().unwrap().starts_with("1.0000000000000000e0,"));
}

#[test]
fn config_outputs_field_is_honoured() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("nested").join("result.csv");
    let text = SHORT.replace(
        "\"postselect\": true",
        &format!("\"postselect\": false, \"outputs\": {{\"csv\": {:?}}}", target.to_string_lossy()),
    );
    let cfg = write(dir.path(), "with_outputs.json", &text);
    assert!(detune(&["run", "--config", &cfg]).status.success());
    assert!(std::fs::read_to_string(target).unwrap().starts_with("tau,"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    // usage
    assert_eq!(detune(&["run"]).status.code(), Some(1));
    let typo = write(dir.path(), "typo.json", &SHORT.replace("tau_end", "tau_ned"));
    let out = detune(&["run", "--config", &typo]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("tau_ned") && err.contains("line"), "{err}");
    // numeric: the thermal tail does not fit into a single Fock level
    let tail = write(
        dir.path(),
        "tail.json",
        r#"{"model": "full", "nmax": 1, "params": {"g_over_kappa": 0.1, "nbar": 0.06}, "tau_end": 1.0}"#,
    );
    assert_eq!(detune(&["run", "--config", &tail]).status.code(), Some(2));
    // threshold
    let args = ["compare", "--preset", "fig5-heaviside", "--preset", "fig5-sigmoid", "--tau-min", "10"];
    let strict = [&args[..], &["--threshold", "0.001"]].concat();
    assert_eq!(detune(&strict).status.code(), Some(3));
    let loose = [&args[..], &["--threshold", "0.5"]].concat();
    assert_eq!(detune(&loose).status.code(), Some(0));
}

#[test]
fn compare_bloch_and_reduced_models() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.json", SHORT);
    let b = write(dir.path(), "b.json", &SHORT.replace("\"postselect\"", "\"model\": \"reduced\", \"postselect\""));
    let out_dir = dir.path().join("cmp");
    let out = detune(&[
        "compare",
        "--config",
        &a,
        "--config",
        &b,
        "--threshold",
        "1e-6",
        "--out",
        &out_dir.to_string_lossy(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let table = std::fs::read_to_string(out_dir.join("compare.csv")).unwrap();
    assert!(table.starts_with("tau,p_up,"));
    // grids of different length are refused
    let c = write(dir.path(), "c.json", &SHORT.replace("5.0", "4.0"));
    assert_eq!(detune(&["compare", "--config", &a, "--config", &c]).status.code(), Some(1));
}

#[test]
fn sweep_over_switch_time() {
    let dir = tempfile::tempdir().unwrap();
    let text = r#"{
        "base": {
            "schedule": {"heaviside": {"amplitude": 10.0, "tau0": 2.5}},
            "params": {"g_over_kappa": 0.3},
            "tau_end": 60.0
        },
        "axes": [{"path": "schedule.heaviside.tau0", "values": [3.5, 2.5, 1.5, "bad"]}],
        "reduce": ["concurrence_clamped", "f_s"]
    }"#;
    let cfg = write(dir.path(), "tau0.json", text);
    let out = detune(&["sweep", "--config", &cfg]);
    assert!(out.status.success());
    let csv = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "schedule.heaviside.tau0,concurrence_clamped,f_s,steady,error");
    assert_eq!(lines.len(), 5);
    let c: Vec<f64> = lines[1..4]
        .iter()
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    // rows sorted by tau0: 1.5, 2.5, 3.5
    assert!(lines[1].starts_with("1.5000000000000000e0,"));
    assert!(c[1] > c[0] && c[1] > c[2], "{c:?}");
    assert!(lines[1..4].iter().all(|l| l.ends_with(",1,")));
    // the string value fails to parse as a number and is reported, not fatal
    assert!(lines[4].starts_with("\"bad\",NaN,NaN,0,"));
}

#[test]
fn amplitude_sweep_matches_sin_squared_law() {
    let base = cli::find_preset("fig3").unwrap().config;
    let cfg = SweepConfig {
        base: RunConfig { tau_end: 60.0, ..base },
        axes: vec![cli::Axis {
            path: "schedule.heaviside.amplitude".into(),
            values: vec![8.0.into(), 10.0.into(), 12.0.into()],
        }],
        reduce: vec!["concurrence_clamped".into()],
        steady_window: 2.0,
        steady_tol: 1e-4,
        max_points: 100,
    };
    let table = cli::sweep(&cfg).unwrap();
    let c = table.column("concurrence_clamped").unwrap();
    let ps = (-1.0f64).exp();
    for (a, c) in [8.0f64, 10.0, 12.0].iter().zip(&c) {
        assert!((c - ps * (a / 2.0).sin().powi(2)).abs() < 1e-4, "A = {a}: {c}");
    }
}

#[test]
fn config_round_trip_is_canonical() {
    for p in cli::catalog() {
        let text = p.config.to_json();
        let back = RunConfig::from_json(&text).unwrap();
        assert_eq!(back, p.config, "{}", p.name);
        assert_eq!(back.to_json(), text);
    }
}

#[test]
fn identical_configs_give_identical_bytes() {
    let cfg = RunConfig::from_json(SHORT).unwrap();
    let a = cli::run(&cfg).unwrap().to_csv();
    let b = cli::run(&cfg).unwrap().to_csv();
    assert_eq!(a, b);
}
