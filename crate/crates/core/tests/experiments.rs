use fracstep::experiments::{
    cmd_coeff_sweep, cmd_decay, cmd_scalar_convergence, cmd_table1, cmd_table2, round_sig6, Cell,
    CommandKind, ExperimentConfig, Format, Report,
};
use fracstep::Execution;
use proptest::prelude::*;

fn cfg(text: &str) -> ExperimentConfig {
    ExperimentConfig::from_toml_str(text).unwrap()
}

#[test]
fn csv_round_trip() {
    let out = cmd_coeff_sweep(&cfg("alpha = 0.3\nsteps = 50"), Execution::Parallel).unwrap();
    let text = out.report.to_csv().unwrap();
    let back = Report::from_csv(&text).unwrap();
    assert_eq!(back, out.report);
    assert_eq!(back.to_csv().unwrap(), text);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let c = cfg("alpha = 0.25\nsteps = 5");
    let a = cmd_table1(&c, Execution::Parallel).unwrap().report.to_csv().unwrap();
    let b = cmd_table1(&c, Execution::Sequential).unwrap().report.to_csv().unwrap();
    assert_eq!(a, b);
}

#[test]
fn table1_row_filter_and_columns() {
    let out = cmd_table1(&cfg("alpha = 0.75\nsteps = 100"), Execution::Parallel).unwrap();
    assert_eq!(out.report.rows.len(), 2);
    assert!(out.all_pass);
    for name in ["err_main", "err_main_ref", "rel_cmp", "dist_f", "stability", "pass"] {
        assert!(out.report.column(name).is_some(), "{name}");
    }
    assert_eq!(out.report.get(0, "err_main_ref"), Some(&Cell::Float(7.98e-6)));
}

#[test]
fn tight_tolerance_fails_rows() {
    let out = cmd_table1(&cfg("alpha = 0.25\nsteps = 100\ntolerance-factor = 1.0001"), Execution::Parallel)
        .unwrap();
    assert!(!out.all_pass);
}

#[test]
fn table2_filtered_json_field_names() {
    let out = cmd_table2(
        &cfg("alpha = 0.25\nsteps = 5\ncomparison-steps = 5\ninitial-data = \"sine\""),
        Execution::Parallel,
    )
    .unwrap();
    assert_eq!(out.report.rows.len(), 1);
    assert!(out.all_pass);
    let json: serde_json::Value = serde_json::from_str(&out.report.to_json()).unwrap();
    let obj = json[0].as_object().unwrap();
    let keys: Vec<&str> = obj.keys().map(String::as_str).collect();
    assert_eq!(
        keys,
        ["row", "f", "alpha", "N", "M", "spatial", "diff", "diff_ref", "stability", "monotone", "phi0_star", "pass"]
    );
    assert_eq!(obj["phi0_star"], serde_json::json!(round_sig6(std::f64::consts::FRAC_PI_4)));
}

#[test]
fn config_file_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.toml");
    std::fs::write(&path, "alpha = 0.5\nsteps = 64\nformat = \"json\"\nlambda = -2.0\n").unwrap();
    let base = ExperimentConfig::from_file(&path).unwrap();
    assert_eq!(base.format, Some(Format::Json));
    let merged = base.overridden_by(ExperimentConfig {
        steps: Some(32),
        ..Default::default()
    });
    assert_eq!((merged.alpha, merged.steps, merged.lambda), (Some(0.5), Some(32), Some(-2.0)));

    assert!(ExperimentConfig::from_toml_str("unknown-key = 1").is_err());
    assert!(ExperimentConfig::from_file(&dir.path().join("missing.toml")).is_err());
}

#[test]
fn scalar_commands_pass() {
    let c = cfg("alpha = 0.5\nsteps = 128");
    let conv = cmd_scalar_convergence(&c, Execution::Parallel).unwrap();
    assert!(conv.all_pass);
    assert_eq!(conv.report.get(0, "order"), Some(&Cell::Empty));
    let decay = cmd_decay(&cfg("alpha = 0.5\nsteps = 200"), Execution::Parallel).unwrap();
    assert!(decay.all_pass);
    assert_eq!(decay.report.rows.len(), 3);
}

#[test]
fn command_names() {
    let names: Vec<&str> = [
        CommandKind::Table1,
        CommandKind::Table2,
        CommandKind::ScalarConvergence,
        CommandKind::Decay,
        CommandKind::CoeffSweep,
        CommandKind::Lemma41Sweep,
    ]
    .iter()
    .map(|k| k.name())
    .collect();
    assert_eq!(names, ["table1", "table2", "scalar-convergence", "decay", "coeff-sweep", "lemma41-sweep"]);
}

proptest! {
    #[test]
    fn sig6_round_trips(x in proptest::num::f64::NORMAL) {
        let r = round_sig6(x);
        prop_assert_eq!(round_sig6(r), r);
        prop_assert_eq!(format!("{r:.5e}").parse::<f64>().unwrap(), r);
        prop_assert!(((r - x) / x).abs() <= 5e-6);
    }
}
