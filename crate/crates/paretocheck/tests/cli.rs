use std::path::Path;
use std::process::{Command, Output};

use paretocheck_core::DistributionModel;

fn paretocheck(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_paretocheck"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write_fixture(dir: &Path) -> std::path::PathBuf {
    let path = dir.join("lognormal.csv");
    let out = paretocheck(
        &[
            "synth",
            "--model",
            "lognormal",
            "--n",
            "500",
            "--seed",
            "2",
            "--output",
            "lognormal.csv",
        ],
        dir,
    );
    assert!(out.status.success(), "{}", stderr(&out));
    path
}

#[test]
fn classify_lognormal_fixture() {
    let dir = tempfile::tempdir().unwrap();
    write_fixture(dir.path());
    let out = paretocheck(&["classify", "lognormal.csv"], dir.path());
    assert!(out.status.success(), "{}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["input"]["n"], 500);
    let zone = doc["zone"].as_str().unwrap();
    assert!(zone == "Lognormal" || zone == "Gray", "{zone}");
    assert_ne!(doc["label"], "ParetianConsistent");
    assert!(doc.get("aggregation_stability").is_none());
}

#[test]
fn classify_matches_the_library() {
    use paretocheck_core::diagnostics::{verdict, VerdictConfig};
    let dir = tempfile::tempdir().unwrap();
    write_fixture(dir.path());
    let out = paretocheck(&["classify", "lognormal.csv", "--aggregation"], dir.path());
    assert!(out.status.success(), "{}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let v = verdict(
        &DistributionModel::Lognormal {
            mu: 0.0,
            sigma: 1.0,
        }
        .sample(500, 2)
        .unwrap(),
        &VerdictConfig::default(),
    )
    .unwrap();
    assert_eq!(
        doc["moment_point"]["cv"].as_f64().unwrap(),
        v.moment_point.cv
    );
    assert_eq!(
        doc["zipf_tail_linear"]["slope"].as_f64().unwrap(),
        v.zipf_tail_linear.slope
    );
    assert_eq!(doc["label"], v.label.name());
    assert!(doc["aggregation_stability"]["applicable"].is_boolean());
}

#[test]
fn synth_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let args = |out: &'static str| {
        vec![
            "synth", "--model", "pareto1", "--x0", "10", "--alpha", "2.5", "--n", "500", "--seed",
            "7", "--output", out,
        ]
    };
    assert!(paretocheck(&args("a.csv"), dir.path()).status.success());
    assert!(paretocheck(&args("b.csv"), dir.path()).status.success());
    let a = std::fs::read(dir.path().join("a.csv")).unwrap();
    let b = std::fs::read(dir.path().join("b.csv")).unwrap();
    assert_eq!(a, b);
    assert_eq!(String::from_utf8(a).unwrap().lines().count(), 501);
}

#[test]
fn empty_csv_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("empty.csv"), "").unwrap();
    let out = paretocheck(&["zipf", "empty.csv"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("no usable observations"));
    assert!(!dir.path().join("empty.zipf.svg").exists());
}

#[test]
fn error_kinds_have_distinct_messages() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.csv"), "value\n1.5\nabc\n").unwrap();

    let bad = paretocheck(&["classify", "bad.csv"], dir.path());
    assert_eq!(bad.status.code(), Some(2));
    assert!(
        stderr(&bad).contains("non-numeric value \"abc\""),
        "{}",
        stderr(&bad)
    );

    let missing = paretocheck(&["classify", "nowhere.csv"], dir.path());
    assert_eq!(missing.status.code(), Some(2));
    assert!(stderr(&missing).contains("cannot read"));

    let unknown = paretocheck(&["histogram", "bad.csv"], dir.path());
    assert_eq!(unknown.status.code(), Some(3));
    assert!(stderr(&unknown).contains("unrecognized subcommand"));

    let column = paretocheck(&["classify", "bad.csv", "--column", "income"], dir.path());
    assert_eq!(column.status.code(), Some(3));
    assert!(stderr(&column).contains("column \"income\" not found"));
}

#[test]
fn plot_commands_write_figure_and_series() {
    let dir = tempfile::tempdir().unwrap();
    write_fixture(dir.path());
    for cmd in ["zipf", "meplot", "zenga"] {
        let out = paretocheck(&[cmd, "lognormal.csv"], dir.path());
        assert!(out.status.success(), "{cmd}: {}", stderr(&out));
        let svg = std::fs::read_to_string(dir.path().join(format!("lognormal.{cmd}.svg"))).unwrap();
        let csv = std::fs::read_to_string(dir.path().join(format!("lognormal.{cmd}.csv"))).unwrap();
        let rows = csv.lines().count() - 1;
        assert_eq!(svg.matches("class=\"marker\"").count(), rows, "{cmd}");
    }
    let out = paretocheck(
        &[
            "mrplot",
            "lognormal.csv",
            "--bootstrap",
            "40",
            "--figure",
            "m.svg",
            "--json",
            "m.json",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("m.json")).unwrap()).unwrap();
    assert_eq!(doc["bootstrap"]["resamples"], 40);
    assert_eq!(doc["seed"], 42);
    let svg = std::fs::read_to_string(dir.path().join("m.svg")).unwrap();
    assert_eq!(svg.matches("class=\"marker\"").count(), 41);
}

#[test]
fn power_table_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = paretocheck(
        &[
            "power",
            "--model",
            "lognormal",
            "--n",
            "300",
            "--trials",
            "100",
            "--seed",
            "5",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let expected = paretocheck_core::powerstudy::classification_error_rates(
        &DistributionModel::Lognormal {
            mu: 0.0,
            sigma: 1.0,
        },
        300,
        100,
        5,
        Default::default(),
    )
    .unwrap();
    assert_eq!(doc["errors"], expected.errors);
    assert_eq!(doc["model_alt"], "paretian");

    let table = paretocheck(
        &[
            "power",
            "--model",
            "pareto1",
            "--alpha",
            "3",
            "--n",
            "300",
            "--trials",
            "100",
            "--format",
            "table",
            "--study",
            "me-discrimination",
        ],
        dir.path(),
    );
    assert!(table.status.success(), "{}", stderr(&table));
    assert!(String::from_utf8_lossy(&table.stdout).contains("fraction"));

    let few = paretocheck(
        &[
            "power",
            "--model",
            "lognormal",
            "--n",
            "300",
            "--trials",
            "5",
        ],
        dir.path(),
    );
    assert_eq!(few.status.code(), Some(3));
}
