//! The `polycell` binary: flags, exit codes and messages.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use fcell_pipeline::{Manifest, MANIFEST_FILE};
use tempfile::TempDir;

fn polycell(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polycell"))
        .arg("--out")
        .arg(dir)
        .args(args)
        .env("RUST_LOG", "warn")
        .output()
        .expect("binary runs")
}

fn with_config(dir: &Path, text: &str, args: &[&str]) -> Output {
    let path = dir.join("run.toml");
    fs::write(&path, text).unwrap();
    let mut all = vec!["--config", path.to_str().unwrap()];
    all.extend_from_slice(args);
    polycell(dir, &all)
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn paper_opt_succeeds_and_reports() {
    let dir = TempDir::new().unwrap();
    let out = polycell(dir.path(), &["paper-opt", "pentagonal"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("max production   P = 1.0000 atm"), "{text}");
    assert!(text.contains("21.819"));
    assert!(dir.path().join("pareto_paper_pentagonal.csv").exists());
    assert!(dir.path().join(MANIFEST_FILE).exists());
}

#[test]
fn invalid_config_value_exits_2() {
    let dir = TempDir::new().unwrap();
    let out = with_config(
        dir.path(),
        "ga.population_size = 3\n",
        &["paper-opt", "pentagonal"],
    );
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
}

#[test]
fn unknown_key_exits_2_and_names_it() {
    let dir = TempDir::new().unwrap();
    let out = with_config(dir.path(), "[ga]\npopulation = 100\n", &["sweep"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("population"), "{}", stderr(&out));
}

#[test]
fn syntax_error_exits_2_with_line() {
    let dir = TempDir::new().unwrap();
    let out = with_config(
        dir.path(),
        "seed = 1\n\ngrid.pressure_steps = = 3\n",
        &["sweep"],
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));
}

#[test]
fn missing_config_file_exits_2() {
    let dir = TempDir::new().unwrap();
    let out = polycell(dir.path(), &["--config", "/nonexistent/run.toml", "sweep"]);
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
}

#[test]
fn paper_source_on_cubic_preset_exits_2() {
    let dir = TempDir::new().unwrap();
    let out = polycell(
        dir.path(),
        &["--preset", "cubic", "optimize", "--source", "paper"],
    );
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
}

#[test]
fn divergence_exits_3() {
    let dir = TempDir::new().unwrap();
    let config = "train.optimizer = \"sgd\"\ntrain.learning_rate = 1000.0\ntrain.final_learning_rate = 1000.0\n";
    let sweep = with_config(dir.path(), config, &["sweep"]);
    assert_eq!(sweep.status.code(), Some(0), "{}", stderr(&sweep));
    let out = with_config(dir.path(), config, &["train", "--objective", "production"]);
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
    assert!(stderr(&out).contains("diverged at epoch"));
}

#[test]
fn missing_dataset_exits_4() {
    let dir = TempDir::new().unwrap();
    let out = polycell(
        dir.path(),
        &[
            "train",
            "--objective",
            "production",
            "--dataset",
            "nope.csv",
        ],
    );
    assert_eq!(out.status.code(), Some(4), "{}", stderr(&out));
    assert!(stderr(&out).contains("nope.csv"));
}

#[test]
fn output_path_that_is_a_file_exits_4() {
    let dir = TempDir::new().unwrap();
    let blocker = dir.path().join("blocker");
    fs::write(&blocker, "").unwrap();
    let out = polycell(&blocker, &["paper-opt", "hexagonal"]);
    assert_eq!(out.status.code(), Some(4), "{}", stderr(&out));
}

#[test]
fn seed_flag_overrides_config_and_reaches_the_manifest() {
    let dir = TempDir::new().unwrap();
    let out = with_config(
        dir.path(),
        "seed = 3\n",
        &["--seed", "11", "paper-opt", "hexagonal"],
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let m = Manifest::load(dir.path()).unwrap().unwrap();
    let r = m.find("optimize:paper:hexagonal").unwrap();
    assert_eq!(r.seed, 11);
    assert_eq!(r.config["seed"], 11);
}

#[test]
fn polarize_with_explicit_voltages() {
    let dir = TempDir::new().unwrap();
    let out = polycell(
        dir.path(),
        &[
            "--preset",
            "hexagonal",
            "polarize",
            "--voltages",
            "0.9,0.6,0.3",
        ],
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let csv = fs::read_to_string(dir.path().join("polarization_hexagonal.csv")).unwrap();
    assert_eq!(csv.lines().count(), 4);
}
