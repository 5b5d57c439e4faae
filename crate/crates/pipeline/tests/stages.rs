//! Each pipeline stage run through the library against a scratch directory.

use std::fs;
use std::path::Path;

use fcell_core::ModelTag;
use fcell_pipeline::artifact::sha256_hex;
use fcell_pipeline::ops::{dataset_file, model_file, POLARIZATION_HEADER};
use fcell_pipeline::{
    fit, optimize, paper_opt, polarize, run_pipeline, sweep, train, FitInput, Manifest,
    ObjectiveSource, PipelineError, RunConfig, MANIFEST_FILE,
};
use fcell_surrogate::{paper_surface, Mlp, Objective, PaperModel, QuadraticSurface};
use tempfile::TempDir;

fn config_in(dir: &Path, source: ObjectiveSource) -> RunConfig {
    RunConfig {
        source,
        output_dir: dir.to_path_buf(),
        ..RunConfig::default()
    }
}

fn manifest(dir: &Path) -> Manifest {
    Manifest::load(dir).unwrap().expect("manifest written")
}

fn assert_csv_shape(text: &str, header: &str) {
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(header));
    assert!(text.ends_with('\n'));
    for line in lines {
        for field in line.split(',') {
            let mantissa = field.trim_start_matches('-').split('e').next().unwrap();
            assert_eq!(mantissa.len(), 18, "`{field}` is not 17 significant digits");
        }
    }
}

#[test]
fn physics_sweep_covers_the_grid() {
    let dir = TempDir::new().unwrap();
    let config = config_in(dir.path(), ObjectiveSource::Physics);
    let out = sweep(&config).unwrap();
    assert_eq!(out.production.len(), 81);
    assert_eq!(out.consumption.len(), 81);
    assert!(out.skipped.is_empty());
    for s in out.production.samples() {
        assert!(
            s.value >= 0.0,
            "negative production at ({}, {})",
            s.pressure,
            s.temperature
        );
    }
    for obj in [Objective::Production, Objective::Consumption] {
        let text = fs::read_to_string(dir.path().join(dataset_file(obj))).unwrap();
        assert_eq!(text.lines().count(), 82);
        assert_csv_shape(&text, "pressure_atm,temperature_c,value_w");
    }
    let record = manifest(dir.path()).find("sweep").unwrap().clone();
    assert!(record.components.iter().any(|c| c == "fcell-core"));
    assert_eq!(record.counters["rows"], 81);
}

#[test]
fn repeated_sweeps_are_byte_identical() {
    let a = TempDir::new().unwrap();
    let b = TempDir::new().unwrap();
    sweep(&config_in(a.path(), ObjectiveSource::Physics)).unwrap();
    sweep(&config_in(b.path(), ObjectiveSource::Physics)).unwrap();
    for obj in [Objective::Production, Objective::Consumption] {
        let name = dataset_file(obj);
        assert_eq!(
            fs::read(a.path().join(&name)).unwrap(),
            fs::read(b.path().join(&name)).unwrap()
        );
    }
}

#[test]
fn sweep_rejects_sources_without_a_grid_meaning() {
    let dir = TempDir::new().unwrap();
    let err = sweep(&config_in(dir.path(), ObjectiveSource::Fitted)).unwrap_err();
    assert!(matches!(err, PipelineError::Config(_)));
    let cubic = RunConfig {
        preset: ModelTag::Cubic,
        ..config_in(dir.path(), ObjectiveSource::Paper)
    };
    assert!(matches!(
        sweep(&cubic).unwrap_err(),
        PipelineError::Config(_)
    ));
}

#[test]
fn trained_model_round_trips_and_is_recorded() {
    let dir = TempDir::new().unwrap();
    let config = config_in(dir.path(), ObjectiveSource::Paper);
    sweep(&config).unwrap();
    let report = train(&config, Objective::Production, None).unwrap();
    assert!(
        report.relative_rmse <= 0.02,
        "relative RMSE {}",
        report.relative_rmse
    );

    let loaded = Mlp::load(fs::File::open(&report.model_path).unwrap()).unwrap();
    for i in 0..=20 {
        for j in 0..=20 {
            let (p, t) = (1.0 + 0.2 * i as f64, 50.0 + 2.0 * j as f64);
            let a = report.network.predict(p, t).unwrap();
            let b = loaded.predict(p, t).unwrap();
            assert!(
                (a - b).abs() <= 1e-15 * a.abs().max(1e-300),
                "({p}, {t}): {a:e} vs {b:e}"
            );
        }
    }

    let m = manifest(dir.path());
    let record = m.find("train:production").unwrap();
    let csv = dir.path().join(dataset_file(Objective::Production));
    let digest = sha256_hex(&fs::read(&csv).unwrap());
    assert!(record.inputs.iter().any(|f| f.sha256 == digest));
    assert!(record.summary.contains_key("rmse_w"));
}

#[test]
fn missing_dataset_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let config = config_in(dir.path(), ObjectiveSource::Paper);
    let err = train(&config, Objective::Production, None).unwrap_err();
    assert_eq!(err.exit_code(), 4, "{err}");
}

#[test]
fn divergent_training_is_a_numeric_error() {
    let dir = TempDir::new().unwrap();
    let mut config = config_in(dir.path(), ObjectiveSource::Paper);
    sweep(&config).unwrap();
    config.train.optimizer = fcell_pipeline::config::OptimizerName::Sgd;
    config.train.learning_rate = 1e3;
    config.train.final_learning_rate = 1e3;
    let err = train(&config, Objective::Production, None).unwrap_err();
    assert_eq!(err.exit_code(), 3, "{err}");
    assert!(err.to_string().contains("epoch"), "{err}");
}

#[test]
fn fit_on_published_samples_recovers_the_coefficients() {
    let dir = TempDir::new().unwrap();
    let config = config_in(dir.path(), ObjectiveSource::Paper);
    sweep(&config).unwrap();
    for obj in [Objective::Production, Objective::Consumption] {
        let out = fit(
            &config,
            obj,
            FitInput::Dataset(dir.path().join(dataset_file(obj))),
        )
        .unwrap();
        let want = paper_surface(PaperModel::Pentagonal, obj).to_array();
        for (k, (got, want)) in out.surface.to_array().iter().zip(want).enumerate() {
            assert!(
                (got - want).abs() <= 1e-6 * want.abs(),
                "{obj} c{k}: {got:e} vs {want:e}"
            );
        }
        let text = fs::read_to_string(&out.surface_path).unwrap();
        assert_eq!(QuadraticSurface::from_document(&text).unwrap(), out.surface);
    }
}

#[test]
fn fit_residuals_in_the_manifest_bound_the_reproduction() {
    let dir = TempDir::new().unwrap();
    let config = config_in(dir.path(), ObjectiveSource::Physics);
    let data = sweep(&config).unwrap().production;
    let out = fit(
        &config,
        Objective::Production,
        FitInput::Dataset(dir.path().join(dataset_file(Objective::Production))),
    )
    .unwrap();
    let record = manifest(dir.path()).find("fit:production").unwrap().clone();
    let max = record.summary["max_residual_w"].as_f64().unwrap();
    assert_eq!(max, out.max_residual);
    for s in data.samples() {
        let e = (out.surface.evaluate(s.pressure, s.temperature) - s.value).abs();
        assert!(
            e <= max * (1.0 + 1e-12),
            "residual {e:e} above reported {max:e}"
        );
    }
}

#[test]
fn fit_of_a_model_samples_it_on_the_grid() {
    let dir = TempDir::new().unwrap();
    let mut config = config_in(dir.path(), ObjectiveSource::Paper);
    config.train.epochs = 500;
    sweep(&config).unwrap();
    train(&config, Objective::Consumption, None).unwrap();
    let out = fit(
        &config,
        Objective::Consumption,
        FitInput::Model(dir.path().join(model_file(Objective::Consumption))),
    )
    .unwrap();
    let record = manifest(dir.path())
        .find("fit:consumption")
        .unwrap()
        .clone();
    assert_eq!(record.counters["samples"], 81);
    assert_eq!(record.summary["input"], "model");
    assert!(out.rms_residual.is_finite());
}

#[test]
fn paper_optimization_is_repeatable_byte_for_byte() {
    let a = TempDir::new().unwrap();
    let b = TempDir::new().unwrap();
    let ra = paper_opt(
        &config_in(a.path(), ObjectiveSource::Paper),
        PaperModel::Hexagonal,
    )
    .unwrap();
    let rb = paper_opt(
        &config_in(b.path(), ObjectiveSource::Paper),
        PaperModel::Hexagonal,
    )
    .unwrap();
    let front = fs::read(&ra.front_path).unwrap();
    assert_eq!(front, fs::read(&rb.front_path).unwrap());
    assert_eq!(
        fs::read(&ra.summary_path).unwrap(),
        fs::read(&rb.summary_path).unwrap()
    );
    assert_csv_shape(
        std::str::from_utf8(&front).unwrap(),
        "pressure_atm,temperature_c,p_pro_w,p_cons_w,ratio",
    );
    let s = &ra.summary;
    assert!((s.max_production.pressure_atm - 1.0).abs() <= 0.02);
    assert!((s.max_production.temperature_c - 90.0).abs() <= 0.5);
    assert!((s.ratio_at_max_production_percent - 8.29).abs() <= 0.05);
}

#[test]
fn a_different_seed_changes_the_front() {
    let a = TempDir::new().unwrap();
    let b = TempDir::new().unwrap();
    let ra = paper_opt(
        &config_in(a.path(), ObjectiveSource::Paper),
        PaperModel::Pentagonal,
    )
    .unwrap();
    let other = RunConfig {
        seed: 2,
        ..config_in(b.path(), ObjectiveSource::Paper)
    };
    let rb = paper_opt(&other, PaperModel::Pentagonal).unwrap();
    assert_ne!(
        fs::read(&ra.front_path).unwrap(),
        fs::read(&rb.front_path).unwrap()
    );
}

#[test]
fn optimize_on_the_physics_model() {
    let dir = TempDir::new().unwrap();
    let mut config = config_in(dir.path(), ObjectiveSource::Physics);
    config.ga.population_size = 40;
    config.ga.generations = 10;
    let out = optimize(&config).unwrap();
    assert!(out.summary.front_size >= 1);
    assert_eq!(out.summary.evaluations, 40 * 11);
    let record = manifest(dir.path())
        .find("optimize:physics:pentagonal")
        .unwrap()
        .clone();
    assert!(record.components.iter().any(|c| c == "fcell-core"));
}

#[test]
fn polarization_curve_properties() {
    let dir = TempDir::new().unwrap();
    let config = config_in(dir.path(), ObjectiveSource::Paper);
    let out = polarize(&config, None).unwrap();
    assert!(out.failures.is_empty());
    assert_eq!(out.points[0].voltage, out.reversible_voltage);
    assert_eq!(out.points[0].current_density, 0.0);
    for w in out.points.windows(2) {
        assert!(w[1].voltage < w[0].voltage);
        assert!(w[1].current_density >= w[0].current_density);
    }
    let text = fs::read_to_string(&out.path).unwrap();
    assert_csv_shape(&text, POLARIZATION_HEADER);
    for line in text.lines().skip(1) {
        let f: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        assert_eq!(f[2], f[0] * f[1]);
    }
}

#[test]
fn polarization_failures_do_not_stop_the_curve() {
    let dir = TempDir::new().unwrap();
    let config = config_in(dir.path(), ObjectiveSource::Paper);
    let out = polarize(&config, Some(&[0.9, 5.0, 0.7])).unwrap();
    assert_eq!(out.points.len(), 2);
    assert_eq!(out.failures.len(), 1);
    assert_eq!(out.failures[0].0, 5.0);
}

#[test]
fn pipeline_manifest_is_complete_and_physics_free() {
    let dir = TempDir::new().unwrap();
    let config = config_in(dir.path(), ObjectiveSource::Paper);
    run_pipeline(&config).unwrap();
    let m = manifest(dir.path());
    let mut on_disk = 0;
    for entry in fs::read_dir(dir.path()).unwrap() {
        let entry = entry.unwrap();
        let name = entry.file_name().into_string().unwrap();
        if name == MANIFEST_FILE {
            continue;
        }
        on_disk += 1;
        let digest = sha256_hex(&fs::read(entry.path()).unwrap());
        assert_eq!(m.files.get(&name), Some(&digest), "{name}");
    }
    assert_eq!(on_disk, m.files.len());
    for r in &m.records {
        assert!(
            !r.components.iter().any(|c| c == "fcell-core"),
            "{} used the cell model",
            r.operation
        );
        for f in r.inputs.iter().chain(&r.outputs) {
            assert_eq!(
                m.files.get(&f.path),
                Some(&f.sha256),
                "{} in {}",
                f.path,
                r.operation
            );
        }
    }
    let ops: Vec<&str> = m.records.iter().map(|r| r.operation.as_str()).collect();
    assert_eq!(
        ops,
        [
            "sweep",
            "train:production",
            "train:consumption",
            "fit:production",
            "fit:consumption",
            "optimize:fitted:pentagonal"
        ]
    );
}
