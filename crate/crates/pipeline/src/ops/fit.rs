use std::path::PathBuf;

use fcell_surrogate::{
    design_grid, fit_quadratic_with_residuals, Dataset, Mlp, Objective, QuadraticSurface, Sample,
};

use super::surface_file;
use crate::manifest::Session;
use crate::{PipelineError, Result, RunConfig};

#[derive(Debug, Clone, PartialEq)]
pub enum FitInput {
    /// A dataset CSV.
    Dataset(PathBuf),
    /// A trained model file, sampled over the configured grid.
    Model(PathBuf),
}

#[derive(Debug, Clone)]
pub struct FitOutcome {
    pub surface: QuadraticSurface,
    pub surface_path: PathBuf,
    /// W
    pub rms_residual: f64,
    /// W
    pub max_residual: f64,
}

/// Least-squares quadratic through a dataset or a network's predictions, persisted
/// as `surface_<objective>.json`.
pub fn fit(config: &RunConfig, objective: Objective, input: FitInput) -> Result<FitOutcome> {
    let mut session = Session::new(config, format!("fit:{objective}"));
    session.component("fcell-surrogate");
    let data = match &input {
        FitInput::Dataset(path) => {
            let bytes = session.read_input(path)?;
            Dataset::read_csv(bytes.as_slice(), objective, config.preset)
                .map_err(|e| PipelineError::from_surrogate_at(path, e))?
        }
        FitInput::Model(path) => {
            let bytes = session.read_input(path)?;
            let net = Mlp::load(bytes.as_slice())
                .map_err(|e| PipelineError::from_surrogate_at(path, e))?;
            if net.scaler.is_none() {
                return Err(PipelineError::Input {
                    path: path.clone(),
                    message: "model has no input/output scaler".into(),
                });
            }
            let b = config.bounds()?;
            let grid = design_grid(
                (b.p_min, b.p_max),
                (b.t_min, b.t_max),
                config.grid.pressure_steps,
                config.grid.temperature_steps,
            )?;
            let samples = grid
                .iter()
                .map(|&(pressure, temperature)| {
                    Ok(Sample {
                        pressure,
                        temperature,
                        value: net.predict(pressure, temperature)?,
                    })
                })
                .collect::<fcell_surrogate::Result<Vec<_>>>()?;
            Dataset::new(objective, config.preset, samples)?
        }
    };
    let fit = fit_quadratic_with_residuals(&data)?;
    let mut doc = fit.surface.to_document();
    if !doc.ends_with('\n') {
        doc.push('\n');
    }
    let surface_path = session.write_output(&surface_file(objective), doc.as_bytes())?;
    session.count("samples", data.len() as u64);
    session.note(
        "input",
        match input {
            FitInput::Dataset(_) => "dataset",
            FitInput::Model(_) => "model",
        },
    );
    session.note("coefficients", fit.surface.to_array().to_vec());
    session.note("rms_residual_w", fit.rms_residual);
    session.note("max_residual_w", fit.max_residual);
    session.commit()?;
    log::info!(
        "fit {objective}: {} (rms residual {:.3e} W)",
        fit.surface,
        fit.rms_residual
    );
    Ok(FitOutcome {
        surface: fit.surface,
        surface_path,
        rms_residual: fit.rms_residual,
        max_residual: fit.max_residual,
    })
}
