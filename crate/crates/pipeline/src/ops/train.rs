use std::path::PathBuf;
use std::time::Instant;

use fcell_surrogate::{fit_network, Dataset, Mlp, Objective, SurrogateError};

use super::{dataset_file, in_output, model_file};
use crate::manifest::Session;
use crate::{PipelineError, Result, RunConfig};

#[derive(Debug, Clone)]
pub struct TrainReport {
    pub network: Mlp,
    pub model_path: PathBuf,
    /// W
    pub rmse: f64,
    /// RMSE over the data range.
    pub relative_rmse: f64,
    pub final_loss: f64,
}

/// Train a network on one objective's dataset (default: this directory's sweep CSV)
/// and persist it as `model_<objective>.json`.
pub fn train(
    config: &RunConfig,
    objective: Objective,
    dataset: Option<PathBuf>,
) -> Result<TrainReport> {
    let started = Instant::now();
    let path = dataset.unwrap_or_else(|| in_output(config, &dataset_file(objective)));
    let mut session = Session::new(config, format!("train:{objective}"));
    session.component("fcell-surrogate");
    let bytes = session.read_input(&path)?;
    let data = Dataset::read_csv(bytes.as_slice(), objective, config.preset)
        .map_err(|e| PipelineError::from_surrogate_at(&path, e))?;

    let outcome =
        fit_network(&data, &config.mlp_config(), &config.train_config()).map_err(|e| match e {
            SurrogateError::Divergence { epoch, loss } => PipelineError::Numeric(format!(
                "training on {} diverged at epoch {epoch} (loss {loss:e})",
                path.display()
            )),
            other => PipelineError::from(other),
        })?;
    let mut buf = Vec::new();
    outcome.network.save(&mut buf)?;
    buf.push(b'\n');
    let model_path = session.write_output(&model_file(objective), &buf)?;

    let final_loss = *outcome.loss_history.last().expect("at least one epoch");
    session.count("epochs", outcome.loss_history.len() as u64);
    session.count("samples", data.len() as u64);
    session.note("rmse_w", outcome.rmse);
    session.note("relative_rmse", outcome.relative_rmse());
    session.note("final_loss", final_loss);
    session.commit()?;
    log::info!(
        "train {objective}: rmse {:.3e} W ({:.3}% of range) in {:.3?}",
        outcome.rmse,
        100.0 * outcome.relative_rmse(),
        started.elapsed()
    );
    Ok(TrainReport {
        relative_rmse: outcome.relative_rmse(),
        rmse: outcome.rmse,
        network: outcome.network,
        model_path,
        final_loss,
    })
}
