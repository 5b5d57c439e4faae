//! Pipeline stages. Each writes its artifacts atomically into the configured output
//! directory and commits a record to the directory's manifest.

mod fit;
mod optimize;
mod polarize;
mod sweep;
mod train;

pub use fit::{fit, FitInput, FitOutcome};
pub use optimize::{optimize, paper_opt, OptimizeOutcome};
pub use polarize::{default_voltages, polarize, PolarizeOutcome, POLARIZATION_HEADER};
pub use sweep::{physics_power, sweep, SweepOutcome};
pub use train::{train, TrainReport};

use std::path::PathBuf;

use fcell_core::ModelTag;
use fcell_surrogate::{Objective, PaperModel};

use crate::{PipelineError, Result, RunConfig};

pub const OBJECTIVES: [Objective; 2] = [Objective::Production, Objective::Consumption];

pub fn dataset_file(objective: Objective) -> String {
    format!("sweep_{objective}.csv")
}

pub fn model_file(objective: Objective) -> String {
    format!("model_{objective}.json")
}

pub fn surface_file(objective: Objective) -> String {
    format!("surface_{objective}.json")
}

pub(crate) fn in_output(config: &RunConfig, name: &str) -> PathBuf {
    config.output_dir.join(name)
}

pub(crate) fn paper_model(tag: ModelTag) -> Result<PaperModel> {
    match tag {
        ModelTag::Pentagonal => Ok(PaperModel::Pentagonal),
        ModelTag::Hexagonal => Ok(PaperModel::Hexagonal),
        ModelTag::Cubic => Err(PipelineError::Config(
            "published surfaces exist only for the pentagonal and hexagonal presets".into(),
        )),
    }
}

/// Sequential or rayon map that keeps input order.
pub(crate) fn ordered_map<T: Sync, U: Send>(
    items: &[T],
    f: impl Fn(&T) -> U + Sync + Send,
) -> Vec<U> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

pub(crate) fn percent(x: f64) -> f64 {
    100.0 * x
}

/// Run `sweep`, `train` and `fit` for both objectives, then `optimize` on the
/// fitted surfaces.
pub fn run_pipeline(config: &RunConfig) -> Result<OptimizeOutcome> {
    sweep(config)?;
    for objective in OBJECTIVES {
        train(config, objective, None)?;
    }
    for objective in OBJECTIVES {
        fit(
            config,
            objective,
            FitInput::Model(in_output(config, &model_file(objective))),
        )?;
    }
    optimize(&RunConfig {
        source: crate::ObjectiveSource::Fitted,
        ..config.clone()
    })
}
