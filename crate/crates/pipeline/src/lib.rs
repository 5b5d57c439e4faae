//! Orchestration for the `polycell` tool: design-space sweeps through the cell
//! model, surrogate training, quadratic fitting, NSGA-II optimization and
//! polarization curves. Every stage writes its artifacts atomically and records
//! them, with digests, in the output directory's `manifest.json`.

pub mod artifact;
pub mod config;
mod error;
pub mod manifest;
pub mod ops;
pub mod reference;

pub use config::{load_config, ObjectiveSource, RunConfig};
pub use error::{PipelineError, Result};
pub use manifest::{Manifest, RunRecord, MANIFEST_FILE};
pub use ops::{
    fit, optimize, paper_opt, polarize, run_pipeline, sweep, train, FitInput, OptimizeOutcome,
};
