//! Data modeling for the optimization pipeline: design grids, a small feed-forward
//! ReLU network trained from scratch, and six-term quadratic response surfaces in
//! `(pressure [atm], temperature [°C])`.

// `!(x > 0.0)` style guards reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dataset;
mod error;
pub mod grid;
pub mod mlp;
pub mod rsm;
pub mod scaler;
pub mod train;

pub use dataset::{Dataset, Objective, Sample};
pub use error::{Result, SurrogateError};
pub use grid::design_grid;
pub use mlp::{Gradients, Mlp, MlpConfig, MLP_FORMAT_TAG};
pub use rsm::{
    evaluate_surface, fit_quadratic, fit_quadratic_with_residuals, paper_surface, PaperModel,
    QuadraticFit, QuadraticSurface,
};
pub use scaler::{normalize, MinMaxScaler};
pub use train::{fit_network, train, OptimizerKind, TrainConfig, TrainOutcome};
