//! Real-coded NSGA-II over two bounded design variables, pressure (atm) and
//! temperature (°C).
//!
//! Objectives are plain functions of `(P, T)`; maximized objectives are negated on
//! the way in and restored on the way out. A run is fully determined by its seed:
//! every stochastic draw comes from one [`Generator`] stream, and objective
//! evaluation (the only parallel stage) merges results in index order.

// `!(x > 0.0)` style guards reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod config;
mod error;
pub mod grid;
pub mod nsga2;
pub mod objective;
pub mod operators;
mod population;
pub mod report;
pub mod sort;

pub use config::{Bounds, GAConfig, NUM_VARIABLES};
pub use error::{EvolveError, Result};
pub use grid::{grid_search, GridOptimum};
pub use nsga2::{run, run_with, Generator, ParetoResult, GENERATOR_NAME};
pub use objective::{evaluate, Evaluator, Execution, Objective, ObjectiveSpec, Sense};
pub use operators::{polynomial_mutation, sbx_crossover, tournament_select};
pub use population::{init_population, Individual};
pub use report::{front_report, power_ratio, write_front_csv, FrontReport, FRONT_CSV_HEADER};
pub use sort::{assign_crowding, crowding_distance, dominates, fast_nondominated_sort};
