use std::time::Instant;

use fcell_core::constants::{atm_to_pa, celsius_to_kelvin};
use fcell_core::{
    evaluate_operating_point, CellSpec, ModelError, ModelTag, OperatingPoint, PowerReport,
};
use fcell_surrogate::{design_grid, paper_surface, Dataset, Objective, Sample};

use super::{dataset_file, ordered_map, paper_model};
use crate::manifest::Session;
use crate::{ObjectiveSource, PipelineError, Result, RunConfig};

/// Largest tolerated fraction of grid points the cell model may fail on.
pub const MAX_SKIPPED_FRACTION: f64 = 0.10;

#[derive(Debug, Clone)]
pub struct SweepOutcome {
    pub production: Dataset,
    pub consumption: Dataset,
    pub skipped: Vec<((f64, f64), String)>,
}

/// Cell-model powers at inlet `(P [atm], T [°C])` and the given cell voltage.
pub fn physics_power(
    tag: ModelTag,
    voltage: f64,
    pressure: f64,
    temperature: f64,
) -> std::result::Result<PowerReport, ModelError> {
    let cell = CellSpec::preset(tag);
    let op =
        OperatingPoint::preset(tag).with_inlet(atm_to_pa(pressure), celsius_to_kelvin(temperature));
    op.validate()?;
    evaluate_operating_point(&cell, &op, voltage)
}

/// Tabulate production and consumption power over the design grid.
///
/// With the physics source, grid points where the cell model fails are skipped and
/// logged; more than 10% skipped is an error. The `paper` source samples the published
/// surfaces instead and never touches the cell model.
pub fn sweep(config: &RunConfig) -> Result<SweepOutcome> {
    let started = Instant::now();
    let b = config.bounds()?;
    let points = design_grid(
        (b.p_min, b.p_max),
        (b.t_min, b.t_max),
        config.grid.pressure_steps,
        config.grid.temperature_steps,
    )?;
    let mut session = Session::new(config, "sweep");
    session.component("fcell-surrogate");

    let values: Vec<std::result::Result<(f64, f64), String>> = match config.source {
        ObjectiveSource::Physics => {
            session.component("fcell-core");
            ordered_map(&points, |&(p, t)| {
                physics_power(config.preset, config.operating_voltage, p, t)
                    .map(|r| (r.production_power, r.consumption_power))
                    .map_err(|e| e.to_string())
            })
        }
        ObjectiveSource::Paper => {
            let model = paper_model(config.preset)?;
            let pro = paper_surface(model, Objective::Production);
            let cons = paper_surface(model, Objective::Consumption);
            points
                .iter()
                .map(|&(p, t)| Ok((pro.evaluate(p, t), cons.evaluate(p, t))))
                .collect()
        }
        other => {
            return Err(PipelineError::Config(format!(
                "sweep needs the physics or paper source (got {})",
                other.name()
            )))
        }
    };

    let mut production = Vec::with_capacity(points.len());
    let mut consumption = Vec::with_capacity(points.len());
    let mut skipped = Vec::new();
    for (&(p, t), v) in points.iter().zip(values) {
        match v {
            Ok((pro, cons)) => {
                production.push(Sample {
                    pressure: p,
                    temperature: t,
                    value: pro,
                });
                consumption.push(Sample {
                    pressure: p,
                    temperature: t,
                    value: cons,
                });
            }
            Err(reason) => {
                log::warn!("sweep: skipping P = {p} atm, T = {t} °C: {reason}");
                skipped.push(((p, t), reason));
            }
        }
    }
    if skipped.len() as f64 > MAX_SKIPPED_FRACTION * points.len() as f64 {
        return Err(PipelineError::Numeric(format!(
            "sweep skipped {} of {} grid points (first: P = {} atm, T = {} °C: {})",
            skipped.len(),
            points.len(),
            skipped[0].0 .0,
            skipped[0].0 .1,
            skipped[0].1
        )));
    }

    let production = Dataset::new(Objective::Production, config.preset, production)?;
    let consumption = Dataset::new(Objective::Consumption, config.preset, consumption)?;
    for d in [&production, &consumption] {
        let mut buf = Vec::new();
        d.write_csv(&mut buf)?;
        session.write_output(&dataset_file(d.objective), &buf)?;
    }
    session.count("grid_points", points.len() as u64);
    session.count("rows", production.len() as u64);
    session.count("skipped", skipped.len() as u64);
    session.note("source", config.source.name());
    session.note("operating_voltage_v", config.operating_voltage);
    session.commit()?;
    log::info!(
        "sweep: {} rows ({} skipped) in {:.3?}",
        production.len(),
        skipped.len(),
        started.elapsed()
    );
    Ok(SweepOutcome {
        production,
        consumption,
        skipped,
    })
}
