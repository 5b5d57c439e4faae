//! Production and consumption power.

use serde::{Deserialize, Serialize};

use crate::channel::{air_viscosity, cathode_density, channel_pressure_drop};
use crate::{solve_current_at_voltage, CellGeometry, CellSpec, OperatingPoint, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerReport {
    /// `i V A_eff`, W
    pub production_power: f64,
    /// `ΔP A_in u_in`, W
    pub consumption_power: f64,
    /// `consumption / production`; `None` when nothing is produced.
    pub ratio: Option<f64>,
    /// Pa
    pub pressure_drop: f64,
    /// m/s
    pub inlet_velocity: f64,
}

pub fn power_report(
    current_density: f64,
    cell_voltage: f64,
    geometry: &CellGeometry,
    pressure_drop: f64,
    inlet_velocity: f64,
) -> PowerReport {
    let production_power = current_density * cell_voltage * geometry.active_area;
    let consumption_power = pressure_drop * geometry.inlet_area * inlet_velocity;
    PowerReport {
        production_power,
        consumption_power,
        ratio: (production_power > 0.0).then(|| consumption_power / production_power),
        pressure_drop,
        inlet_velocity,
    }
}

/// Solve the cell at `cell_voltage` and account both powers for the cathode (air) stream.
pub fn evaluate_operating_point(
    cell: &CellSpec,
    op: &OperatingPoint,
    cell_voltage: f64,
) -> Result<PowerReport> {
    let current_density = solve_current_at_voltage(cell, op, cell_voltage)?;
    let flow = channel_pressure_drop(
        &cell.geometry,
        air_viscosity(op.inlet_temperature),
        cathode_density(op),
        op.mass_flow_cathode,
    )?;
    Ok(power_report(
        current_density,
        cell_voltage,
        &cell.geometry,
        flow.pressure_drop,
        flow.velocity,
    ))
}
