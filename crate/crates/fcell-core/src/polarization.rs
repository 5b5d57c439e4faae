//! Zero-dimensional loss budget and polarization curves.
//!
//! The terminal voltage at current density `i` is
//! `E_rev - η_act,a(i) - |η_act,c(i)| - η_ohm(i) - η_conc(i)`, where each activation
//! overpotential inverts the Butler–Volmer relation at the uniform volumetric rate
//! `R = i / t_CL`.

use serde::{Deserialize, Serialize};

use crate::cell::PartialPressures;
use crate::constants::PA_PER_ATM;
use crate::kinetics::MAX_ITERATIONS;
use crate::{
    invert_transfer_current, CellGeometry, CellSpec, Electrode, MeaProperties, ModelError,
    OperatingPoint, PhysicalConstants, Result,
};

/// Reversible (Nernst) cell voltage in V:
/// `1.229 - 0.85e-3 (T - 298.15) + (RT/2F) ln(p_H2 p_O2^0.5)`, partial pressures in atm.
pub fn reversible_voltage(op: &OperatingPoint) -> Result<f64> {
    let pp = op.partial_pressures()?;
    Ok(nernst(op.inlet_temperature, &pp))
}

fn nernst(temperature: f64, pp: &PartialPressures) -> f64 {
    let c = PhysicalConstants::STANDARD;
    let p_h2 = pp.hydrogen / PA_PER_ATM;
    let p_o2 = pp.oxygen / PA_PER_ATM;
    1.229 - 0.85e-3 * (temperature - 298.15)
        + c.gas_constant * temperature / (2.0 * c.faraday) * (p_h2 * p_o2.sqrt()).ln()
}

/// Membrane plus contact ohmic loss, `i (t_mem / σ_mem + r_contact)`.
pub fn ohmic_overpotential(
    current_density: f64,
    geometry: &CellGeometry,
    mea: &MeaProperties,
) -> Result<f64> {
    if !(current_density >= 0.0) {
        return Err(ModelError::domain(
            "current_density",
            current_density,
            ">= 0",
        ));
    }
    Ok(current_density * (geometry.membrane_thickness / mea.sigma_mem + mea.contact_resistance))
}

/// Mass-transport loss `-(RT/2F) ln(1 - i / i_lim)`.
pub fn concentration_overpotential(
    current_density: f64,
    limiting_current: f64,
    temperature: f64,
) -> Result<f64> {
    if !(current_density >= 0.0) {
        return Err(ModelError::domain(
            "current_density",
            current_density,
            ">= 0",
        ));
    }
    if !(temperature > 0.0) {
        return Err(ModelError::domain("temperature", temperature, "> 0"));
    }
    if current_density >= limiting_current {
        return Err(ModelError::LimitingCurrent {
            current: current_density,
            limit: limiting_current,
        });
    }
    let c = PhysicalConstants::STANDARD;
    Ok(-(c.gas_constant * temperature / (2.0 * c.faraday))
        * (1.0 - current_density / limiting_current).ln())
}

/// Membrane-area current density produced by a uniform volumetric rate over the
/// catalyst layer, `R V_cl / A`.
pub fn average_current_density(
    volumetric_rate: f64,
    catalyst_volume: f64,
    membrane_area: f64,
) -> Result<f64> {
    if !(membrane_area > 0.0) {
        return Err(ModelError::domain("membrane_area", membrane_area, "> 0"));
    }
    if !(volumetric_rate >= 0.0) {
        return Err(ModelError::domain(
            "volumetric_rate",
            volumetric_rate,
            ">= 0",
        ));
    }
    if !(catalyst_volume >= 0.0) {
        return Err(ModelError::domain(
            "catalyst_volume",
            catalyst_volume,
            ">= 0",
        ));
    }
    Ok(volumetric_rate * catalyst_volume / membrane_area)
}

/// Individual voltage losses at one current density, all non-negative, in V.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LossBreakdown {
    pub reversible: f64,
    pub anode_activation: f64,
    pub cathode_activation: f64,
    pub ohmic: f64,
    pub concentration: f64,
}

impl LossBreakdown {
    pub fn terminal_voltage(&self) -> f64 {
        self.reversible
            - self.anode_activation
            - self.cathode_activation
            - self.ohmic
            - self.concentration
    }
}

/// Pre-computed state shared by every evaluation of the budget at one operating point.
struct Budget<'a> {
    cell: &'a CellSpec,
    temperature: f64,
    reversible: f64,
    anode_ratio: f64,
    cathode_ratio: f64,
}

impl<'a> Budget<'a> {
    fn new(cell: &'a CellSpec, op: &OperatingPoint) -> Result<Self> {
        cell.validate()?;
        let pp = op.partial_pressures()?;
        let c = PhysicalConstants::STANDARD;
        let rt = c.gas_constant * op.inlet_temperature;
        Ok(Budget {
            cell,
            temperature: op.inlet_temperature,
            reversible: nernst(op.inlet_temperature, &pp),
            anode_ratio: pp.hydrogen / rt / cell.anode.reference_concentration,
            cathode_ratio: pp.oxygen / rt / cell.cathode.reference_concentration,
        })
    }

    fn losses(&self, current_density: f64) -> Result<LossBreakdown> {
        let cell = self.cell;
        let rate = current_density / cell.geometry.cl_thickness;
        let anode = invert_transfer_current(
            Electrode::Anode,
            &cell.anode,
            self.anode_ratio,
            rate,
            self.temperature,
        )?;
        let cathode = invert_transfer_current(
            Electrode::Cathode,
            &cell.cathode,
            self.cathode_ratio,
            rate,
            self.temperature,
        )?;
        Ok(LossBreakdown {
            reversible: self.reversible,
            anode_activation: anode.abs(),
            cathode_activation: cathode.abs(),
            ohmic: ohmic_overpotential(current_density, &cell.geometry, &cell.mea)?,
            concentration: concentration_overpotential(
                current_density,
                cell.limiting_current,
                self.temperature,
            )?,
        })
    }
}

/// Loss budget of `cell` at `op` when drawing `current_density` (A/m^2).
pub fn loss_breakdown(
    cell: &CellSpec,
    op: &OperatingPoint,
    current_density: f64,
) -> Result<LossBreakdown> {
    Budget::new(cell, op)?.losses(current_density)
}

const VOLTAGE_TOLERANCE: f64 = 1e-10;
const ACCEPTED_RESIDUAL: f64 = 1e-8;

/// Current density (A/m^2) at which the loss budget yields `cell_voltage`.
///
/// Bisects on `[0, i_lim)`; the budget diverges at the limiting current so the bracket
/// always holds for `0 < V < E_rev`. Returns 0 at or above open circuit.
pub fn solve_current_at_voltage(
    cell: &CellSpec,
    op: &OperatingPoint,
    cell_voltage: f64,
) -> Result<f64> {
    if !(cell_voltage > 0.0) {
        return Err(ModelError::domain("cell_voltage", cell_voltage, "> 0"));
    }
    let budget = Budget::new(cell, op)?;
    if cell_voltage >= budget.reversible {
        return Ok(0.0);
    }
    let residual = |i: f64| -> Result<f64> {
        match budget.losses(i) {
            Ok(l) => Ok(l.terminal_voltage() - cell_voltage),
            Err(ModelError::LimitingCurrent { .. }) => Ok(f64::NEG_INFINITY),
            Err(e) => Err(e),
        }
    };

    let mut lo = 0.0;
    let mut hi = cell.limiting_current;
    let mut iterations = 0;
    while iterations < MAX_ITERATIONS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let r = residual(mid)?;
        if r.abs() <= VOLTAGE_TOLERANCE {
            return Ok(mid);
        }
        if r > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    let r_lo = residual(lo)?.abs();
    let r_hi = residual(hi)?.abs();
    let (i, r) = if r_lo <= r_hi { (lo, r_lo) } else { (hi, r_hi) };
    if !(r <= ACCEPTED_RESIDUAL) {
        return Err(ModelError::Convergence {
            what: "cell current solve",
            iterations,
            residual: r,
        });
    }
    Ok(i)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolarizationPoint {
    /// V
    pub voltage: f64,
    /// A/m^2
    pub current_density: f64,
    /// W/m^2
    pub power_density: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct PolarizationCurve {
    pub points: Vec<PolarizationPoint>,
}

impl PolarizationCurve {
    /// True when current never decreases as voltage decreases.
    pub fn is_monotone(&self) -> bool {
        let mut sorted = self.points.clone();
        sorted.sort_by(|a, b| b.voltage.total_cmp(&a.voltage));
        sorted
            .windows(2)
            .all(|w| w[1].current_density >= w[0].current_density)
    }
}

/// Solve the budget at every requested voltage.
pub fn polarization_curve(
    cell: &CellSpec,
    op: &OperatingPoint,
    voltages: &[f64],
) -> Result<PolarizationCurve> {
    if voltages.is_empty() {
        return Err(ModelError::domain("voltages", 0.0, "a non-empty list"));
    }
    let reversible = reversible_voltage(op)?;
    let mut points = Vec::with_capacity(voltages.len());
    for &voltage in voltages {
        let at = |source: ModelError| ModelError::AtVoltage {
            voltage,
            source: Box::new(source),
        };
        if !(voltage > 0.0 && voltage <= reversible) {
            return Err(at(ModelError::domain(
                "cell_voltage",
                voltage,
                "0 < V <= E_rev",
            )));
        }
        let current_density = solve_current_at_voltage(cell, op, voltage).map_err(at)?;
        points.push(PolarizationPoint {
            voltage,
            current_density,
            power_density: voltage * current_density,
        });
    }
    Ok(PolarizationCurve { points })
}
