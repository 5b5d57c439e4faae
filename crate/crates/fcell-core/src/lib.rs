//! Reduced-order PEM fuel cell model.
//!
//! The cell is treated as an isothermal, zero-dimensional loss budget: Butler–Volmer
//! kinetics at each catalyst layer, an ohmic membrane loss, and a mass-transport loss,
//! closed against a Nernst reversible voltage. Around that budget sit the algebraic
//! transport relations (effective diffusivity, effective conductivity, Darcy sink,
//! species sources, membrane water content) and the production/consumption power
//! bookkeeping used by the optimization pipeline.
//!
//! All quantities are SI internally. Functions are pure.

// `!(x > 0.0)` style guards reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cell;
pub mod channel;
pub mod constants;
mod error;
pub mod kinetics;
pub mod polarization;
pub mod power;
pub mod transport;
pub mod water;

pub use cell::{
    CellGeometry, CellSpec, ElectrodeKinetics, MassFractions, MeaProperties, ModelTag,
    OperatingPoint,
};
pub use channel::{
    channel_outlet_state, channel_pressure_drop, ChannelFlow, OutletState, StreamFlows,
};
pub use constants::PhysicalConstants;
pub use error::{ModelError, Result};
pub use kinetics::{invert_transfer_current, transfer_current, Electrode};
pub use polarization::{
    average_current_density, concentration_overpotential, ohmic_overpotential, polarization_curve,
    reversible_voltage, solve_current_at_voltage, PolarizationCurve, PolarizationPoint,
};
pub use power::{evaluate_operating_point, power_report, PowerReport};
pub use transport::{
    darcy_pressure_gradient, effective_diffusivity, effective_thermal_conductivity,
    liquid_saturation, species_source, GasState, SourceBasis, Species,
};
pub use water::{
    electroosmotic_drag_flux, membrane_water_content, saturation_pressure, water_activity,
};
