//! Porous-media transport relations for the gas diffusion and catalyst layers.

use serde::{Deserialize, Serialize};

use crate::{ModelError, PhysicalConstants, Result};

/// `ε k_f + (1 - ε) k_s`.
pub fn effective_thermal_conductivity(porosity: f64, k_fluid: f64, k_solid: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&porosity) {
        return Err(ModelError::domain("porosity", porosity, "0 <= ε <= 1"));
    }
    if !(k_fluid >= 0.0 && k_solid >= 0.0) {
        return Err(ModelError::domain(
            "conductivity",
            k_fluid.min(k_solid),
            ">= 0",
        ));
    }
    Ok(porosity * k_fluid + (1.0 - porosity) * k_solid)
}

/// Effective diffusivity corrected for porosity, pore blockage by liquid water,
/// pressure and temperature: `ε^1.5 (1-s)^2.5 D0 (P0/P) (T/T0)^1.5`.
#[allow(clippy::too_many_arguments)]
pub fn effective_diffusivity(
    ref_diffusivity: f64,
    porosity: f64,
    saturation: f64,
    pressure: f64,
    temperature: f64,
    ref_pressure: f64,
    ref_temperature: f64,
) -> Result<f64> {
    if !(0.0..=1.0).contains(&porosity) {
        return Err(ModelError::domain("porosity", porosity, "0 <= ε <= 1"));
    }
    if !(0.0..=1.0).contains(&saturation) {
        return Err(ModelError::domain("saturation", saturation, "0 <= s <= 1"));
    }
    for (quantity, v) in [
        ("pressure", pressure),
        ("temperature", temperature),
        ("ref_pressure", ref_pressure),
        ("ref_temperature", ref_temperature),
    ] {
        if !(v > 0.0) {
            return Err(ModelError::domain(quantity, v, "> 0"));
        }
    }
    Ok(porosity.powf(1.5)
        * (1.0 - saturation).powf(2.5)
        * ref_diffusivity
        * (ref_pressure / pressure)
        * (temperature / ref_temperature).powf(1.5))
}

/// Liquid water saturation `V_liquid / V_total`.
pub fn liquid_saturation(liquid_volume: f64, total_volume: f64) -> Result<f64> {
    if !(total_volume > 0.0) {
        return Err(ModelError::domain("total_volume", total_volume, "> 0"));
    }
    if !(0.0..=total_volume).contains(&liquid_volume) {
        return Err(ModelError::domain(
            "liquid_volume",
            liquid_volume,
            "0 <= V_liquid <= V_total",
        ));
    }
    Ok(liquid_volume / total_volume)
}

/// Darcy momentum sink along one axis, `-(μ/β) u`, in Pa/m.
pub fn darcy_pressure_gradient(viscosity: f64, permeability: f64, velocity: f64) -> Result<f64> {
    if !(permeability > 0.0) {
        return Err(ModelError::domain("permeability", permeability, "> 0"));
    }
    if !(viscosity > 0.0) {
        return Err(ModelError::domain("viscosity", viscosity, "> 0"));
    }
    Ok(-(viscosity / permeability) * velocity)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Species {
    H2,
    O2,
    /// Water produced at the cathode.
    H2O,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SourceBasis {
    /// kg/(m^3 s)
    Mass,
    /// mol/(m^3 s)
    Molar,
}

/// Catalyst-layer species source for a volumetric transfer current `rate` (A/m^3).
///
/// Hydrogen consumes `R_a / 2F`, oxygen `R_c / 4F`, and water is produced at `R_c / 2F`.
pub fn species_source(species: Species, rate: f64, basis: SourceBasis) -> Result<f64> {
    if !(rate >= 0.0) {
        return Err(ModelError::domain("rate", rate, ">= 0"));
    }
    let c = PhysicalConstants::STANDARD;
    let (molar, molar_mass) = match species {
        Species::H2 => (-rate / (2.0 * c.faraday), c.molar_mass_h2),
        Species::O2 => (-rate / (4.0 * c.faraday), c.molar_mass_o2),
        Species::H2O => (rate / (2.0 * c.faraday), c.molar_mass_h2o),
    };
    Ok(match basis {
        SourceBasis::Molar => molar,
        SourceBasis::Mass => molar * molar_mass,
    })
}

/// Local gas state inside a porous layer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GasState {
    pub pressure: f64,
    pub temperature: f64,
    /// mol/m^3, indexed like [`Species`]
    pub concentrations: Vec<(Species, f64)>,
    pub liquid_volume: f64,
    pub total_pore_volume: f64,
    /// m^2/s at the reference state, per species
    pub reference_diffusivity: Vec<(Species, f64)>,
    pub reference_pressure: f64,
    pub reference_temperature: f64,
    pub viscosity: f64,
}

impl GasState {
    pub fn saturation(&self) -> Result<f64> {
        liquid_saturation(self.liquid_volume, self.total_pore_volume)
    }

    pub fn concentration(&self, species: Species) -> Option<f64> {
        lookup(&self.concentrations, species)
    }

    /// Effective diffusivity of `species` in a layer with the given porosity.
    pub fn effective_diffusivity(&self, species: Species, porosity: f64) -> Result<f64> {
        let d0 = lookup(&self.reference_diffusivity, species).ok_or(ModelError::Domain {
            quantity: "reference_diffusivity",
            value: f64::NAN,
            expected: "an entry for the requested species",
        })?;
        effective_diffusivity(
            d0,
            porosity,
            self.saturation()?,
            self.pressure,
            self.temperature,
            self.reference_pressure,
            self.reference_temperature,
        )
    }
}

fn lookup(table: &[(Species, f64)], species: Species) -> Option<f64> {
    table.iter().find(|(s, _)| *s == species).map(|(_, v)| *v)
}
