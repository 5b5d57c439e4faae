//! Cell description: geometry, MEA properties, electrode kinetics and operating point,
//! with built-in presets for the cubic, pentagonal and hexagonal channel models.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::water::saturation_pressure;
use crate::{ModelError, PhysicalConstants, Result};

/// Channel cross-section family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelTag {
    Cubic,
    Pentagonal,
    Hexagonal,
}

impl ModelTag {
    pub const ALL: [ModelTag; 3] = [ModelTag::Cubic, ModelTag::Pentagonal, ModelTag::Hexagonal];

    pub fn name(self) -> &'static str {
        match self {
            ModelTag::Cubic => "cubic",
            ModelTag::Pentagonal => "pentagonal",
            ModelTag::Hexagonal => "hexagonal",
        }
    }

    /// Number of sides of the channel cross-section.
    pub fn sides(self) -> u32 {
        match self {
            ModelTag::Cubic => 4,
            ModelTag::Pentagonal => 5,
            ModelTag::Hexagonal => 6,
        }
    }

    /// Darcy friction constant `f Re` for fully developed laminar flow in a regular
    /// polygonal duct (Shah & London; 4x the Fanning values 14.227, 14.737, 15.054).
    pub fn friction_constant(self) -> f64 {
        match self {
            ModelTag::Cubic => 56.91,
            ModelTag::Pentagonal => 58.95,
            ModelTag::Hexagonal => 60.22,
        }
    }
}

impl fmt::Display for ModelTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelTag {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "cubic" | "cubical" => Ok(ModelTag::Cubic),
            "pentagonal" => Ok(ModelTag::Pentagonal),
            "hexagonal" => Ok(ModelTag::Hexagonal),
            other => Err(format!(
                "unknown preset `{other}` (expected cubic, pentagonal or hexagonal)"
            )),
        }
    }
}

const MM: f64 = 1e-3;
const MM2: f64 = 1e-6;

/// Channel and MEA geometry. Lengths in m, areas in m^2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CellGeometry {
    pub channel_side: f64,
    pub channel_length: f64,
    /// Channel inlet cross-section.
    pub inlet_area: f64,
    /// Wetted MEA area.
    pub active_area: f64,
    pub gdl_thickness: f64,
    pub cl_thickness: f64,
    pub membrane_thickness: f64,
    pub model_tag: ModelTag,
}

impl CellGeometry {
    pub fn preset(tag: ModelTag) -> Self {
        let (side, length, inlet) = match tag {
            ModelTag::Cubic => (1.0, 50.0, 1.0),
            ModelTag::Pentagonal => (0.4, 123.5, 0.28),
            ModelTag::Hexagonal => (0.3, 151.5, 0.28),
        };
        CellGeometry {
            channel_side: side * MM,
            channel_length: length * MM,
            inlet_area: inlet * MM2,
            active_area: 100.0 * MM2,
            gdl_thickness: 0.26 * MM,
            cl_thickness: 0.03 * MM,
            membrane_thickness: 0.23 * MM,
            model_tag: tag,
        }
    }

    /// Hydraulic diameter `4 A / perimeter` of the polygonal channel.
    pub fn hydraulic_diameter(&self) -> f64 {
        4.0 * self.inlet_area / (f64::from(self.model_tag.sides()) * self.channel_side)
    }

    /// Catalyst-layer volume under the active area.
    pub fn catalyst_volume(&self) -> f64 {
        self.active_area * self.cl_thickness
    }

    pub fn validate(&self) -> Result<()> {
        for (quantity, v) in [
            ("channel_side", self.channel_side),
            ("channel_length", self.channel_length),
            ("inlet_area", self.inlet_area),
            ("active_area", self.active_area),
            ("gdl_thickness", self.gdl_thickness),
            ("cl_thickness", self.cl_thickness),
            ("membrane_thickness", self.membrane_thickness),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(ModelError::domain(quantity, v, "> 0"));
            }
        }
        if !(self.active_area > self.inlet_area) {
            return Err(ModelError::domain(
                "active_area",
                self.active_area,
                "> inlet_area",
            ));
        }
        Ok(())
    }
}

/// Membrane electrode assembly properties.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeaProperties {
    pub porosity_gdl: f64,
    pub porosity_cl: f64,
    pub porosity_mem: f64,
    /// Electronic conductivity of the electrode, S/m.
    pub sigma_sol: f64,
    /// Protonic conductivity of the membrane, S/m.
    pub sigma_mem: f64,
    /// W/(m K)
    pub k_eff_electrode: f64,
    /// m^2
    pub permeability: f64,
    /// Ohm m^2
    pub contact_resistance: f64,
}

impl Default for MeaProperties {
    fn default() -> Self {
        MeaProperties {
            porosity_gdl: 0.5,
            porosity_cl: 0.5,
            porosity_mem: 0.6,
            sigma_sol: 100.0,
            sigma_mem: 17.1,
            k_eff_electrode: 1.3,
            permeability: 1e-12,
            contact_resistance: 0.0,
        }
    }
}

impl MeaProperties {
    pub fn validate(&self) -> Result<()> {
        for (quantity, v) in [
            ("porosity_gdl", self.porosity_gdl),
            ("porosity_cl", self.porosity_cl),
            ("porosity_mem", self.porosity_mem),
        ] {
            if !(v > 0.0 && v < 1.0) {
                return Err(ModelError::domain(quantity, v, "0 < ε < 1"));
            }
        }
        for (quantity, v) in [
            ("sigma_sol", self.sigma_sol),
            ("sigma_mem", self.sigma_mem),
            ("k_eff_electrode", self.k_eff_electrode),
            ("permeability", self.permeability),
        ] {
            if !(v > 0.0) {
                return Err(ModelError::domain(quantity, v, "> 0"));
            }
        }
        if !(self.contact_resistance >= 0.0) {
            return Err(ModelError::domain(
                "contact_resistance",
                self.contact_resistance,
                ">= 0",
            ));
        }
        Ok(())
    }
}

/// Butler–Volmer parameters of one catalyst layer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ElectrodeKinetics {
    /// Product of specific area and reference exchange current density, A/m^3.
    pub volumetric_exchange_current: f64,
    pub alpha_anodic: f64,
    pub alpha_cathodic: f64,
    /// Concentration dependency γ.
    pub concentration_exponent: f64,
    /// mol/m^3
    pub reference_concentration: f64,
}

/// Reference state for reactant concentrations: 1 atm, 353.15 K, saturated inlet.
fn reference_dry_concentration(dry_mole_fraction: f64) -> f64 {
    let c = PhysicalConstants::STANDARD;
    let t = 353.15;
    let p_sat = saturation_pressure(t).expect("353.15 K lies inside the correlation range");
    dry_mole_fraction * (101_325.0 - p_sat) / (c.gas_constant * t)
}

impl ElectrodeKinetics {
    pub fn anode_preset() -> Self {
        ElectrodeKinetics {
            volumetric_exchange_current: 30.0,
            alpha_anodic: 0.5,
            alpha_cathodic: 1.0,
            concentration_exponent: 0.5,
            reference_concentration: reference_dry_concentration(1.0),
        }
    }

    pub fn cathode_preset() -> Self {
        ElectrodeKinetics {
            volumetric_exchange_current: 0.004,
            alpha_anodic: 0.5,
            alpha_cathodic: 1.0,
            concentration_exponent: 1.0,
            reference_concentration: reference_dry_concentration(
                MassFractions::preset(ModelTag::Cubic).dry_oxygen_mole_fraction(),
            ),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.volumetric_exchange_current > 0.0) {
            return Err(ModelError::domain(
                "volumetric_exchange_current",
                self.volumetric_exchange_current,
                "> 0",
            ));
        }
        for (quantity, v) in [
            ("alpha_anodic", self.alpha_anodic),
            ("alpha_cathodic", self.alpha_cathodic),
        ] {
            if !(v > 0.0 && v <= 2.0) {
                return Err(ModelError::domain(quantity, v, "0 < α <= 2"));
            }
        }
        if !(self.concentration_exponent >= 0.0) {
            return Err(ModelError::domain(
                "concentration_exponent",
                self.concentration_exponent,
                ">= 0",
            ));
        }
        if !(self.reference_concentration > 0.0) {
            return Err(ModelError::domain(
                "reference_concentration",
                self.reference_concentration,
                "> 0",
            ));
        }
        Ok(())
    }
}

/// Inlet mass fractions of both streams. The cathode balance is nitrogen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MassFractions {
    pub anode_h2: f64,
    pub anode_h2o: f64,
    pub cathode_o2: f64,
    pub cathode_h2o: f64,
    pub cathode_n2: f64,
}

impl MassFractions {
    pub fn preset(tag: ModelTag) -> Self {
        let cathode_o2 = match tag {
            ModelTag::Pentagonal => 0.150,
            ModelTag::Cubic | ModelTag::Hexagonal => 0.151,
        };
        MassFractions {
            anode_h2: 0.113,
            anode_h2o: 0.886,
            cathode_o2,
            cathode_h2o: 0.353,
            cathode_n2: 1.0 - cathode_o2 - 0.353,
        }
    }

    /// O2 mole fraction of the water-free cathode gas.
    pub fn dry_oxygen_mole_fraction(&self) -> f64 {
        let c = PhysicalConstants::STANDARD;
        let o2 = self.cathode_o2 / c.molar_mass_o2;
        let n2 = self.cathode_n2 / c.molar_mass_n2;
        if o2 + n2 > 0.0 {
            o2 / (o2 + n2)
        } else {
            0.0
        }
    }

    /// Mean molar mass of the cathode stream, kg/mol.
    pub fn cathode_molar_mass(&self) -> f64 {
        let c = PhysicalConstants::STANDARD;
        let moles = self.cathode_o2 / c.molar_mass_o2
            + self.cathode_h2o / c.molar_mass_h2o
            + self.cathode_n2 / c.molar_mass_n2;
        (self.cathode_o2 + self.cathode_h2o + self.cathode_n2) / moles
    }

    pub fn validate(&self) -> Result<()> {
        let all = [
            ("anode_h2", self.anode_h2),
            ("anode_h2o", self.anode_h2o),
            ("cathode_o2", self.cathode_o2),
            ("cathode_h2o", self.cathode_h2o),
            ("cathode_n2", self.cathode_n2),
        ];
        for (quantity, v) in all {
            if !(0.0..=1.0).contains(&v) {
                return Err(ModelError::domain(quantity, v, "0 <= w <= 1"));
            }
        }
        let anode = self.anode_h2 + self.anode_h2o;
        if (anode - 1.0).abs() > 0.01 {
            return Err(ModelError::domain(
                "anode mass fraction sum",
                anode,
                "1 ± 0.01",
            ));
        }
        let cathode = self.cathode_o2 + self.cathode_h2o + self.cathode_n2;
        if (cathode - 1.0).abs() > 0.01 {
            return Err(ModelError::domain(
                "cathode mass fraction sum",
                cathode,
                "1 ± 0.01",
            ));
        }
        Ok(())
    }
}

/// Inlet operating conditions (SI).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OperatingPoint {
    pub inlet_pressure: f64,
    pub inlet_temperature: f64,
    pub rh_anode: f64,
    pub rh_cathode: f64,
    pub stoich_anode: f64,
    pub stoich_cathode: f64,
    /// kg/s
    pub mass_flow_anode: f64,
    pub mass_flow_cathode: f64,
    pub mass_fractions: MassFractions,
}

/// Reactant and vapor partial pressures at the inlet, Pa.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartialPressures {
    pub hydrogen: f64,
    pub oxygen: f64,
    pub vapor_anode: f64,
    pub vapor_cathode: f64,
}

impl OperatingPoint {
    pub fn preset(tag: ModelTag) -> Self {
        OperatingPoint {
            inlet_pressure: 101_325.0,
            inlet_temperature: 353.15,
            rh_anode: 1.0,
            rh_cathode: 1.0,
            stoich_anode: 1.2,
            stoich_cathode: 2.0,
            mass_flow_anode: 1.3e-7,
            mass_flow_cathode: 1.4e-6,
            mass_fractions: MassFractions::preset(tag),
        }
    }

    pub fn with_inlet(mut self, pressure: f64, temperature: f64) -> Self {
        self.inlet_pressure = pressure;
        self.inlet_temperature = temperature;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.inlet_pressure > 0.0) {
            return Err(ModelError::domain(
                "inlet_pressure",
                self.inlet_pressure,
                "> 0",
            ));
        }
        if !(self.inlet_temperature > 0.0) {
            return Err(ModelError::domain(
                "inlet_temperature",
                self.inlet_temperature,
                "> 0",
            ));
        }
        for (quantity, v) in [("rh_anode", self.rh_anode), ("rh_cathode", self.rh_cathode)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(ModelError::domain(quantity, v, "0 <= RH <= 1"));
            }
        }
        for (quantity, v) in [
            ("mass_flow_anode", self.mass_flow_anode),
            ("mass_flow_cathode", self.mass_flow_cathode),
        ] {
            if !(v >= 0.0) {
                return Err(ModelError::domain(quantity, v, ">= 0"));
            }
        }
        self.mass_fractions.validate()
    }

    /// Partial pressures with the vapor set by relative humidity at the inlet
    /// temperature and the reactant taking its dry-gas share of the remainder.
    pub fn partial_pressures(&self) -> Result<PartialPressures> {
        self.validate()?;
        let p_sat = saturation_pressure(self.inlet_temperature)?;
        let vapor_anode = self.rh_anode * p_sat;
        let vapor_cathode = self.rh_cathode * p_sat;
        let dry_anode = self.inlet_pressure - vapor_anode;
        let dry_cathode = self.inlet_pressure - vapor_cathode;
        if !(dry_anode > 0.0 && dry_cathode > 0.0) {
            return Err(ModelError::domain(
                "inlet_pressure",
                self.inlet_pressure,
                "above the inlet vapor pressure",
            ));
        }
        Ok(PartialPressures {
            hydrogen: dry_anode,
            oxygen: self.mass_fractions.dry_oxygen_mole_fraction() * dry_cathode,
            vapor_anode,
            vapor_cathode,
        })
    }
}

/// Everything the loss-budget solver needs to know about a cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CellSpec {
    pub geometry: CellGeometry,
    pub mea: MeaProperties,
    pub anode: ElectrodeKinetics,
    pub cathode: ElectrodeKinetics,
    /// Mass-transport limiting current density, A/m^2.
    pub limiting_current: f64,
}

impl CellSpec {
    pub const DEFAULT_LIMITING_CURRENT: f64 = 1.4e4;

    pub fn preset(tag: ModelTag) -> Self {
        CellSpec {
            geometry: CellGeometry::preset(tag),
            mea: MeaProperties::default(),
            anode: ElectrodeKinetics::anode_preset(),
            cathode: ElectrodeKinetics::cathode_preset(),
            limiting_current: Self::DEFAULT_LIMITING_CURRENT,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.geometry.validate()?;
        self.mea.validate()?;
        self.anode.validate()?;
        self.cathode.validate()?;
        if !(self.limiting_current > 0.0) {
            return Err(ModelError::domain(
                "limiting_current",
                self.limiting_current,
                "> 0",
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn geometry_presets_match_the_published_table() {
        let c = CellGeometry::preset(ModelTag::Cubic);
        let p = CellGeometry::preset(ModelTag::Pentagonal);
        let h = CellGeometry::preset(ModelTag::Hexagonal);
        assert_relative_eq!(c.channel_length, 0.050);
        assert_relative_eq!(p.channel_length, 0.1235);
        assert_relative_eq!(h.channel_length, 0.1515);
        assert_relative_eq!(c.inlet_area, 1e-6);
        assert_relative_eq!(p.inlet_area, 0.28e-6);
        assert_relative_eq!(h.inlet_area, 0.28e-6);
        assert_relative_eq!(c.channel_side, 1e-3);
        assert_relative_eq!(p.channel_side, 0.4e-3);
        assert_relative_eq!(h.channel_side, 0.3e-3);
        for g in [c, p, h] {
            assert_relative_eq!(g.active_area, 1e-4);
            assert_relative_eq!(g.gdl_thickness, 0.26e-3);
            assert_relative_eq!(g.cl_thickness, 0.03e-3);
            assert_relative_eq!(g.membrane_thickness, 0.23e-3);
            g.validate().unwrap();
        }
    }

    #[test]
    fn square_channel_hydraulic_diameter_is_its_side() {
        let c = CellGeometry::preset(ModelTag::Cubic);
        assert_relative_eq!(c.hydraulic_diameter(), 1e-3, max_relative = 1e-12);
        let p = CellGeometry::preset(ModelTag::Pentagonal);
        assert_relative_eq!(p.hydraulic_diameter(), 0.56e-3, max_relative = 1e-12);
    }

    #[test]
    fn mea_preset_matches_the_published_table() {
        let m = MeaProperties::default();
        assert_eq!(m.porosity_gdl, 0.5);
        assert_eq!(m.porosity_cl, 0.5);
        assert_eq!(m.porosity_mem, 0.6);
        assert_eq!(m.sigma_sol, 100.0);
        assert_eq!(m.sigma_mem, 17.1);
        assert_eq!(m.k_eff_electrode, 1.3);
        m.validate().unwrap();
    }

    #[test]
    fn kinetics_presets() {
        let a = ElectrodeKinetics::anode_preset();
        let c = ElectrodeKinetics::cathode_preset();
        assert_eq!(a.volumetric_exchange_current, 30.0);
        assert_eq!(c.volumetric_exchange_current, 0.004);
        assert_eq!((a.alpha_anodic, a.alpha_cathodic), (0.5, 1.0));
        assert_eq!((c.alpha_anodic, c.alpha_cathodic), (0.5, 1.0));
        a.validate().unwrap();
        c.validate().unwrap();
    }

    #[test]
    fn operating_presets() {
        for tag in ModelTag::ALL {
            let op = OperatingPoint::preset(tag);
            assert_eq!(op.inlet_pressure, 101_325.0);
            assert_eq!(op.inlet_temperature, 353.15);
            assert_eq!((op.rh_anode, op.rh_cathode), (1.0, 1.0));
            assert_eq!((op.stoich_anode, op.stoich_cathode), (1.2, 2.0));
            assert_eq!((op.mass_flow_anode, op.mass_flow_cathode), (1.3e-7, 1.4e-6));
            op.validate().unwrap();
        }
        assert_eq!(
            OperatingPoint::preset(ModelTag::Pentagonal)
                .mass_fractions
                .cathode_o2,
            0.150
        );
        assert_eq!(
            OperatingPoint::preset(ModelTag::Hexagonal)
                .mass_fractions
                .cathode_o2,
            0.151
        );
    }

    #[test]
    fn cathode_stream_is_humid_air() {
        let f = MassFractions::preset(ModelTag::Cubic);
        assert_relative_eq!(f.dry_oxygen_mole_fraction(), 0.21, epsilon = 0.002);
    }

    #[test]
    fn mass_fraction_sum_is_checked() {
        let mut f = MassFractions::preset(ModelTag::Cubic);
        f.anode_h2 = 0.5;
        assert!(f.validate().is_err());
    }

    #[test]
    fn partial_pressures_at_table_conditions() {
        let pp = OperatingPoint::preset(ModelTag::Cubic)
            .partial_pressures()
            .unwrap();
        assert_relative_eq!(
            pp.hydrogen + pp.vapor_anode,
            101_325.0,
            max_relative = 1e-14
        );
        assert!(pp.oxygen > 0.0 && pp.oxygen < pp.hydrogen);
    }

    #[test]
    fn preset_names_parse() {
        for tag in ModelTag::ALL {
            assert_eq!(tag.name().parse::<ModelTag>().unwrap(), tag);
        }
        assert!("triangular".parse::<ModelTag>().is_err());
    }
}
