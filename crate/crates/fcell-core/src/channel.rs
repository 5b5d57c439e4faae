//! Flow-channel bookkeeping: Faraday species balance between inlet and outlet, and the
//! laminar pressure drop used for pumping (consumption) power.

use serde::{Deserialize, Serialize};

use crate::{CellGeometry, ModelError, OperatingPoint, PhysicalConstants, Result};

/// Species mass flows of both streams, kg/s.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StreamFlows {
    pub anode_h2: f64,
    pub anode_h2o: f64,
    pub cathode_o2: f64,
    pub cathode_h2o: f64,
    pub cathode_n2: f64,
}

impl StreamFlows {
    pub fn total(&self) -> f64 {
        self.anode_h2 + self.anode_h2o + self.cathode_o2 + self.cathode_h2o + self.cathode_n2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OutletState {
    pub inlet: StreamFlows,
    pub outlet: StreamFlows,
    pub consumed_h2: f64,
    pub consumed_o2: f64,
    pub produced_h2o: f64,
}

impl OutletState {
    /// `(in - consumed + produced - out) / in`; zero up to rounding.
    pub fn mass_balance_residual(&self) -> f64 {
        let inlet = self.inlet.total();
        (inlet - self.consumed_h2 - self.consumed_o2 + self.produced_h2o - self.outlet.total())
            / inlet
    }
}

/// Outlet species flows after the cell draws `total_current` amperes.
///
/// Hydrogen drops by `M_H2 I / 2F`, oxygen by `M_O2 I / 4F`, and product water
/// `M_H2O I / 2F` joins the cathode stream.
pub fn channel_outlet_state(
    op: &OperatingPoint,
    constants: &PhysicalConstants,
    total_current: f64,
) -> Result<OutletState> {
    if !(total_current >= 0.0) {
        return Err(ModelError::domain("total_current", total_current, ">= 0"));
    }
    op.validate()?;
    let w = &op.mass_fractions;
    let inlet = StreamFlows {
        anode_h2: op.mass_flow_anode * w.anode_h2,
        anode_h2o: op.mass_flow_anode * w.anode_h2o,
        cathode_o2: op.mass_flow_cathode * w.cathode_o2,
        cathode_h2o: op.mass_flow_cathode * w.cathode_h2o,
        cathode_n2: op.mass_flow_cathode * w.cathode_n2,
    };
    let f = constants.faraday;
    let consumed_h2 = constants.molar_mass_h2 * total_current / (2.0 * f);
    let consumed_o2 = constants.molar_mass_o2 * total_current / (4.0 * f);
    let produced_h2o = constants.molar_mass_h2o * total_current / (2.0 * f);
    if consumed_h2 > inlet.anode_h2 {
        return Err(ModelError::Starvation {
            species: "H2",
            consumed: consumed_h2,
            supplied: inlet.anode_h2,
        });
    }
    if consumed_o2 > inlet.cathode_o2 {
        return Err(ModelError::Starvation {
            species: "O2",
            consumed: consumed_o2,
            supplied: inlet.cathode_o2,
        });
    }
    let outlet = StreamFlows {
        anode_h2: inlet.anode_h2 - consumed_h2,
        cathode_o2: inlet.cathode_o2 - consumed_o2,
        cathode_h2o: inlet.cathode_h2o + produced_h2o,
        ..inlet
    };
    Ok(OutletState {
        inlet,
        outlet,
        consumed_h2,
        consumed_o2,
        produced_h2o,
    })
}

/// Laminar channel flow summary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelFlow {
    /// Pa
    pub pressure_drop: f64,
    /// Mean inlet velocity, m/s.
    pub velocity: f64,
    pub reynolds: f64,
    /// False when the Reynolds number exceeds 2300 and the correlation is extrapolated.
    pub laminar: bool,
}

pub const LAMINAR_REYNOLDS_LIMIT: f64 = 2300.0;

/// Fully developed laminar pressure drop `(f Re) μ L u / (2 D_h^2)` with
/// `u = mass_flow / (ρ A_in)`.
pub fn channel_pressure_drop(
    geometry: &CellGeometry,
    viscosity: f64,
    density: f64,
    mass_flow: f64,
) -> Result<ChannelFlow> {
    let d_h = geometry.hydraulic_diameter();
    if !(d_h > 0.0 && d_h.is_finite()) {
        return Err(ModelError::domain("hydraulic_diameter", d_h, "> 0"));
    }
    if !(viscosity > 0.0) {
        return Err(ModelError::domain("viscosity", viscosity, "> 0"));
    }
    if !(density > 0.0) {
        return Err(ModelError::domain("density", density, "> 0"));
    }
    if !(mass_flow >= 0.0) {
        return Err(ModelError::domain("mass_flow", mass_flow, ">= 0"));
    }
    let velocity = mass_flow / (density * geometry.inlet_area);
    let reynolds = density * velocity * d_h / viscosity;
    let pressure_drop =
        geometry.model_tag.friction_constant() * viscosity * geometry.channel_length * velocity
            / (2.0 * d_h * d_h);
    Ok(ChannelFlow {
        pressure_drop,
        velocity,
        reynolds,
        laminar: reynolds <= LAMINAR_REYNOLDS_LIMIT,
    })
}

/// Dynamic viscosity of air by Sutherland's law, Pa s.
pub fn air_viscosity(temperature: f64) -> f64 {
    const MU_REF: f64 = 1.716e-5;
    const T_REF: f64 = 273.15;
    const SUTHERLAND: f64 = 110.4;
    MU_REF * (temperature / T_REF).powf(1.5) * (T_REF + SUTHERLAND) / (temperature + SUTHERLAND)
}

/// Ideal-gas density of the humidified cathode stream at the inlet, kg/m^3.
pub fn cathode_density(op: &OperatingPoint) -> f64 {
    op.inlet_pressure * op.mass_fractions.cathode_molar_mass()
        / (PhysicalConstants::STANDARD.gas_constant * op.inlet_temperature)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ModelTag;
    use approx::assert_relative_eq;

    #[test]
    fn no_current_no_change() {
        let op = OperatingPoint::preset(ModelTag::Cubic);
        let s = channel_outlet_state(&op, &PhysicalConstants::STANDARD, 0.0).unwrap();
        assert_eq!(s.inlet, s.outlet);
    }

    #[test]
    fn one_ampere_faraday_balance() {
        let op = OperatingPoint::preset(ModelTag::Cubic);
        let s = channel_outlet_state(&op, &PhysicalConstants::STANDARD, 1.0).unwrap();
        assert_relative_eq!(s.consumed_h2, 1.0447e-8, max_relative = 1e-4);
        assert_relative_eq!(s.consumed_o2, 8.2914e-8, max_relative = 1e-4);
        assert_relative_eq!(s.produced_h2o, 9.335e-8, max_relative = 1e-4);
        assert_relative_eq!(
            s.inlet.anode_h2 - s.outlet.anode_h2,
            s.consumed_h2,
            max_relative = 1e-9
        );
        assert!(s.mass_balance_residual().abs() <= 1e-12);
    }

    #[test]
    fn hydrogen_starvation_is_named() {
        let op = OperatingPoint::preset(ModelTag::Cubic);
        let err = channel_outlet_state(&op, &PhysicalConstants::STANDARD, 5.0).unwrap_err();
        assert!(matches!(err, ModelError::Starvation { species: "H2", .. }));
    }

    #[test]
    fn pressure_drop_closed_form() {
        let g = CellGeometry::preset(ModelTag::Cubic);
        let op = OperatingPoint::preset(ModelTag::Cubic);
        let mu = air_viscosity(353.15);
        let rho = cathode_density(&op);
        let flow = channel_pressure_drop(&g, mu, rho, 1.4e-6).unwrap();
        let u = 1.4e-6 / (rho * 1e-6);
        let expected = 56.91 * mu * 0.05 * u / (2.0 * 1e-3 * 1e-3);
        assert_relative_eq!(flow.pressure_drop, expected, max_relative = 1e-12);
        assert!(flow.laminar);
    }

    #[test]
    fn pressure_drop_scales_linearly() {
        let mut g = CellGeometry::preset(ModelTag::Pentagonal);
        assert_eq!(
            channel_pressure_drop(&g, 2e-5, 1.0, 0.0)
                .unwrap()
                .pressure_drop,
            0.0
        );
        let base = channel_pressure_drop(&g, 2e-5, 1.0, 1e-6)
            .unwrap()
            .pressure_drop;
        g.channel_length *= 2.0;
        let doubled = channel_pressure_drop(&g, 2e-5, 1.0, 1e-6)
            .unwrap()
            .pressure_drop;
        assert_relative_eq!(doubled, 2.0 * base, max_relative = 1e-14);
    }

    #[test]
    fn degenerate_channel_is_rejected() {
        let mut g = CellGeometry::preset(ModelTag::Cubic);
        g.inlet_area = 0.0;
        assert!(channel_pressure_drop(&g, 2e-5, 1.0, 1e-6).is_err());
    }

    #[test]
    fn air_viscosity_near_reference() {
        assert_relative_eq!(air_viscosity(273.15), 1.716e-5, max_relative = 1e-12);
        assert_relative_eq!(air_viscosity(353.15), 2.09e-5, max_relative = 0.01);
    }
}
