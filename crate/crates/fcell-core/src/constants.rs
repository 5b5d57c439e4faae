use serde::{Deserialize, Serialize};

/// One standard atmosphere in pascal.
pub const PA_PER_ATM: f64 = 101_325.0;
/// Offset between the Kelvin and Celsius scales.
pub const KELVIN_OFFSET: f64 = 273.15;

pub fn atm_to_pa(atm: f64) -> f64 {
    atm * PA_PER_ATM
}

pub fn pa_to_atm(pa: f64) -> f64 {
    pa / PA_PER_ATM
}

pub fn celsius_to_kelvin(c: f64) -> f64 {
    c + KELVIN_OFFSET
}

pub fn kelvin_to_celsius(k: f64) -> f64 {
    k - KELVIN_OFFSET
}

/// Physical constants used throughout the model (SI).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    /// C/mol
    pub faraday: f64,
    /// J/(mol K)
    pub gas_constant: f64,
    /// kg/mol
    pub molar_mass_h2: f64,
    pub molar_mass_o2: f64,
    pub molar_mass_h2o: f64,
    /// Inert balance of the cathode air stream.
    pub molar_mass_n2: f64,
}

impl PhysicalConstants {
    pub const STANDARD: PhysicalConstants = PhysicalConstants {
        faraday: 96_485.0,
        gas_constant: 8.314,
        molar_mass_h2: 2.016e-3,
        molar_mass_o2: 32.00e-3,
        molar_mass_h2o: 18.015e-3,
        molar_mass_n2: 28.0134e-3,
    };

    /// F/(RT) in 1/V.
    pub fn inverse_thermal_voltage(&self, temperature: f64) -> f64 {
        self.faraday / (self.gas_constant * temperature)
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::STANDARD
    }
}
