//! Membrane water relations: saturation pressure, activity, Springer water content
//! and electro-osmotic drag.

use crate::constants::{KELVIN_OFFSET, PA_PER_ATM};
use crate::{ModelError, PhysicalConstants, Result};

const SAT_T_MIN: f64 = 273.15;
const SAT_T_MAX: f64 = 423.15;

/// Water saturation pressure in Pa.
///
/// Springer's correlation, `log10(p_sat / atm) = -2.1794 + 0.02953 t - 9.1837e-5 t^2
/// + 1.4454e-7 t^3` with `t` in degrees Celsius. Valid between 0 and 150 °C.
pub fn saturation_pressure(temperature: f64) -> Result<f64> {
    if !(SAT_T_MIN..=SAT_T_MAX).contains(&temperature) {
        return Err(ModelError::domain(
            "temperature",
            temperature,
            "273.15 K <= T <= 423.15 K",
        ));
    }
    let t = temperature - KELVIN_OFFSET;
    let log10_atm = -2.1794 + 0.02953 * t - 9.1837e-5 * t * t + 1.4454e-7 * t * t * t;
    Ok(10f64.powf(log10_atm) * PA_PER_ATM)
}

/// Water activity `p_v / p_sat`, clamped to `[0, 3]`.
pub fn water_activity(vapor_pressure: f64, sat_pressure: f64) -> Result<f64> {
    if !(sat_pressure > 0.0) {
        return Err(ModelError::domain("sat_pressure", sat_pressure, "> 0"));
    }
    if !(vapor_pressure >= 0.0) {
        return Err(ModelError::domain("vapor_pressure", vapor_pressure, ">= 0"));
    }
    Ok((vapor_pressure / sat_pressure).clamp(0.0, 3.0))
}

fn vapor_branch(a: f64) -> f64 {
    0.043 + 17.81 * a - 39.85 * a * a + 36.0 * a * a * a
}

fn liquid_branch(a: f64) -> f64 {
    14.0 + 1.4 * (a - 1.0)
}

/// Membrane water content λ (water molecules per sulfonic acid site).
///
/// The cubic vapor branch applies for `a < 1`; the linear branch for `a >= 1`. The two
/// printed branches disagree by 0.003 at `a = 1`; the linear branch owns that point.
pub fn membrane_water_content(activity: f64) -> Result<f64> {
    if !(activity >= 0.0) {
        return Err(ModelError::domain("activity", activity, ">= 0"));
    }
    let lambda = if activity < 1.0 {
        vapor_branch(activity)
    } else {
        liquid_branch(activity)
    };
    Ok(lambda.max(0.0))
}

/// Electro-osmotic drag coefficient `n_d = 2.5 λ / 22`.
pub fn drag_coefficient(water_content: f64) -> f64 {
    2.5 * water_content / 22.0
}

/// Water flux dragged through the membrane by the proton current, mol/(m^2 s).
pub fn electroosmotic_drag_flux(water_content: f64, current_density: f64) -> Result<f64> {
    if !(water_content >= 0.0) {
        return Err(ModelError::domain("water_content", water_content, ">= 0"));
    }
    if !(current_density >= 0.0) {
        return Err(ModelError::domain(
            "current_density",
            current_density,
            ">= 0",
        ));
    }
    Ok(drag_coefficient(water_content) * current_density / PhysicalConstants::STANDARD.faraday)
}
