//! Butler–Volmer volumetric transfer currents and their numerical inverse.

use serde::{Deserialize, Serialize};

use crate::{ElectrodeKinetics, ModelError, PhysicalConstants, Result};

/// Largest admissible `α |F η / R T|` before the exponentials are considered saturated.
pub const MAX_EXPONENT: f64 = 500.0;
/// Iteration cap shared by every bisection in the crate.
pub const MAX_ITERATIONS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Electrode {
    Anode,
    Cathode,
}

impl Electrode {
    /// +1 where the transfer current rises with η, -1 where it falls.
    fn orientation(self) -> f64 {
        match self {
            Electrode::Anode => 1.0,
            Electrode::Cathode => -1.0,
        }
    }
}

/// Volumetric transfer current in A/m^3.
///
/// Anode: `(ζ j_ref) (C/C_ref)^γ (exp(α_a F η / RT) - exp(-α_c F η / RT))`.
/// Cathode: the same magnitude with the bracket negated, so that `R_c >= 0` for `η <= 0`.
pub fn transfer_current(
    electrode: Electrode,
    kinetics: &ElectrodeKinetics,
    concentration_ratio: f64,
    overpotential: f64,
    temperature: f64,
) -> Result<f64> {
    if !(temperature > 0.0) {
        return Err(ModelError::domain("temperature", temperature, "> 0"));
    }
    if !(concentration_ratio >= 0.0) {
        return Err(ModelError::domain(
            "concentration_ratio",
            concentration_ratio,
            ">= 0",
        ));
    }
    let f_rt = PhysicalConstants::STANDARD.inverse_thermal_voltage(temperature);
    let forward = kinetics.alpha_anodic * f_rt * overpotential;
    let backward = -kinetics.alpha_cathodic * f_rt * overpotential;
    let largest = forward.abs().max(backward.abs());
    if !(largest <= MAX_EXPONENT) {
        return Err(ModelError::Saturation { exponent: largest });
    }
    let prefactor = kinetics.volumetric_exchange_current
        * concentration_ratio.powf(kinetics.concentration_exponent);
    let bracket = forward.exp() - backward.exp();
    Ok(electrode.orientation() * prefactor * bracket)
}

/// Overpotential at which [`transfer_current`] equals `target_current`.
///
/// The bracket grows geometrically from ±1 mV until it encloses the target or reaches
/// the saturation limit, then bisects to floating-point resolution (at most
/// [`MAX_ITERATIONS`] halvings). The residual is guaranteed to satisfy
/// `|R(η) - target| <= max(1e-10, 1e-8 |target|)`.
pub fn invert_transfer_current(
    electrode: Electrode,
    kinetics: &ElectrodeKinetics,
    concentration_ratio: f64,
    target_current: f64,
    temperature: f64,
) -> Result<f64> {
    if !target_current.is_finite() {
        return Err(ModelError::domain(
            "target_current",
            target_current,
            "finite",
        ));
    }
    if target_current == 0.0 {
        // Validate the remaining arguments.
        transfer_current(electrode, kinetics, concentration_ratio, 0.0, temperature)?;
        return Ok(0.0);
    }
    let sign = electrode.orientation();
    // g is increasing in η for both electrodes.
    let g = |eta: f64| -> Result<f64> {
        Ok(sign * transfer_current(electrode, kinetics, concentration_ratio, eta, temperature)?)
    };
    let goal = sign * target_current;
    let direction = goal.signum();

    let f_rt = PhysicalConstants::STANDARD.inverse_thermal_voltage(temperature);
    let alpha = kinetics.alpha_anodic.max(kinetics.alpha_cathodic);
    let eta_limit = MAX_EXPONENT / (alpha * f_rt) * (1.0 - 1e-12);
    let tolerance = 1e-10f64.max(1e-8 * target_current.abs());

    let mut inner = 0.0;
    let mut outer = direction * 1e-3_f64.min(eta_limit);
    loop {
        let value = g(outer)?;
        if direction * (value - goal) >= 0.0 {
            break;
        }
        if outer.abs() >= eta_limit {
            return Err(ModelError::Convergence {
                what: "transfer current inversion (target not bracketable)",
                iterations: 0,
                residual: (value - goal).abs(),
            });
        }
        inner = outer;
        outer = direction * (2.0 * outer.abs()).min(eta_limit);
    }

    let (mut lo, mut hi) = if direction > 0.0 {
        (inner, outer)
    } else {
        (outer, inner)
    };
    let mut iterations = 0;
    while iterations < MAX_ITERATIONS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let value = g(mid)?;
        if value == goal {
            return Ok(mid);
        }
        if value < goal {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    let r_lo = (g(lo)? - goal).abs();
    let r_hi = (g(hi)? - goal).abs();
    let (eta, residual) = if r_lo <= r_hi { (lo, r_lo) } else { (hi, r_hi) };
    if residual > tolerance {
        return Err(ModelError::Convergence {
            what: "transfer current inversion",
            iterations,
            residual,
        });
    }
    Ok(eta)
}
