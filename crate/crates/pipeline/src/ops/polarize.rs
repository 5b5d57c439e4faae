use std::path::PathBuf;

use fcell_core::constants::{atm_to_pa, celsius_to_kelvin};
use fcell_core::{
    reversible_voltage, solve_current_at_voltage, CellSpec, OperatingPoint, PolarizationPoint,
};
use fcell_surrogate::dataset::format_f64;

use crate::manifest::Session;
use crate::{Result, RunConfig};

pub const POLARIZATION_HEADER: &str = "voltage_v,current_density_a_m2,power_density_w_m2";

#[derive(Debug, Clone)]
pub struct PolarizeOutcome {
    pub points: Vec<PolarizationPoint>,
    /// Voltages the solver rejected, with the reason.
    pub failures: Vec<(f64, String)>,
    pub path: PathBuf,
    /// V
    pub reversible_voltage: f64,
}

/// `E_rev` followed by the 0.05 V ladder from 1.10 V to 0.30 V that lies below it.
pub fn default_voltages(reversible: f64) -> Vec<f64> {
    let mut v = vec![reversible];
    v.extend(
        (0..=16)
            .map(|k| (110 - 5 * k) as f64 / 100.0)
            .filter(|&x| x < reversible),
    );
    v
}

/// Polarization curve of the preset at the configured inlet state, written as
/// `polarization_<preset>.csv`. A voltage the solver cannot handle is logged and
/// left out; the rest of the sweep continues.
pub fn polarize(config: &RunConfig, voltages: Option<&[f64]>) -> Result<PolarizeOutcome> {
    let mut session = Session::new(config, format!("polarize:{}", config.preset));
    session.component("fcell-core");
    let cell = CellSpec::preset(config.preset);
    let op = OperatingPoint::preset(config.preset).with_inlet(
        atm_to_pa(config.polarize.pressure),
        celsius_to_kelvin(config.polarize.temperature),
    );
    op.validate()?;
    let e_rev = reversible_voltage(&op)?;
    let voltages = match (voltages, &config.polarize.voltages) {
        (Some(v), _) => v.to_vec(),
        (None, Some(v)) => v.clone(),
        (None, None) => default_voltages(e_rev),
    };

    let mut points = Vec::with_capacity(voltages.len());
    let mut failures = Vec::new();
    for &v in &voltages {
        let outcome = if !(v > 0.0 && v <= e_rev) {
            Err(format!("outside 0 < V <= E_rev = {e_rev:.6} V"))
        } else {
            solve_current_at_voltage(&cell, &op, v).map_err(|e| e.to_string())
        };
        match outcome {
            Ok(i) => points.push(PolarizationPoint {
                voltage: v,
                current_density: i,
                power_density: v * i,
            }),
            Err(reason) => {
                log::warn!("polarize: {v} V: {reason}");
                failures.push((v, reason));
            }
        }
    }

    let mut csv = format!("{POLARIZATION_HEADER}\n");
    for p in &points {
        csv.push_str(&format!(
            "{},{},{}\n",
            format_f64(p.voltage),
            format_f64(p.current_density),
            format_f64(p.power_density)
        ));
    }
    let path = session.write_output(
        &format!("polarization_{}.csv", config.preset),
        csv.as_bytes(),
    )?;
    session.count("voltages", voltages.len() as u64);
    session.count("failed", failures.len() as u64);
    session.note("reversible_voltage_v", e_rev);
    session.commit()?;
    Ok(PolarizeOutcome {
        points,
        failures,
        path,
        reversible_voltage: e_rev,
    })
}
