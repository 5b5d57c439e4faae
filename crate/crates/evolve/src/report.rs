//! Summaries and CSV output for power-pair fronts (maximize production, minimize
//! consumption).

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::{EvolveError, Individual, ParetoResult, Result, Sense};

pub const FRONT_CSV_HEADER: &str = "pressure_atm,temperature_c,p_pro_w,p_cons_w,ratio";

/// Consumption over production for a power-pair member.
pub fn power_ratio(member: &Individual) -> f64 {
    member.objectives[1] / member.objectives[0]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrontReport {
    pub size: usize,
    pub max_production: Individual,
    pub min_consumption: Individual,
    /// Mean of `P_cons / P_pro` over the front (a fraction, not percent).
    pub mean_ratio: f64,
    pub ratio_at_max_production: f64,
}

fn require_power_pair(result: &ParetoResult) -> Result<()> {
    if result.senses != [Sense::Maximize, Sense::Minimize] {
        return Err(EvolveError::Contract(format!(
            "expected (maximize production, minimize consumption), got {:?}",
            result.senses
        )));
    }
    if result.members.is_empty() {
        return Err(EvolveError::Contract("front is empty".into()));
    }
    Ok(())
}

pub fn front_report(result: &ParetoResult) -> Result<FrontReport> {
    require_power_pair(result)?;
    let max_production = result.extreme(0).clone();
    let mean_ratio =
        result.members.iter().map(power_ratio).sum::<f64>() / result.members.len() as f64;
    Ok(FrontReport {
        size: result.members.len(),
        ratio_at_max_production: power_ratio(&max_production),
        max_production,
        min_consumption: result.extreme(1).clone(),
        mean_ratio,
    })
}

fn sci(x: f64) -> String {
    format!("{x:.16e}")
}

/// Front rows by descending production power, 17 significant digits.
pub fn write_front_csv<W: Write>(result: &ParetoResult, mut out: W) -> Result<()> {
    require_power_pair(result)?;
    let mut rows: Vec<&Individual> = result.members.iter().collect();
    rows.sort_by(|a, b| b.objectives[0].total_cmp(&a.objectives[0]));
    writeln!(out, "{FRONT_CSV_HEADER}")?;
    for m in rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            sci(m.genes[0]),
            sci(m.genes[1]),
            sci(m.objectives[0]),
            sci(m.objectives[1]),
            sci(power_ratio(m))
        )?;
    }
    out.flush()?;
    Ok(())
}
